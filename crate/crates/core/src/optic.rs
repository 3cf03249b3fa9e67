//! Dependent optics: hom-sets as coends over hom-categories of 1-cells,
//! composition, evaluation by Tambara modules, and the finite representation
//! check against free modules on representables.
//!
//! An optic class `(m, α, β)` with `m: o -> o'`, `α: s -> m • a` in `X(o')` and
//! `β: m • b -> t` in `Y(o')` lies in `optic_hom((o, a, b), (o', s, t))`. As an
//! arrow for composition it runs from `(o', s, t)` to `(o, a, b)`.

use std::sync::Arc;

use crate::bicat::BicatAction;
use crate::coend::{coend_from_relations, CoendResult};
use crate::error::{CoreError, Result};
use crate::fincat::{check_copresheaf, Copresheaf, FinCategory};
use crate::finset::{all_tables, FinSet, Label};
use crate::par::Exec;
use crate::report::LawReport;
use crate::tambara::{enumerate_tambara_morphisms, free, FamilyMap, Free, ProfFamily, TambaraModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpticObject {
    pub o: usize,
    pub a: usize,
    pub b: usize,
}

/// A separable coend integrand: a copresheaf `Fwd` on `K` and a copresheaf
/// `Back` on `K^op`. The coend relates `(m, x, Back(α) y) ~ (n, Fwd(α) x, y)`
/// for `α: m -> n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpticIntegrand {
    pub k: Arc<FinCategory>,
    pub fwd: Copresheaf,
    pub back: Copresheaf,
}

impl OpticIntegrand {
    pub fn new(k: Arc<FinCategory>, fwd: Copresheaf, back: Copresheaf) -> Result<Self> {
        if *fwd.dom != *k || *back.dom != k.opposite() {
            return Err(CoreError::LegMismatch("integrand legs must live on K and K^op".into()));
        }
        Ok(OpticIntegrand { k, fwd, back })
    }

    pub fn check(&self) -> LawReport {
        let mut r = LawReport::new();
        r.absorb("forward part", check_copresheaf(&self.fwd));
        r.absorb("backward part", check_copresheaf(&self.back));
        r
    }

    pub fn coend(&self) -> CoendResult {
        let k = &self.k;
        let diag: Vec<FinSet> = (0..k.n_objects()).map(|m| crate::finset::product(&self.fwd.sets[m], &self.back.sets[m]).0).collect();
        let mut rel = Vec::new();
        for alpha in 0..k.n_morphisms() {
            if k.is_identity(alpha) {
                continue;
            }
            let (m, n) = (k.src(alpha), k.tgt(alpha));
            let (nbm, nbn) = (self.back.sets[m].len(), self.back.sets[n].len());
            for x in 0..self.fwd.sets[m].len() {
                for y in 0..nbn {
                    rel.push(((m, x * nbm + self.back.actions[alpha][y]), (n, self.fwd.actions[alpha][x] * nbn + y)));
                }
            }
        }
        coend_from_relations(k.objects(), &diag, rel)
    }
}

/// A representative triple: global 1-cell, morphism of `X(o')`, morphism of `Y(o')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpticTriple {
    pub m: usize,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Clone, Debug)]
struct HomSource {
    cells: Vec<usize>,
    fwd_mor: Vec<Vec<usize>>,
    back_mor: Vec<Vec<usize>>,
}

/// An optic hom-set with its coend bookkeeping.
#[derive(Clone, Debug)]
pub struct OpticHom {
    pub inner: Option<OpticObject>,
    pub outer: Option<OpticObject>,
    pub integrand: OpticIntegrand,
    pub coend: CoendResult,
    source: Option<HomSource>,
}

impl OpticHom {
    /// An optic hom computed from a bare integrand (no action behind it).
    pub fn from_integrand(integrand: OpticIntegrand) -> Self {
        let coend = integrand.coend();
        OpticHom { inner: None, outer: None, integrand, coend, source: None }
    }

    pub fn count(&self) -> usize {
        self.coend.class_count()
    }

    fn src(&self) -> &HomSource {
        self.source.as_ref().expect("optic hom built from actions")
    }

    fn triple_at(&self, c: usize, v: usize) -> OpticTriple {
        let s = self.src();
        let nb = self.integrand.back.sets[c].len();
        OpticTriple { m: s.cells[c], alpha: s.fwd_mor[c][v / nb], beta: s.back_mor[c][v % nb] }
    }

    /// The canonical representative of a class.
    pub fn representative(&self, class: usize) -> OpticTriple {
        let (c, v) = self.coend.representative(class);
        self.triple_at(c, v)
    }

    /// Every triple together with its class.
    pub fn triples(&self) -> Vec<(OpticTriple, usize)> {
        let mut out = Vec::new();
        for c in 0..self.coend.index_count() {
            for v in 0..self.coend.diagonal_len(c) {
                out.push((self.triple_at(c, v), self.coend.class_of(c, v)));
            }
        }
        out
    }

    /// Class of a triple, if it is well typed for this hom.
    pub fn class_of(&self, t: &OpticTriple) -> Option<usize> {
        let s = self.src();
        let c = s.cells.iter().position(|&m| m == t.m)?;
        let x = s.fwd_mor[c].iter().position(|&f| f == t.alpha)?;
        let y = s.back_mor[c].iter().position(|&f| f == t.beta)?;
        Some(self.coend.class_of(c, x * s.back_mor[c].len() + y))
    }
}

/// `∫^{m: o -> o'} X(o')(s, m • a) × Y(o')(m • b, t)` for `inner = (o, a, b)`,
/// `outer = (o', s, t)`.
pub fn optic_hom(ax: &BicatAction, ay: &BicatAction, inner: OpticObject, outer: OpticObject) -> Result<OpticHom> {
    if ax.base != ay.base {
        return Err(CoreError::LegMismatch("both actions must share their base".into()));
    }
    let b = &ax.base;
    let (o, o2) = (inner.o, outer.o);
    let k = b.hom(o, o2).clone();
    let cells: Vec<usize> = b.cells_between(o, o2).collect();
    let (x2, y2) = (&ax.fibres[o2], &ay.fibres[o2]);
    let fwd_mor: Vec<Vec<usize>> = cells.iter().map(|&m| x2.hom(outer.a, ax.act_obj(m, inner.a)).to_vec()).collect();
    let back_mor: Vec<Vec<usize>> = cells.iter().map(|&m| y2.hom(ay.act_obj(m, inner.b), outer.b).to_vec()).collect();
    let labels = |c: &FinCategory, v: &[usize]| FinSet::from_sorted(v.iter().map(|&f| c.mor_label(f).clone()).collect());
    let fwd_sets = fwd_mor.iter().map(|v| labels(x2, v)).collect();
    let back_sets = back_mor.iter().map(|v| labels(y2, v)).collect();
    let pos = |list: &[usize], f: usize| list.iter().position(|&g| g == f).expect("typed morphism");
    let fwd_actions = (0..k.n_morphisms())
        .map(|l| {
            let alpha = b.two(o, o2, l);
            let (m, n) = (k.src(l), k.tgt(l));
            let comp = ax.act_two(alpha, inner.a);
            fwd_mor[m].iter().map(|&xi| pos(&fwd_mor[n], x2.compose(xi, comp))).collect()
        })
        .collect();
    let back_actions = (0..k.n_morphisms())
        .map(|l| {
            let alpha = b.two(o, o2, l);
            let (m, n) = (k.src(l), k.tgt(l));
            let comp = ay.act_two(alpha, inner.b);
            back_mor[n].iter().map(|&eta| pos(&back_mor[m], y2.compose(comp, eta))).collect()
        })
        .collect();
    let integrand = OpticIntegrand::new(
        k.clone(),
        Copresheaf::new(k.clone(), fwd_sets, fwd_actions)?,
        Copresheaf::new(Arc::new(k.opposite()), back_sets, back_actions)?,
    )?;
    let coend = integrand.coend();
    Ok(OpticHom { inner: Some(inner), outer: Some(outer), integrand, coend, source: Some(HomSource { cells, fwd_mor, back_mor }) })
}

/// `(1_o, id_a, id_b)`.
pub fn optic_id(ax: &BicatAction, ay: &BicatAction, obj: OpticObject) -> OpticTriple {
    OpticTriple { m: ax.base.unit(obj.o), alpha: ax.fibres[obj.o].id(obj.a), beta: ay.fibres[obj.o].id(obj.b) }
}

/// `f ; g` for `f: (o'', u, v) -> (o', s, t)` and `g: (o', s, t) -> (o, a, b)`:
/// with `f = (n, γ, δ)` and `g = (m, α, β)` this is `(m ; n, γ ; n • α, n • β ; δ)`.
pub fn optic_compose(ax: &BicatAction, ay: &BicatAction, f: &OpticTriple, g: &OpticTriple) -> Result<OpticTriple> {
    let b = &ax.base;
    if b.cell_tgt(g.m) != b.cell_src(f.m) {
        return Err(CoreError::Shape("optics are not composable".into()));
    }
    let o3 = b.cell_tgt(f.m);
    let (x3, y3) = (&ax.fibres[o3], &ay.fibres[o3]);
    let alpha = x3.try_compose(f.alpha, ax.act_mor(f.m, g.alpha));
    let beta = y3.try_compose(ay.act_mor(f.m, g.beta), f.beta);
    match (alpha, beta) {
        (Some(alpha), Some(beta)) => Ok(OpticTriple { m: b.compose1(g.m, f.m), alpha, beta }),
        _ => Err(CoreError::Shape("optic components are not composable".into())),
    }
}

/// Category laws on classes for the optic category on `objects`: composition
/// is independent of representatives, unital and associative.
pub fn check_optic_category(ax: &BicatAction, ay: &BicatAction, objects: &[OpticObject]) -> Result<LawReport> {
    let mut r = LawReport::new();
    let n = objects.len();
    // homs[i][j] = optic_hom(inner = objects[j], outer = objects[i]); arrows objects[i] -> objects[j]
    let mut homs = Vec::with_capacity(n * n);
    for &outer in objects {
        for &inner in objects {
            homs.push(optic_hom(ax, ay, inner, outer)?);
        }
    }
    let hom = |i: usize, j: usize| &homs[i * n + j];
    for i in 0..n {
        let h = hom(i, i);
        let id = optic_id(ax, ay, objects[i]);
        if h.class_of(&id).is_none() {
            r.push("identity exists", format!("at object {i}"));
            continue;
        }
        for j in 0..n {
            for (t, c) in hom(i, j).triples() {
                // t: i -> j ; t ∘ id and id ∘ t
                let left = optic_compose(ax, ay, &id, &t)?;
                let right = optic_compose(ax, ay, &t, &optic_id(ax, ay, objects[j]))?;
                if hom(i, j).class_of(&left) != Some(c) || hom(i, j).class_of(&right) != Some(c) {
                    r.push("unit laws", format!("class {c} from {i} to {j}"));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // f: i -> j, g: j -> l
                let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; hom(j, l).count()]; hom(i, j).count()];
                for (f, cf) in hom(i, j).triples() {
                    for (g, cg) in hom(j, l).triples() {
                        let c = hom(i, l).class_of(&optic_compose(ax, ay, &f, &g)?);
                        let Some(c) = c else {
                            r.push("composite well typed", format!("{i} -> {j} -> {l}"));
                            continue;
                        };
                        match table[cf][cg] {
                            None => table[cf][cg] = Some(c),
                            Some(d) if d != c => r.push("composition independent of representatives", format!("classes {cf}, {cg} via {i} -> {j} -> {l}")),
                            _ => {}
                        }
                    }
                }
                for p in 0..n {
                    for cf in 0..hom(i, j).count() {
                        for cg in 0..hom(j, l).count() {
                            for ch in 0..hom(l, p).count() {
                                let (f, g, h) = (hom(i, j).representative(cf), hom(j, l).representative(cg), hom(l, p).representative(ch));
                                let a = optic_compose(ax, ay, &optic_compose(ax, ay, &f, &g)?, &h)?;
                                let bb = optic_compose(ax, ay, &f, &optic_compose(ax, ay, &g, &h)?)?;
                                if hom(i, p).class_of(&a) != hom(i, p).class_of(&bb) {
                                    r.push("associativity", format!("classes ({cf}, {cg}, {ch}) along {i} -> {j} -> {l} -> {p}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `st_m` then the left action of `α` and the right action of `β`:
/// an element of `P_o(a, b)` goes to `P_o'(s, t)`.
pub fn eval(p: &TambaraModule, hom: &OpticHom, t: &OpticTriple, e: usize) -> usize {
    let inner = hom.inner.expect("optic hom built from actions");
    let outer = hom.outer.expect("optic hom built from actions");
    let f = &p.family;
    let pp = &f.profs[outer.o];
    let ma = f.act_x.act_obj(t.m, inner.a);
    let st = p.st(t.m, inner.a, inner.b, e);
    pp.lact(t.alpha, outer.b, pp.ract(ma, t.beta, st))
}

/// `eval` is constant on classes, sends identities to identities, respects
/// composition, and is natural along the given Tambara morphisms `p -> r`.
pub fn check_eval(
    ax: &BicatAction,
    ay: &BicatAction,
    p: &TambaraModule,
    objects: &[OpticObject],
    morphisms: &[(TambaraModule, FamilyMap)],
) -> Result<LawReport> {
    let mut r = LawReport::new();
    let f = &p.family;
    let n = objects.len();
    let mut homs = Vec::with_capacity(n * n);
    for &outer in objects {
        for &inner in objects {
            homs.push(optic_hom(ax, ay, inner, outer)?);
        }
    }
    let hom = |i: usize, j: usize| &homs[i * n + j];
    let size = |obj: &OpticObject| f.set(obj.o, obj.a, obj.b).len();
    let as_fn = |h: &OpticHom, t: &OpticTriple, obj: &OpticObject| (0..size(obj)).map(|e| eval(p, h, t, e)).collect::<Vec<_>>();
    for i in 0..n {
        for j in 0..n {
            let h = hom(i, j);
            let mut by_class: Vec<Option<Vec<usize>>> = vec![None; h.count()];
            for (t, c) in h.triples() {
                let v = as_fn(h, &t, &objects[j]);
                match &by_class[c] {
                    None => by_class[c] = Some(v),
                    Some(w) if *w != v => r.push("eval constant on classes", format!("class {} from {i} to {j}", h.coend.class_label(c))),
                    _ => {}
                }
            }
        }
        let id = optic_id(ax, ay, objects[i]);
        let v = as_fn(hom(i, i), &id, &objects[i]);
        if v.iter().enumerate().any(|(k, &x)| k != x) {
            r.push("eval of identity", format!("at object {i}"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for cf in 0..hom(i, j).count() {
                    for cg in 0..hom(j, l).count() {
                        let (fr, gr) = (hom(i, j).representative(cf), hom(j, l).representative(cg));
                        let gf = optic_compose(ax, ay, &fr, &gr)?;
                        // f: i -> j evaluates P(objects[j]) -> P(objects[i])
                        let lhs = as_fn(hom(i, l), &gf, &objects[l]);
                        let rhs: Vec<usize> = (0..size(&objects[l])).map(|e| eval(p, hom(i, j), &fr, eval(p, hom(j, l), &gr, e))).collect();
                        if lhs != rhs {
                            r.push("eval respects composition", format!("classes ({cf}, {cg}) along {i} -> {j} -> {l}"));
                        }
                    }
                }
            }
        }
    }
    for (k, (q, h)) in morphisms.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let (inner, outer) = (objects[j], objects[i]);
                let (s_in, s_out) = (f.sort(inner.o, inner.a, inner.b), f.sort(outer.o, outer.a, outer.b));
                for c in 0..hom(i, j).count() {
                    let t = hom(i, j).representative(c);
                    for e in 0..size(&inner) {
                        if h[s_out][eval(p, hom(i, j), &t, e)] != eval(q, hom(i, j), &t, h[s_in][e]) {
                            r.push("eval natural in the module", format!("morphism {k}, class {c} from {i} to {j}"));
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `X(o)(-, a) × Y(o)(b, =)` at `o`, empty elsewhere.
pub fn representable_family(ax: &Arc<BicatAction>, ay: &Arc<BicatAction>, obj: OpticObject) -> Result<ProfFamily> {
    let (xo, yo) = (ax.fibres[obj.o].clone(), ay.fibres[obj.o].clone());
    let (xo2, yo2) = (xo.clone(), yo.clone());
    ProfFamily::build(
        ax.clone(),
        ay.clone(),
        move |o, x, y| {
            if o != obj.o {
                return FinSet::empty();
            }
            let mut v = Vec::new();
            for &u in xo.hom(x, obj.a) {
                for &w in yo.hom(obj.b, y) {
                    v.push(Label::pair(xo.mor_label(u).clone(), yo.mor_label(w).clone()));
                }
            }
            FinSet::from_sorted(v)
        },
        {
            let xo = xo2.clone();
            move |_, f, _, e| match e {
                Label::Tup(p) => Label::pair(xo.mor_label(xo.compose(f, xo.morphism_index(&p[0]).unwrap())).clone(), p[1].clone()),
                _ => unreachable!("pairs only"),
            }
        },
        move |_, _, g, e| match e {
            Label::Tup(p) => Label::pair(p[0].clone(), yo2.mor_label(yo2.compose(yo2.morphism_index(&p[1]).unwrap(), g)).clone()),
            _ => unreachable!("pairs only"),
        },
    )
}

/// The free module on [`representable_family`].
pub fn representable_module(ax: &Arc<BicatAction>, ay: &Arc<BicatAction>, obj: OpticObject) -> Result<Free> {
    free(&representable_family(ax, ay, obj)?)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RepresentationReport {
    pub optic_count: usize,
    /// `|Tamb(rep(outer), rep(inner))|`
    pub tamb_count: usize,
    /// `|Tamb(rep(inner), rep(outer))|`, the other placement
    pub reverse_count: usize,
    pub bijection: bool,
    pub witness: Option<String>,
}

/// Compares `optic_hom(inner, outer)` with Tambara morphisms between the
/// representable modules, through the explicit map
/// `Φ ↦ Φ[1, s, t; id, (id, id), id] = [m, a', b'; ξ, (u, v), η] ↦ (m, ξ ; m • u, m • v ; η)`.
pub fn representation_check(
    ax: &Arc<BicatAction>,
    ay: &Arc<BicatAction>,
    inner: OpticObject,
    outer: OpticObject,
    budget: u64,
    exec: Exec,
) -> Result<RepresentationReport> {
    let h = optic_hom(ax, ay, inner, outer)?;
    let rep_in = representable_module(ax, ay, inner)?;
    let rep_out = representable_module(ax, ay, outer)?;
    let tamb = enumerate_tambara_morphisms(&rep_out.module, &rep_in.module, budget, exec)?;
    let reverse = enumerate_tambara_morphisms(&rep_in.module, &rep_out.module, budget, exec)?;
    let b = &ax.base;
    let fam_in = &rep_in.module.family;
    let q_in = representable_family(ax, ay, inner)?;
    let (x2, y2) = (&ax.fibres[outer.o], &ay.fibres[outer.o]);
    let (xo, yo) = (&ax.fibres[inner.o], &ay.fibres[inner.o]);

    // the generic element of rep(outer) at (o', s, t)
    let s_out = fam_in.sort(outer.o, outer.a, outer.b);
    let generic = {
        let qo = representable_family(ax, ay, outer)?;
        let e = qo
            .set(outer.o, outer.a, outer.b)
            .index_of(&Label::pair(x2.mor_label(x2.id(outer.a)).clone(), y2.mor_label(y2.id(outer.b)).clone()))
            .expect("identity pair");
        let xi = x2.hom(outer.a, outer.a).iter().position(|&f| f == x2.id(outer.a)).expect("identity");
        let eta = y2.hom(outer.b, outer.b).iter().position(|&f| f == y2.id(outer.b)).expect("identity");
        let m = b.unit(outer.o);
        let nq = qo.set(outer.o, outer.a, outer.b).len();
        let ne = y2.hom(outer.b, outer.b).len();
        rep_out.coends[s_out].class_of(rep_out.position(m, outer.a, outer.b), (xi * nq + e) * ne + eta)
    };

    // classes of rep(inner) at (o', s, t) -> optic classes
    let co = &rep_in.coends[s_out];
    let mut to_optic = vec![usize::MAX; co.class_count()];
    let mut witness = None;
    for c in 0..co.index_count() {
        let (m, a2, b2) = rep_in.index[outer.o][c];
        if b.cell_src(m) != inner.o {
            continue;
        }
        let (ma2, mb2) = (ax.act_obj(m, a2), ay.act_obj(m, b2));
        let n_q = q_in.set(inner.o, a2, b2).len();
        let n_eta = y2.hom(mb2, outer.b).len();
        for v in 0..co.diagonal_len(c) {
            let (xi, rest) = (v / (n_q * n_eta), v % (n_q * n_eta));
            let (e, eta) = (rest / n_eta, rest % n_eta);
            let Label::Tup(uv) = q_in.set(inner.o, a2, b2).get(e) else { unreachable!("pairs only") };
            let u = xo.morphism_index(&uv[0])?;
            let w = yo.morphism_index(&uv[1])?;
            let alpha = x2.compose(x2.hom(outer.a, ma2)[xi], ax.act_mor(m, u));
            let beta = y2.compose(ay.act_mor(m, w), y2.hom(mb2, outer.b)[eta]);
            let Some(oc) = h.class_of(&OpticTriple { m, alpha, beta }) else {
                witness = Some("collapsed triple is not typed for the optic hom".to_string());
                continue;
            };
            let k = co.class_of(c, v);
            if to_optic[k] == usize::MAX {
                to_optic[k] = oc;
            } else if to_optic[k] != oc {
                witness.get_or_insert_with(|| format!("collapse not constant on class {}", co.class_label(k)));
            }
        }
    }
    let images: Vec<usize> = tamb.iter().map(|phi| to_optic[phi[s_out][generic]]).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if witness.is_none() && sorted.len() != images.len() {
        witness = Some("two Tambara morphisms give the same optic".into());
    }
    if witness.is_none() && (sorted.len() != h.count() || sorted.iter().any(|&c| c >= h.count())) {
        witness = Some(format!("{} Tambara morphisms against {} optics", tamb.len(), h.count()));
    }
    Ok(RepresentationReport {
        optic_count: h.count(),
        tamb_count: tamb.len(),
        reverse_count: reverse.len(),
        bijection: witness.is_none(),
        witness,
    })
}

/// The truncated lens integrand: `K` is the category of sets `0..=bound` and
/// all functions, acting on sets by cartesian product;
/// `Fwd(m) = Set(s, m × a)` and `Back(m) = Set(m × b, t)`.
pub fn lens_integrand(s: usize, a: usize, b: usize, t: usize, bound: usize, max_morphisms: usize) -> Result<OpticIntegrand> {
    let sizes: Vec<usize> = (0..=bound).collect();
    let k = crate::fincat::finset_skeleton(&sizes, max_morphisms)?;
    let cat = k.category.clone();
    // tables sorted by label so that positions agree with the sets
    let funcs = |n: usize, m: usize| {
        let mut v: Vec<Vec<usize>> = all_tables(n, m).collect();
        v.sort_by_key(|f| Label::table(f));
        v
    };
    let fwd_tables: Vec<Vec<Vec<usize>>> = k.sizes.iter().map(|&m| funcs(s, m * a)).collect();
    let back_tables: Vec<Vec<Vec<usize>>> = k.sizes.iter().map(|&m| funcs(m * b, t)).collect();
    let to_set = |v: &[Vec<usize>]| FinSet::from_sorted(v.iter().map(|f| Label::table(f)).collect());
    let fwd_sets: Vec<FinSet> = fwd_tables.iter().map(|v| to_set(v)).collect();
    let back_sets: Vec<FinSet> = back_tables.iter().map(|v| to_set(v)).collect();
    let fwd_actions = (0..cat.n_morphisms())
        .map(|f| {
            let n = cat.tgt(f);
            let h = &k.tables[f];
            fwd_tables[cat.src(f)]
                .iter()
                .map(|alpha| {
                    // (h × a) ∘ α
                    let out: Vec<usize> = alpha.iter().map(|&v| h[v / a] * a + v % a).collect();
                    fwd_sets[n].index_of(&Label::table(&out)).expect("typed table")
                })
                .collect()
        })
        .collect();
    let back_actions = (0..cat.n_morphisms())
        .map(|f| {
            let m_size = k.sizes[cat.src(f)];
            let h = &k.tables[f];
            back_tables[cat.tgt(f)]
                .iter()
                .map(|beta| {
                    // β ∘ (h × b)
                    let out: Vec<usize> = (0..m_size * b).map(|v| beta[h[v / b] * b + v % b]).collect();
                    back_sets[cat.src(f)].index_of(&Label::table(&out)).expect("typed table")
                })
                .collect()
        })
        .collect();
    let fwd = Copresheaf::new(cat.clone(), fwd_sets, fwd_actions)?;
    let back = Copresheaf::new(Arc::new(cat.opposite()), back_sets, back_actions)?;
    OpticIntegrand::new(cat, fwd, back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{FinBicategory, StrictMonoidal};
    use crate::tambara::{check_tambara, TambaraModule};

    fn swap() -> Arc<BicatAction> {
        let base = Arc::new(FinBicategory::deloop(&StrictMonoidal::cyclic(2)).unwrap());
        Arc::new(BicatAction::discrete(base, vec![FinSet::range(2)], |m, x| if m == 0 { x } else { 1 - x }).unwrap())
    }

    fn trivial_arrow() -> Arc<BicatAction> {
        let c = Arc::new(FinCategory::walking_arrow());
        Arc::new(BicatAction::monoidal(&StrictMonoidal::trivial(), c, |_, x| x, |_, f| f).unwrap())
    }

    #[test]
    fn adapter_case() {
        let act = trivial_arrow();
        let h = optic_hom(&act, &act, OpticObject { o: 0, a: 1, b: 0 }, OpticObject { o: 0, a: 0, b: 1 }).unwrap();
        // X(0, 1) × Y(0, 1)
        assert_eq!(h.count(), 1);
        let h = optic_hom(&act, &act, OpticObject { o: 0, a: 0, b: 0 }, OpticObject { o: 0, a: 1, b: 1 }).unwrap();
        assert_eq!(h.count(), 0);
    }

    #[test]
    fn lens_count() {
        let i = lens_integrand(2, 2, 2, 2, 2, 64).unwrap();
        assert!(i.check().ok());
        assert_eq!(OpticHom::from_integrand(i).count(), 64);
    }

    #[test]
    fn category_and_eval_on_swap() {
        let act = swap();
        let objs: Vec<OpticObject> = (0..2).flat_map(|a| (0..2).map(move |b| OpticObject { o: 0, a, b })).collect();
        assert!(check_optic_category(&act, &act, &objs).unwrap().ok());
        let p = TambaraModule::hom_module(act.clone()).unwrap();
        assert!(check_tambara(&p).ok());
        assert!(check_eval(&act, &act, &p, &objs, &[]).unwrap().ok());
    }

    #[test]
    fn representation_on_small_instances() {
        let act = trivial_arrow();
        let r = representation_check(&act, &act, OpticObject { o: 0, a: 1, b: 0 }, OpticObject { o: 0, a: 0, b: 1 }, 1_000_000, Exec::Sequential)
            .unwrap();
        assert!(r.bijection, "{r:?}");
        let act = swap();
        let r = representation_check(&act, &act, OpticObject { o: 0, a: 0, b: 1 }, OpticObject { o: 0, a: 1, b: 0 }, 1_000_000, Exec::Sequential)
            .unwrap();
        assert!(r.bijection, "{r:?}");
        assert_eq!(r.optic_count, 1);
    }
}
