//! Set-valued profunctors `P : C ⇸ D` (contravariant in `C`, covariant in `D`),
//! their coends and ends, composition, and the action of profunctors on
//! copresheaves.

use std::sync::Arc;

use crate::coend::{coend_from_relations, end_from_constraints, CoendResult, EndConstraint, EndResult};
use crate::error::{CoreError, Result};
use crate::fincat::{Copresheaf, FinCategory, FinFunctor};
use crate::finset::{product, FinSet, Label};
use crate::report::LawReport;

/// A profunctor with explicit action tables.
///
/// `lact(f, d)` for `f: c' -> c` maps `P(c, d) -> P(c', d)`;
/// `ract(c, g)` for `g: d -> d'` maps `P(c, d) -> P(c, d')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetProfunctor {
    pub left: Arc<FinCategory>,
    pub right: Arc<FinCategory>,
    sets: Vec<FinSet>,
    lact: Vec<Vec<usize>>,
    ract: Vec<Vec<usize>>,
}

impl SetProfunctor {
    /// Builds a profunctor from tables, validating shapes only.
    pub fn new(
        left: Arc<FinCategory>,
        right: Arc<FinCategory>,
        sets: Vec<FinSet>,
        lact: Vec<Vec<usize>>,
        ract: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (nc, nd) = (left.n_objects(), right.n_objects());
        if sets.len() != nc * nd
            || lact.len() != left.n_morphisms() * nd
            || ract.len() != nc * right.n_morphisms()
        {
            return Err(CoreError::Shape("profunctor tables must cover both legs".into()));
        }
        let p = SetProfunctor { left, right, sets, lact, ract };
        for f in 0..p.left.n_morphisms() {
            for d in 0..nd {
                let (from, to) = (p.set(p.left.tgt(f), d), p.set(p.left.src(f), d));
                let t = p.lact_table(f, d);
                if t.len() != from.len() || t.iter().any(|&x| x >= to.len()) {
                    return Err(CoreError::Shape(format!("left action of {} does not fit", p.left.mor_label(f))));
                }
            }
        }
        for c in 0..nc {
            for g in 0..p.right.n_morphisms() {
                let (from, to) = (p.set(c, p.right.src(g)), p.set(c, p.right.tgt(g)));
                let t = p.ract_table(c, g);
                if t.len() != from.len() || t.iter().any(|&x| x >= to.len()) {
                    return Err(CoreError::Shape(format!("right action of {} does not fit", p.right.mor_label(g))));
                }
            }
        }
        Ok(p)
    }

    /// Builds a profunctor from label-level data; action results must lie in
    /// the declared sets.
    pub fn build(
        left: Arc<FinCategory>,
        right: Arc<FinCategory>,
        set_of: impl Fn(usize, usize) -> FinSet,
        lact: impl Fn(usize, usize, &Label) -> Label,
        ract: impl Fn(usize, usize, &Label) -> Label,
    ) -> Result<Self> {
        let (nc, nd) = (left.n_objects(), right.n_objects());
        let sets: Vec<FinSet> = (0..nc * nd).map(|k| set_of(k / nd, k % nd)).collect();
        let mut lt = Vec::with_capacity(left.n_morphisms() * nd);
        for f in 0..left.n_morphisms() {
            for d in 0..nd {
                let (from, to) = (&sets[left.tgt(f) * nd + d], &sets[left.src(f) * nd + d]);
                lt.push(from.iter().map(|x| to.require(&lact(f, d, x))).collect::<Result<Vec<_>>>()?);
            }
        }
        let mut rt = Vec::with_capacity(nc * right.n_morphisms());
        for c in 0..nc {
            for g in 0..right.n_morphisms() {
                let (from, to) = (&sets[c * nd + right.src(g)], &sets[c * nd + right.tgt(g)]);
                rt.push(from.iter().map(|x| to.require(&ract(c, g, x))).collect::<Result<Vec<_>>>()?);
            }
        }
        SetProfunctor::new(left, right, sets, lt, rt)
    }

    /// The hom-profunctor `C(-, =)`.
    pub fn hom(c: &Arc<FinCategory>) -> Self {
        let cat = c.clone();
        SetProfunctor::build(
            c.clone(),
            c.clone(),
            |a, b| FinSet::from_sorted(cat.hom(a, b).iter().map(|&f| cat.mor_label(f).clone()).collect()),
            |f, _, x| cat.mor_label(cat.compose(f, cat.morphism_index(x).unwrap())).clone(),
            |_, g, x| cat.mor_label(cat.compose(cat.morphism_index(x).unwrap(), g)).clone(),
        )
        .expect("hom profunctor of a valid category")
    }

    /// Constant profunctor at `set`, every action the identity.
    pub fn constant(left: &Arc<FinCategory>, right: &Arc<FinCategory>, set: &FinSet) -> Self {
        SetProfunctor::build(left.clone(), right.clone(), |_, _| set.clone(), |_, _, x| x.clone(), |_, _, x| x.clone())
            .expect("constant profunctor")
    }

    pub fn set(&self, c: usize, d: usize) -> &FinSet {
        &self.sets[c * self.right.n_objects() + d]
    }

    pub fn lact_table(&self, f: usize, d: usize) -> &[usize] {
        &self.lact[f * self.right.n_objects() + d]
    }

    pub fn ract_table(&self, c: usize, g: usize) -> &[usize] {
        &self.ract[c * self.right.n_morphisms() + g]
    }

    /// `P(f, d)(x)` for `f: c' -> c`, `x ∈ P(c, d)`.
    pub fn lact(&self, f: usize, d: usize, x: usize) -> usize {
        self.lact_table(f, d)[x]
    }

    /// `P(c, g)(x)` for `g: d -> d'`, `x ∈ P(c, d)`.
    pub fn ract(&self, c: usize, g: usize, x: usize) -> usize {
        self.ract_table(c, g)[x]
    }

    /// Total number of elements over all `(c, d)`.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::len).sum()
    }

    /// Copy with one left-action entry redirected; for checker mutation tests.
    pub fn with_lact_entry(&self, f: usize, d: usize, x: usize, value: usize) -> Self {
        let mut p = self.clone();
        let nd = p.right.n_objects();
        p.lact[f * nd + d][x] = value;
        p
    }
}

/// Functoriality of both actions and their commutation.
pub fn check_profunctor(p: &SetProfunctor) -> LawReport {
    let mut r = LawReport::new();
    let (c, d) = (&p.left, &p.right);
    let is_id = |t: &[usize]| t.iter().enumerate().all(|(i, &j)| i == j);
    for o in 0..c.n_objects() {
        for y in 0..d.n_objects() {
            if !is_id(p.lact_table(c.id(o), y)) {
                r.push("left identity", format!("at ({}, {})", c.obj_label(o), d.obj_label(y)));
            }
        }
    }
    for x in 0..c.n_objects() {
        for o in 0..d.n_objects() {
            if !is_id(p.ract_table(x, d.id(o))) {
                r.push("right identity", format!("at ({}, {})", c.obj_label(x), d.obj_label(o)));
            }
        }
    }
    // f: c'' -> c', f2: c' -> c ; lact(f ; f2) = lact(f2) then lact(f)
    for f in 0..c.n_morphisms() {
        for f2 in 0..c.n_morphisms() {
            let Some(ff) = c.try_compose(f, f2) else { continue };
            for y in 0..d.n_objects() {
                let ok = (0..p.set(c.tgt(f2), y).len()).all(|e| p.lact(f, y, p.lact(f2, y, e)) == p.lact(ff, y, e));
                if !ok {
                    r.push("left composition", format!("{} ; {} at {}", c.mor_label(f), c.mor_label(f2), d.obj_label(y)));
                }
            }
        }
    }
    for g in 0..d.n_morphisms() {
        for g2 in 0..d.n_morphisms() {
            let Some(gg) = d.try_compose(g, g2) else { continue };
            for x in 0..c.n_objects() {
                let ok = (0..p.set(x, d.src(g)).len()).all(|e| p.ract(x, g2, p.ract(x, g, e)) == p.ract(x, gg, e));
                if !ok {
                    r.push("right composition", format!("{} ; {} at {}", d.mor_label(g), d.mor_label(g2), c.obj_label(x)));
                }
            }
        }
    }
    for f in 0..c.n_morphisms() {
        for g in 0..d.n_morphisms() {
            let (cc, dd) = (c.tgt(f), d.src(g));
            let ok = (0..p.set(cc, dd).len()).all(|e| {
                p.ract(c.src(f), g, p.lact(f, dd, e)) == p.lact(f, d.tgt(g), p.ract(cc, g, e))
            });
            if !ok {
                r.push("actions commute", format!("({}, {})", c.mor_label(f), d.mor_label(g)));
            }
        }
    }
    r
}

/// A transformation `P ⇒ Q` between profunctors on the same legs:
/// one table `P(c, d) -> Q(c, d)` per pair of objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfTransformation {
    pub components: Vec<Vec<usize>>,
}

impl ProfTransformation {
    pub fn identity(p: &SetProfunctor) -> Self {
        ProfTransformation { components: p.sets.iter().map(|s| (0..s.len()).collect()).collect() }
    }

    pub fn component(&self, p: &SetProfunctor, c: usize, d: usize) -> &[usize] {
        &self.components[c * p.right.n_objects() + d]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &ProfTransformation) -> ProfTransformation {
        ProfTransformation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }
}

pub fn check_prof_transformation(p: &SetProfunctor, q: &SetProfunctor, t: &ProfTransformation) -> LawReport {
    let mut r = LawReport::new();
    if p.left != q.left || p.right != q.right {
        r.push("same legs", "source and target profunctors have different legs");
        return r;
    }
    let (c, d) = (&p.left, &p.right);
    let nd = d.n_objects();
    if t.components.len() != p.sets.len() {
        r.push("component per pair", "wrong number of components");
        return r;
    }
    for (k, comp) in t.components.iter().enumerate() {
        if comp.len() != p.sets[k].len() || comp.iter().any(|&v| v >= q.sets[k].len()) {
            r.push("component typing", format!("at ({}, {})", c.obj_label(k / nd), d.obj_label(k % nd)));
        }
    }
    if !r.ok() {
        return r;
    }
    for f in 0..c.n_morphisms() {
        for y in 0..nd {
            let (from, to) = (c.tgt(f), c.src(f));
            let ok = (0..p.set(from, y).len()).all(|e| {
                t.components[to * nd + y][p.lact(f, y, e)] == q.lact(f, y, t.components[from * nd + y][e])
            });
            if !ok {
                r.push("natural in the contravariant leg", format!("{} at {}", c.mor_label(f), d.obj_label(y)));
            }
        }
    }
    for x in 0..c.n_objects() {
        for g in 0..d.n_morphisms() {
            let (from, to) = (d.src(g), d.tgt(g));
            let ok = (0..p.set(x, from).len()).all(|e| {
                t.components[x * nd + to][p.ract(x, g, e)] == q.ract(x, g, t.components[x * nd + from][e])
            });
            if !ok {
                r.push("natural in the covariant leg", format!("{} at {}", d.mor_label(g), c.obj_label(x)));
            }
        }
    }
    r
}

fn same_legs(h: &SetProfunctor) -> Result<()> {
    if h.left != h.right {
        return Err(CoreError::LegMismatch("coend/end need a profunctor from a category to itself".into()));
    }
    Ok(())
}

/// `∫^c H(c, c)`.
pub fn coend(h: &SetProfunctor) -> Result<CoendResult> {
    same_legs(h)?;
    let c = &h.left;
    let diag: Vec<FinSet> = (0..c.n_objects()).map(|o| h.set(o, o).clone()).collect();
    let mut rel = Vec::new();
    for f in 0..c.n_morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        // x ∈ H(b, a): lact(f) lands in H(a, a), ract(f) in H(b, b).
        for x in 0..h.set(b, a).len() {
            rel.push(((a, h.lact(f, a, x)), (b, h.ract(b, f, x))));
        }
    }
    Ok(coend_from_relations(c.objects(), &diag, rel))
}

/// `∫_c H(c, c)`.
pub fn end(h: &SetProfunctor) -> Result<EndResult> {
    same_legs(h)?;
    let c = &h.left;
    let diag: Vec<FinSet> = (0..c.n_objects()).map(|o| h.set(o, o).clone()).collect();
    let constraints: Vec<EndConstraint> = (0..c.n_morphisms())
        .filter(|&f| !c.is_identity(f))
        .map(|f| {
            let (a, b) = (c.src(f), c.tgt(f));
            EndConstraint { from: a, to: b, left: h.ract_table(a, f).to_vec(), right: h.lact_table(f, b).to_vec() }
        })
        .collect();
    Ok(end_from_constraints(&diag, &constraints))
}

/// The composite `P ⨟ Q : C ⇸ E`, computed pointwise as `∫^d P(c, d) × Q(d, e)`.
///
/// Also returns the coend bookkeeping per `(c, e)` so callers can trace classes.
pub fn prof_compose_with_classes(p: &SetProfunctor, q: &SetProfunctor) -> Result<(SetProfunctor, Vec<CoendResult>)> {
    if p.right != q.left {
        return Err(CoreError::LegMismatch("P.right must equal Q.left".into()));
    }
    let (cc, dd, ee) = (&p.left, &p.right, &q.right);
    let (nc, nd, ne) = (cc.n_objects(), dd.n_objects(), ee.n_objects());
    let mut coends = Vec::with_capacity(nc * ne);
    for c in 0..nc {
        for e in 0..ne {
            let diag: Vec<FinSet> = (0..nd).map(|d| product(p.set(c, d), q.set(d, e)).0).collect();
            let mut rel = Vec::new();
            for g in 0..dd.n_morphisms() {
                let (d1, d2) = (dd.src(g), dd.tgt(g));
                let (n1, n2) = (q.set(d1, e).len(), q.set(d2, e).len());
                for x in 0..p.set(c, d1).len() {
                    for y in 0..n2 {
                        rel.push(((d1, x * n1 + q.lact(g, e, y)), (d2, p.ract(c, g, x) * n2 + y)));
                    }
                }
            }
            coends.push(coend_from_relations(dd.objects(), &diag, rel));
        }
    }
    let sets: Vec<FinSet> = coends.iter().map(|r| r.quotient.carrier.clone()).collect();
    let mut lact = Vec::with_capacity(cc.n_morphisms() * ne);
    for f in 0..cc.n_morphisms() {
        for e in 0..ne {
            let (from, to) = (&coends[cc.tgt(f) * ne + e], &coends[cc.src(f) * ne + e]);
            lact.push(
                (0..from.class_count())
                    .map(|k| {
                        let (d, xy) = from.representative(k);
                        let ny = q.set(d, e).len();
                        to.class_of(d, p.lact(f, d, xy / ny) * ny + xy % ny)
                    })
                    .collect(),
            );
        }
    }
    let mut ract = Vec::with_capacity(nc * ee.n_morphisms());
    for c in 0..nc {
        for h in 0..ee.n_morphisms() {
            let (from, to) = (&coends[c * ne + ee.src(h)], &coends[c * ne + ee.tgt(h)]);
            ract.push(
                (0..from.class_count())
                    .map(|k| {
                        let (d, xy) = from.representative(k);
                        let (ny, ny2) = (q.set(d, ee.src(h)).len(), q.set(d, ee.tgt(h)).len());
                        to.class_of(d, (xy / ny) * ny2 + q.ract(d, h, xy % ny))
                    })
                    .collect(),
            );
        }
    }
    let composite = SetProfunctor::new(cc.clone(), ee.clone(), sets, lact, ract)?;
    Ok((composite, coends))
}

pub fn prof_compose(p: &SetProfunctor, q: &SetProfunctor) -> Result<SetProfunctor> {
    Ok(prof_compose_with_classes(p, q)?.0)
}

/// `(P • a)(d) = ∫^c a(c) × P(c, d)`, covariant in `d` through the right action of `P`.
pub fn compound_action_with_classes(p: &SetProfunctor, a: &Copresheaf) -> Result<(Copresheaf, Vec<CoendResult>)> {
    if *a.dom != *p.left {
        return Err(CoreError::LegMismatch("copresheaf must live on the contravariant leg".into()));
    }
    let (cc, dd) = (&p.left, &p.right);
    let mut coends = Vec::with_capacity(dd.n_objects());
    for d in 0..dd.n_objects() {
        let diag: Vec<FinSet> = (0..cc.n_objects()).map(|c| product(&a.sets[c], p.set(c, d)).0).collect();
        let mut rel = Vec::new();
        for f in 0..cc.n_morphisms() {
            let (c1, c2) = (cc.src(f), cc.tgt(f));
            let (n1, n2) = (p.set(c1, d).len(), p.set(c2, d).len());
            for x in 0..a.sets[c1].len() {
                for y in 0..n2 {
                    rel.push(((c1, x * n1 + p.lact(f, d, y)), (c2, a.actions[f][x] * n2 + y)));
                }
            }
        }
        coends.push(coend_from_relations(cc.objects(), &diag, rel));
    }
    let sets: Vec<FinSet> = coends.iter().map(|r| r.quotient.carrier.clone()).collect();
    let actions = (0..dd.n_morphisms())
        .map(|g| {
            let (from, to) = (&coends[dd.src(g)], &coends[dd.tgt(g)]);
            (0..from.class_count())
                .map(|k| {
                    let (c, xy) = from.representative(k);
                    let (n1, n2) = (p.set(c, dd.src(g)).len(), p.set(c, dd.tgt(g)).len());
                    to.class_of(c, (xy / n1) * n2 + p.ract(c, g, xy % n1))
                })
                .collect()
        })
        .collect();
    Ok((Copresheaf::new(dd.clone(), sets, actions)?, coends))
}

pub fn compound_action(p: &SetProfunctor, a: &Copresheaf) -> Result<Copresheaf> {
    Ok(compound_action_with_classes(p, a)?.0)
}

/// Action of a transformation `t: P ⇒ Q` on `P • a`, by functoriality of the coend.
/// Returns one table `(P • a)(d) -> (Q • a)(d)` per object `d`.
pub fn compound_action_map(
    p: &SetProfunctor,
    q: &SetProfunctor,
    t: &ProfTransformation,
    a: &Copresheaf,
) -> Result<Vec<Vec<usize>>> {
    let (_, pc) = compound_action_with_classes(p, a)?;
    let (_, qc) = compound_action_with_classes(q, a)?;
    let nd = p.right.n_objects();
    Ok((0..nd)
        .map(|d| {
            (0..pc[d].class_count())
                .map(|k| {
                    let (c, xy) = pc[d].representative(k);
                    let (n1, n2) = (p.set(c, d).len(), q.set(c, d).len());
                    qc[d].class_of(c, (xy / n1) * n2 + t.components[c * nd + d][xy % n1])
                })
                .collect()
        })
        .collect())
}

/// Data for the compound-optics integrand: a 1-cell `m` given by its action
/// functors on both sides, and objects `a ∈ C(o)`, `b ∈ D(o)`, `s ∈ C(o')`, `t ∈ D(o')`.
#[derive(Clone, Debug)]
pub struct CompoundInstance {
    pub act_c: FinFunctor,
    pub act_d: FinFunctor,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub t: usize,
}

/// Outcome of comparing the left Kan extension integrand with its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub lhs: usize,
    pub rhs: usize,
    pub bijection: bool,
    pub counterexample: Option<String>,
}

/// Computes `∫^{(x,y) ∈ C^op × D} C'(s, m•x) × D'(m•y, t) × C(x, a) × D(b, y)` with the
/// coend engine and checks that `[σ, τ, h, k] ↦ (σ ; m•h, m•k ; τ)` is a bijection
/// onto `C'(s, m•a) × D'(m•b, t)`.
pub fn compound_integrand_check(inst: &CompoundInstance) -> Result<IsoReport> {
    let (mc, md) = (&inst.act_c, &inst.act_d);
    let (c, c2, d, d2) = (&mc.dom, &mc.cod, &md.dom, &md.cod);
    let (pc, pc2, pd, pd2) = (c.hom_positions(), c2.hom_positions(), d.hom_positions(), d2.hom_positions());
    let nd = d.n_objects();
    // index object k = x * nd + y
    let sizes = |x: usize, y: usize| {
        [
            c2.hom(inst.s, mc.omap[x]).len(),
            d2.hom(md.omap[y], inst.t).len(),
            c.hom(x, inst.a).len(),
            d.hom(inst.b, y).len(),
        ]
    };
    let encode = |x: usize, y: usize, parts: [usize; 4]| {
        let n = sizes(x, y);
        ((parts[0] * n[1] + parts[1]) * n[2] + parts[2]) * n[3] + parts[3]
    };
    let mut index_labels = Vec::new();
    let mut diag = Vec::new();
    for x in 0..c.n_objects() {
        for y in 0..nd {
            index_labels.push(Label::pair(c.obj_label(x).clone(), d.obj_label(y).clone()));
            let mut elems = Vec::new();
            for &sg in c2.hom(inst.s, mc.omap[x]) {
                for &ta in d2.hom(md.omap[y], inst.t) {
                    for &h in c.hom(x, inst.a) {
                        for &k in d.hom(inst.b, y) {
                            elems.push(Label::tup(vec![
                                c2.mor_label(sg).clone(),
                                d2.mor_label(ta).clone(),
                                c.mor_label(h).clone(),
                                d.mor_label(k).clone(),
                            ]));
                        }
                    }
                }
            }
            diag.push(FinSet::from_sorted(elems));
        }
    }
    let index = FinSet::from_sorted(index_labels);
    let mut rel = Vec::new();
    // κ = (u: x' -> x in C, w: y -> y' in D) is a morphism (x, y) -> (x', y') of C^op × D.
    for u in 0..c.n_morphisms() {
        let (x2, x) = (c.src(u), c.tgt(u));
        for w in 0..d.n_morphisms() {
            let (y, y2) = (d.src(w), d.tgt(w));
            for &sg in c2.hom(inst.s, mc.omap[x2]) {
                for &ta in d2.hom(md.omap[y2], inst.t) {
                    for &h in c.hom(x, inst.a) {
                        for &k in d.hom(inst.b, y) {
                            let sg1 = c2.compose(sg, mc.mmap[u]);
                            let ta1 = d2.compose(md.mmap[w], ta);
                            let left = encode(x, y, [pc2[sg1], pd2[ta1], pc[h], pd[k]]);
                            let h2 = c.compose(u, h);
                            let k2 = d.compose(k, w);
                            let right = encode(x2, y2, [pc2[sg], pd2[ta], pc[h2], pd[k2]]);
                            rel.push(((x * nd + y, left), (x2 * nd + y2, right)));
                        }
                    }
                }
            }
        }
    }
    let co = coend_from_relations(&index, &diag, rel);

    let (ma, mb) = (mc.omap[inst.a], md.omap[inst.b]);
    let rhs_s = c2.hom(inst.s, ma);
    let rhs_t = d2.hom(mb, inst.t);
    let rhs = rhs_s.len() * rhs_t.len();
    let decode = |x: usize, y: usize, mut e: usize| {
        let n = sizes(x, y);
        let k = e % n[3];
        e /= n[3];
        let h = e % n[2];
        e /= n[2];
        let t = e % n[1];
        let s = e / n[1];
        (
            c2.hom(inst.s, mc.omap[x])[s],
            d2.hom(md.omap[y], inst.t)[t],
            c.hom(x, inst.a)[h],
            d.hom(inst.b, y)[k],
        )
    };
    // forward on every member; must be constant on classes
    let mut forward = vec![usize::MAX; co.class_count()];
    for x in 0..c.n_objects() {
        for y in 0..nd {
            for e in 0..co.diagonal_len(x * nd + y) {
                let (sg, ta, h, k) = decode(x, y, e);
                let s_out = c2.compose(sg, mc.mmap[h]);
                let t_out = d2.compose(md.mmap[k], ta);
                let img = pc2[s_out] * rhs_t.len() + pd2[t_out];
                let class = co.class_of(x * nd + y, e);
                if forward[class] == usize::MAX {
                    forward[class] = img;
                } else if forward[class] != img {
                    return Ok(IsoReport {
                        lhs: co.class_count(),
                        rhs,
                        bijection: false,
                        counterexample: Some(format!("comparison map not constant on class {}", co.class_label(class))),
                    });
                }
            }
        }
    }
    // inverse (σ, τ) ↦ [(a, b), σ, τ, id_a, id_b]
    let (ia, ib) = (c.id(inst.a), d.id(inst.b));
    let k_ab = inst.a * nd + inst.b;
    let mut counterexample = None;
    for (si, &sg) in rhs_s.iter().enumerate() {
        for (ti, &ta) in rhs_t.iter().enumerate() {
            let e = encode(inst.a, inst.b, [pc2[sg], pd2[ta], pc[ia], pd[ib]]);
            let class = co.class_of(k_ab, e);
            if forward[class] != si * rhs_t.len() + ti && counterexample.is_none() {
                counterexample = Some(format!("({}, {}) does not round-trip", c2.mor_label(sg), d2.mor_label(ta)));
            }
        }
    }
    if counterexample.is_none() && co.class_count() != rhs {
        counterexample = Some(format!("{} classes against {} pairs", co.class_count(), rhs));
    }
    Ok(IsoReport { lhs: co.class_count(), rhs, bijection: counterexample.is_none(), counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{check_copresheaf, FinCategory};

    fn arrow() -> Arc<FinCategory> {
        Arc::new(FinCategory::walking_arrow())
    }

    #[test]
    fn hom_profunctor_is_lawful() {
        let c = Arc::new(FinCategory::cyclic_group(3).product(&FinCategory::walking_arrow()));
        assert!(check_profunctor(&SetProfunctor::hom(&c)).ok());
    }

    #[test]
    fn coend_examples() {
        let disc = Arc::new(FinCategory::discrete(4));
        assert_eq!(coend(&SetProfunctor::hom(&disc)).unwrap().class_count(), 4);
        assert_eq!(coend(&SetProfunctor::hom(&arrow())).unwrap().class_count(), 2);
        let k = SetProfunctor::constant(&arrow(), &arrow(), &FinSet::range(3));
        assert_eq!(coend(&k).unwrap().class_count(), 3);
    }

    #[test]
    fn end_examples() {
        assert_eq!(end(&SetProfunctor::hom(&arrow())).unwrap().len(), 1);
        let disc = Arc::new(FinCategory::discrete(3));
        let k = SetProfunctor::constant(&disc, &disc, &FinSet::range(2));
        assert_eq!(end(&k).unwrap().len(), 8);
        let e = SetProfunctor::build(
            arrow(),
            arrow(),
            |c, d| if c == 1 && d == 1 { FinSet::empty() } else { FinSet::range(1) },
            |_, _, x| x.clone(),
            |_, _, x| x.clone(),
        );
        // the build fails because actions into the empty set cannot exist
        assert!(e.is_err());
    }

    #[test]
    fn mismatched_legs_rejected() {
        let p = SetProfunctor::constant(&arrow(), &Arc::new(FinCategory::terminal()), &FinSet::range(1));
        assert!(matches!(coend(&p), Err(CoreError::LegMismatch(_))));
        assert!(matches!(end(&p), Err(CoreError::LegMismatch(_))));
    }

    #[test]
    fn compound_action_over_terminal_is_a_product() {
        let t = Arc::new(FinCategory::terminal());
        let d = arrow();
        let p = SetProfunctor::constant(&t, &d, &FinSet::range(3));
        let a = Copresheaf::new(t.clone(), vec![FinSet::range(2)], vec![vec![0, 1]]).unwrap();
        let pa = compound_action(&p, &a).unwrap();
        assert!(check_copresheaf(&pa).ok());
        assert!(pa.sets.iter().all(|s| s.len() == 6));
    }

    #[test]
    fn empty_composites() {
        let c = arrow();
        let p = SetProfunctor::constant(&c, &c, &FinSet::empty());
        let pq = prof_compose(&p, &SetProfunctor::hom(&c)).unwrap();
        assert_eq!(pq.total_size(), 0);
    }

    #[test]
    fn identity_one_cell_integrand() {
        let c = arrow();
        let inst = CompoundInstance {
            act_c: FinFunctor::identity(&c),
            act_d: FinFunctor::identity(&c),
            a: 1,
            b: 0,
            s: 0,
            t: 1,
        };
        let r = compound_integrand_check(&inst).unwrap();
        assert!(r.bijection, "{r:?}");
        assert_eq!(r.rhs, 1);
        // empty hom on one side: C(1, 0) is empty
        let inst = CompoundInstance { s: 1, a: 0, ..inst };
        let r = compound_integrand_check(&inst).unwrap();
        assert!(r.bijection);
        assert_eq!((r.lhs, r.rhs), (0, 0));
    }
}
