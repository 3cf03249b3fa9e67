//! Dependent lenses over finite sets: slice categories, the canonical span
//! action `q_* p^*`, the lemma splitting `I/j(v, q_* p^* u)` into a sum over
//! forward maps, the reduced optic hom between cospans, and the comparison
//! with the usual category of dependent lenses.
//!
//! Carriers are `0..n`; maps are plain tables. Pullbacks list their pairs
//! `(x, y)` in nested order, which fixes every index below.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::fincat::{Copresheaf, FinCategory};
use crate::finset::{all_tables, FinFunction, FinSet, Label};
use crate::optic::{OpticHom, OpticIntegrand};
use crate::par::Exec;
use crate::span::{span_hom_category, Span};

/// Pairs `(x, y)` with `f x = g y`, in nested order.
pub fn pullback_pairs(f: &[usize], g: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, &fx) in f.iter().enumerate() {
        for (y, &gy) in g.iter().enumerate() {
            if fx == gy {
                out.push((x, y));
            }
        }
    }
    out
}

fn pair_index(pairs: &[(usize, usize)], ny: usize) -> HashMap<usize, usize> {
    pairs.iter().enumerate().map(|(k, &(x, y))| (x * ny + y, k)).collect()
}

/// Every choice function: one entry from each option list, in odometer order.
pub fn sections(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if options.iter().any(|o| o.is_empty()) {
        return out;
    }
    let mut digits = vec![0; options.len()];
    loop {
        out.push(digits.iter().zip(options).map(|(&d, o)| o[d]).collect());
        let mut k = options.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < options[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn count_sections(options: &[Vec<usize>]) -> usize {
    options.iter().map(Vec::len).product()
}

/// An object of `I/i`: a map from its total set to the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObject {
    pub map: FinFunction,
}

impl SliceObject {
    pub fn new(map: FinFunction) -> Self {
        SliceObject { map }
    }

    pub fn total(&self) -> &FinSet {
        self.map.dom()
    }

    pub fn base(&self) -> &FinSet {
        self.map.cod()
    }

    /// Slice morphisms `self -> other`: maps `h` with `h ; other = self`.
    pub fn homs(&self, other: &SliceObject) -> Vec<FinFunction> {
        let options: Vec<Vec<usize>> = (0..self.total().len())
            .map(|x| (0..other.total().len()).filter(|&y| other.map.apply(y) == self.map.apply(x)).collect())
            .collect();
        sections(&options)
            .into_iter()
            .map(|t| FinFunction::new(self.total().clone(), other.total().clone(), t).expect("section table"))
            .collect()
    }
}

/// `I/i` restricted to totals of size at most `bound`, one object per
/// isomorphism class (nondecreasing maps on `0..n`).
pub fn slice_category(i: &FinSet, bound: usize, max_morphisms: usize) -> Result<(FinCategory, Vec<SliceObject>)> {
    let mut objs: Vec<Vec<usize>> = Vec::new();
    for n in 0..=bound {
        objs.extend(nondecreasing(i.len(), n));
    }
    objs.sort_by_key(|t| Label::table(t));
    let mut mors: Vec<(Label, usize, usize)> = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut ident = vec![0; objs.len()];
    for (a, sa) in objs.iter().enumerate() {
        for (b, sb) in objs.iter().enumerate() {
            let options: Vec<Vec<usize>> = sa.iter().map(|&x| (0..sb.len()).filter(|&y| sb[y] == x).collect()).collect();
            for h in sections(&options) {
                if a == b && h.iter().enumerate().all(|(x, &y)| x == y) {
                    ident[a] = mors.len();
                }
                mors.push((Label::tup(vec![Label::table(sa), Label::table(sb), Label::table(&h)]), a, b));
                maps.push(h);
                if mors.len() > max_morphisms {
                    return Err(CoreError::TooLarge { what: "slice category".into(), size: mors.len(), limit: max_morphisms });
                }
            }
        }
    }
    let lookup: HashMap<(usize, usize, Vec<usize>), usize> =
        mors.iter().zip(&maps).enumerate().map(|(k, ((_, a, b), h))| ((*a, *b, h.clone()), k)).collect();
    let cat = FinCategory::from_unsorted(objs.iter().map(|t| Label::table(t)).collect(), mors.clone(), ident, |f, g| {
        let h: Vec<usize> = maps[f].iter().map(|&x| maps[g][x]).collect();
        lookup.get(&(mors[f].1, mors[g].2, h)).copied()
    })?;
    let slices = objs
        .into_iter()
        .map(|t| SliceObject::new(FinFunction::new(FinSet::range(t.len()), i.clone(), t).expect("slice table")))
        .collect();
    Ok((cat, slices))
}

fn nondecreasing(width: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in nondecreasing(width, len - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for v in lo..width {
            let mut s = rest.clone();
            s.push(v);
            out.push(s);
        }
    }
    out
}

/// `q_* p^* u`: pull `u` back along `p`, then postcompose with `q`. The total
/// set is labelled by pairs `(x, z)`.
pub fn pull_push(span: &Span, u: &SliceObject) -> Result<SliceObject> {
    if u.base() != span.left_foot() {
        return Err(CoreError::LegMismatch("slice base differs from the left foot".into()));
    }
    let (apex, _, pz) = crate::finset::pullback(&u.map, &span.p)?;
    let _ = apex;
    Ok(SliceObject::new(pz.then(&span.q)?))
}

/// `q_* p^*` on a slice morphism `h: u -> u2`: `(x, z) ↦ (h x, z)`.
pub fn pull_push_mor(span: &Span, u: &SliceObject, u2: &SliceObject, h: &FinFunction) -> Result<FinFunction> {
    let src = pull_push(span, u)?;
    let tgt = pull_push(span, u2)?;
    let a = pullback_pairs(u.map.table(), span.p.table());
    let b = pair_index(&pullback_pairs(u2.map.table(), span.p.table()), span.apex().len());
    let table = a.iter().map(|&(x, z)| b[&(h.apply(x) * span.apex().len() + z)]).collect();
    FinFunction::new(src.total().clone(), tgt.total().clone(), table)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lhs: usize,
    pub rhs: usize,
    pub bijection: bool,
    pub witness: Option<String>,
}

/// `I/j(v, q_* p^* u) ≅ Σ_{f: s -> a} I/(i × j)(⟨f ; u, v⟩, ⟨p, q⟩)` on tables,
/// through `φ ↦ (φ ; π_a, φ ; π_z)` and back through the pullback.
pub fn lemma_tables(u: &[usize], v: &[usize], p: &[usize], q: &[usize], na: usize) -> LemmaReport {
    let nz = p.len();
    let pb = pullback_pairs(u, p);
    let pos = pair_index(&pb, nz);
    let mut r = LemmaReport { bijection: true, ..Default::default() };
    let fail = |r: &mut LemmaReport, w: String| {
        r.bijection = false;
        r.witness.get_or_insert(w);
    };
    // left: φ: s -> u ×_i p over j
    let options: Vec<Vec<usize>> = v.iter().map(|&vk| (0..pb.len()).filter(|&e| q[pb[e].1] == vk).collect()).collect();
    for phi in sections(&options) {
        r.lhs += 1;
        let f: Vec<usize> = phi.iter().map(|&e| pb[e].0).collect();
        let g: Vec<usize> = phi.iter().map(|&e| pb[e].1).collect();
        let typed = (0..v.len()).all(|k| p[g[k]] == u[f[k]] && q[g[k]] == v[k]);
        let back: Vec<Option<usize>> = (0..v.len()).map(|k| pos.get(&(f[k] * nz + g[k])).copied()).collect();
        if !typed || back.iter().zip(&phi).any(|(b, &e)| *b != Some(e)) {
            fail(&mut r, format!("φ = {phi:?} does not round-trip"));
        }
    }
    // right: pairs (f, g)
    for f in all_tables(v.len(), na) {
        let options: Vec<Vec<usize>> =
            (0..v.len()).map(|k| (0..nz).filter(|&z| p[z] == u[f[k]] && q[z] == v[k]).collect()).collect();
        for g in sections(&options) {
            r.rhs += 1;
            let phi: Vec<Option<usize>> = (0..v.len()).map(|k| pos.get(&(f[k] * nz + g[k])).copied()).collect();
            let ok = phi.iter().enumerate().all(|(k, e)| e.is_some_and(|e| pb[e] == (f[k], g[k]) && q[pb[e].1] == v[k]));
            if !ok {
                fail(&mut r, format!("(f, g) = ({f:?}, {g:?}) does not round-trip"));
            }
        }
    }
    if r.lhs != r.rhs {
        let w = format!("{} against {}", r.lhs, r.rhs);
        fail(&mut r, w);
    }
    r
}

/// The lemma on labelled data: `u: a -> i`, `v: s -> j`, span `i <-p- z -q-> j`.
pub fn dlens_lemma_bijection(u: &FinFunction, v: &FinFunction, span: &Span) -> Result<LemmaReport> {
    if u.cod() != span.left_foot() || v.cod() != span.right_foot() {
        return Err(CoreError::LegMismatch("feet of the span differ from the bases".into()));
    }
    Ok(lemma_tables(u.table(), v.table(), span.p.table(), span.q.table(), u.dom().len()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub instances: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl SweepReport {
    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.instances += other.instances;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }
}

/// The lemma for every `(u, v, p, q)` with all carriers of size at most `max`.
pub fn lemma_sweep(max: usize, exec: Exec) -> SweepReport {
    let tables: Vec<Vec<Vec<Vec<usize>>>> =
        (0..=max).map(|d| (0..=max).map(|c| all_tables(d, c).collect()).collect()).collect();
    let mut jobs = Vec::new();
    for ni in 0..=max {
        for nj in 0..=max {
            for na in 0..=max {
                for ns in 0..=max {
                    for nz in 0..=max {
                        for ui in 0..tables[na][ni].len() {
                            jobs.push((ni, nj, na, ns, nz, ui));
                        }
                    }
                }
            }
        }
    }
    let parts = exec.map(jobs, |(ni, nj, na, ns, nz, ui)| {
        let mut rep = SweepReport::default();
        let u = &tables[na][ni][ui];
        for v in &tables[ns][nj] {
            for p in &tables[nz][ni] {
                for q in &tables[nz][nj] {
                    rep.instances += 1;
                    let r = lemma_tables(u, v, p, q, na);
                    if !r.bijection {
                        rep.failures += 1;
                        rep.witness.get_or_insert_with(|| {
                            format!("u={u:?} v={v:?} p={p:?} q={q:?}: {}", r.witness.unwrap_or_default())
                        });
                    }
                }
            }
        }
        rep
    });
    parts.into_iter().fold(SweepReport::default(), SweepReport::merge)
}

/// A cospan `a -left-> apex <-right- b` of finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cospan {
    pub apex: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Cospan {
    pub fn new(apex: usize, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        if left.iter().chain(&right).any(|&x| x >= apex) {
            return Err(CoreError::Shape("cospan leg leaves its apex".into()));
        }
        Ok(Cospan { apex, left, right })
    }

    /// Every cospan with apex and feet of size at most `max`.
    pub fn all(max: usize) -> Vec<Cospan> {
        let mut out = Vec::new();
        for i in 0..=max {
            for a in 0..=max {
                for b in 0..=max {
                    for l in all_tables(a, i) {
                        for r in all_tables(b, i) {
                            out.push(Cospan { apex: i, left: l.clone(), right: r });
                        }
                    }
                }
            }
        }
        out
    }
}

/// An element `(f, f♯)` of the reduced optic hom from `(s, v, v', t)` to
/// `(a, u, u', b)`: `f: s -> a`, and `f♯` on the pullback `s ×_i b` of
/// `f ; u` and `u'` (nested order) into `t`, over `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedOptic {
    pub f: Vec<usize>,
    pub fsharp: Vec<usize>,
}

impl ReducedOptic {
    pub fn label(&self) -> Label {
        Label::pair(Label::table(&self.f), Label::table(&self.fsharp))
    }
}

fn then(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// `Σ_{f: s -> a} I/j(v_* (f ; u)^* u', v')`.
pub fn reduced_optics(src: &Cospan, tgt: &Cospan) -> Vec<ReducedOptic> {
    let mut out = Vec::new();
    for f in all_tables(src.left.len(), tgt.left.len()) {
        let q = pullback_pairs(&then(&f, &tgt.left), &tgt.right);
        let options: Vec<Vec<usize>> = q
            .iter()
            .map(|&(k, _)| (0..src.right.len()).filter(|&w| src.right[w] == src.left[k]).collect())
            .collect();
        for fsharp in sections(&options) {
            out.push(ReducedOptic { f: f.clone(), fsharp });
        }
    }
    out
}

pub fn reduced_optic_count(src: &Cospan, tgt: &Cospan) -> usize {
    all_tables(src.left.len(), tgt.left.len())
        .map(|f| {
            let q = pullback_pairs(&then(&f, &tgt.left), &tgt.right);
            let options: Vec<Vec<usize>> = q
                .iter()
                .map(|&(k, _)| (0..src.right.len()).filter(|&w| src.right[w] == src.left[k]).collect())
                .collect();
            count_sections(&options)
        })
        .sum()
}

/// The reduced optic hom as a labelled set.
pub fn reduced_optic_hom(src: &Cospan, tgt: &Cospan) -> FinSet {
    FinSet::collect(reduced_optics(src, tgt).iter().map(ReducedOptic::label))
}

pub fn reduced_identity(c: &Cospan) -> ReducedOptic {
    let f: Vec<usize> = (0..c.left.len()).collect();
    let fsharp = pullback_pairs(&c.left, &c.right).into_iter().map(|(_, w)| w).collect();
    ReducedOptic { f, fsharp }
}

/// `x ; y` for `x` from `A = (s, v, v', t)` to `B = (a, u, u', b)` and `y` from
/// `B` to `C = (c, w, w', d)`: forward `f ; g`, backward
/// `(k, e) ↦ f♯(k, g♯(f k, e))`.
pub fn reduced_compose(a: &Cospan, b: &Cospan, c: &Cospan, x: &ReducedOptic, y: &ReducedOptic) -> Result<ReducedOptic> {
    let qx = pair_index(&pullback_pairs(&then(&x.f, &b.left), &b.right), b.right.len());
    let qy = pair_index(&pullback_pairs(&then(&y.f, &c.left), &c.right), c.right.len());
    let f = then(&x.f, &y.f);
    let qxy = pullback_pairs(&then(&f, &c.left), &c.right);
    let mut fsharp = Vec::with_capacity(qxy.len());
    for (k, e) in qxy {
        let inner = qy.get(&(x.f[k] * c.right.len() + e)).map(|&pos| y.fsharp[pos]);
        let outer = inner.and_then(|bb| qx.get(&(k * b.right.len() + bb))).map(|&pos| x.fsharp[pos]);
        match outer {
            Some(t) => fsharp.push(t),
            None => return Err(CoreError::Shape("reduced optics are not composable".into())),
        }
    }
    let _ = a;
    Ok(ReducedOptic { f, fsharp })
}

/// A bundle `π: E -> A`, an object of the category of dependent lenses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bundle {
    pub base: usize,
    pub pi: Vec<usize>,
}

/// A dependent lens `(A, π) -> (A', π')`: `f: A -> A'` and `f♯` from the
/// pullback `A ×_{A'} E'` (nested order) to `E`, over `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DLensMorphism {
    pub f: Vec<usize>,
    pub fsharp: Vec<usize>,
}

pub fn dlens_homs(src: &Bundle, tgt: &Bundle) -> Vec<DLensMorphism> {
    let mut out = Vec::new();
    for f in all_tables(src.base, tgt.base) {
        let pb = pullback_pairs(&f, &tgt.pi);
        let options: Vec<Vec<usize>> = pb.iter().map(|&(x, _)| (0..src.pi.len()).filter(|&e| src.pi[e] == x).collect()).collect();
        for fsharp in sections(&options) {
            out.push(DLensMorphism { f: f.clone(), fsharp });
        }
    }
    out
}

pub fn dlens_identity(b: &Bundle) -> DLensMorphism {
    let f: Vec<usize> = (0..b.base).collect();
    let fsharp = pullback_pairs(&f, &b.pi).into_iter().map(|(_, e)| e).collect();
    DLensMorphism { f, fsharp }
}

/// `(f, f♯) ; (g, g♯) = (f ; g, (x, e'') ↦ f♯(x, g♯(f x, e'')))`.
pub fn dlens_compose(a: &Bundle, b: &Bundle, c: &Bundle, x: &DLensMorphism, y: &DLensMorphism) -> Result<DLensMorphism> {
    let px = pair_index(&pullback_pairs(&x.f, &b.pi), b.pi.len());
    let py = pair_index(&pullback_pairs(&y.f, &c.pi), c.pi.len());
    let f = then(&x.f, &y.f);
    let mut fsharp = Vec::new();
    for (k, e) in pullback_pairs(&f, &c.pi) {
        let mid = py.get(&(x.f[k] * c.pi.len() + e)).map(|&pos| y.fsharp[pos]);
        match mid.and_then(|m| px.get(&(k * b.pi.len() + m))) {
            Some(&pos) => fsharp.push(x.fsharp[pos]),
            None => return Err(CoreError::Shape("dependent lenses are not composable".into())),
        }
    }
    let _ = a;
    Ok(DLensMorphism { f, fsharp })
}

/// Every bundle with `|A|, |E| <= max`, one per isomorphism class.
pub fn bundles(max: usize) -> Vec<Bundle> {
    let mut out = Vec::new();
    for base in 0..=max {
        for e in 0..=max {
            out.extend(nondecreasing(base, e).into_iter().map(|pi| Bundle { base, pi }));
        }
    }
    out
}

/// The bounded category of dependent lenses as a finite category.
pub fn dlens_category(max: usize, max_morphisms: usize) -> Result<(FinCategory, Vec<Bundle>)> {
    let objs = bundles(max);
    let label = |b: &Bundle| Label::pair(Label::from(b.base), Label::table(&b.pi));
    let mut mors: Vec<(Label, usize, usize)> = Vec::new();
    let mut data: Vec<DLensMorphism> = Vec::new();
    let mut ident = vec![0; objs.len()];
    for (a, sa) in objs.iter().enumerate() {
        for (b, sb) in objs.iter().enumerate() {
            for m in dlens_homs(sa, sb) {
                if a == b && m == dlens_identity(sa) {
                    ident[a] = mors.len();
                }
                mors.push((Label::tup(vec![label(sa), label(sb), Label::table(&m.f), Label::table(&m.fsharp)]), a, b));
                data.push(m);
                if mors.len() > max_morphisms {
                    return Err(CoreError::TooLarge { what: "dependent lens category".into(), size: mors.len(), limit: max_morphisms });
                }
            }
        }
    }
    let lookup: HashMap<(usize, usize, DLensMorphism), usize> =
        mors.iter().zip(&data).enumerate().map(|(k, ((_, a, b), m))| ((*a, *b, m.clone()), k)).collect();
    let cat = FinCategory::from_unsorted(objs.iter().map(label).collect(), mors.clone(), ident, |f, g| {
        let (a, b, c) = (mors[f].1, mors[f].2, mors[g].2);
        let h = dlens_compose(&objs[a], &objs[b], &objs[c], &data[f], &data[g]).ok()?;
        lookup.get(&(a, c, h)).copied()
    })?;
    Ok((cat, objs))
}

/// The comparison functor on objects: `a -u-> i <-u'- b` goes to
/// `u^* u': b ×_i a -> a`, with the pullback listing pairs `(y, x)`.
pub fn compare_object(c: &Cospan) -> Bundle {
    Bundle { base: c.left.len(), pi: pullback_pairs(&c.right, &c.left).into_iter().map(|(_, x)| x).collect() }
}

/// The comparison functor on morphisms: `(f, f♯) ↦ (f, (k, (y, f k)) ↦ (f♯(k, y), k))`.
pub fn compare_morphism(src: &Cospan, tgt: &Cospan, m: &ReducedOptic) -> DLensMorphism {
    let e_src = pair_index(&pullback_pairs(&src.right, &src.left), src.left.len());
    let e_tgt = pullback_pairs(&tgt.right, &tgt.left);
    let q = pair_index(&pullback_pairs(&then(&m.f, &tgt.left), &tgt.right), tgt.right.len());
    let fsharp = pullback_pairs(&m.f, &e_tgt.iter().map(|&(_, x)| x).collect::<Vec<_>>())
        .into_iter()
        .map(|(k, e)| {
            let y = e_tgt[e].0;
            let t = m.fsharp[q[&(k * tgt.right.len() + y)]];
            e_src[&(t * src.left.len() + k)]
        })
        .collect();
    DLensMorphism { f: m.f.clone(), fsharp }
}

/// The inverse on hom-sets: `f♯(k, y)` is the first component of `f♯'(k, (y, f k))`.
pub fn uncompare_morphism(src: &Cospan, tgt: &Cospan, d: &DLensMorphism) -> Option<ReducedOptic> {
    let e_src = pullback_pairs(&src.right, &src.left);
    let e_tgt = pair_index(&pullback_pairs(&tgt.right, &tgt.left), tgt.left.len());
    let tgt_pi: Vec<usize> = pullback_pairs(&tgt.right, &tgt.left).into_iter().map(|(_, x)| x).collect();
    let pb = pair_index(&pullback_pairs(&d.f, &tgt_pi), tgt_pi.len());
    let mut fsharp = Vec::new();
    for (k, y) in pullback_pairs(&then(&d.f, &tgt.left), &tgt.right) {
        let e = *e_tgt.get(&(y * tgt.left.len() + d.f[k]))?;
        let (t, k2) = e_src[d.fsharp[*pb.get(&(k * tgt_pi.len() + e))?]];
        if k2 != k {
            return None;
        }
        fsharp.push(t);
    }
    Some(ReducedOptic { f: d.f.clone(), fsharp })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub objects: usize,
    pub hom_pairs: usize,
    pub morphisms: usize,
    pub full: bool,
    pub faithful: bool,
    pub essentially_surjective: bool,
    pub identities: bool,
    pub composable_pairs: usize,
    pub compositions: bool,
    pub witness: Option<String>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.full && self.faithful && self.essentially_surjective && self.identities && self.compositions
    }
}

/// Checks the comparison functor from cospans with carriers `<= max` to
/// dependent lenses: bijective on every hom-set, identities, composition on
/// `samples` random composable pairs, and every bundle hit exactly by a
/// cospan with identity left leg.
pub fn equivalence_check(max: usize, samples: usize, seed: u64, exec: Exec) -> EquivalenceReport {
    let objs = Cospan::all(max);
    let mut rep = EquivalenceReport { objects: objs.len(), full: true, faithful: true, essentially_surjective: true, identities: true, compositions: true, ..Default::default() };
    let pairs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|a| (0..objs.len()).map(move |b| (a, b))).collect();
    rep.hom_pairs = pairs.len();
    let results = exec.map(pairs, |(a, b)| {
        let (s, t) = (&objs[a], &objs[b]);
        let homs = reduced_optics(s, t);
        let images: Vec<DLensMorphism> = homs.iter().map(|m| compare_morphism(s, t, m)).collect();
        let mut target = dlens_homs(&compare_object(s), &compare_object(t));
        target.sort();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        let faithful = sorted.len() == images.len();
        let full = sorted == target;
        let inverse = homs.iter().zip(&images).all(|(m, d)| uncompare_morphism(s, t, d).as_ref() == Some(m));
        (homs.len(), faithful, full && inverse, format!("{s:?} -> {t:?}"))
    });
    for (n, faithful, full, w) in results {
        rep.morphisms += n;
        if !faithful {
            rep.faithful = false;
            rep.witness.get_or_insert(format!("not faithful on {w}"));
        }
        if !full {
            rep.full = false;
            rep.witness.get_or_insert(format!("not full on {w}"));
        }
    }
    for c in &objs {
        if compare_morphism(c, c, &reduced_identity(c)) != dlens_identity(&compare_object(c)) {
            rep.identities = false;
            rep.witness.get_or_insert(format!("identity of {c:?}"));
        }
    }
    for b in &all_bundles(max) {
        let c = Cospan { apex: b.base, left: (0..b.base).collect(), right: b.pi.clone() };
        if compare_object(&c) != *b {
            rep.essentially_surjective = false;
            rep.witness.get_or_insert(format!("bundle {b:?} is not hit"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while rep.composable_pairs < samples && attempts < samples * 1000 {
        attempts += 1;
        let (a, b, c) = (objs.choose(&mut rng).unwrap(), objs.choose(&mut rng).unwrap(), objs.choose(&mut rng).unwrap());
        let (ab, bc) = (reduced_optics(a, b), reduced_optics(b, c));
        let (Some(x), Some(y)) = (ab.choose(&mut rng), bc.choose(&mut rng)) else { continue };
        rep.composable_pairs += 1;
        let ok = reduced_compose(a, b, c, x, y).ok().is_some_and(|xy| {
            let (fa, fb, fc) = (compare_object(a), compare_object(b), compare_object(c));
            let lhs = compare_morphism(a, c, &xy);
            let rhs = dlens_compose(&fa, &fb, &fc, &compare_morphism(a, b, x), &compare_morphism(b, c, y));
            rhs.ok() == Some(lhs)
        });
        if !ok {
            rep.compositions = false;
            rep.witness.get_or_insert(format!("composition along {a:?} -> {b:?} -> {c:?}"));
        }
    }
    if rep.composable_pairs < samples {
        rep.compositions = false;
        rep.witness.get_or_insert(format!("only {} composable pairs found", rep.composable_pairs));
    }
    rep
}

/// Every bundle with `|A|, |E| <= max`, not just one per isomorphism class.
pub fn all_bundles(max: usize) -> Vec<Bundle> {
    let mut out = Vec::new();
    for base in 0..=max {
        for e in 0..=max {
            out.extend(all_tables(e, base).map(|pi| Bundle { base, pi }));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedReport {
    pub bound: usize,
    pub count: usize,
    pub next_count: usize,
    pub reduced: usize,
    pub stabilized: bool,
}

fn sorted_elements(elems: Vec<Vec<usize>>) -> (FinSet, HashMap<Vec<usize>, usize>) {
    let set = FinSet::collect(elems.iter().map(|t| Label::table(t)));
    let index = elems
        .into_iter()
        .map(|t| {
            let k = set.index_of(&Label::table(&t)).expect("own element");
            (t, k)
        })
        .collect();
    (set, index)
}

/// `∫^{i <-p- z -q-> j, |z| <= bound} I/j(v, q_* p^* u) × I/j(q_* p^* u', v')`
/// for `src = (s, v, v', t)` and `tgt = (a, u, u', b)`.
pub fn truncated_coend_count(src: &Cospan, tgt: &Cospan, bound: usize, max_morphisms: usize) -> Result<usize> {
    let (i, j) = (FinSet::range(tgt.apex), FinSet::range(src.apex));
    let (k, spans) = span_hom_category(&i, &j, bound, max_morphisms)?;
    let k = std::sync::Arc::new(k);
    // spans are listed in object order
    let fwd_pb: Vec<Vec<(usize, usize)>> = spans.iter().map(|z| pullback_pairs(&tgt.left, z.p.table())).collect();
    let back_pb: Vec<Vec<(usize, usize)>> = spans.iter().map(|z| pullback_pairs(&tgt.right, z.p.table())).collect();
    let mut fwd_sets = Vec::new();
    let mut fwd_index = Vec::new();
    let mut back_sets = Vec::new();
    let mut back_index = Vec::new();
    for (zi, z) in spans.iter().enumerate() {
        let q = z.q.table();
        let options: Vec<Vec<usize>> =
            src.left.iter().map(|&vk| (0..fwd_pb[zi].len()).filter(|&e| q[fwd_pb[zi][e].1] == vk).collect()).collect();
        let elems = sections(&options)
            .into_iter()
            .map(|phi| phi.iter().flat_map(|&e| [fwd_pb[zi][e].0, fwd_pb[zi][e].1]).collect())
            .collect();
        let (s, ix) = sorted_elements(elems);
        fwd_sets.push(s);
        fwd_index.push(ix);
        let options: Vec<Vec<usize>> = back_pb[zi]
            .iter()
            .map(|&(_, zz)| (0..src.right.len()).filter(|&w| src.right[w] == q[zz]).collect())
            .collect();
        let (s, ix) = sorted_elements(sections(&options));
        back_sets.push(s);
        back_index.push(ix);
    }
    let mut fwd_actions = Vec::new();
    let mut back_actions = Vec::new();
    for h in 0..k.n_morphisms() {
        let Label::Tup(parts) = k.mor_label(h) else { unreachable!("span morphisms are tuples") };
        let map = parts[2].as_table().expect("apex map");
        let (a, b) = (k.src(h), k.tgt(h));
        let nz_b = spans[b].apex().len();
        fwd_actions.push(
            fwd_sets[a]
                .iter()
                .map(|l| {
                    let mut t = l.as_table().expect("table");
                    for pair in t.chunks_mut(2) {
                        pair[1] = map[pair[1]];
                    }
                    fwd_index[b][&t]
                })
                .collect(),
        );
        let pos_b = pair_index(&back_pb[b], nz_b);
        back_actions.push(
            back_sets[b]
                .iter()
                .map(|l| {
                    let psi = l.as_table().expect("table");
                    let t: Vec<usize> = back_pb[a].iter().map(|&(y, zz)| psi[pos_b[&(y * nz_b + map[zz])]]).collect();
                    back_index[a][&t]
                })
                .collect(),
        );
    }
    let integrand = OpticIntegrand::new(
        k.clone(),
        Copresheaf::new(k.clone(), fwd_sets, fwd_actions)?,
        Copresheaf::new(std::sync::Arc::new(k.opposite()), back_sets, back_actions)?,
    )?;
    Ok(OpticHom::from_integrand(integrand).count())
}

/// The truncated coend at `bound` and `bound + 1`, compared with the reduced count.
pub fn truncated_coend_optic(src: &Cospan, tgt: &Cospan, bound: usize, max_morphisms: usize) -> Result<TruncatedReport> {
    let count = truncated_coend_count(src, tgt, bound, max_morphisms)?;
    let next_count = truncated_coend_count(src, tgt, bound + 1, max_morphisms)?;
    let reduced = reduced_optic_count(src, tgt);
    Ok(TruncatedReport { bound, count, next_count, reduced, stabilized: count == next_count && count == reduced })
}

/// For the pullback square of `f: a -> c` and `g: b -> c` and a bounded slice
/// over `a`, compares `g^* f_!` with `k_! h^*` on objects and morphisms through
/// the canonical map `(x, y) ↦ (x, (e x, y))`.
pub fn beck_chevalley_sweep(max: usize, slice_bound: usize) -> SweepReport {
    let mut rep = SweepReport::default();
    for nc in 0..=max {
        for na in 0..=max {
            for nb in 0..=max {
                for f in all_tables(na, nc) {
                    for g in all_tables(nb, nc) {
                        let sq = pullback_pairs(&f, &g);
                        let sq_pos = pair_index(&sq, nb);
                        let h: Vec<usize> = sq.iter().map(|&(x, _)| x).collect();
                        let slices: Vec<Vec<usize>> = (0..=slice_bound).flat_map(|n| all_tables(n, na)).collect();
                        for e in &slices {
                            rep.instances += 1;
                            // g^* f_! e and k_! h^* e
                            let left = pullback_pairs(&then(e, &f), &g);
                            let right = pullback_pairs(e, &h);
                            let right_pos = pair_index(&right, sq.len());
                            let canon: Option<Vec<usize>> = left
                                .iter()
                                .map(|&(x, y)| sq_pos.get(&(e[x] * nb + y)).and_then(|&w| right_pos.get(&(x * sq.len() + w))).copied())
                                .collect();
                            let ok = canon.as_ref().is_some_and(|c| {
                                let mut s = c.clone();
                                s.sort_unstable();
                                s.dedup();
                                s.len() == right.len()
                                    && c.len() == right.len()
                                    && left.iter().zip(c).all(|(&(_, y), &r)| sq[right[r].1].1 == y)
                            });
                            let natural = ok
                                && slices.iter().all(|e2| {
                                    let left2 = pair_index(&pullback_pairs(&then(e2, &f), &g), nb);
                                    let right2 = pair_index(&pullback_pairs(e2, &h), sq.len());
                                    let canon2 = |x: usize, y: usize| right2[&(x * sq.len() + sq_pos[&(e2[x] * nb + y)])];
                                    let options: Vec<Vec<usize>> = e.iter().map(|&ax| (0..e2.len()).filter(|&x2| e2[x2] == ax).collect()).collect();
                                    sections(&options).iter().all(|m| {
                                        // both functors send (x, ·) to (m x, ·)
                                        left.iter().zip(canon.as_ref().unwrap()).all(|(&(x, y), &r)| {
                                            let lhs = canon2(m[x], y);
                                            let (_, w) = right[r];
                                            let rhs = right2[&(m[x] * sq.len() + w)];
                                            left2.contains_key(&(m[x] * nb + y)) && lhs == rhs
                                        })
                                    })
                                });
                            if !natural {
                                rep.failures += 1;
                                rep.witness.get_or_insert_with(|| format!("f={f:?} g={g:?} e={e:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

/// `f^* u^* u' ≅ (f ; u)^* u'` over `s` through `(k, (y, x)) ↦ (k, y)`.
pub fn pasting_sweep(max: usize) -> SweepReport {
    let mut rep = SweepReport::default();
    for ni in 0..=max {
        for na in 0..=max {
            for ns in 0..=max {
                for nb in 0..=max {
                    for u in all_tables(na, ni) {
                        let uu: Vec<Vec<usize>> = all_tables(nb, ni).collect();
                        for f in all_tables(ns, na) {
                            for u2 in &uu {
                                rep.instances += 1;
                                let inner = pullback_pairs(u2, &u);
                                let inner_pi: Vec<usize> = inner.iter().map(|&(_, x)| x).collect();
                                let twice = pullback_pairs(&f, &inner_pi);
                                let once = pullback_pairs(&then(&f, &u), u2);
                                let image: Vec<(usize, usize)> = twice.iter().map(|&(k, e)| (k, inner[e].0)).collect();
                                // nested orders agree, so the canonical map is the identity on positions
                                if image != once {
                                    rep.failures += 1;
                                    rep.witness.get_or_insert_with(|| format!("f={f:?} u={u:?} u'={u2:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;

    fn fun(t: Vec<usize>, cod: usize) -> FinFunction {
        FinFunction::new(FinSet::range(t.len()), FinSet::range(cod), t).unwrap()
    }

    #[test]
    fn slices() {
        let one = FinSet::range(1);
        let (c, objs) = slice_category(&one, 1, 64).unwrap();
        assert_eq!(objs.len(), 2);
        let o = c.object_index(&Label::table(&[0])).unwrap();
        assert_eq!(c.hom(o, o).len(), 1);
        let (c, objs) = slice_category(&one, 0, 64).unwrap();
        assert_eq!((objs.len(), c.n_morphisms()), (1, 1));
        let (c, _) = slice_category(&FinSet::range(2), 2, 256).unwrap();
        assert!(check_category(&c).ok());
    }

    #[test]
    fn pull_push_sizes() {
        let span = Span::new(fun(vec![0; 3], 1), fun(vec![0; 3], 1)).unwrap();
        let u = SliceObject::new(fun(vec![0, 0], 1));
        assert_eq!(pull_push(&span, &u).unwrap().total().len(), 6);
        let empty = SliceObject::new(fun(vec![], 1));
        assert!(pull_push(&span, &empty).unwrap().total().is_empty());
        let h = fun(vec![1, 0], 2);
        let m = pull_push_mor(&span, &u, &u, &h).unwrap();
        assert!(m.is_bijective());
    }

    #[test]
    fn lemma_examples() {
        let span = Span::new(fun(vec![0; 3], 1), fun(vec![0; 3], 1)).unwrap();
        let r = dlens_lemma_bijection(&fun(vec![0, 0], 1), &fun(vec![0], 1), &span).unwrap();
        assert_eq!((r.lhs, r.rhs, r.bijection), (6, 6, true));
        let r = dlens_lemma_bijection(&fun(vec![0, 0], 1), &fun(vec![], 1), &span).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        let r = lemma_tables(&[0], &[0], &[], &[], 1);
        assert_eq!((r.lhs, r.rhs, r.bijection), (0, 0, true));
    }

    #[test]
    fn lemma_sweep_small() {
        let r = lemma_sweep(2, Exec::default());
        assert_eq!(r.failures, 0, "{:?}", r.witness);
        assert!(r.instances > 1000);
    }

    #[test]
    fn plain_lenses() {
        let c = Cospan::new(1, vec![0, 0], vec![0, 0]).unwrap();
        assert_eq!(reduced_optic_hom(&c, &c).len(), 64);
        assert_eq!(reduced_optic_count(&c, &c), 64);
        let empty_t = Cospan::new(1, vec![0, 0], vec![]).unwrap();
        assert_eq!(reduced_optic_count(&empty_t, &c), 0);
        assert!(reduced_optics(&c, &c).contains(&reduced_identity(&c)));
        let r = truncated_coend_optic(&c, &c, 2, 4096).unwrap();
        assert_eq!((r.count, r.next_count), (64, 64));
        assert!(r.stabilized);
    }

    #[test]
    fn truncation_below_the_source_size() {
        let c = Cospan::new(1, vec![0, 0, 0], vec![0, 0]).unwrap();
        let d = Cospan::new(1, vec![0, 0], vec![0, 0]).unwrap();
        let r = truncated_coend_optic(&c, &d, 1, 4096).unwrap();
        assert!(!r.stabilized);
        let r = truncated_coend_optic(&c, &d, 3, 1 << 16).unwrap();
        assert!(r.stabilized, "{r:?}");
    }

    #[test]
    fn equivalence_small() {
        let r = equivalence_check(1, 20, 7, Exec::default());
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn dlens_category_is_a_category() {
        let (c, _) = dlens_category(1, 4096).unwrap();
        assert!(check_category(&c).ok());
    }

    #[test]
    fn squares() {
        assert_eq!(beck_chevalley_sweep(2, 2).failures, 0);
        assert_eq!(pasting_sweep(2).failures, 0);
    }
}
