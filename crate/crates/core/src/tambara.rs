//! Tambara modules over a pair of actions of one bicategory, their morphisms,
//! and the cofree (`Θ`) and free (`Ψ`) constructions on profunctor families.
//!
//! A module `P` has a profunctor `P_o : X(o) ⇸ Y(o)` per object and, per
//! 1-cell `m: o -> o'`, strength maps `st_m : P_o(x, y) -> P_o'(m • x, m • y)`.

use std::sync::Arc;

use crate::bicat::{BicatAction, FinBicategory};
use crate::error::{CoreError, Result};
use crate::finset::{FinSet, Label};
use crate::profunctor::{check_profunctor, SetProfunctor};
use crate::report::LawReport;

/// One table per sort `(o, x, y)`; the shape of a morphism between families.
pub type FamilyMap = Vec<Vec<usize>>;

/// A profunctor `X(o) ⇸ Y(o)` for every object of the common base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfFamily {
    pub act_x: Arc<BicatAction>,
    pub act_y: Arc<BicatAction>,
    pub profs: Vec<SetProfunctor>,
}

impl ProfFamily {
    pub fn new(act_x: Arc<BicatAction>, act_y: Arc<BicatAction>, profs: Vec<SetProfunctor>) -> Result<Self> {
        if act_x.base != act_y.base {
            return Err(CoreError::LegMismatch("both actions must share their base".into()));
        }
        if profs.len() != act_x.base.n_objects() {
            return Err(CoreError::Shape("one profunctor per object of the base".into()));
        }
        for (o, p) in profs.iter().enumerate() {
            if p.left != act_x.fibres[o] || p.right != act_y.fibres[o] {
                return Err(CoreError::LegMismatch(format!("profunctor at {} has the wrong legs", act_x.base.objects.get(o))));
            }
        }
        Ok(ProfFamily { act_x, act_y, profs })
    }

    /// Builds every component from label-level data.
    pub fn build(
        act_x: Arc<BicatAction>,
        act_y: Arc<BicatAction>,
        set_of: impl Fn(usize, usize, usize) -> FinSet,
        lact: impl Fn(usize, usize, usize, &Label) -> Label,
        ract: impl Fn(usize, usize, usize, &Label) -> Label,
    ) -> Result<Self> {
        let profs = (0..act_x.base.n_objects())
            .map(|o| {
                SetProfunctor::build(
                    act_x.fibres[o].clone(),
                    act_y.fibres[o].clone(),
                    |x, y| set_of(o, x, y),
                    |f, y, e| lact(o, f, y, e),
                    |x, g, e| ract(o, x, g, e),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        ProfFamily::new(act_x, act_y, profs)
    }

    /// Every component empty.
    pub fn empty(act_x: Arc<BicatAction>, act_y: Arc<BicatAction>) -> Result<Self> {
        let profs = (0..act_x.base.n_objects())
            .map(|o| SetProfunctor::constant(&act_x.fibres[o], &act_y.fibres[o], &FinSet::empty()))
            .collect();
        ProfFamily::new(act_x, act_y, profs)
    }

    pub fn base(&self) -> &Arc<FinBicategory> {
        &self.act_x.base
    }

    pub fn n_x(&self, o: usize) -> usize {
        self.act_x.fibres[o].n_objects()
    }

    pub fn n_y(&self, o: usize) -> usize {
        self.act_y.fibres[o].n_objects()
    }

    /// Index of the sort `(o, x, y)` in a [`FamilyMap`].
    pub fn sort(&self, o: usize, x: usize, y: usize) -> usize {
        let before: usize = (0..o).map(|p| self.n_x(p) * self.n_y(p)).sum();
        before + x * self.n_y(o) + y
    }

    pub fn n_sorts(&self) -> usize {
        (0..self.base().n_objects()).map(|o| self.n_x(o) * self.n_y(o)).sum()
    }

    /// Sorts in order, as `(o, x, y)`.
    pub fn sorts(&self) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for o in 0..self.base().n_objects() {
            for x in 0..self.n_x(o) {
                for y in 0..self.n_y(o) {
                    v.push((o, x, y));
                }
            }
        }
        v
    }

    pub fn set(&self, o: usize, x: usize, y: usize) -> &FinSet {
        self.profs[o].set(x, y)
    }

    pub fn same_shape(&self, other: &ProfFamily) -> bool {
        self.act_x == other.act_x && self.act_y == other.act_y
    }

    /// The identity family map.
    pub fn identity_map(&self) -> FamilyMap {
        self.sorts().iter().map(|&(o, x, y)| (0..self.set(o, x, y).len()).collect()).collect()
    }
}

pub fn check_family(q: &ProfFamily) -> LawReport {
    let mut r = LawReport::new();
    for (o, p) in q.profs.iter().enumerate() {
        r.absorb(&format!("P at {}", q.base().objects.get(o)), check_profunctor(p));
    }
    r
}

/// A profunctor family with strengths. `strengths[m][x * |Y(o)| + y]` is the
/// table of `st_m` at `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TambaraModule {
    pub family: ProfFamily,
    pub strengths: Vec<Vec<Vec<usize>>>,
}

impl TambaraModule {
    pub fn new(family: ProfFamily, strengths: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let b = family.base().clone();
        if strengths.len() != b.n_cells() {
            return Err(CoreError::Shape("one strength family per 1-cell".into()));
        }
        for (m, tables) in strengths.iter().enumerate() {
            let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
            if tables.len() != family.n_x(o) * family.n_y(o) {
                return Err(CoreError::Shape(format!("strength of {} must cover every (x, y)", b.cell_label(m))));
            }
            for (k, t) in tables.iter().enumerate() {
                let (x, y) = (k / family.n_y(o), k % family.n_y(o));
                let (mx, my) = (family.act_x.act_obj(m, x), family.act_y.act_obj(m, y));
                let to = family.set(o2, mx, my).len();
                if t.len() != family.set(o, x, y).len() || t.iter().any(|&v| v >= to) {
                    return Err(CoreError::Shape(format!("strength of {} at ({x}, {y}) does not fit", b.cell_label(m))));
                }
            }
        }
        Ok(TambaraModule { family, strengths })
    }

    /// Strengths from a function of `(m, x, y, element)`.
    pub fn build(family: ProfFamily, st: impl Fn(usize, usize, usize, usize) -> usize) -> Result<Self> {
        let b = family.base().clone();
        let strengths = (0..b.n_cells())
            .map(|m| {
                let o = b.cell_src(m);
                let ny = family.n_y(o);
                (0..family.n_x(o) * ny)
                    .map(|k| (0..family.set(o, k / ny, k % ny).len()).map(|e| st(m, k / ny, k % ny, e)).collect())
                    .collect()
            })
            .collect();
        TambaraModule::new(family, strengths)
    }

    /// The hom-family of an action on itself, strengths given by the action on morphisms.
    pub fn hom_module(act: Arc<BicatAction>) -> Result<Self> {
        let profs = act.fibres.iter().map(SetProfunctor::hom).collect();
        let family = ProfFamily::new(act.clone(), act.clone(), profs)?;
        let b = act.base.clone();
        TambaraModule::build(family, |m, x, y, e| {
            let fib = &act.fibres[b.cell_src(m)];
            let out = &act.fibres[b.cell_tgt(m)];
            let f = fib.hom(x, y)[e];
            let g = act.act_mor(m, f);
            out.hom(out.src(g), out.tgt(g)).iter().position(|&h| h == g).unwrap()
        })
    }

    pub fn base(&self) -> &Arc<FinBicategory> {
        self.family.base()
    }

    /// `st_m(e)` for `e ∈ P_o(x, y)`.
    pub fn st(&self, m: usize, x: usize, y: usize, e: usize) -> usize {
        let ny = self.family.n_y(self.base().cell_src(m));
        self.strengths[m][x * ny + y][e]
    }

    /// Copy with one strength entry redirected; for checker mutation tests.
    pub fn with_strength_entry(&self, m: usize, x: usize, y: usize, e: usize, value: usize) -> Self {
        let mut p = self.clone();
        let ny = p.family.n_y(p.base().cell_src(m));
        p.strengths[m][x * ny + y][e] = value;
        p
    }

    /// Every addressable strength entry as `(m, x, y, e)` together with the
    /// size of its target set.
    pub fn strength_entries(&self) -> Vec<((usize, usize, usize, usize), usize)> {
        let b = self.base();
        let f = &self.family;
        let mut v = Vec::new();
        for m in 0..b.n_cells() {
            let o = b.cell_src(m);
            for x in 0..f.n_x(o) {
                for y in 0..f.n_y(o) {
                    let to = f.set(b.cell_tgt(m), f.act_x.act_obj(m, x), f.act_y.act_obj(m, y)).len();
                    for e in 0..f.set(o, x, y).len() {
                        v.push(((m, x, y, e), to));
                    }
                }
            }
        }
        v
    }
}

/// Drops the strengths.
pub fn forget(p: &TambaraModule) -> ProfFamily {
    p.family.clone()
}

/// Laws (i)–(iv): naturality of each strength in `x` and `y`, the unit law,
/// the composition law and dinaturality along 2-cells. Profunctor laws of each
/// component are checked first.
pub fn check_tambara(p: &TambaraModule) -> LawReport {
    let mut r = check_family(&p.family);
    if !r.ok() {
        return r;
    }
    let b = p.base();
    let f = &p.family;
    let (ax, ay) = (&f.act_x, &f.act_y);
    for m in 0..b.n_cells() {
        let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
        let (px, py) = (&f.profs[o], &f.profs[o2]);
        let (xo, yo) = (&ax.fibres[o], &ay.fibres[o]);
        let ml = b.cell_label(m);
        // (i) naturality in x: f: x' -> x
        for g in 0..xo.n_morphisms() {
            let (x2, x) = (xo.src(g), xo.tgt(g));
            for y in 0..yo.n_objects() {
                for e in 0..px.set(x, y).len() {
                    let lhs = p.st(m, x2, y, px.lact(g, y, e));
                    let rhs = py.lact(ax.act_mor(m, g), ay.act_obj(m, y), p.st(m, x, y, e));
                    if lhs != rhs {
                        r.push("strength natural in x", format!("m = {ml}, f = {}, y = {}", xo.mor_label(g), yo.obj_label(y)));
                    }
                }
            }
        }
        // (i) naturality in y: g: y -> y'
        for g in 0..yo.n_morphisms() {
            let (y, y2) = (yo.src(g), yo.tgt(g));
            for x in 0..xo.n_objects() {
                for e in 0..px.set(x, y).len() {
                    let lhs = p.st(m, x, y2, px.ract(x, g, e));
                    let rhs = py.ract(ax.act_obj(m, x), ay.act_mor(m, g), p.st(m, x, y, e));
                    if lhs != rhs {
                        r.push("strength natural in y", format!("m = {ml}, x = {}, g = {}", xo.obj_label(x), yo.mor_label(g)));
                    }
                }
            }
        }
        // (ii) unit
        if b.is_unit(m) {
            for x in 0..xo.n_objects() {
                for y in 0..yo.n_objects() {
                    if (0..px.set(x, y).len()).any(|e| p.st(m, x, y, e) != e) {
                        r.push("unit strength is the identity", format!("(m, x, y) = ({ml}, {}, {})", xo.obj_label(x), yo.obj_label(y)));
                    }
                }
            }
        }
        // (iii) composition
        for n in b.cells_from(o2) {
            let mn = b.compose1(m, n);
            for x in 0..xo.n_objects() {
                for y in 0..yo.n_objects() {
                    let (mx, my) = (ax.act_obj(m, x), ay.act_obj(m, y));
                    if (0..px.set(x, y).len()).any(|e| p.st(n, mx, my, p.st(m, x, y, e)) != p.st(mn, x, y, e)) {
                        r.push(
                            "strength of a composite",
                            format!("(m, n, x, y) = ({ml}, {}, {}, {})", b.cell_label(n), xo.obj_label(x), yo.obj_label(y)),
                        );
                    }
                }
            }
        }
    }
    // (iv) dinaturality along α: m ⇒ n
    for alpha in 0..b.n_two_cells() {
        let (m, n) = (b.two_src(alpha), b.two_tgt(alpha));
        let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
        let py = &f.profs[o2];
        for x in 0..f.n_x(o) {
            for y in 0..f.n_y(o) {
                let (ax_, ay_) = (ax.act_two(alpha, x), ay.act_two(alpha, y));
                let ok = (0..f.set(o, x, y).len()).all(|e| {
                    py.lact(ax_, ay.act_obj(n, y), p.st(n, x, y, e)) == py.ract(ax.act_obj(m, x), ay_, p.st(m, x, y, e))
                });
                if !ok {
                    r.push(
                        "strength dinatural in 2-cells",
                        format!("(α, x, y) = ({}, {}, {})", b.two_label(alpha), ax.fibres[o].obj_label(x), ay.fibres[o].obj_label(y)),
                    );
                }
            }
        }
    }
    r
}

/// Naturality of every component (a morphism of profunctor families).
pub fn check_family_map(p: &ProfFamily, q: &ProfFamily, h: &FamilyMap) -> LawReport {
    let mut r = LawReport::new();
    if !p.same_shape(q) || h.len() != p.n_sorts() {
        r.push("shape", "families over different actions or wrong number of components");
        return r;
    }
    for (o, (pp, qq)) in p.profs.iter().zip(&q.profs).enumerate() {
        let start = p.sort(o, 0, 0);
        let comps = h[start..start + p.n_x(o) * p.n_y(o)].to_vec();
        let t = crate::profunctor::ProfTransformation { components: comps };
        r.absorb(
            &format!("component at {}", p.base().objects.get(o)),
            crate::profunctor::check_prof_transformation(pp, qq, &t),
        );
    }
    r
}

/// A family map that is natural and commutes with the strengths.
pub fn check_tambara_morphism(p: &TambaraModule, q: &TambaraModule, h: &FamilyMap) -> LawReport {
    let mut r = check_family_map(&p.family, &q.family, h);
    if !r.ok() {
        return r;
    }
    let b = p.base();
    let f = &p.family;
    for m in 0..b.n_cells() {
        let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
        for x in 0..f.n_x(o) {
            for y in 0..f.n_y(o) {
                let (mx, my) = (f.act_x.act_obj(m, x), f.act_y.act_obj(m, y));
                let (s1, s2) = (f.sort(o, x, y), f.sort(o2, mx, my));
                let ok = (0..f.set(o, x, y).len()).all(|e| h[s2][p.st(m, x, y, e)] == q.st(m, x, y, h[s1][e]));
                if !ok {
                    r.push("commutes with strength", format!("(m, x, y) = ({}, {x}, {y})", b.cell_label(m)));
                }
            }
        }
    }
    r
}

/// The cofree module `ΘQ` with the end bookkeeping needed by its comonad
/// structure.
#[derive(Clone, Debug)]
pub struct Cofree {
    pub module: TambaraModule,
    /// per sort `(o, x, y)`: families indexed by the 1-cells out of `o`
    pub ends: Vec<crate::coend::EndResult>,
    /// 1-cells out of each object, in the order the families use
    pub cells: Vec<Vec<usize>>,
}

impl Cofree {
    /// Position of 1-cell `m` among the cells out of its source.
    fn slot(&self, m: usize) -> usize {
        let o = self.module.base().cell_src(m);
        self.cells[o].iter().position(|&k| k == m).unwrap()
    }

    /// `φ_m` for a family `φ` in the component at `(o, x, y)`.
    pub fn component(&self, o: usize, x: usize, y: usize, phi: usize, m: usize) -> usize {
        let s = self.module.family.sort(o, x, y);
        self.ends[s].project(phi, self.slot(m))
    }

    /// The counit `UΘQ => Q`: `φ ↦ φ_{1_o}`.
    pub fn counit(&self) -> FamilyMap {
        let f = &self.module.family;
        let b = f.base();
        f.sorts()
            .iter()
            .enumerate()
            .map(|(s, &(o, _, _))| {
                let k = self.slot(b.unit(o));
                (0..self.ends[s].len()).map(|phi| self.ends[s].project(phi, k)).collect()
            })
            .collect()
    }
}

fn not_closed(what: &str) -> CoreError {
    CoreError::Shape(format!("{what}: computed map leaves the carrier"))
}

/// `(ΘQ)_o(x, y) = ∫_{m: o -> o'} Q_o'(m • x, m • y)`, the end over the category
/// of 1-cells out of `o` and 2-cells between them.
pub fn cofree(q: &ProfFamily) -> Result<Cofree> {
    let b = q.base().clone();
    let (ax, ay) = (&q.act_x, &q.act_y);
    let cells: Vec<Vec<usize>> = (0..b.n_objects()).map(|o| b.cells_from(o).collect()).collect();
    let slot = |m: usize| cells[b.cell_src(m)].iter().position(|&k| k == m).unwrap();
    let mut ends = Vec::with_capacity(q.n_sorts());
    for &(o, x, y) in &q.sorts() {
        let diag: Vec<FinSet> = cells[o]
            .iter()
            .map(|&m| q.set(b.cell_tgt(m), ax.act_obj(m, x), ay.act_obj(m, y)).clone())
            .collect();
        let mut constraints = Vec::new();
        for &m in &cells[o] {
            let o2 = b.cell_tgt(m);
            let p = &q.profs[o2];
            for alpha in b.twos_between(o, o2) {
                if b.two_src(alpha) != m || alpha == b.id2(m) {
                    continue;
                }
                let n = b.two_tgt(alpha);
                constraints.push(crate::coend::EndConstraint {
                    from: slot(m),
                    to: slot(n),
                    left: p.ract_table(ax.act_obj(m, x), ay.act_two(alpha, y)).to_vec(),
                    right: p.lact_table(ax.act_two(alpha, x), ay.act_obj(n, y)).to_vec(),
                });
            }
        }
        ends.push(crate::coend::end_from_constraints(&diag, &constraints));
    }
    let sort = |o, x, y| q.sort(o, x, y);
    let mut profs = Vec::with_capacity(b.n_objects());
    for o in 0..b.n_objects() {
        let (xo, yo) = (&ax.fibres[o], &ay.fibres[o]);
        let sets: Vec<FinSet> = (0..xo.n_objects() * yo.n_objects())
            .map(|k| ends[sort(o, k / yo.n_objects(), k % yo.n_objects())].families.clone())
            .collect();
        let mut lact = Vec::new();
        for f in 0..xo.n_morphisms() {
            for y in 0..yo.n_objects() {
                let (from, to) = (&ends[sort(o, xo.tgt(f), y)], &ends[sort(o, xo.src(f), y)]);
                let table = (0..from.len())
                    .map(|phi| {
                        let t: Vec<usize> = cells[o]
                            .iter()
                            .enumerate()
                            .map(|(k, &m)| {
                                q.profs[b.cell_tgt(m)].lact(ax.act_mor(m, f), ay.act_obj(m, y), from.project(phi, k))
                            })
                            .collect();
                        to.find(&t).ok_or_else(|| not_closed("cofree left action"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                lact.push(table);
            }
        }
        let mut ract = Vec::new();
        for x in 0..xo.n_objects() {
            for g in 0..yo.n_morphisms() {
                let (from, to) = (&ends[sort(o, x, yo.src(g))], &ends[sort(o, x, yo.tgt(g))]);
                let table = (0..from.len())
                    .map(|phi| {
                        let t: Vec<usize> = cells[o]
                            .iter()
                            .enumerate()
                            .map(|(k, &m)| {
                                q.profs[b.cell_tgt(m)].ract(ax.act_obj(m, x), ay.act_mor(m, g), from.project(phi, k))
                            })
                            .collect();
                        to.find(&t).ok_or_else(|| not_closed("cofree right action"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ract.push(table);
            }
        }
        profs.push(SetProfunctor::new(xo.clone(), yo.clone(), sets, lact, ract)?);
    }
    let family = ProfFamily::new(ax.clone(), ay.clone(), profs)?;
    // st_n φ = (m' ↦ φ_{n ; m'})
    let mut strengths = Vec::with_capacity(b.n_cells());
    for n in 0..b.n_cells() {
        let (o, o1) = (b.cell_src(n), b.cell_tgt(n));
        let mut per = Vec::new();
        for x in 0..q.n_x(o) {
            for y in 0..q.n_y(o) {
                let from = &ends[sort(o, x, y)];
                let to = &ends[sort(o1, ax.act_obj(n, x), ay.act_obj(n, y))];
                let table = (0..from.len())
                    .map(|phi| {
                        let t: Vec<usize> = cells[o1].iter().map(|&m2| from.project(phi, slot(b.compose1(n, m2)))).collect();
                        to.find(&t).ok_or_else(|| not_closed("cofree strength"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                per.push(table);
            }
        }
        strengths.push(per);
    }
    let module = TambaraModule::new(family, strengths)?;
    Ok(Cofree { module, ends, cells })
}

/// Comonad laws of `UΘ` on one instance. The comultiplication sends `φ` to
/// `m ↦ st_m φ`, so it is checked to land in `ΘUΘQ`; the counit laws compare
/// components; coassociativity unfolds to `st_{m'}(st_m φ) = st_{m ; m'} φ`.
pub fn check_comonad(q: &ProfFamily, theta: &Cofree) -> Result<LawReport> {
    let mut r = LawReport::new();
    let p = &theta.module;
    let f = &p.family;
    let b = f.base().clone();
    let twice = cofree(f)?;
    let counit = theta.counit();
    r.absorb("counit", check_family_map(f, q, &counit));
    for (s, &(o, x, y)) in f.sorts().iter().enumerate() {
        for phi in 0..theta.ends[s].len() {
            // δφ as a family over cells out of o
            let delta: Vec<usize> = theta.cells[o].iter().map(|&m| p.st(m, x, y, phi)).collect();
            if twice.ends[s].find(&delta).is_none() {
                r.push("comultiplication lands in the cofree carrier", format!("({}, {x}, {y}) family {phi}", b.objects.get(o)));
            }
            // counit after comultiplication, both ways
            if delta[theta.slot(b.unit(o))] != phi {
                r.push("left counit law", format!("({}, {x}, {y}) family {phi}", b.objects.get(o)));
            }
            for (k, &m) in theta.cells[o].iter().enumerate() {
                let (o2, mx, my) = (b.cell_tgt(m), f.act_x.act_obj(m, x), f.act_y.act_obj(m, y));
                let s2 = f.sort(o2, mx, my);
                if counit[s2][delta[k]] != theta.ends[s].project(phi, k) {
                    r.push("right counit law", format!("m = {}, family {phi}", b.cell_label(m)));
                }
                for m2 in b.cells_from(o2) {
                    if p.st(m2, mx, my, delta[k]) != p.st(b.compose1(m, m2), x, y, phi) {
                        r.push("coassociativity", format!("(m, m') = ({}, {})", b.cell_label(m), b.cell_label(m2)));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// The free module `ΨQ` with its coend bookkeeping.
#[derive(Clone, Debug)]
pub struct Free {
    pub module: TambaraModule,
    /// per sort `(o', x, y)` of the result
    pub coends: Vec<crate::coend::CoendResult>,
    /// per object `o'`: index objects `(m, a, b)` with `m` into `o'`, in label order
    pub index: Vec<Vec<(usize, usize, usize)>>,
    /// per object `o'`: `(m, a, b) -> position` lookup as `m -> a * |Y(src m)| + b -> position`
    positions: Vec<std::collections::HashMap<usize, Vec<usize>>>,
}

/// Shape of one diagonal set of `ΨQ`: `X(o')(x, m•a) × Q_o(a, b) × Y(o')(m•b, y)`.
struct FreeDiag<'a> {
    q: &'a ProfFamily,
    o2: usize,
    x: usize,
    y: usize,
}

impl FreeDiag<'_> {
    fn dims(&self, m: usize, a: usize, bb: usize) -> (usize, usize, usize) {
        let (ax, ay) = (&self.q.act_x, &self.q.act_y);
        let o = self.q.base().cell_src(m);
        (
            ax.fibres[self.o2].hom(self.x, ax.act_obj(m, a)).len(),
            self.q.set(o, a, bb).len(),
            ay.fibres[self.o2].hom(ay.act_obj(m, bb), self.y).len(),
        )
    }

    fn encode(&self, m: usize, a: usize, bb: usize, xi: usize, e: usize, eta: usize) -> usize {
        let (_, nq, ne) = self.dims(m, a, bb);
        (xi * nq + e) * ne + eta
    }

    fn decode(&self, m: usize, a: usize, bb: usize, mut v: usize) -> (usize, usize, usize) {
        let (_, nq, ne) = self.dims(m, a, bb);
        let eta = v % ne;
        v /= ne;
        (v / nq, v % nq, eta)
    }
}

impl Free {
    pub fn position(&self, m: usize, a: usize, b: usize) -> usize {
        let o2 = self.module.base().cell_tgt(m);
        let ny = self.module.family.n_y(self.module.base().cell_src(m));
        self.positions[o2][&m][a * ny + b]
    }
}

/// `(ΨQ)_o'(x, y) = ∫^{m: o -> o', a, b} X(o')(x, m • a) × Q_o(a, b) × Y(o')(m • b, y)`.
pub fn free(q: &ProfFamily) -> Result<Free> {
    let b = q.base().clone();
    let (ax, ay) = (&q.act_x, &q.act_y);
    let mut index = Vec::with_capacity(b.n_objects());
    let mut positions = Vec::with_capacity(b.n_objects());
    let mut index_sets = Vec::with_capacity(b.n_objects());
    for o2 in 0..b.n_objects() {
        let mut entries: Vec<(Label, (usize, usize, usize))> = Vec::new();
        for o in 0..b.n_objects() {
            for m in b.cells_between(o, o2) {
                for a in 0..q.n_x(o) {
                    for bb in 0..q.n_y(o) {
                        let label = Label::tup(vec![
                            b.objects.get(o).clone(),
                            b.cell_label(m).clone(),
                            ax.fibres[o].obj_label(a).clone(),
                            ay.fibres[o].obj_label(bb).clone(),
                        ]);
                        entries.push((label, (m, a, bb)));
                    }
                }
            }
        }
        entries.sort_by(|l, r| l.0.cmp(&r.0));
        let mut pos: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for (k, (_, (m, a, bb))) in entries.iter().enumerate() {
            let ny = q.n_y(b.cell_src(*m));
            let v = pos.entry(*m).or_insert_with(|| vec![0; q.n_x(b.cell_src(*m)) * ny]);
            v[a * ny + bb] = k;
        }
        index_sets.push(FinSet::new(entries.iter().map(|e| e.0.clone()))?);
        index.push(entries.into_iter().map(|e| e.1).collect::<Vec<_>>());
        positions.push(pos);
    }
    let pos_of = |m: usize, a: usize, bb: usize| {
        let ny = q.n_y(b.cell_src(m));
        positions[b.cell_tgt(m)][&m][a * ny + bb]
    };
    let mut coends = Vec::with_capacity(q.n_sorts());
    for o2 in 0..b.n_objects() {
        let (x2, y2) = (&ax.fibres[o2], &ay.fibres[o2]);
        let (px, py) = (x2.hom_positions(), y2.hom_positions());
        for x in 0..x2.n_objects() {
            for y in 0..y2.n_objects() {
                let d = FreeDiag { q, o2, x, y };
                let diag: Vec<FinSet> = index[o2]
                    .iter()
                    .map(|&(m, a, bb)| {
                        let o = b.cell_src(m);
                        let mut elems = Vec::new();
                        for &xi in x2.hom(x, ax.act_obj(m, a)) {
                            for e in q.set(o, a, bb).iter() {
                                for &eta in y2.hom(ay.act_obj(m, bb), y) {
                                    elems.push(Label::tup(vec![x2.mor_label(xi).clone(), e.clone(), y2.mor_label(eta).clone()]));
                                }
                            }
                        }
                        FinSet::from_sorted(elems)
                    })
                    .collect();
                let mut rel = Vec::new();
                // 2-cells γ: m ⇒ m'
                for o in 0..b.n_objects() {
                    for gamma in b.twos_between(o, o2) {
                        let (m, m2) = (b.two_src(gamma), b.two_tgt(gamma));
                        if gamma == b.id2(m) {
                            continue;
                        }
                        for a in 0..q.n_x(o) {
                            for bb in 0..q.n_y(o) {
                                let (ga, gb) = (ax.act_two(gamma, a), ay.act_two(gamma, bb));
                                for &xi in x2.hom(x, ax.act_obj(m, a)) {
                                    for e in 0..q.set(o, a, bb).len() {
                                        for &eta in y2.hom(ay.act_obj(m2, bb), y) {
                                            let l = d.encode(m, a, bb, px[xi], e, py[y2.compose(gb, eta)]);
                                            let r = d.encode(m2, a, bb, px[x2.compose(xi, ga)], e, py[eta]);
                                            rel.push(((pos_of(m, a, bb), l), (pos_of(m2, a, bb), r)));
                                        }
                                    }
                                }
                            }
                        }
                    }
                    for m in b.cells_between(o, o2) {
                        let xo = &ax.fibres[o];
                        let yo = &ay.fibres[o];
                        // f: a -> a'
                        for f in (0..xo.n_morphisms()).filter(|&f| !xo.is_identity(f)) {
                            let (a, a2) = (xo.src(f), xo.tgt(f));
                            let mf = ax.act_mor(m, f);
                            for bb in 0..yo.n_objects() {
                                for &xi in x2.hom(x, ax.act_obj(m, a)) {
                                    for e in 0..q.set(o, a2, bb).len() {
                                        for &eta in y2.hom(ay.act_obj(m, bb), y) {
                                            let l = d.encode(m, a, bb, px[xi], q.profs[o].lact(f, bb, e), py[eta]);
                                            let r = d.encode(m, a2, bb, px[x2.compose(xi, mf)], e, py[eta]);
                                            rel.push(((pos_of(m, a, bb), l), (pos_of(m, a2, bb), r)));
                                        }
                                    }
                                }
                            }
                        }
                        // g: b -> b'
                        for g in (0..yo.n_morphisms()).filter(|&g| !yo.is_identity(g)) {
                            let (b1, b2) = (yo.src(g), yo.tgt(g));
                            let mg = ay.act_mor(m, g);
                            for a in 0..xo.n_objects() {
                                for &xi in x2.hom(x, ax.act_obj(m, a)) {
                                    for e in 0..q.set(o, a, b1).len() {
                                        for &eta in y2.hom(ay.act_obj(m, b2), y) {
                                            let l = d.encode(m, a, b2, px[xi], q.profs[o].ract(a, g, e), py[eta]);
                                            let r = d.encode(m, a, b1, px[xi], e, py[y2.compose(mg, eta)]);
                                            rel.push(((pos_of(m, a, b2), l), (pos_of(m, a, b1), r)));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                coends.push(crate::coend::coend_from_relations(&index_sets[o2], &diag, rel));
            }
        }
    }
    let sort = |o, x, y| q.sort(o, x, y);
    let ill = |what: &str| CoreError::Shape(format!("{what} is not well defined on classes"));
    let mut profs = Vec::with_capacity(b.n_objects());
    for o2 in 0..b.n_objects() {
        let (x2, y2) = (&ax.fibres[o2], &ay.fibres[o2]);
        let (px, py) = (x2.hom_positions(), y2.hom_positions());
        let sets: Vec<FinSet> = (0..x2.n_objects() * y2.n_objects())
            .map(|k| coends[sort(o2, k / y2.n_objects(), k % y2.n_objects())].quotient.carrier.clone())
            .collect();
        let mut lact = Vec::new();
        for h in 0..x2.n_morphisms() {
            for y in 0..y2.n_objects() {
                let (xs, xt) = (x2.src(h), x2.tgt(h));
                let (from_d, to_d) = (FreeDiag { q, o2, x: xt, y }, FreeDiag { q, o2, x: xs, y });
                let table = coends[sort(o2, xt, y)]
                    .induced(&coends[sort(o2, xs, y)], |c, v| {
                        let (m, a, bb) = index[o2][c];
                        let (xi, e, eta) = from_d.decode(m, a, bb, v);
                        let xi2 = x2.compose(h, x2.hom(xt, ax.act_obj(m, a))[xi]);
                        (c, to_d.encode(m, a, bb, px[xi2], e, eta))
                    })
                    .ok_or_else(|| ill("free left action"))?;
                lact.push(table);
            }
        }
        let mut ract = Vec::new();
        for x in 0..x2.n_objects() {
            for k in 0..y2.n_morphisms() {
                let (ys, yt) = (y2.src(k), y2.tgt(k));
                let (from_d, to_d) = (FreeDiag { q, o2, x, y: ys }, FreeDiag { q, o2, x, y: yt });
                let table = coends[sort(o2, x, ys)]
                    .induced(&coends[sort(o2, x, yt)], |c, v| {
                        let (m, a, bb) = index[o2][c];
                        let (xi, e, eta) = from_d.decode(m, a, bb, v);
                        let eta2 = y2.compose(y2.hom(ay.act_obj(m, bb), ys)[eta], k);
                        (c, to_d.encode(m, a, bb, xi, e, py[eta2]))
                    })
                    .ok_or_else(|| ill("free right action"))?;
                ract.push(table);
            }
        }
        profs.push(SetProfunctor::new(x2.clone(), y2.clone(), sets, lact, ract)?);
    }
    let family = ProfFamily::new(ax.clone(), ay.clone(), profs)?;
    // st_n [m, a, b, ξ, q, η] = [m ; n, a, b, n • ξ, q, n • η]
    let mut strengths = Vec::with_capacity(b.n_cells());
    for n in 0..b.n_cells() {
        let (o2, o3) = (b.cell_src(n), b.cell_tgt(n));
        let (x2, y2) = (&ax.fibres[o2], &ay.fibres[o2]);
        let (x3, y3) = (&ax.fibres[o3], &ay.fibres[o3]);
        let (px3, py3) = (x3.hom_positions(), y3.hom_positions());
        let mut per = Vec::new();
        for x in 0..x2.n_objects() {
            for y in 0..y2.n_objects() {
                let (nx, ny) = (ax.act_obj(n, x), ay.act_obj(n, y));
                let from_d = FreeDiag { q, o2, x, y };
                let to_d = FreeDiag { q, o2: o3, x: nx, y: ny };
                let table = coends[sort(o2, x, y)]
                    .induced(&coends[sort(o3, nx, ny)], |c, v| {
                        let (m, a, bb) = index[o2][c];
                        let (xi, e, eta) = from_d.decode(m, a, bb, v);
                        let mn = b.compose1(m, n);
                        let xi2 = ax.act_mor(n, x2.hom(x, ax.act_obj(m, a))[xi]);
                        let eta2 = ay.act_mor(n, y2.hom(ay.act_obj(m, bb), y)[eta]);
                        (pos_of(mn, a, bb), to_d.encode(mn, a, bb, px3[xi2], e, py3[eta2]))
                    })
                    .ok_or_else(|| ill("free strength"))?;
                per.push(table);
            }
        }
        strengths.push(per);
    }
    let module = TambaraModule::new(family, strengths)?;
    Ok(Free { module, coends, index, positions })
}

/// Sorts and operations of a family: sets `P_o(x, y)` and the non-identity
/// profunctor actions.
pub fn family_algebra(q: &ProfFamily) -> crate::hom_search::UnaryAlgebra {
    use crate::hom_search::{Op, UnaryAlgebra};
    let mut alg = UnaryAlgebra { sorts: q.sorts().iter().map(|&(o, x, y)| q.set(o, x, y).len()).collect(), ops: Vec::new() };
    for (o, p) in q.profs.iter().enumerate() {
        let (xo, yo) = (&q.act_x.fibres[o], &q.act_y.fibres[o]);
        for f in (0..xo.n_morphisms()).filter(|&f| !xo.is_identity(f)) {
            for y in 0..yo.n_objects() {
                alg.ops.push(Op { from: q.sort(o, xo.tgt(f), y), to: q.sort(o, xo.src(f), y), table: p.lact_table(f, y).to_vec() });
            }
        }
        for x in 0..xo.n_objects() {
            for g in (0..yo.n_morphisms()).filter(|&g| !yo.is_identity(g)) {
                alg.ops.push(Op { from: q.sort(o, x, yo.src(g)), to: q.sort(o, x, yo.tgt(g)), table: p.ract_table(x, g).to_vec() });
            }
        }
    }
    alg
}

/// [`family_algebra`] plus one operation per strength map of a non-unit 1-cell.
pub fn module_algebra(p: &TambaraModule) -> crate::hom_search::UnaryAlgebra {
    let mut alg = family_algebra(&p.family);
    let b = p.base();
    let f = &p.family;
    for m in (0..b.n_cells()).filter(|&m| !b.is_unit(m)) {
        let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
        for x in 0..f.n_x(o) {
            for y in 0..f.n_y(o) {
                let to = f.sort(o2, f.act_x.act_obj(m, x), f.act_y.act_obj(m, y));
                alg.ops.push(crate::hom_search::Op { from: f.sort(o, x, y), to, table: p.strengths[m][x * f.n_y(o) + y].clone() });
            }
        }
    }
    alg
}

fn require(what: &str, report: LawReport) -> Result<()> {
    if report.ok() {
        Ok(())
    } else {
        Err(CoreError::Invalid { what: what.into(), report })
    }
}

/// Every natural family map `Q => S`, in lexicographic order.
pub fn enumerate_prof_morphisms(q: &ProfFamily, s: &ProfFamily, budget: u64, exec: crate::par::Exec) -> Result<Vec<FamilyMap>> {
    if !q.same_shape(s) {
        return Err(CoreError::LegMismatch("families over different actions".into()));
    }
    require("source family", check_family(q))?;
    require("target family", check_family(s))?;
    crate::hom_search::enumerate_homs(&family_algebra(q), &family_algebra(s), budget, exec)
}

/// Every Tambara morphism `P => R`, in lexicographic order.
pub fn enumerate_tambara_morphisms(
    p: &TambaraModule,
    r: &TambaraModule,
    budget: u64,
    exec: crate::par::Exec,
) -> Result<Vec<FamilyMap>> {
    if !p.family.same_shape(&r.family) {
        return Err(CoreError::LegMismatch("modules over different actions".into()));
    }
    require("source module", check_tambara(p))?;
    require("target module", check_tambara(r))?;
    crate::hom_search::enumerate_homs(&module_algebra(p), &module_algebra(r), budget, exec)
}

/// Labels for a list of family maps, one tuple of tables each.
pub fn morphism_labels(maps: &[FamilyMap]) -> FinSet {
    FinSet::collect(maps.iter().map(|h| Label::tup(h.iter().map(|t| Label::table(t)).collect())))
}

/// Outcome of comparing one Tambara hom-set with one profunctor hom-set.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TranspositionReport {
    pub tamb: usize,
    pub prof: usize,
    pub bijection: bool,
    pub witness: Option<String>,
}

/// Which hom-set cardinalities agree, for both readings of each adjunction.
/// `None` marks an enumeration that exceeded the budget.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DirectionReport {
    /// `|Tamb(ΨQ, R)| = |Prof(Q, UR)|`
    pub free_left_of_forget: bool,
    /// `|Tamb(R, ΨQ)| = |Prof(UR, Q)|`
    pub free_right_of_forget: Option<bool>,
    /// `|Tamb(R, ΘQ)| = |Prof(UR, Q)|`
    pub cofree_right_of_forget: bool,
    /// `|Tamb(ΘQ, R)| = |Prof(Q, UR)|`
    pub cofree_left_of_forget: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AdjunctionReport {
    pub free_side: TranspositionReport,
    pub cofree_side: TranspositionReport,
    pub comonad: LawReport,
    pub direction: DirectionReport,
}

impl AdjunctionReport {
    pub fn ok(&self) -> bool {
        self.free_side.bijection && self.cofree_side.bijection && self.comonad.ok()
    }
}

fn compare(
    tamb: &[FamilyMap],
    prof: &[FamilyMap],
    to_prof: impl Fn(&FamilyMap) -> FamilyMap,
    to_tamb: impl Fn(&FamilyMap) -> std::result::Result<FamilyMap, String>,
) -> TranspositionReport {
    let mut witness = None;
    for (k, phi) in tamb.iter().enumerate() {
        let t = to_prof(phi);
        if prof.binary_search(&t).is_err() {
            witness = Some(format!("transpose of Tambara morphism {k} is not natural"));
            break;
        }
        match to_tamb(&t) {
            Ok(back) if &back == phi => {}
            _ => {
                witness = Some(format!("Tambara morphism {k} does not round-trip"));
                break;
            }
        }
    }
    if witness.is_none() {
        for (k, phi) in prof.iter().enumerate() {
            match to_tamb(phi) {
                Ok(t) if tamb.binary_search(&t).is_ok() && &to_prof(&t) == phi => {}
                Ok(_) => {
                    witness = Some(format!("profunctor morphism {k} does not round-trip"));
                    break;
                }
                Err(e) => {
                    witness = Some(format!("profunctor morphism {k}: {e}"));
                    break;
                }
            }
        }
    }
    if witness.is_none() && tamb.len() != prof.len() {
        witness = Some(format!("{} Tambara morphisms against {} profunctor morphisms", tamb.len(), prof.len()));
    }
    TranspositionReport { tamb: tamb.len(), prof: prof.len(), bijection: witness.is_none(), witness }
}

fn optional_count(r: Result<Vec<FamilyMap>>) -> Result<Option<usize>> {
    match r {
        Ok(v) => Ok(Some(v.len())),
        Err(CoreError::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds `ΨQ` and `ΘQ`, enumerates the four hom-sets of the two adjunctions
/// `Ψ ⊣ U ⊣ Θ`, checks the transpositions are mutually inverse bijections,
/// and checks the comonad laws of `UΘ`.
pub fn adjunction_check(q: &ProfFamily, r: &TambaraModule, budget: u64, exec: crate::par::Exec) -> Result<AdjunctionReport> {
    if !q.same_shape(&r.family) {
        return Err(CoreError::LegMismatch("family and module over different actions".into()));
    }
    let b = q.base().clone();
    let (ax, ay) = (q.act_x.clone(), q.act_y.clone());
    let ur = forget(r);
    let psi = free(q)?;
    let theta = cofree(q)?;

    // Ψ ⊣ U
    let tamb = enumerate_tambara_morphisms(&psi.module, r, budget, exec)?;
    let prof = enumerate_prof_morphisms(q, &ur, budget, exec)?;
    let unit_class = |o: usize, a: usize, bb: usize, e: usize| {
        let s = q.sort(o, a, bb);
        let m = b.unit(o);
        let d = FreeDiag { q, o2: o, x: a, y: bb };
        let (xf, yf) = (&ax.fibres[o], &ay.fibres[o]);
        let xi = xf.hom(a, a).iter().position(|&f| f == xf.id(a)).unwrap();
        let eta = yf.hom(bb, bb).iter().position(|&f| f == yf.id(bb)).unwrap();
        psi.coends[s].class_of(psi.position(m, a, bb), d.encode(m, a, bb, xi, e, eta))
    };
    let free_to_prof = |big: &FamilyMap| -> FamilyMap {
        q.sorts()
            .iter()
            .enumerate()
            .map(|(s, &(o, a, bb))| (0..q.set(o, a, bb).len()).map(|e| big[s][unit_class(o, a, bb, e)]).collect())
            .collect()
    };
    let prof_to_free = |small: &FamilyMap| -> std::result::Result<FamilyMap, String> {
        q.sorts()
            .iter()
            .enumerate()
            .map(|(s, &(o2, x, y))| {
                let d = FreeDiag { q, o2, x, y };
                let (x2, y2) = (&ax.fibres[o2], &ay.fibres[o2]);
                let rp = &ur.profs[o2];
                let co = &psi.coends[s];
                let mut out = vec![usize::MAX; co.class_count()];
                for c in 0..co.index_count() {
                    let (m, a, bb) = psi.index[o2][c];
                    let o = b.cell_src(m);
                    for v in 0..co.diagonal_len(c) {
                        let (xi, e, eta) = d.decode(m, a, bb, v);
                        let (ma, mb) = (ax.act_obj(m, a), ay.act_obj(m, bb));
                        let st = r.st(m, a, bb, small[q.sort(o, a, bb)][e]);
                        let val = rp.lact(x2.hom(x, ma)[xi], y, rp.ract(ma, y2.hom(mb, y)[eta], st));
                        let k = co.class_of(c, v);
                        if out[k] == usize::MAX {
                            out[k] = val;
                        } else if out[k] != val {
                            return Err(format!("extension not constant on class {}", co.class_label(k)));
                        }
                    }
                }
                Ok(out)
            })
            .collect()
    };
    let free_side = compare(&tamb, &prof, free_to_prof, prof_to_free);

    // U ⊣ Θ
    let tamb2 = enumerate_tambara_morphisms(r, &theta.module, budget, exec)?;
    let prof2 = enumerate_prof_morphisms(&ur, q, budget, exec)?;
    let cofree_to_prof = |big: &FamilyMap| -> FamilyMap {
        q.sorts()
            .iter()
            .enumerate()
            .map(|(s, &(o, _, _))| {
                let k = theta.cells[o].iter().position(|&m| m == b.unit(o)).unwrap();
                big[s].iter().map(|&phi| theta.ends[s].project(phi, k)).collect()
            })
            .collect()
    };
    let prof_to_cofree = |small: &FamilyMap| -> std::result::Result<FamilyMap, String> {
        q.sorts()
            .iter()
            .enumerate()
            .map(|(s, &(o, x, y))| {
                (0..ur.set(o, x, y).len())
                    .map(|e| {
                        let t: Vec<usize> = theta.cells[o]
                            .iter()
                            .map(|&m| small[q.sort(b.cell_tgt(m), ax.act_obj(m, x), ay.act_obj(m, y))][r.st(m, x, y, e)])
                            .collect();
                        theta.ends[s].find(&t).ok_or_else(|| format!("family at sort {s} is not in the end"))
                    })
                    .collect()
            })
            .collect()
    };
    let cofree_side = compare(&tamb2, &prof2, cofree_to_prof, prof_to_cofree);

    let comonad = check_comonad(q, &theta)?;
    let direction = DirectionReport {
        free_left_of_forget: tamb.len() == prof.len(),
        free_right_of_forget: optional_count(enumerate_tambara_morphisms(r, &psi.module, budget, exec))?.map(|n| n == prof2.len()),
        cofree_right_of_forget: tamb2.len() == prof2.len(),
        cofree_left_of_forget: optional_count(enumerate_tambara_morphisms(&theta.module, r, budget, exec))?.map(|n| n == prof.len()),
    };
    Ok(AdjunctionReport { free_side, cofree_side, comonad, direction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::StrictMonoidal;
    use crate::fincat::FinCategory;
    use crate::par::Exec;

    fn trivial_on(c: FinCategory) -> Arc<BicatAction> {
        let mon = StrictMonoidal::trivial();
        let c = Arc::new(c);
        Arc::new(BicatAction::monoidal(&mon, c.clone(), |_, x| x, |_, f| f).unwrap())
    }

    fn swap() -> Arc<BicatAction> {
        let base = Arc::new(FinBicategory::deloop(&StrictMonoidal::cyclic(2)).unwrap());
        Arc::new(BicatAction::discrete(base, vec![FinSet::range(2)], |m, x| if m == 0 { x } else { 1 - x }).unwrap())
    }

    #[test]
    fn hom_module_over_trivial_base() {
        let p = TambaraModule::hom_module(trivial_on(FinCategory::walking_arrow())).unwrap();
        assert!(check_tambara(&p).ok());
        let ends = enumerate_tambara_morphisms(&p, &p, 10_000, Exec::Sequential).unwrap();
        let nats = enumerate_prof_morphisms(&p.family, &p.family, 10_000, Exec::Sequential).unwrap();
        assert_eq!(ends.len(), nats.len());
    }

    #[test]
    fn mutated_strength_is_caught() {
        let act = swap();
        let q = ProfFamily::build(act.clone(), act, |_, _, _| FinSet::range(2), |_, _, _, e| e.clone(), |_, _, _, e| e.clone())
            .unwrap();
        let p = cofree(&q).unwrap().module;
        assert!(check_tambara(&p).ok());
        let mut mutated = 0;
        for ((m, x, y, e), size) in p.strength_entries() {
            if size < 2 {
                continue;
            }
            let bad = p.with_strength_entry(m, x, y, e, (p.st(m, x, y, e) + 1) % size);
            assert!(!check_tambara(&bad).ok());
            assert_eq!(forget(&bad), forget(&p));
            mutated += 1;
        }
        assert!(mutated > 0);
    }

    #[test]
    fn cofree_and_free_are_modules() {
        let p = TambaraModule::hom_module(swap()).unwrap();
        let q = forget(&p);
        let theta = cofree(&q).unwrap();
        assert!(check_tambara(&theta.module).ok(), "{}", check_tambara(&theta.module));
        let psi = free(&q).unwrap();
        assert!(check_tambara(&psi.module).ok(), "{}", check_tambara(&psi.module));
        assert!(check_comonad(&q, &theta).unwrap().ok());
    }

    #[test]
    fn trivial_base_free_and_cofree_recover_q() {
        let p = TambaraModule::hom_module(trivial_on(FinCategory::walking_arrow())).unwrap();
        let q = forget(&p);
        let theta = cofree(&q).unwrap();
        let psi = free(&q).unwrap();
        for (o, x, y) in q.sorts() {
            assert_eq!(theta.module.family.set(o, x, y).len(), q.set(o, x, y).len());
            assert_eq!(psi.module.family.set(o, x, y).len(), q.set(o, x, y).len());
        }
    }

    #[test]
    fn adjunctions_on_swap() {
        let p = TambaraModule::hom_module(swap()).unwrap();
        let q = forget(&p);
        let rep = adjunction_check(&q, &p, 1_000_000, Exec::Parallel).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.direction.free_left_of_forget && rep.direction.cofree_right_of_forget);
    }

    #[test]
    fn empty_family_adjunction() {
        let act = swap();
        let q = ProfFamily::empty(act.clone(), act.clone()).unwrap();
        let p = TambaraModule::hom_module(act).unwrap();
        let rep = adjunction_check(&q, &p, 1_000_000, Exec::Sequential).unwrap();
        assert_eq!(rep.free_side.prof, 1);
        assert_eq!(rep.free_side.tamb, 1);
        assert!(rep.ok());
    }
}
