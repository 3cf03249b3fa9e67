//! Finite strict bicategories and their strict actions on finite categories.
//!
//! 1-cells and 2-cells carry global indices. A 1-cell `m: o -> o'` is an object
//! of the hom-category `hom(o, o')`; a 2-cell is a morphism there. Horizontal
//! composition is diagrammatic: `m ; n` for `m: o -> o'`, `n: o' -> o''`.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::fincat::{check_category, check_functor, check_nat_trans, FinCategory, FinFunctor, NatTrans};
use crate::finset::{FinSet, Label};
use crate::report::LawReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBicategory {
    pub objects: FinSet,
    homs: Vec<Arc<FinCategory>>,
    cell_off: Vec<usize>,
    two_off: Vec<usize>,
    /// global 1-cell -> (src object, tgt object, local index)
    cells: Vec<(usize, usize, usize)>,
    /// global 2-cell -> (hom index, local index)
    twos: Vec<(usize, usize)>,
    unit: Vec<usize>,
    /// per triple `(o, o', o'')`: local `m * |hom(o', o'')| + n` -> local composite
    comp1: Vec<Vec<usize>>,
    /// per triple: local 2-cells `a * |2-cells(o', o'')| + b` -> local composite
    comp2: Vec<Vec<usize>>,
}

impl FinBicategory {
    /// `homs[o * n + o']`; `unit[o]` is local in `hom(o, o)`; `comp1`/`comp2`
    /// are indexed by `(o * n + o') * n + o''` with local entries.
    pub fn new(
        objects: FinSet,
        homs: Vec<Arc<FinCategory>>,
        unit: Vec<usize>,
        comp1: Vec<Vec<usize>>,
        comp2: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || unit.len() != n || comp1.len() != n * n * n || comp2.len() != n * n * n {
            return Err(CoreError::Shape("bicategory tables must cover every object".into()));
        }
        let mut cell_off = vec![0];
        let mut two_off = vec![0];
        let mut cells = Vec::new();
        let mut twos = Vec::new();
        for (h, c) in homs.iter().enumerate() {
            for l in 0..c.n_objects() {
                cells.push((h / n, h % n, l));
            }
            for l in 0..c.n_morphisms() {
                twos.push((h, l));
            }
            cell_off.push(cells.len());
            two_off.push(twos.len());
        }
        for (t, (c1, c2)) in comp1.iter().zip(&comp2).enumerate() {
            let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
            let (h1, h2, h3) = (&homs[a * n + b], &homs[b * n + c], &homs[a * n + c]);
            if c1.len() != h1.n_objects() * h2.n_objects() || c1.iter().any(|&x| x >= h3.n_objects()) {
                return Err(CoreError::Shape(format!("1-cell composition table at ({a}, {b}, {c})")));
            }
            if c2.len() != h1.n_morphisms() * h2.n_morphisms() || c2.iter().any(|&x| x >= h3.n_morphisms()) {
                return Err(CoreError::Shape(format!("2-cell composition table at ({a}, {b}, {c})")));
            }
        }
        let unit = unit.iter().enumerate().map(|(o, &u)| cell_off[o * n + o] + u).collect();
        Ok(FinBicategory { objects, homs, cell_off, two_off, cells, twos, unit, comp1, comp2 })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, o: usize, o2: usize) -> &Arc<FinCategory> {
        &self.homs[o * self.n_objects() + o2]
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_two_cells(&self) -> usize {
        self.twos.len()
    }

    pub fn cell_src(&self, m: usize) -> usize {
        self.cells[m].0
    }

    pub fn cell_tgt(&self, m: usize) -> usize {
        self.cells[m].1
    }

    pub fn cell_local(&self, m: usize) -> usize {
        self.cells[m].2
    }

    pub fn cell(&self, o: usize, o2: usize, local: usize) -> usize {
        self.cell_off[o * self.n_objects() + o2] + local
    }

    pub fn cell_label(&self, m: usize) -> &Label {
        let (a, b, l) = self.cells[m];
        self.hom(a, b).obj_label(l)
    }

    /// 1-cells `o -> o'`, as global indices.
    pub fn cells_between(&self, o: usize, o2: usize) -> std::ops::Range<usize> {
        let h = o * self.n_objects() + o2;
        self.cell_off[h]..self.cell_off[h + 1]
    }

    /// 1-cells out of `o`.
    pub fn cells_from(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_objects()).flat_map(move |o2| self.cells_between(o, o2))
    }

    pub fn unit(&self, o: usize) -> usize {
        self.unit[o]
    }

    pub fn is_unit(&self, m: usize) -> bool {
        self.unit[self.cell_src(m)] == m && self.cell_src(m) == self.cell_tgt(m)
    }

    /// `m ; n`.
    pub fn compose1(&self, m: usize, n: usize) -> usize {
        let ((a, b, lm), (b2, c, ln)) = (self.cells[m], self.cells[n]);
        assert_eq!(b, b2, "1-cells not composable");
        let k = self.n_objects();
        let w = self.hom(b, c).n_objects();
        self.cell(a, c, self.comp1[(a * k + b) * k + c][lm * w + ln])
    }

    pub fn two_src(&self, alpha: usize) -> usize {
        let (h, l) = self.twos[alpha];
        self.cell_off[h] + self.homs[h].src(l)
    }

    pub fn two_tgt(&self, alpha: usize) -> usize {
        let (h, l) = self.twos[alpha];
        self.cell_off[h] + self.homs[h].tgt(l)
    }

    pub fn two_local(&self, alpha: usize) -> usize {
        self.twos[alpha].1
    }

    pub fn two(&self, o: usize, o2: usize, local: usize) -> usize {
        self.two_off[o * self.n_objects() + o2] + local
    }

    pub fn two_label(&self, alpha: usize) -> &Label {
        let (h, l) = self.twos[alpha];
        self.homs[h].mor_label(l)
    }

    /// 2-cells between 1-cells `o -> o'`.
    pub fn twos_between(&self, o: usize, o2: usize) -> std::ops::Range<usize> {
        let h = o * self.n_objects() + o2;
        self.two_off[h]..self.two_off[h + 1]
    }

    pub fn id2(&self, m: usize) -> usize {
        let (a, b, l) = self.cells[m];
        self.two(a, b, self.hom(a, b).id(l))
    }

    /// Vertical composite `α ; β`, if composable.
    pub fn vcomp(&self, alpha: usize, beta: usize) -> Option<usize> {
        let ((h1, l1), (h2, l2)) = (self.twos[alpha], self.twos[beta]);
        if h1 != h2 {
            return None;
        }
        self.homs[h1].try_compose(l1, l2).map(|l| self.two_off[h1] + l)
    }

    /// Horizontal composite of `α` (between cells `o -> o'`) and `β` (between cells `o' -> o''`).
    pub fn hcomp2(&self, alpha: usize, beta: usize) -> usize {
        let ((h1, l1), (h2, l2)) = (self.twos[alpha], self.twos[beta]);
        let k = self.n_objects();
        let (a, b, b2, c) = (h1 / k, h1 % k, h2 / k, h2 % k);
        assert_eq!(b, b2, "2-cells not horizontally composable");
        let w = self.homs[h2].n_morphisms();
        self.two(a, c, self.comp2[(a * k + b) * k + c][l1 * w + l2])
    }

    /// A bicategory whose hom-categories are discrete, on the morphisms of `c`.
    pub fn locally_discrete(c: &FinCategory) -> Self {
        let n = c.n_objects();
        let mut homs = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let labels = FinSet::from_sorted(c.hom(a, b).iter().map(|&f| c.mor_label(f).clone()).collect());
                homs.push(Arc::new(FinCategory::discrete_on(&labels)));
            }
        }
        let unit = (0..n).map(|o| c.hom(o, o).iter().position(|&f| f == c.id(o)).unwrap()).collect();
        let mut comp1 = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let h3 = c.hom(a, d);
                    let table: Vec<usize> = c
                        .hom(a, b)
                        .iter()
                        .flat_map(|&f| c.hom(b, d).iter().map(move |&g| (f, g)))
                        .map(|(f, g)| h3.iter().position(|&x| x == c.compose(f, g)).unwrap())
                        .collect();
                    comp1.push(table);
                }
            }
        }
        // identities only, so 2-cells compose like their 1-cells
        let comp2 = comp1.clone();
        FinBicategory::new(c.objects().clone(), homs, unit, comp1, comp2).expect("locally discrete shape")
    }

    /// The one-object bicategory of a strict monoidal category.
    pub fn deloop(mon: &StrictMonoidal) -> Result<Self> {
        let report = check_strict_monoidal(mon);
        if !report.ok() {
            return Err(CoreError::NotStrict(report.first_line()));
        }
        FinBicategory::new(
            FinSet::range(1),
            vec![mon.cat.clone()],
            vec![mon.unit],
            vec![mon.tensor_obj.clone()],
            vec![mon.tensor_mor.clone()],
        )
    }
}

/// A strict monoidal structure on a finite category, `a ⊗ b` read as `a ; b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMonoidal {
    pub cat: Arc<FinCategory>,
    /// `tensor_obj[a * |objects| + b]`
    pub tensor_obj: Vec<usize>,
    /// `tensor_mor[f * |morphisms| + g]`
    pub tensor_mor: Vec<usize>,
    pub unit: usize,
}

impl StrictMonoidal {
    /// The trivial monoidal category.
    pub fn trivial() -> Self {
        StrictMonoidal { cat: Arc::new(FinCategory::terminal()), tensor_obj: vec![0], tensor_mor: vec![0], unit: 0 }
    }

    /// `Z/n` as a discrete monoidal category.
    pub fn cyclic(n: usize) -> Self {
        let labels = FinSet::collect((0..n).map(|i| Label::sym(format!("g{i}"))));
        let pos: Vec<usize> = (0..n).map(|i| labels.index_of(&Label::sym(format!("g{i}"))).unwrap()).collect();
        let mut t = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                t[pos[x] * n + pos[y]] = pos[(x + y) % n];
            }
        }
        StrictMonoidal { cat: Arc::new(FinCategory::discrete_on(&labels)), tensor_obj: t.clone(), tensor_mor: t, unit: pos[0] }
    }

    /// Cardinalities `{0, 1}` under product: the walking arrow `0 -> 1` with
    /// `a ⊗ b = min(a, b)` and unit `1`.
    pub fn min_arrow() -> Self {
        let cat = Arc::new(FinCategory::walking_arrow());
        let arrow = |a: usize, b: usize| cat.hom(a, b)[0];
        let tensor_obj = (0..4).map(|k| (k / 2).min(k % 2)).collect();
        let nm = cat.n_morphisms();
        let tensor_mor = (0..nm * nm)
            .map(|k| {
                let (f, g) = (k / nm, k % nm);
                arrow(cat.src(f).min(cat.src(g)), cat.tgt(f).min(cat.tgt(g)))
            })
            .collect();
        StrictMonoidal { cat: cat.clone(), tensor_obj, tensor_mor, unit: 1 }
    }

    /// The discrete monoidal category of a finite monoid.
    pub fn discrete_monoid(c: &FinCategory) -> Result<Self> {
        if c.n_objects() != 1 {
            return Err(CoreError::Shape("a monoid has one object".into()));
        }
        let n = c.n_morphisms();
        let t: Vec<usize> = (0..n * n).map(|k| c.compose(k / n, k % n)).collect();
        Ok(StrictMonoidal {
            cat: Arc::new(FinCategory::discrete_on(c.morphisms())),
            tensor_obj: t.clone(),
            tensor_mor: t,
            unit: c.id(0),
        })
    }
}

/// Functoriality, strict associativity and strict unitality of the tensor.
pub fn check_strict_monoidal(mon: &StrictMonoidal) -> LawReport {
    let mut r = LawReport::new();
    let c = &mon.cat;
    let (no, nm) = (c.n_objects(), c.n_morphisms());
    if mon.tensor_obj.len() != no * no || mon.tensor_mor.len() != nm * nm || mon.unit >= no {
        r.push("table shape", "tensor tables do not cover the category");
        return r;
    }
    let to = |a: usize, b: usize| mon.tensor_obj[a * no + b];
    let tm = |f: usize, g: usize| mon.tensor_mor[f * nm + g];
    for f in 0..nm {
        for g in 0..nm {
            let h = tm(f, g);
            if c.src(h) != to(c.src(f), c.src(g)) || c.tgt(h) != to(c.tgt(f), c.tgt(g)) {
                r.push("tensor endpoints", format!("{} ⊗ {}", c.mor_label(f), c.mor_label(g)));
            }
        }
    }
    for a in 0..no {
        for b in 0..no {
            if tm(c.id(a), c.id(b)) != c.id(to(a, b)) {
                r.push("tensor preserves identities", format!("{} ⊗ {}", c.obj_label(a), c.obj_label(b)));
            }
        }
        if to(mon.unit, a) != a || to(a, mon.unit) != a {
            r.push("strict unit", format!("at {}", c.obj_label(a)));
        }
        for b in 0..no {
            for d in 0..no {
                if to(to(a, b), d) != to(a, to(b, d)) {
                    r.push("strict associativity", format!("({}, {}, {})", c.obj_label(a), c.obj_label(b), c.obj_label(d)));
                }
            }
        }
    }
    for f in 0..nm {
        if tm(c.id(mon.unit), f) != f || tm(f, c.id(mon.unit)) != f {
            r.push("strict unit on morphisms", format!("at {}", c.mor_label(f)));
        }
        for g in 0..nm {
            for h in 0..nm {
                if tm(tm(f, g), h) != tm(f, tm(g, h)) {
                    r.push("strict associativity on morphisms", format!("({}, {}, {})", c.mor_label(f), c.mor_label(g), c.mor_label(h)));
                }
            }
        }
    }
    for f in 0..nm {
        for f2 in 0..nm {
            let Some(ff) = c.try_compose(f, f2) else { continue };
            for g in 0..nm {
                for g2 in 0..nm {
                    let Some(gg) = c.try_compose(g, g2) else { continue };
                    if c.try_compose(tm(f, g), tm(f2, g2)) != Some(tm(ff, gg)) {
                        r.push("interchange", format!("({} ; {}) ⊗ ({} ; {})", c.mor_label(f), c.mor_label(f2), c.mor_label(g), c.mor_label(g2)));
                    }
                }
            }
        }
    }
    r
}

/// Hom-categories are categories, composition is a strictly associative and
/// unital functor.
pub fn check_bicat(b: &FinBicategory) -> LawReport {
    let mut r = LawReport::new();
    let n = b.n_objects();
    for o in 0..n {
        for o2 in 0..n {
            r.absorb(&format!("hom({}, {})", b.objects.get(o), b.objects.get(o2)), check_category(b.hom(o, o2)));
        }
    }
    if !r.ok() {
        return r;
    }
    for m in 0..b.n_cells() {
        let (a, c) = (b.cell_src(m), b.cell_tgt(m));
        if b.compose1(b.unit(a), m) != m || b.compose1(m, b.unit(c)) != m {
            r.push("unit 1-cell", format!("at {}", b.cell_label(m)));
        }
        for k in b.cells_from(c) {
            for l in b.cells_from(b.cell_tgt(k)) {
                if b.compose1(b.compose1(m, k), l) != b.compose1(m, b.compose1(k, l)) {
                    r.push("1-cell associativity", format!("({}, {}, {})", b.cell_label(m), b.cell_label(k), b.cell_label(l)));
                }
            }
        }
    }
    for alpha in 0..b.n_two_cells() {
        let (m, m2) = (b.two_src(alpha), b.two_tgt(alpha));
        let (a, c) = (b.cell_src(m), b.cell_tgt(m));
        let (ia, ic) = (b.id2(b.unit(a)), b.id2(b.unit(c)));
        if b.hcomp2(ia, alpha) != alpha || b.hcomp2(alpha, ic) != alpha {
            r.push("unit 2-cell", format!("at {}", b.two_label(alpha)));
        }
        for d in 0..n {
            for beta in b.twos_between(c, d) {
                let h = b.hcomp2(alpha, beta);
                if b.two_src(h) != b.compose1(m, b.two_src(beta)) || b.two_tgt(h) != b.compose1(m2, b.two_tgt(beta)) {
                    r.push("horizontal composite endpoints", format!("{} * {}", b.two_label(alpha), b.two_label(beta)));
                }
                for e in 0..n {
                    for gamma in b.twos_between(d, e) {
                        if b.hcomp2(b.hcomp2(alpha, beta), gamma) != b.hcomp2(alpha, b.hcomp2(beta, gamma)) {
                            r.push("2-cell associativity", format!("({}, {}, {})", b.two_label(alpha), b.two_label(beta), b.two_label(gamma)));
                        }
                    }
                }
            }
        }
    }
    // interchange and identity preservation
    for m in 0..b.n_cells() {
        for k in b.cells_from(b.cell_tgt(m)) {
            if b.hcomp2(b.id2(m), b.id2(k)) != b.id2(b.compose1(m, k)) {
                r.push("identity 2-cells compose", format!("({}, {})", b.cell_label(m), b.cell_label(k)));
            }
        }
    }
    for alpha in 0..b.n_two_cells() {
        for alpha2 in 0..b.n_two_cells() {
            let Some(aa) = b.vcomp(alpha, alpha2) else { continue };
            let (a, c) = (b.cell_src(b.two_src(alpha)), b.cell_tgt(b.two_src(alpha)));
            for d in 0..n {
                for beta in b.twos_between(c, d) {
                    for beta2 in b.twos_between(c, d) {
                        let Some(bb) = b.vcomp(beta, beta2) else { continue };
                        let lhs = b.vcomp(b.hcomp2(alpha, beta), b.hcomp2(alpha2, beta2));
                        if lhs != Some(b.hcomp2(aa, bb)) {
                            r.push(
                                "interchange",
                                format!("{} ; {} against {} ; {} from {}", b.two_label(alpha), b.two_label(alpha2), b.two_label(beta), b.two_label(beta2), b.objects.get(a)),
                            );
                        }
                    }
                }
            }
        }
    }
    r
}

/// A strict action: a category per object, a functor per 1-cell and a natural
/// transformation per 2-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicatAction {
    pub base: Arc<FinBicategory>,
    pub fibres: Vec<Arc<FinCategory>>,
    /// `m • -`, indexed by global 1-cell
    pub on1: Vec<FinFunctor>,
    /// `(α •)`, indexed by global 2-cell: components `(α •)_x : m • x -> n • x`
    pub on2: Vec<Vec<usize>>,
}

impl BicatAction {
    pub fn new(
        base: Arc<FinBicategory>,
        fibres: Vec<Arc<FinCategory>>,
        on1: Vec<FinFunctor>,
        on2: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if fibres.len() != base.n_objects() || on1.len() != base.n_cells() || on2.len() != base.n_two_cells() {
            return Err(CoreError::Shape("action must cover every object, 1-cell and 2-cell".into()));
        }
        for m in 0..base.n_cells() {
            if *on1[m].dom != *fibres[base.cell_src(m)] || *on1[m].cod != *fibres[base.cell_tgt(m)] {
                return Err(CoreError::Shape(format!("functor of {} has the wrong fibres", base.cell_label(m))));
            }
        }
        for (alpha, comp) in on2.iter().enumerate() {
            let src = base.cell_src(base.two_src(alpha));
            if comp.len() != fibres[src].n_objects() {
                return Err(CoreError::Shape(format!("2-cell {} needs one component per object", base.two_label(alpha))));
            }
        }
        Ok(BicatAction { base, fibres, on1, on2 })
    }

    /// `m • x` on objects.
    pub fn act_obj(&self, m: usize, x: usize) -> usize {
        self.on1[m].omap[x]
    }

    /// `m • f` on morphisms.
    pub fn act_mor(&self, m: usize, f: usize) -> usize {
        self.on1[m].mmap[f]
    }

    /// `(α •)_x`.
    pub fn act_two(&self, alpha: usize, x: usize) -> usize {
        self.on2[alpha][x]
    }

    /// The action of a strict monoidal category on one category, delooped.
    pub fn monoidal(
        mon: &StrictMonoidal,
        fibre: Arc<FinCategory>,
        act_obj: impl Fn(usize, usize) -> usize,
        act_mor: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let base = Arc::new(FinBicategory::deloop(mon)?);
        let c = &mon.cat;
        let on1 = (0..c.n_objects())
            .map(|m| {
                FinFunctor::new(
                    fibre.clone(),
                    fibre.clone(),
                    (0..fibre.n_objects()).map(|x| act_obj(m, x)).collect(),
                    (0..fibre.n_morphisms()).map(|f| act_mor(c.id(m), f)).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let on2 = (0..c.n_morphisms())
            .map(|alpha| (0..fibre.n_objects()).map(|x| act_mor(alpha, fibre.id(x))).collect())
            .collect();
        BicatAction::new(base, vec![fibre], on1, on2)
    }

    /// The action of a locally discrete base on copresheaf-like data: each
    /// fibre discrete, `m • x` given by a function.
    pub fn discrete(base: Arc<FinBicategory>, fibres: Vec<FinSet>, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cats: Vec<Arc<FinCategory>> = fibres.iter().map(|s| Arc::new(FinCategory::discrete_on(s))).collect();
        let on1 = (0..base.n_cells())
            .map(|m| {
                let (a, c) = (base.cell_src(m), base.cell_tgt(m));
                let omap: Vec<usize> = (0..fibres[a].len()).map(|x| act(m, x)).collect();
                let mmap = omap.clone();
                FinFunctor::new(cats[a].clone(), cats[c].clone(), omap, mmap)
            })
            .collect::<Result<Vec<_>>>()?;
        let on2 = (0..base.n_two_cells())
            .map(|alpha| {
                let m = base.two_src(alpha);
                (0..fibres[base.cell_src(m)].len()).map(|x| act(m, x)).collect()
            })
            .collect();
        BicatAction::new(base, cats, on1, on2)
    }
}

/// Functor and transformation laws, plus strict functoriality in 1-cells and 2-cells.
pub fn check_bicat_action(x: &BicatAction) -> LawReport {
    let mut r = LawReport::new();
    let b = &x.base;
    for (o, f) in x.fibres.iter().enumerate() {
        r.absorb(&format!("fibre {}", b.objects.get(o)), check_category(f));
    }
    for m in 0..b.n_cells() {
        r.absorb(&format!("{} •", b.cell_label(m)), check_functor(&x.on1[m]));
    }
    if !r.ok() {
        return r;
    }
    for alpha in 0..b.n_two_cells() {
        let t = NatTrans {
            src: x.on1[b.two_src(alpha)].clone(),
            tgt: x.on1[b.two_tgt(alpha)].clone(),
            components: x.on2[alpha].clone(),
        };
        r.absorb(&format!("({} •)", b.two_label(alpha)), check_nat_trans(&t));
    }
    if !r.ok() {
        return r;
    }
    for o in 0..b.n_objects() {
        if !x.on1[b.unit(o)].is_identity() {
            r.push("unit acts trivially", format!("at {}", b.objects.get(o)));
        }
    }
    for m in 0..b.n_cells() {
        for n in b.cells_from(b.cell_tgt(m)) {
            let mn = b.compose1(m, n);
            let composite = x.on1[m].then(&x.on1[n]).expect("fibres line up");
            if composite != x.on1[mn] {
                r.push("composition of 1-cells", format!("m = {}, n = {}", b.cell_label(m), b.cell_label(n)));
            }
        }
        let fib = &x.fibres[b.cell_tgt(m)];
        let id = b.id2(m);
        if (0..x.fibres[b.cell_src(m)].n_objects()).any(|v| x.on2[id][v] != fib.id(x.act_obj(m, v))) {
            r.push("identity 2-cell acts trivially", format!("at {}", b.cell_label(m)));
        }
    }
    for alpha in 0..b.n_two_cells() {
        let src = b.cell_src(b.two_src(alpha));
        let fib = &x.fibres[b.cell_tgt(b.two_src(alpha))];
        for beta in 0..b.n_two_cells() {
            if let Some(ab) = b.vcomp(alpha, beta) {
                let ok = (0..x.fibres[src].n_objects())
                    .all(|v| fib.try_compose(x.on2[alpha][v], x.on2[beta][v]) == Some(x.on2[ab][v]));
                if !ok {
                    r.push("vertical composition of 2-cells", format!("{} ; {}", b.two_label(alpha), b.two_label(beta)));
                }
            }
        }
        let m2 = b.two_tgt(alpha);
        let mid = b.cell_tgt(m2);
        for o3 in 0..b.n_objects() {
            for beta in b.twos_between(mid, o3) {
                let h = b.hcomp2(alpha, beta);
                let n = b.two_src(beta);
                let out = &x.fibres[o3];
                // (α * β)_v = n • α_v ; β_{m' • v}
                let ok = (0..x.fibres[src].n_objects()).all(|v| {
                    out.try_compose(x.act_mor(n, x.on2[alpha][v]), x.on2[beta][x.act_obj(m2, v)]) == Some(x.on2[h][v])
                });
                if !ok {
                    r.push("horizontal composition of 2-cells", format!("{} * {}", b.two_label(alpha), b.two_label(beta)));
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delooped_examples_pass() {
        let t = FinBicategory::deloop(&StrictMonoidal::trivial()).unwrap();
        assert!(check_bicat(&t).ok());
        assert_eq!(t.n_cells(), 1);
        let z2 = FinBicategory::deloop(&StrictMonoidal::cyclic(2)).unwrap();
        assert_eq!(z2.n_cells(), 2);
        assert!(check_bicat(&z2).ok());
        let min = FinBicategory::deloop(&StrictMonoidal::min_arrow()).unwrap();
        assert!(check_bicat(&min).ok());
    }

    #[test]
    fn non_strict_tensor_rejected() {
        let mut m = StrictMonoidal::cyclic(3);
        m.tensor_obj[4] = m.tensor_obj[5];
        assert!(matches!(FinBicategory::deloop(&m), Err(CoreError::NotStrict(_))));
    }

    #[test]
    fn locally_discrete_groupoid() {
        let c = FinCategory::preorder(2, &[(0, 1), (1, 0)]);
        let b = FinBicategory::locally_discrete(&c);
        assert_eq!(b.n_cells(), 4);
        assert!(check_bicat(&b).ok());
    }

    fn swap_action() -> BicatAction {
        let base = Arc::new(FinBicategory::deloop(&StrictMonoidal::cyclic(2)).unwrap());
        BicatAction::discrete(base, vec![FinSet::range(2)], |m, x| if m == 0 { x } else { 1 - x }).unwrap()
    }

    #[test]
    fn swap_action_and_mutation() {
        let a = swap_action();
        assert!(check_bicat_action(&a).ok());
        let mut bad = a.clone();
        // g1 acts as the identity: g1 ; g1 = g0 still holds, so break g0 instead
        bad.on1[0].omap = vec![1, 0];
        bad.on1[0].mmap = vec![1, 0];
        bad.on2[0] = vec![1, 0];
        let r = check_bicat_action(&bad);
        assert!(!r.ok());
    }

    #[test]
    fn min_arrow_acts_on_itself() {
        let mon = StrictMonoidal::min_arrow();
        let c = mon.cat.clone();
        let nm = c.n_morphisms();
        let act = BicatAction::monoidal(
            &mon,
            c.clone(),
            |m, x| mon.tensor_obj[m * 2 + x],
            |alpha, f| mon.tensor_mor[alpha * nm + f],
        )
        .unwrap();
        assert!(check_bicat_action(&act).ok(), "{}", check_bicat_action(&act));
    }
}
