//! Actions of a finite category on an indexed set, and the passage between
//! the three presentations: a pair of maps `proj: X -> M_0` and
//! `act: M_1 ×_{M_0} X -> X`, a copresheaf on `M`, and a discrete
//! opfibration over `M` (the Grothendieck construction).
//!
//! Composition is diagrammatic throughout, so the composition law reads
//! `(m ; n) • x = n • (m • x)`.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::fincat::{check_copresheaf, check_discrete_opfibration, check_functor, Copresheaf, FinCategory, FinFunctor};
use crate::finset::{pullback, FinFunction, FinSet, Label};
use crate::report::LawReport;

/// An action of `base` on `total`, fibred over the objects by `proj`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSetAction {
    pub base: Arc<FinCategory>,
    pub total: FinSet,
    pub proj: FinFunction,
    /// Defined on the pullback `{(m, x) | src m = proj x}`.
    pub act: FinFunction,
    /// `slot[m * |X| + x]` is the position of `(m, x)` in the domain of `act`.
    slot: Vec<Option<usize>>,
}

fn src_map(base: &FinCategory) -> FinFunction {
    FinFunction::new(base.morphisms().clone(), base.objects().clone(), (0..base.n_morphisms()).map(|m| base.src(m)).collect())
        .expect("source map of a valid category")
}

impl IndexedSetAction {
    /// `act(m, x)` is only consulted where `src m = proj x`.
    pub fn new(
        base: Arc<FinCategory>,
        total: FinSet,
        proj: Vec<usize>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let proj = FinFunction::new(total.clone(), base.objects().clone(), proj)?;
        let (dom, p1, p2) = pullback(&src_map(&base), &proj)?;
        let table: Vec<usize> = (0..dom.len()).map(|k| act(p1.apply(k), p2.apply(k))).collect();
        let act = FinFunction::new(dom, total.clone(), table)?;
        let mut slot = vec![None; base.n_morphisms() * total.len()];
        for k in 0..act.dom().len() {
            slot[p1.apply(k) * total.len() + p2.apply(k)] = Some(k);
        }
        Ok(IndexedSetAction { base, total, proj, act, slot })
    }

    /// `m • x`, or `None` when `x` is not over the source of `m`.
    pub fn apply(&self, m: usize, x: usize) -> Option<usize> {
        self.slot[m * self.total.len() + x].map(|k| self.act.apply(k))
    }

    /// Copy with one action entry redirected; for checker mutation tests.
    pub fn with_entry(&self, m: usize, x: usize, value: usize) -> Self {
        let mut a = self.clone();
        if let Some(k) = a.slot[m * a.total.len() + x] {
            let mut t = a.act.table().to_vec();
            t[k] = value;
            a.act = FinFunction::new(a.act.dom().clone(), a.total.clone(), t).expect("value in range");
        }
        a
    }

    /// Elements over `o`, in order.
    pub fn fibre(&self, o: usize) -> Vec<usize> {
        (0..self.total.len()).filter(|&x| self.proj.apply(x) == o).collect()
    }
}

/// Fibre preservation, unit and composition laws.
pub fn check_action(a: &IndexedSetAction) -> LawReport {
    let mut r = LawReport::new();
    let m_cat = &a.base;
    let lbl = |x: usize| a.total.get(x);
    for x in 0..a.total.len() {
        let o = a.proj.apply(x);
        for m in m_cat.hom_from(o) {
            let y = a.apply(m, x).expect("defined over the source");
            if a.proj.apply(y) != m_cat.tgt(m) {
                r.push("lands over the target", format!("{} • {} = {}", m_cat.mor_label(m), lbl(x), lbl(y)));
            }
        }
        if a.apply(m_cat.id(o), x) != Some(x) {
            r.push("unit", format!("{} • {}", m_cat.mor_label(m_cat.id(o)), lbl(x)));
        }
    }
    for m in 0..m_cat.n_morphisms() {
        for n in 0..m_cat.n_morphisms() {
            let Some(mn) = m_cat.try_compose(m, n) else { continue };
            for x in a.fibre(m_cat.src(m)) {
                let lhs = a.apply(mn, x);
                let rhs = a.apply(m, x).and_then(|y| a.apply(n, y));
                if lhs != rhs {
                    r.push(
                        "composition",
                        format!("m = {}, n = {}, x = {}", m_cat.mor_label(m), m_cat.mor_label(n), lbl(x)),
                    );
                }
            }
        }
    }
    r
}

/// Fibres become the sets of the copresheaf, keeping their labels.
pub fn action_to_copresheaf(a: &IndexedSetAction) -> Result<Copresheaf> {
    let report = check_action(a);
    if !report.ok() {
        return Err(CoreError::Invalid { what: "action".into(), report });
    }
    let m_cat = &a.base;
    let fibres: Vec<Vec<usize>> = (0..m_cat.n_objects()).map(|o| a.fibre(o)).collect();
    let sets = fibres.iter().map(|f| FinSet::from_sorted(f.iter().map(|&x| a.total.get(x).clone()).collect())).collect();
    let actions = (0..m_cat.n_morphisms())
        .map(|m| {
            let target = &fibres[m_cat.tgt(m)];
            fibres[m_cat.src(m)]
                .iter()
                .map(|&x| {
                    let y = a.apply(m, x).unwrap();
                    target.binary_search(&y).expect("fibre preserved")
                })
                .collect()
        })
        .collect();
    Copresheaf::new(m_cat.clone(), sets, actions)
}

/// The total set is the disjoint union `Σ_o F(o)` with labels `(o, x)`.
pub fn copresheaf_to_action(f: &Copresheaf) -> Result<IndexedSetAction> {
    let report = check_copresheaf(f);
    if !report.ok() {
        return Err(CoreError::Invalid { what: "copresheaf".into(), report });
    }
    let m_cat = &f.dom;
    let mut offsets = vec![0];
    let mut labels = Vec::new();
    let mut proj = Vec::new();
    for o in 0..m_cat.n_objects() {
        for x in f.sets[o].iter() {
            labels.push(Label::pair(m_cat.obj_label(o).clone(), x.clone()));
            proj.push(o);
        }
        offsets.push(labels.len());
    }
    let total = FinSet::from_sorted(labels);
    IndexedSetAction::new(m_cat.clone(), total, proj.clone(), |m, x| {
        offsets[m_cat.tgt(m)] + f.actions[m][x - offsets[proj[x]]]
    })
}

/// Copresheaf → action → copresheaf returns the same tables, with each
/// element `x ∈ F(o)` relabelled `(o, x)`.
pub fn copresheaf_round_trip(f: &Copresheaf) -> Result<LawReport> {
    let back = action_to_copresheaf(&copresheaf_to_action(f)?)?;
    let mut r = LawReport::new();
    let d = &f.dom;
    for o in 0..d.n_objects() {
        let expect: Vec<Label> = f.sets[o].iter().map(|x| Label::pair(d.obj_label(o).clone(), x.clone())).collect();
        if back.sets[o].labels() != expect.as_slice() {
            r.push("fibre preserved", format!("at {}", d.obj_label(o)));
        }
    }
    for m in 0..d.n_morphisms() {
        if back.actions[m] != f.actions[m] {
            r.push("action preserved", format!("at {}", d.mor_label(m)));
        }
    }
    Ok(r)
}

/// Action → copresheaf → action returns the same action, with each `x`
/// relabelled `(proj x, x)`.
pub fn action_round_trip(a: &IndexedSetAction) -> Result<LawReport> {
    let back = copresheaf_to_action(&action_to_copresheaf(a)?)?;
    let mut r = LawReport::new();
    let m_cat = &a.base;
    let rename = |x: usize| Label::pair(m_cat.obj_label(a.proj.apply(x)).clone(), a.total.get(x).clone());
    let to_back: Vec<Option<usize>> = (0..a.total.len()).map(|x| back.total.index_of(&rename(x))).collect();
    if back.total.len() != a.total.len() || to_back.iter().any(Option::is_none) {
        r.push("total set preserved", format!("{} elements against {}", back.total.len(), a.total.len()));
        return Ok(r);
    }
    for x in 0..a.total.len() {
        let bx = to_back[x].unwrap();
        if back.proj.apply(bx) != a.proj.apply(x) {
            r.push("projection preserved", format!("at {}", a.total.get(x)));
        }
        for m in m_cat.hom_from(a.proj.apply(x)) {
            if back.apply(m, bx) != a.apply(m, x).and_then(|y| to_back[y]) {
                r.push("action preserved", format!("{} • {}", m_cat.mor_label(m), a.total.get(x)));
            }
        }
    }
    Ok(r)
}

/// The category of elements of a copresheaf with its projection.
#[derive(Clone, Debug)]
pub struct ActionCategory {
    pub cat: Arc<FinCategory>,
    pub proj_functor: FinFunctor,
}

/// Objects `(o, x)`; a morphism `(m, x): (o, x) -> (o', m • x)` for each `m: o -> o'`.
pub fn grothendieck(f: &Copresheaf) -> Result<ActionCategory> {
    let report = check_copresheaf(f);
    if !report.ok() {
        return Err(CoreError::Invalid { what: "copresheaf".into(), report });
    }
    let b = &f.dom;
    let mut obj_off = vec![0];
    let mut obj_labels = Vec::new();
    for o in 0..b.n_objects() {
        for x in f.sets[o].iter() {
            obj_labels.push(Label::pair(b.obj_label(o).clone(), x.clone()));
        }
        obj_off.push(obj_labels.len());
    }
    // morphism (m, x) with x ∈ F(src m); sorted since morphism labels are sorted
    let mut mor_off = vec![0];
    let mut mor_labels = Vec::new();
    let (mut src, mut tgt, mut over) = (Vec::new(), Vec::new(), Vec::new());
    for m in 0..b.n_morphisms() {
        let (s, t) = (b.src(m), b.tgt(m));
        for (x, xl) in f.sets[s].iter().enumerate() {
            mor_labels.push(Label::pair(b.mor_label(m).clone(), xl.clone()));
            src.push(obj_off[s] + x);
            tgt.push(obj_off[t] + f.actions[m][x]);
            over.push(m);
        }
        mor_off.push(mor_labels.len());
    }
    let nm = mor_labels.len();
    let ident = (0..b.n_objects())
        .flat_map(|o| (0..f.sets[o].len()).map(move |x| (o, x)))
        .map(|(o, x)| mor_off[b.id(o)] + x)
        .collect();
    let mut comp = vec![None; nm * nm];
    for (k1, &m) in over.iter().enumerate() {
        let x = k1 - mor_off[m];
        let y = f.actions[m][x];
        for n in b.hom_from(b.tgt(m)) {
            let mn = b.compose(m, n);
            comp[k1 * nm + mor_off[n] + y] = Some(mor_off[mn] + x);
        }
    }
    let obj_proj: Vec<usize> = (0..b.n_objects()).flat_map(|o| std::iter::repeat_n(o, f.sets[o].len())).collect();
    let cat = Arc::new(FinCategory::new(
        FinSet::from_sorted(obj_labels),
        FinSet::from_sorted(mor_labels),
        src,
        tgt,
        ident,
        comp,
    )?);
    let proj_functor = FinFunctor::new(cat.clone(), b.clone(), obj_proj, over)?;
    Ok(ActionCategory { cat, proj_functor })
}

/// Functoriality of the projection together with unique lifting.
pub fn check_action_category(a: &ActionCategory) -> LawReport {
    let mut r = LawReport::new();
    r.absorb("category", crate::fincat::check_category(&a.cat));
    r.absorb("projection", check_functor(&a.proj_functor));
    r.absorb("opfibration", check_discrete_opfibration(&a.proj_functor));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> IndexedSetAction {
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        IndexedSetAction::new(z2, FinSet::range(2), vec![0, 0], |m, x| if m == 0 { x } else { 1 - x }).unwrap()
    }

    fn arrow_copresheaf() -> Copresheaf {
        let c = Arc::new(FinCategory::walking_arrow());
        Copresheaf::from_fn(
            c.clone(),
            |o| if o == 0 { FinSet::new(["x1".into(), "x2".into()]).unwrap() } else { FinSet::new(["y".into()]).unwrap() },
            |f, x| if c.is_identity(f) { x.clone() } else { Label::from("y") },
        )
        .unwrap()
    }

    #[test]
    fn trivial_action_passes() {
        let c = Arc::new(FinCategory::walking_arrow());
        let a = IndexedSetAction::new(c.clone(), c.objects().clone(), vec![0, 1], |m, _| c.tgt(m)).unwrap();
        assert!(check_action(&a).ok());
    }

    #[test]
    fn swap_action_and_its_mutation() {
        assert!(check_action(&swap()).ok());
        let broken = swap().with_entry(0, 0, 1);
        let r = check_action(&broken);
        assert!(r.has_law("unit"), "{r}");
    }

    #[test]
    fn round_trips() {
        assert!(action_round_trip(&swap()).unwrap().ok());
        let f = arrow_copresheaf();
        assert_eq!(copresheaf_to_action(&f).unwrap().total.len(), 3);
        assert!(copresheaf_round_trip(&f).unwrap().ok());
    }

    #[test]
    fn grothendieck_of_arrow() {
        let g = grothendieck(&arrow_copresheaf()).unwrap();
        assert_eq!(g.cat.n_objects(), 3);
        let non_id = (0..g.cat.n_morphisms()).filter(|&m| !g.cat.is_identity(m)).count();
        assert_eq!(non_id, 2);
        assert!(check_action_category(&g).ok());
    }

    #[test]
    fn grothendieck_of_terminal_is_base() {
        let c = Arc::new(FinCategory::cyclic_group(3));
        let g = grothendieck(&Copresheaf::terminal(&c)).unwrap();
        assert!(g.proj_functor.is_isomorphism());
    }

    #[test]
    fn empty_fibres() {
        let c = Arc::new(FinCategory::discrete(2));
        let f = Copresheaf::new(c.clone(), vec![FinSet::empty(), FinSet::range(1)], vec![vec![], vec![0]]).unwrap();
        assert!(copresheaf_round_trip(&f).unwrap().ok());
        let all_empty = Copresheaf::new(c, vec![FinSet::empty(); 2], vec![vec![]; 2]).unwrap();
        assert_eq!(grothendieck(&all_empty).unwrap().cat.n_objects(), 0);
    }
}
