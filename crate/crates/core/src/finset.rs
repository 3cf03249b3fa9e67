//! Finite sets, functions between them, and the handful of limits the rest
//! of the engine is built from: products, pullbacks, equalizers, and the
//! union-find quotient that backs every coend computation.
//!
//! Elements are opaque [`Label`]s. Sets keep their labels sorted, so two sets
//! with the same elements compare equal, and element indices are stable.
//! Derived sets label their elements by construction: a product element is
//! `(x, y)`, a quotient class is labelled by its least member.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// An element label. Ordering is total and deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Sym(String),
    Tup(Vec<Label>),
}

impl Label {
    pub fn sym(s: impl Into<String>) -> Self {
        Label::Sym(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Tup(vec![a, b])
    }

    pub fn tup(items: Vec<Label>) -> Self {
        Label::Tup(items)
    }

    /// Label of a function table `[t0, t1, ...]` as a tuple of integers.
    pub fn table(t: &[usize]) -> Self {
        Label::Tup(t.iter().map(|&i| Label::Int(i as i64)).collect())
    }

    /// Inverse of [`Label::table`].
    pub fn as_table(&self) -> Option<Vec<usize>> {
        match self {
            Label::Tup(items) => items.iter().map(|l| match l {
                Label::Int(n) => usize::try_from(*n).ok(),
                _ => None,
            }).collect(),
            _ => None,
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Sym(s.to_string())
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::Int(n as i64)
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Sym(s) => write!(f, "{s}"),
            Label::Tup(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A finite set of distinct labels in canonical (sorted) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct FinSet {
    elems: Vec<Label>,
}

impl TryFrom<Vec<Label>> for FinSet {
    type Error = CoreError;

    fn try_from(v: Vec<Label>) -> Result<Self> {
        FinSet::new(v)
    }
}

impl From<FinSet> for Vec<Label> {
    fn from(s: FinSet) -> Self {
        s.elems
    }
}

impl FinSet {
    /// Builds a set, rejecting duplicates. Input order is irrelevant.
    pub fn new(elems: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut elems: Vec<Label> = elems.into_iter().collect();
        elems.sort();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoreError::DuplicateElement(w[0].to_string()));
        }
        Ok(FinSet { elems })
    }

    /// Builds a set from labels, silently merging duplicates.
    pub fn collect(elems: impl IntoIterator<Item = Label>) -> Self {
        let mut elems: Vec<Label> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        FinSet { elems }
    }

    /// Caller guarantees the labels are strictly increasing.
    pub(crate) fn from_sorted(elems: Vec<Label>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]), "labels not sorted");
        FinSet { elems }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    /// `{0, 1, ..., n-1}` as integer labels.
    pub fn range(n: usize) -> Self {
        FinSet::from_sorted((0..n).map(Label::from).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Label {
        &self.elems[i]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.elems.binary_search(l).ok()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index_of(l).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.elems.iter()
    }

    pub fn labels(&self) -> &[Label] {
        &self.elems
    }

    /// Index of `l`, or a [`CoreError::ForeignElement`].
    pub fn require(&self, l: &Label) -> Result<usize> {
        self.index_of(l)
            .ok_or_else(|| CoreError::ForeignElement(l.to_string()))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A total function between finite sets, stored as an index table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinFunction {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(CoreError::Shape(format!(
                "function table has {} entries for a domain of {}",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= cod.len()) {
            return Err(CoreError::Shape(format!(
                "function value index {bad} outside codomain of size {}",
                cod.len()
            )));
        }
        Ok(FinFunction { dom, cod, table })
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..dom.len()).map(f).collect();
        FinFunction::new(dom, cod, table)
    }

    /// Builds a function from a label-level map.
    pub fn from_labels(dom: FinSet, cod: FinSet, f: impl Fn(&Label) -> Label) -> Result<Self> {
        let table = dom
            .iter()
            .map(|x| cod.require(&f(x)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFunction { dom, cod, table })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinFunction {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_label(&self, x: &Label) -> Result<&Label> {
        Ok(self.cod.get(self.table[self.dom.require(x)?]))
    }

    /// Diagrammatic composite: `self` first, then `g`.
    pub fn then(&self, g: &FinFunction) -> Result<FinFunction> {
        if self.cod != g.dom {
            return Err(CoreError::CodomainMismatch(format!(
                "cannot compose {} -> {} with {} -> ..",
                self.dom, self.cod, g.dom
            )));
        }
        Ok(FinFunction {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&i| g.table[i]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.table {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Iterates over every table `dom -> cod` (as index vectors) in lexicographic order.
pub fn all_tables(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if dom == 0 {
        1
    } else if cod == 0 {
        0
    } else {
        cod.checked_pow(dom as u32).unwrap_or(usize::MAX)
    };
    (0..total).map(move |mut n| {
        let mut t = vec![0; dom];
        for slot in t.iter_mut().rev() {
            *slot = n % cod.max(1);
            n /= cod.max(1);
        }
        t
    })
}

/// Product with its two projections. Elements are labelled `(x, y)`.
pub fn product(a: &FinSet, b: &FinSet) -> (FinSet, FinFunction, FinFunction) {
    let mut elems = Vec::with_capacity(a.len() * b.len());
    let mut p1 = Vec::with_capacity(a.len() * b.len());
    let mut p2 = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            elems.push(Label::pair(x.clone(), y.clone()));
            p1.push(i);
            p2.push(j);
        }
    }
    let carrier = FinSet::from_sorted(elems);
    let pi1 = FinFunction { dom: carrier.clone(), cod: a.clone(), table: p1 };
    let pi2 = FinFunction { dom: carrier.clone(), cod: b.clone(), table: p2 };
    (carrier, pi1, pi2)
}

/// Pairing into a product built by [`product`].
pub fn pair_into(prod: &FinSet, f: &FinFunction, g: &FinFunction) -> Result<FinFunction> {
    if f.dom != g.dom {
        return Err(CoreError::Shape("pairing needs a common domain".into()));
    }
    FinFunction::from_labels(f.dom.clone(), prod.clone(), |x| {
        Label::pair(
            f.apply_label(x).expect("own domain").clone(),
            g.apply_label(x).expect("own domain").clone(),
        )
    })
}

/// Pullback of a cospan `f: A -> C <- B: g`.
///
/// Carrier is `{(x, y) | f(x) = g(y)}` with its two projections.
pub fn pullback(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction, FinFunction)> {
    if f.cod != g.cod {
        return Err(CoreError::CodomainMismatch(format!(
            "pullback legs land in {} and {}",
            f.cod, g.cod
        )));
    }
    let mut elems = Vec::new();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for (i, x) in f.dom.iter().enumerate() {
        for (j, y) in g.dom.iter().enumerate() {
            if f.table[i] == g.table[j] {
                elems.push(Label::pair(x.clone(), y.clone()));
                p1.push(i);
                p2.push(j);
            }
        }
    }
    let carrier = FinSet::from_sorted(elems);
    let pi1 = FinFunction { dom: carrier.clone(), cod: f.dom.clone(), table: p1 };
    let pi2 = FinFunction { dom: carrier.clone(), cod: g.dom.clone(), table: p2 };
    Ok((carrier, pi1, pi2))
}

/// Equalizer of a parallel pair, computed as the pullback of `<f, g>` along
/// the diagonal of the codomain. Elements keep their original labels.
pub fn equalizer(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction)> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(CoreError::CodomainMismatch("equalizer needs a parallel pair".into()));
    }
    let (cc, _, _) = product(&f.cod, &f.cod);
    let fg = pair_into(&cc, f, g)?;
    let diag = pair_into(&cc, &FinFunction::identity(&f.cod), &FinFunction::identity(&f.cod))?;
    let (_, inc, _) = pullback(&fg, &diag)?;
    let elems: Vec<Label> = inc.table.iter().map(|&i| f.dom.get(i).clone()).collect();
    let carrier = FinSet::from_sorted(elems);
    let incl = FinFunction { dom: carrier.clone(), cod: f.dom.clone(), table: inc.table };
    Ok((carrier, incl))
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when `a` and `b` were in different classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

/// A set quotiented by the equivalence generated by a list of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    /// The set being quotiented.
    pub raw: FinSet,
    /// One label per class: the least member in canonical order.
    pub carrier: FinSet,
    /// Raw index to class index (index into `carrier`).
    pub class_of: Vec<usize>,
    /// The pairs that merged two distinct classes; they generate the partition.
    pub witnesses: Vec<(usize, usize)>,
}

impl QuotientResult {
    /// Quotient of `raw` by index pairs. Pairs must be in range.
    pub fn from_index_pairs(raw: FinSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = raw.len();
        let mut uf = UnionFind::new(n);
        let mut witnesses = Vec::new();
        for (a, b) in pairs {
            if uf.union(a, b) {
                witnesses.push((a, b));
            }
        }
        Self::from_union_find(raw, &mut uf, witnesses)
    }

    pub(crate) fn from_union_find(raw: FinSet, uf: &mut UnionFind, witnesses: Vec<(usize, usize)>) -> Self {
        let n = raw.len();
        // Raw indices follow canonical order, so the first member seen is the least.
        let mut root_class = vec![usize::MAX; n];
        let mut class_of = vec![0; n];
        let mut reps = Vec::new();
        for (i, slot) in class_of.iter_mut().enumerate() {
            let r = uf.find(i);
            if root_class[r] == usize::MAX {
                root_class[r] = reps.len();
                reps.push(raw.get(i).clone());
            }
            *slot = root_class[r];
        }
        QuotientResult { carrier: FinSet::from_sorted(reps), class_of, witnesses, raw }
    }

    pub fn class_count(&self) -> usize {
        self.carrier.len()
    }

    /// Raw index of the representative of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.raw.index_of(self.carrier.get(c)).expect("representative is a raw element")
    }

    /// Projection `raw -> carrier` as a function.
    pub fn projection(&self) -> FinFunction {
        FinFunction {
            dom: self.raw.clone(),
            cod: self.carrier.clone(),
            table: self.class_of.clone(),
        }
    }
}

/// Finest equivalence on `carrier` containing `pairs`.
pub fn quotient(carrier: &FinSet, pairs: &[(Label, Label)]) -> Result<QuotientResult> {
    let idx = pairs
        .iter()
        .map(|(a, b)| Ok((carrier.require(a)?, carrier.require(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuotientResult::from_index_pairs(carrier.clone(), idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().map(|s| Label::from(*s))).unwrap()
    }

    #[test]
    fn product_counts() {
        let (p, _, _) = product(&set(&["x"]), &set(&["y"]));
        assert_eq!(p.len(), 1);
        let (p, _, _) = product(&FinSet::empty(), &set(&["a", "b"]));
        assert!(p.is_empty());
        let (p, pi1, pi2) = product(&FinSet::range(2), &FinSet::range(3));
        assert_eq!(p.len(), 6);
        assert!(pi1.is_surjective() && pi2.is_surjective());
    }

    #[test]
    fn pullback_cases() {
        let c = FinSet::range(2);
        let f = FinFunction::new(FinSet::range(3), c.clone(), vec![0, 1, 1]).unwrap();
        let id = FinFunction::identity(&c);
        let (pb, p1, p2) = pullback(&f, &id).unwrap();
        assert_eq!(pb.len(), 3);
        assert!(p1.is_bijective());
        assert_eq!(p2.table(), f.table());

        let k2 = FinFunction::new(FinSet::range(2), c.clone(), vec![0, 0]).unwrap();
        let k3 = FinFunction::new(FinSet::range(3), c.clone(), vec![0, 0, 0]).unwrap();
        assert_eq!(pullback(&k2, &k3).unwrap().0.len(), 6);

        let other = FinFunction::new(FinSet::range(3), c.clone(), vec![1, 1, 1]).unwrap();
        assert!(pullback(&k2, &other).unwrap().0.is_empty());

        let bad = FinFunction::identity(&FinSet::range(5));
        assert!(matches!(pullback(&k2, &bad), Err(CoreError::CodomainMismatch(_))));
    }

    #[test]
    fn equalizer_picks_agreeing_points() {
        let s = FinSet::range(4);
        let f = FinFunction::new(s.clone(), FinSet::range(2), vec![0, 1, 0, 1]).unwrap();
        let g = FinFunction::new(s.clone(), FinSet::range(2), vec![0, 0, 0, 1]).unwrap();
        let (e, inc) = equalizer(&f, &g).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(inc.table(), &[0, 2, 3]);
    }

    #[test]
    fn quotient_examples() {
        let s = FinSet::range(4);
        let q = quotient(&s, &[]).unwrap();
        assert_eq!(q.class_count(), 4);

        let chain: Vec<_> = (0..3usize).map(|i| (Label::from(i), Label::from(i + 1))).collect();
        assert_eq!(quotient(&s, &chain).unwrap().class_count(), 1);

        let s = FinSet::new((1..=4usize).map(Label::from)).unwrap();
        let q = quotient(&s, &[(1usize.into(), 2usize.into()), (3usize.into(), 4usize.into())]).unwrap();
        assert_eq!(q.class_count(), 2);
        assert_eq!(q.carrier, FinSet::new([Label::from(1usize), Label::from(3usize)]).unwrap());

        let err = quotient(&s, &[(Label::from(9usize), Label::from(1usize))]);
        assert!(matches!(err, Err(CoreError::ForeignElement(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSet::new([Label::from("a"), Label::from("a")]).is_err());
    }

    #[test]
    fn all_tables_counts() {
        assert_eq!(all_tables(0, 0).count(), 1);
        assert_eq!(all_tables(2, 0).count(), 0);
        assert_eq!(all_tables(3, 2).count(), 8);
    }
}
