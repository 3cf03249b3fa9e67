//! Generic coend and end engines over an indexed family of finite sets.
//!
//! A coend is the disjoint union of the diagonal sets modulo the relations
//! `lact(f)(x) ~ ract(f)(x)`; callers supply those relations as pairs of
//! `(index, element)` positions and the engine runs union-find over them.
//! An end is the set of diagonal tuples satisfying one equation per
//! morphism; the engine backtracks over index objects and checks each
//! equation as soon as both of its endpoints are assigned.

use crate::finset::{FinSet, Label, QuotientResult, UnionFind};

/// A coend: quotient of `⨿_c H(c, c)` with explicit class bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendResult {
    /// Classes over the disjoint union. Raw labels are `(index label, element label)`.
    pub quotient: QuotientResult,
    offsets: Vec<usize>,
}

impl CoendResult {
    pub fn class_count(&self) -> usize {
        self.quotient.class_count()
    }

    /// Class of element `x` of the diagonal set at index `c`.
    pub fn class_of(&self, c: usize, x: usize) -> usize {
        self.quotient.class_of[self.offsets[c] + x]
    }

    /// `(index, element)` of the canonical representative of a class.
    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.split(self.quotient.representative(class))
    }

    /// Every `(index, element)` position in a class.
    pub fn members(&self, class: usize) -> Vec<(usize, usize)> {
        self.quotient
            .class_of
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k == class)
            .map(|(raw, _)| self.split(raw))
            .collect()
    }

    pub fn class_label(&self, class: usize) -> &Label {
        self.quotient.carrier.get(class)
    }

    /// Size of the diagonal set at `c`.
    pub fn diagonal_len(&self, c: usize) -> usize {
        self.offsets[c + 1] - self.offsets[c]
    }

    pub fn index_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// The map on classes induced by a map on positions, evaluated on every
    /// member; `None` if two members of one class land in different classes.
    pub fn induced(&self, to: &CoendResult, f: impl Fn(usize, usize) -> (usize, usize)) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; self.class_count()];
        for c in 0..self.index_count() {
            for x in 0..self.diagonal_len(c) {
                let k = self.class_of(c, x);
                let (c2, x2) = f(c, x);
                let v = to.class_of(c2, x2);
                if out[k] == usize::MAX {
                    out[k] = v;
                } else if out[k] != v {
                    return None;
                }
            }
        }
        Some(out)
    }

    fn split(&self, raw: usize) -> (usize, usize) {
        let c = self.offsets.partition_point(|&o| o <= raw) - 1;
        (c, raw - self.offsets[c])
    }
}

/// Computes a coend from the diagonal sets and a relation list.
///
/// `index` labels the index objects (sorted, as every [`FinSet`] is);
/// `diag[c]` is the diagonal set at index `c`.
pub fn coend_from_relations(
    index: &FinSet,
    diag: &[FinSet],
    relations: impl IntoIterator<Item = ((usize, usize), (usize, usize))>,
) -> CoendResult {
    assert_eq!(index.len(), diag.len(), "one diagonal set per index object");
    let mut offsets = Vec::with_capacity(diag.len() + 1);
    let mut labels = Vec::new();
    offsets.push(0);
    for (c, set) in diag.iter().enumerate() {
        for x in set.iter() {
            labels.push(Label::pair(index.get(c).clone(), x.clone()));
        }
        offsets.push(labels.len());
    }
    let raw = FinSet::from_sorted(labels);
    let mut uf = UnionFind::new(raw.len());
    let mut witnesses = Vec::new();
    for ((c1, x1), (c2, x2)) in relations {
        let (a, b) = (offsets[c1] + x1, offsets[c2] + x2);
        if uf.union(a, b) {
            witnesses.push((a, b));
        }
    }
    let quotient = QuotientResult::from_union_find(raw, &mut uf, witnesses);
    CoendResult { quotient, offsets }
}

/// One equation of an end: `left[x_from] == right[x_to]`, where both tables
/// land in a common set (only equality of indices matters).
#[derive(Clone, Debug)]
pub struct EndConstraint {
    pub from: usize,
    pub to: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// An end: all compatible families of diagonal elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndResult {
    /// Family labels: the tuple of element labels in index order.
    pub families: FinSet,
    /// `tuples[k][c]` is the element chosen at index `c` by family `k`
    /// (same order as `families`).
    pub tuples: Vec<Vec<usize>>,
}

impl EndResult {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Projection of family `k` at index `c`.
    pub fn project(&self, k: usize, c: usize) -> usize {
        self.tuples[k][c]
    }

    /// Index of the family with exactly these components.
    pub fn find(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }
}

/// Backtracking end computation.
pub fn end_from_constraints(diag: &[FinSet], constraints: &[EndConstraint]) -> EndResult {
    let n = diag.len();
    // Constraints become checkable once the later of their two endpoints is assigned.
    let mut due: Vec<Vec<&EndConstraint>> = vec![Vec::new(); n];
    for k in constraints {
        due[k.from.max(k.to)].push(k);
    }
    let mut tuples = Vec::new();
    if diag.iter().all(|s| !s.is_empty()) || n == 0 {
        let mut cur = vec![0usize; n];
        search(0, diag, &due, &mut cur, &mut tuples);
    }
    // Depth-first over sorted element indices gives lexicographic tuple order,
    // which agrees with label order of the families.
    let families = FinSet::from_sorted(
        tuples
            .iter()
            .map(|t: &Vec<usize>| Label::tup(t.iter().enumerate().map(|(c, &x)| diag[c].get(x).clone()).collect()))
            .collect(),
    );
    EndResult { families, tuples }
}

fn search(
    c: usize,
    diag: &[FinSet],
    due: &[Vec<&EndConstraint>],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if c == diag.len() {
        out.push(cur.clone());
        return;
    }
    'cand: for x in 0..diag[c].len() {
        cur[c] = x;
        for k in &due[c] {
            if k.left[cur[k.from]] != k.right[cur[k.to]] {
                continue 'cand;
            }
        }
        search(c + 1, diag, due, cur, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coend_merges_related_positions() {
        let index = FinSet::range(2);
        let diag = vec![FinSet::range(2), FinSet::range(3)];
        let r = coend_from_relations(&index, &diag, [((0, 1), (1, 2)), ((1, 0), (1, 1))]);
        assert_eq!(r.class_count(), 3);
        assert_eq!(r.class_of(0, 1), r.class_of(1, 2));
        assert_eq!(r.representative(r.class_of(1, 1)), (1, 0));
        assert_eq!(r.members(r.class_of(1, 1)), vec![(1, 0), (1, 1)]);
    }

    #[test]
    fn end_filters_tuples() {
        let diag = vec![FinSet::range(2), FinSet::range(2)];
        let k = EndConstraint { from: 0, to: 1, left: vec![0, 1], right: vec![1, 0] };
        let e = end_from_constraints(&diag, &[k]);
        assert_eq!(e.tuples, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(e.find(&[1, 0]), Some(1));
        let empty = end_from_constraints(&[FinSet::range(2), FinSet::empty()], &[]);
        assert!(empty.is_empty());
    }
}
