//! Exhaustive search for homomorphisms of multi-sorted unary algebras.
//!
//! Profunctor transformations and Tambara morphisms are exactly such
//! homomorphisms: the sorts are the sets `P_o(x, y)`, the operations are the
//! profunctor actions and the strengths, and a morphism is a family of
//! functions commuting with every operation. The search assigns elements in
//! a fixed order and propagates each assignment forward along operations, so
//! most of the tree is pruned before it is built.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{CoreError, Result};
use crate::par::Exec;

/// A unary operation from one sort to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Op {
    pub from: usize,
    pub to: usize,
    pub table: Vec<usize>,
}

/// Sort sizes and operation tables. Two algebras of the same signature list
/// the same operations in the same order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnaryAlgebra {
    pub sorts: Vec<usize>,
    pub ops: Vec<Op>,
}

impl UnaryAlgebra {
    pub fn same_signature(&self, other: &UnaryAlgebra) -> bool {
        self.sorts.len() == other.sorts.len()
            && self.ops.len() == other.ops.len()
            && self.ops.iter().zip(&other.ops).all(|(a, b)| a.from == b.from && a.to == b.to)
    }

    /// Whether `h` (one table per sort) commutes with every operation.
    pub fn is_hom(&self, tgt: &UnaryAlgebra, h: &[Vec<usize>]) -> bool {
        h.len() == self.sorts.len()
            && h.iter().zip(&self.sorts).all(|(t, &n)| t.len() == n)
            && h.iter().zip(&tgt.sorts).all(|(t, &n)| t.iter().all(|&v| v < n))
            && self.ops.iter().zip(&tgt.ops).all(|(a, b)| {
                (0..self.sorts[a.from]).all(|e| h[a.to][a.table[e]] == b.table[h[a.from][e]])
            })
    }
}

struct Search<'a> {
    src: &'a UnaryAlgebra,
    tgt: &'a UnaryAlgebra,
    offsets: Vec<usize>,
    sort_of: Vec<usize>,
    out_ops: Vec<Vec<usize>>,
    budget: u64,
    nodes: &'a AtomicU64,
}

impl Search<'_> {
    fn flat(&self, s: usize, e: usize) -> usize {
        self.offsets[s] + e
    }

    /// Assigns `v` at `pos` and everything it forces; returns false on conflict.
    fn assign(&self, pos: usize, v: usize, val: &mut [Option<usize>], trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(pos, v)];
        while let Some((p, v)) = queue.pop() {
            match val[p] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {
                    val[p] = Some(v);
                    trail.push(p);
                }
            }
            let s = self.sort_of[p];
            let e = p - self.offsets[s];
            for &k in &self.out_ops[s] {
                let (a, b) = (&self.src.ops[k], &self.tgt.ops[k]);
                queue.push((self.flat(a.to, a.table[e]), b.table[v]));
            }
        }
        true
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(CoreError::Budget { what: "homomorphism search".into(), budget: self.budget });
        }
        Ok(())
    }

    fn dfs(&self, from: usize, val: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let Some(pos) = (from..val.len()).find(|&p| val[p].is_none()) else {
            out.push(val.iter().map(|v| v.unwrap()).collect());
            return Ok(());
        };
        let range = self.tgt.sorts[self.sort_of[pos]];
        for v in 0..range {
            self.tick()?;
            let mut trail = Vec::new();
            if self.assign(pos, v, val, &mut trail) {
                self.dfs(pos + 1, val, out)?;
            }
            for p in trail {
                val[p] = None;
            }
        }
        Ok(())
    }
}

/// All homomorphisms `src -> tgt`, each as one table per sort, in
/// lexicographic order of the flattened tables.
///
/// `budget` bounds the number of search nodes; exceeding it is an error, never
/// a silent truncation.
pub fn enumerate_homs(src: &UnaryAlgebra, tgt: &UnaryAlgebra, budget: u64, exec: Exec) -> Result<Vec<Vec<Vec<usize>>>> {
    if !src.same_signature(tgt) {
        return Err(CoreError::Shape("algebras have different signatures".into()));
    }
    let mut offsets = vec![0];
    let mut sort_of = Vec::new();
    for (s, &n) in src.sorts.iter().enumerate() {
        sort_of.extend(std::iter::repeat_n(s, n));
        offsets.push(sort_of.len());
    }
    let mut out_ops = vec![Vec::new(); src.sorts.len()];
    for (k, op) in src.ops.iter().enumerate() {
        out_ops[op.from].push(k);
    }
    let nodes = AtomicU64::new(0);
    let search = Search { src, tgt, offsets, sort_of, out_ops, budget, nodes: &nodes };
    let total = search.sort_of.len();
    let flat_results: Vec<Vec<usize>> = if total == 0 {
        vec![Vec::new()]
    } else {
        // split on the value of the first element
        let range = tgt.sorts[search.sort_of[0]];
        let branches = exec.map_range(range, |v| -> Result<Vec<Vec<usize>>> {
            search.tick()?;
            let mut val = vec![None; total];
            let mut trail = Vec::new();
            let mut out = Vec::new();
            if search.assign(0, v, &mut val, &mut trail) {
                search.dfs(1, &mut val, &mut out)?;
            }
            Ok(out)
        });
        let mut all = Vec::new();
        for b in branches {
            all.extend(b?);
        }
        all
    };
    Ok(flat_results
        .into_iter()
        .map(|flat| {
            (0..src.sorts.len())
                .map(|s| flat[search.offsets[s]..search.offsets[s + 1]].to_vec())
                .collect()
        })
        .collect())
}

/// The least congruence identifying the given pairs `(sort, e1, e2)`: for
/// every sort, the class of each element, classes numbered by first member.
pub fn congruence(alg: &UnaryAlgebra, pairs: &[(usize, usize, usize)]) -> Vec<Vec<usize>> {
    let mut offsets = vec![0];
    for &n in &alg.sorts {
        offsets.push(offsets.last().unwrap() + n);
    }
    let mut uf = crate::finset::UnionFind::new(*offsets.last().unwrap());
    for &(s, a, b) in pairs {
        uf.union(offsets[s] + a, offsets[s] + b);
    }
    loop {
        let mut changed = false;
        for op in &alg.ops {
            let mut image: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
            for e in 0..alg.sorts[op.from] {
                let root = uf.find(offsets[op.from] + e);
                let img = offsets[op.to] + op.table[e];
                match image.get(&root) {
                    Some(&other) => changed |= uf.union(other, img),
                    None => {
                        image.insert(root, img);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..alg.sorts.len())
        .map(|s| {
            let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
            (0..alg.sorts[s])
                .map(|e| {
                    let root = uf.find(offsets[s] + e);
                    let next = first.len();
                    *first.entry(root).or_insert(next)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UnaryAlgebra {
        UnaryAlgebra { sorts: vec![n], ops: vec![Op { from: 0, to: 0, table: (0..n).map(|i| (i + 1) % n).collect() }] }
    }

    #[test]
    fn cycle_homs() {
        // Z/4 -> Z/2 equivariant maps: 2; Z/2 -> Z/4: 0
        let homs = enumerate_homs(&cycle(4), &cycle(2), 1000, Exec::Sequential).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|h| cycle(4).is_hom(&cycle(2), h)));
        assert!(enumerate_homs(&cycle(2), &cycle(4), 1000, Exec::Sequential).unwrap().is_empty());
    }

    #[test]
    fn free_sorts_multiply() {
        let a = UnaryAlgebra { sorts: vec![2, 1], ops: vec![] };
        let b = UnaryAlgebra { sorts: vec![3, 2], ops: vec![] };
        assert_eq!(enumerate_homs(&a, &b, 1000, Exec::Parallel).unwrap().len(), 18);
        assert!(matches!(enumerate_homs(&a, &b, 5, Exec::Sequential), Err(CoreError::Budget { .. })));
    }

    #[test]
    fn congruence_closes_under_operations() {
        // identifying 0 and 2 in Z/4 forces 1 ~ 3
        let c = congruence(&cycle(4), &[(0, 0, 2)]);
        assert_eq!(c, vec![vec![0, 1, 0, 1]]);
    }

    #[test]
    fn empty_source_has_one_hom() {
        let a = UnaryAlgebra { sorts: vec![0], ops: vec![] };
        let b = UnaryAlgebra { sorts: vec![0], ops: vec![] };
        assert_eq!(enumerate_homs(&a, &b, 10, Exec::Sequential).unwrap(), vec![vec![Vec::<usize>::new()]]);
    }
}
