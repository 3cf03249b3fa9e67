//! Brute-force reference implementations used to cross-check the coend and
//! end engines. Deliberately naive: a reflexive-transitive closure for the
//! coequalizer and a full product filter for the equalizer.

use crate::coend::{CoendResult, EndResult};
use crate::profunctor::SetProfunctor;

/// Partition of `⨿_c H(c, c)` as sorted lists of `(index, element)` positions,
/// itself sorted by first member.
pub type Partition = Vec<Vec<(usize, usize)>>;

/// Coequalizer of the two maps `⨿_f H(tgt f, src f) ⇉ ⨿_c H(c, c)` by closure.
pub fn coend_partition(h: &SetProfunctor) -> Partition {
    let c = &h.left;
    let mut positions = Vec::new();
    for o in 0..c.n_objects() {
        for x in 0..h.set(o, o).len() {
            positions.push((o, x));
        }
    }
    let n = positions.len();
    let at = |o: usize, x: usize| positions.iter().position(|&p| p == (o, x)).unwrap();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for f in 0..c.n_morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        for x in 0..h.set(b, a).len() {
            let (i, j) = (at(a, h.lact(f, a, x)), at(b, h.ract(b, f, x)));
            reach[i][j] = true;
            reach[j][i] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<(usize, usize)> = (0..n).filter(|&j| reach[i][j]).map(|j| positions[j]).collect();
        for j in 0..n {
            if reach[i][j] {
                seen[j] = true;
            }
        }
        classes.push(class);
    }
    classes
}

/// The partition an engine result induces, in the same normal form.
pub fn partition_of(r: &CoendResult) -> Partition {
    let mut classes: Partition = (0..r.class_count()).map(|k| r.members(k)).collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Every tuple in `Π_c H(c, c)` satisfying the wedge condition for every morphism.
pub fn end_tuples(h: &SetProfunctor) -> Vec<Vec<usize>> {
    let c = &h.left;
    let n = c.n_objects();
    let sizes: Vec<usize> = (0..n).map(|o| h.set(o, o).len()).collect();
    let mut out = Vec::new();
    if sizes.contains(&0) {
        return out;
    }
    let mut cur = vec![0usize; n];
    loop {
        let ok = (0..c.n_morphisms()).all(|f| {
            let (a, b) = (c.src(f), c.tgt(f));
            h.ract(a, f, cur[a]) == h.lact(f, b, cur[b])
        });
        if ok {
            out.push(cur.clone());
        }
        // odometer, last index fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Agreement of the engines with the oracles on one profunctor.
pub fn engines_agree(h: &SetProfunctor) -> crate::Result<bool> {
    let co = crate::profunctor::coend(h)?;
    let en: EndResult = crate::profunctor::end(h)?;
    Ok(partition_of(&co) == coend_partition(h) && en.tuples == end_tuples(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use std::sync::Arc;

    #[test]
    fn oracle_on_walking_arrow() {
        let h = SetProfunctor::hom(&Arc::new(FinCategory::walking_arrow()));
        assert_eq!(coend_partition(&h).len(), 2);
        assert_eq!(end_tuples(&h).len(), 1);
        assert!(engines_agree(&h).unwrap());
    }
}
