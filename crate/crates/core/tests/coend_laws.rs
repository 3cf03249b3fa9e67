use std::sync::Arc;

use proptest::prelude::*;
use tambara_core::oracle::{coend_partition, end_tuples, engines_agree, partition_of};
use tambara_core::profunctor::{coend, compound_action, end, prof_compose};
use tambara_core::{check_profunctor, Copresheaf, Corpus, FinCategory, SetProfunctor};

fn endo(seed: u64) -> Option<SetProfunctor> {
    let mut corpus = Corpus::new(seed);
    let c = Arc::new(corpus.category(4, 10));
    corpus.profunctor(&c, &c, 6)
}

#[test]
fn trace_of_a_cyclic_group() {
    // conjugacy classes and centre of an abelian group are the whole group
    for n in 1..6 {
        let c = Arc::new(FinCategory::cyclic_group(n));
        let h = SetProfunctor::hom(&c);
        assert_eq!(coend(&h).unwrap().class_count(), n);
        assert_eq!(end(&h).unwrap().len(), n);
    }
}

#[test]
fn trace_of_the_walking_arrow() {
    let c = Arc::new(FinCategory::walking_arrow());
    let h = SetProfunctor::hom(&c);
    // nothing runs backwards, so the two identities stay apart
    assert_eq!(coend(&h).unwrap().class_count(), 2);
    assert_eq!(end(&h).unwrap().len(), 1);
}

#[test]
fn empty_diagonal() {
    let c = Arc::new(FinCategory::discrete(3));
    let h = SetProfunctor::constant(&c, &c, &tambara_core::FinSet::empty());
    assert_eq!(coend(&h).unwrap().class_count(), 0);
    assert_eq!(end(&h).unwrap().len(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_match_oracles(seed in any::<u64>()) {
        if let Some(h) = endo(seed) {
            prop_assert!(check_profunctor(&h).ok());
            prop_assert!(engines_agree(&h).unwrap());
            prop_assert_eq!(partition_of(&coend(&h).unwrap()), coend_partition(&h));
            prop_assert_eq!(end(&h).unwrap().len(), end_tuples(&h).len());
        }
    }

    #[test]
    fn hom_is_a_unit_for_composition(seed in any::<u64>()) {
        if let Some(p) = endo(seed) {
            let hom = SetProfunctor::hom(&p.left);
            for q in [prof_compose(&hom, &p).unwrap(), prof_compose(&p, &hom).unwrap()] {
                prop_assert!(check_profunctor(&q).ok());
                for c in 0..p.left.n_objects() {
                    for d in 0..p.right.n_objects() {
                        prop_assert_eq!(q.set(c, d).len(), p.set(c, d).len());
                    }
                }
            }
        }
    }

    #[test]
    fn co_yoneda(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let c = Arc::new(corpus.category(4, 10));
        if let Some(a) = corpus.copresheaf(&c, 6) {
            let b: Copresheaf = compound_action(&SetProfunctor::hom(&c), &a).unwrap();
            for o in 0..c.n_objects() {
                prop_assert_eq!(b.sets[o].len(), a.sets[o].len());
            }
        }
    }
}
