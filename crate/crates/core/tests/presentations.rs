use std::sync::Arc;

use proptest::prelude::*;
use tambara_core::fincat::{check_discrete_opfibration, check_functor};
use tambara_core::internal_action::{
    action_round_trip, action_to_copresheaf, check_action, check_action_category, copresheaf_round_trip,
    copresheaf_to_action, grothendieck,
};
use tambara_core::{Corpus, FinCategory};

#[test]
fn mutated_action_breaks_a_law() {
    let c = Arc::new(FinCategory::cyclic_group(3));
    let mut corpus = Corpus::new(3);
    let f = (0..100).find_map(|_| corpus.copresheaf(&c, 6).filter(|f| f.sets[0].len() >= 2)).unwrap();
    let a = copresheaf_to_action(&f).unwrap();
    let g = 1;
    let x = a.apply(g, 0).unwrap();
    let bad = a.with_entry(g, 0, (x + 1) % f.sets[0].len());
    assert!(!check_action(&bad).ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trips(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let c = Arc::new(corpus.category(4, 10));
        if let Some(f) = corpus.copresheaf(&c, 6) {
            let a = copresheaf_to_action(&f).unwrap();
            prop_assert!(check_action(&a).ok());
            prop_assert!(copresheaf_round_trip(&f).unwrap().ok());
            prop_assert!(action_round_trip(&a).unwrap().ok());
            let back = action_to_copresheaf(&a).unwrap();
            prop_assert_eq!(back.sets.iter().map(|s| s.len()).collect::<Vec<_>>(), f.sets.iter().map(|s| s.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn grothendieck_has_unique_lifts(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let c = Arc::new(corpus.category(4, 10));
        if let Some(f) = corpus.copresheaf(&c, 6) {
            let g = grothendieck(&f).unwrap();
            prop_assert!(check_functor(&g.proj_functor).ok());
            prop_assert!(check_discrete_opfibration(&g.proj_functor).ok());
            prop_assert!(check_action_category(&g).ok());
            let total: usize = f.sets.iter().map(|s| s.len()).sum();
            prop_assert_eq!(g.cat.n_objects(), total);
        }
    }
}
