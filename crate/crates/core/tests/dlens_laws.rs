use proptest::prelude::*;
use tambara_core::dlens::{beck_chevalley_sweep, pasting_sweep, reduced_optic_count};
use tambara_core::{equivalence_check, lemma_sweep, truncated_coend_optic, Cospan, Exec};

#[test]
fn lemma_sweep_small_carriers() {
    let seq = lemma_sweep(2, Exec::Sequential);
    assert_eq!(seq.failures, 0, "{:?}", seq.witness);
    let par = lemma_sweep(2, Exec::default());
    assert_eq!((seq.instances, seq.failures), (par.instances, par.failures));
}

#[test]
fn plain_lenses_reduce_to_sixty_four() {
    let plain = Cospan::new(1, vec![0, 0], vec![0, 0]).unwrap();
    assert_eq!(reduced_optic_count(&plain, &plain), 64);
}

#[test]
fn comparison_is_an_equivalence() {
    for max in 0..=2 {
        let r = equivalence_check(max, 50, 11, Exec::default());
        assert!(r.ok(), "{r:?}");
    }
}

#[test]
fn squares_commute() {
    let r = beck_chevalley_sweep(2, 2);
    assert_eq!(r.failures, 0, "{:?}", r.witness);
    let r = pasting_sweep(2);
    assert_eq!(r.failures, 0, "{:?}", r.witness);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_coend_matches_reduced_optics(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all = Cospan::all(1);
        let (src, tgt) = (&all[i.index(all.len())], &all[j.index(all.len())]);
        let r = truncated_coend_optic(src, tgt, 2, 1 << 16).unwrap();
        prop_assert!(r.stabilized, "{:?}", r);
        prop_assert_eq!(r.count, reduced_optic_count(src, tgt));
    }
}
