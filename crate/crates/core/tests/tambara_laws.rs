use proptest::prelude::*;
use tambara_core::tambara::check_comonad;
use tambara_core::{adjunction_check, check_tambara, cofree, forget, free, Corpus, Exec, TambaraModule};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_modules_are_tambara(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let act = corpus.action();
        let q = corpus.family(&act, &act, 2);
        prop_assert!(check_tambara(&cofree(&q).unwrap().module).ok());
        prop_assert!(check_tambara(&free(&q).unwrap().module).ok());
        let hom = TambaraModule::hom_module(act.clone()).unwrap();
        prop_assert!(check_tambara(&hom).ok());
        prop_assert_eq!(forget(&hom), hom.family.clone());
    }

    #[test]
    fn strength_mutations_are_caught(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut corpus = Corpus::new(seed);
        let act = corpus.action();
        let p = cofree(&corpus.family(&act, &act, 2)).unwrap().module;
        let entries: Vec<_> = p.strength_entries().into_iter().filter(|(_, n)| *n >= 2).collect();
        if !entries.is_empty() {
            let ((m, x, y, e), n) = entries[pick.index(entries.len())];
            let v = (p.st(m, x, y, e) + 1) % n;
            let r = check_tambara(&p.with_strength_entry(m, x, y, e, v));
            prop_assert!(!r.ok());
            prop_assert!(!r.violations[0].witness.is_empty());
        }
    }

    #[test]
    fn both_adjunctions(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let act = corpus.action();
        let q = corpus.family(&act, &act, 2);
        let r = TambaraModule::hom_module(act.clone()).unwrap();
        let rep = adjunction_check(&q, &r, 2_000_000, Exec::default()).unwrap();
        prop_assert!(rep.ok(), "{:?}", rep);
        prop_assert!(rep.direction.free_left_of_forget);
        prop_assert!(rep.direction.cofree_right_of_forget);
        prop_assert!(check_comonad(&q, &cofree(&q).unwrap()).unwrap().ok());
    }
}
