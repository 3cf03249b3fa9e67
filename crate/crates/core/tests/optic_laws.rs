use std::sync::Arc;

use proptest::prelude::*;
use tambara_core::{
    check_eval, check_optic_category, lens_integrand, optic_compose, optic_hom, optic_id, representation_check,
    BicatAction, Corpus, Exec, OpticHom, OpticObject, TambaraModule,
};

fn objects(act: &BicatAction, seed: u64) -> Vec<OpticObject> {
    let mut v = Vec::new();
    for o in 0..act.base.n_objects() {
        let n = act.fibres[o].n_objects();
        for a in 0..n {
            for b in 0..n {
                v.push(OpticObject { o, a, b });
            }
        }
    }
    let k = (seed as usize) % v.len();
    v.rotate_left(k);
    v.truncate(3);
    v
}

#[test]
fn lens_counts() {
    // |S -> A| × |S × B -> T|
    for (s, a, b, t) in [(2, 2, 2, 2), (1, 2, 2, 2), (2, 1, 1, 2), (0, 2, 2, 0)] {
        let i = lens_integrand(s, a, b, t, 2, 1 << 16).unwrap();
        let expect = a.pow(s as u32) * t.pow((s * b) as u32);
        assert_eq!(OpticHom::from_integrand(i).count(), expect, "{s} {a} {b} {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn optics_form_a_category(seed in any::<u64>()) {
        let act = Corpus::new(seed).action();
        let objs = objects(&act, seed);
        let r = check_optic_category(&act, &act, &objs).unwrap();
        prop_assert!(r.ok(), "{}", r.first_line());
    }

    #[test]
    fn identity_is_neutral(seed in any::<u64>()) {
        let act = Corpus::new(seed).action();
        for obj in objects(&act, seed) {
            let h = optic_hom(&act, &act, obj, obj).unwrap();
            let id = optic_id(&act, &act, obj);
            for (t, c) in h.triples() {
                prop_assert_eq!(h.class_of(&optic_compose(&act, &act, &id, &t).unwrap()).unwrap(), c);
                prop_assert_eq!(h.class_of(&optic_compose(&act, &act, &t, &id).unwrap()).unwrap(), c);
            }
        }
    }

    #[test]
    fn eval_on_the_hom_module(seed in any::<u64>()) {
        let act: Arc<BicatAction> = Corpus::new(seed).action();
        let p = TambaraModule::hom_module(act.clone()).unwrap();
        let r = check_eval(&act, &act, &p, &objects(&act, seed), &[]).unwrap();
        prop_assert!(r.ok(), "{}", r.first_line());
    }

    #[test]
    fn representation(seed in any::<u64>()) {
        let act = Corpus::new(seed).action();
        let objs = objects(&act, seed);
        let (inner, outer) = (objs[0], objs[objs.len() - 1]);
        let r = representation_check(&act, &act, inner, outer, 2_000_000, Exec::default()).unwrap();
        prop_assert!(r.bijection, "{:?}", r);
    }
}
