mod common;

use std::collections::HashMap;

use common::*;
use easytype::tycore::{
    export_scheme, generalize, instantiate, snapshot, NamingContext, Scheme, TyEnv, TyStore,
};
use easytype::unify::{occurs, unify};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn small_type(rng: &mut StdRng, max: usize) -> OTy {
    loop {
        let t = random_type(rng, max, 3);
        if t.size() <= max {
            return t;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn unify_agrees_with_substitution_oracle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = small_type(&mut rng, 8);
        let b = small_type(&mut rng, 8);

        let mut subst = Subst::new();
        let oracle_ok = oracle_unify(&a, &b, &mut subst);

        let mut store = TyStore::new();
        let mut vars = HashMap::new();
        let ta = to_store(&mut store, &a, &mut vars);
        let tb = to_store(&mut store, &b, &mut vars);
        let ok = unify(&mut store, ta, tb).is_ok();
        prop_assert_eq!(ok, oracle_ok, "{:?} ~ {:?}", a, b);
        if ok {
            let got = canonical_display(&store.display(ta));
            prop_assert_eq!(got, canonical(&apply(&subst, &a)));
            prop_assert_eq!(store.display(ta), store.display(tb));
        }
    }

    #[test]
    fn snapshots_survive_later_unification(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut store = TyStore::new();
        let mut vars = HashMap::new();
        let a = small_type(&mut rng, 8);
        let ta = to_store(&mut store, &a, &mut vars);
        let mut naming = NamingContext::new();
        let snap = snapshot(&store, ta, &mut naming);
        let before = snap.to_string();
        for _ in 0..4 {
            let b = small_type(&mut rng, 8);
            let tb = to_store(&mut store, &b, &mut vars);
            let _ = unify(&mut store, ta, tb);
        }
        prop_assert_eq!(snap.to_string(), before);
    }

    #[test]
    fn repr_is_idempotent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut store = TyStore::new();
        let mut vars = HashMap::new();
        let ta = to_store(&mut store, &small_type(&mut rng, 8), &mut vars);
        let tb = to_store(&mut store, &small_type(&mut rng, 8), &mut vars);
        let _ = unify(&mut store, ta, tb);
        let r = store.repr(ta);
        prop_assert_eq!(store.repr(r), r);
        prop_assert_eq!(store.resolve(ta), r);
    }

    #[test]
    fn instantiate_of_generalize_is_alpha_equivalent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut store = TyStore::new();
        let mut vars = HashMap::new();
        let t = to_store(&mut store, &small_type(&mut rng, 8), &mut vars);
        let scheme = generalize(&store, 0, t);
        prop_assert_eq!(scheme.quantified.len(), store.free_vars(t).len());
        let inst = instantiate(&mut store, &scheme, 1);
        prop_assert_eq!(
            canonical_display(&store.display(inst)),
            canonical_display(&store.display(t))
        );
        for v in store.free_vars(inst) {
            prop_assert!(!store.free_vars(t).contains(&v));
        }
    }
}

#[test]
fn chain_repr_matches_naive_walk() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let mut store = TyStore::new();
        let depth = rand::Rng::gen_range(&mut rng, 1..50);
        let vars: Vec<_> = (0..=depth).map(|_| store.fresh_var(0)).collect();
        for w in vars.windows(2) {
            unify(&mut store, w[0], w[1]).unwrap();
        }
        let naive = store.resolve(vars[0]);
        assert_eq!(store.repr(vars[0]), naive);
        assert_eq!(store.repr(vars[depth / 2]), naive);
    }
}

#[test]
fn generalize_skips_variables_of_the_environment() {
    let mut store = TyStore::new();
    let mut env = TyEnv::default();
    env.enter_level();
    let a = store.fresh_var(env.current_level);
    env.bind("x", Scheme::mono(a));
    env.enter_level();
    let b = store.fresh_var(env.current_level);
    let int = store.base(easytype::tycore::TyCon::Int);
    let ab = store.arrow(a, b);
    let t = store.arrow(ab, int);
    env.exit_level();
    let scheme = generalize(&store, env.current_level, t);
    assert_eq!(scheme.quantified, vec![b]);
    // Variables reachable from the environment are never quantified.
    for (_, s) in env.bindings() {
        for v in store.free_vars(s.body) {
            assert!(!scheme.quantified.contains(&v));
        }
    }
    assert_eq!(export_scheme(&store, &scheme).quantified, vec![1]);
}

#[test]
fn occurs_check_rejects_cycles() {
    let mut store = TyStore::new();
    let a = store.fresh_var(0);
    let l = store.list(a);
    let f = store.arrow(l, a);
    assert!(occurs(&store, a, f));
    assert!(unify(&mut store, a, f).is_err());
    assert!(store.is_var(a));
}
