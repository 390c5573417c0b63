use num_bigint::BigInt;
use proptest::prelude::*;

use phantom_core::approx::{extract_retract, isomorphic_over, phantom_cover, projective_cover};
use phantom_core::filtration::{
    build_filtration, pure_subrep_containing, verify_filtration, FiltrationConfig,
};
use phantom_core::finmod::{
    compose, is_direct_summand, is_pure_submodule, kernel, pure_closure, FiniteModule,
    ModuleMorphism, Ring, Submodule,
};
use phantom_core::ideals::{factors_through_projective, is_phantom};
use phantom_core::linalg::{smith_normal_form, solution_space_mod, solve_mod, IntMatrix};
use phantom_core::manifest::Manifest;
use phantom_core::oracle;
use phantom_core::rep_a2::RepA2;
use phantom_core::sample::{self, random_phantom_rep, MODULI};

fn ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(MODULI.to_vec()).prop_map(|n| Ring::new(n).unwrap())
}

fn matrix(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(lo..=hi, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

/// A module of order `<= bound` and a submodule on up to two elements.
fn module_and_sub(bound: u64) -> impl Strategy<Value = (FiniteModule, Submodule)> {
    (ring(), any::<u64>()).prop_map(move |(r, seed)| {
        let mut rng = sample::rng(seed);
        let m = sample::module(&mut rng, &r, bound);
        let s = sample::submodule(&mut rng, &m);
        (m, s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn smith_form_is_a_diagonalization(a in matrix(6, -20, 20)) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d.clone());
        let rank = snf.rank();
        prop_assert_eq!(snf.diagonal()[..rank].to_vec(), oracle::minor_gcd_diagonal(&a));
    }

    #[test]
    fn solve_mod_matches_enumeration(
        n in prop::sample::select(MODULI.to_vec()),
        a in matrix(4, 0, 11),
        b in prop::collection::vec(0i64..12, 4),
    ) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        let got = solve_mod(&a, &b, &BigInt::from(n)).unwrap();
        let expected = oracle::exhaustive_solve_mod(&a, &b, n);
        prop_assert_eq!(got.is_some(), expected.is_some());
        if let Some(x) = got {
            let ax = a.mul_vec(&x).unwrap();
            for (l, r) in ax.iter().zip(&b) {
                prop_assert_eq!((l - r) % BigInt::from(n), BigInt::from(0));
            }
        }
    }

    #[test]
    fn solution_space_spans_the_kernel(n in prop::sample::select(MODULI.to_vec()), a in matrix(4, 0, 11)) {
        let gens: Vec<Vec<u64>> = solution_space_mod(&a, &BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|g| g.iter().map(|x| u64::try_from(x).unwrap()).collect())
            .collect();
        prop_assert_eq!(oracle::span_mod(&gens, a.cols(), n), oracle::exhaustive_kernel(&a, n));
    }

    #[test]
    fn purity_is_being_a_summand((m, s) in module_and_sub(256)) {
        let pure = is_pure_submodule(&s, &m).unwrap();
        prop_assert_eq!(pure, oracle::is_pure_exhaustive(&s, &m));
        prop_assert_eq!(pure, is_direct_summand(&s, &m).unwrap().is_some());
    }

    #[test]
    fn pure_closure_is_pure_and_contains_seed((m, s) in module_and_sub(256)) {
        let c = pure_closure(&s, &m).unwrap().submodule;
        prop_assert!(oracle::is_pure_exhaustive(&c, &m));
        prop_assert!(c.contains_submodule(&s));
    }

    #[test]
    fn phantoms_form_an_ideal(r in ring(), seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let [l, m, n, k] = [0; 4].map(|_| sample::module(&mut rng, &r, 32));
        let f = sample::phantom(&mut rng, &m, &n);
        let g = sample::phantom(&mut rng, &m, &n);
        let t = sample::morphism(&mut rng, &l, &m);
        let h = sample::morphism(&mut rng, &n, &k);
        prop_assert!(is_phantom(&f.add(&g).unwrap()));
        prop_assert!(is_phantom(&compose(&h, &compose(&f, &t).unwrap()).unwrap()));
    }

    #[test]
    fn phantom_means_factoring_through_a_projective(r in ring(), seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let m = sample::module(&mut rng, &r, 256);
        let n = sample::module(&mut rng, &r, 256);
        let f = sample::morphism(&mut rng, &m, &n);
        let fact = factors_through_projective(&f);
        prop_assert_eq!(is_phantom(&f), fact.is_some());
        prop_assert_eq!(is_phantom(&f), oracle::phantom_via_hull(&f));
        if let Some(fact) = fact {
            prop_assert!(oracle::projective_by_valuations(&fact.projective));
            prop_assert_eq!(compose(&fact.second, &fact.first).unwrap(), f);
        }
    }

    #[test]
    fn phantom_cover_is_the_projective_cover(r in ring(), seed in any::<u64>()) {
        let m = sample::module(&mut sample::rng(seed), &r, 64);
        let phi = phantom_cover(&m).unwrap();
        prop_assert!(oracle::is_surjective_exhaustive(&phi));
        prop_assert!(isomorphic_over(&phi, &projective_cover(&m).unwrap()).unwrap().is_some());
    }

    #[test]
    fn cover_kernels_split_off_pure_monos(r in ring(), seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let m = sample::module(&mut rng, &r, 32);
        let phi = phantom_cover(&m).unwrap();
        let k = kernel(&phi).unwrap().module;
        let v = sample::pure_mono(&mut rng, &k, 256.max(k.size()));
        let ret = extract_retract(&phi, &v).unwrap();
        prop_assert_eq!(compose(&ret.r, &v).unwrap(), ModuleMorphism::identity(&k));
    }

    #[test]
    fn filtrations_verify(r in ring(), seed in any::<u64>(), mult in 1u64..=3) {
        let rep = random_phantom_rep(seed, &r, 1024);
        let cfg = FiltrationConfig::new(&r, mult * r.modulus()).unwrap();
        let filtration = build_filtration(&rep, &cfg).unwrap();
        let report = verify_filtration(&filtration).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn pure_subrep_containing_is_idempotent(r in ring(), seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let m1 = sample::module(&mut rng, &r, 64);
        let m2 = sample::module(&mut rng, &r, 64);
        let rep = RepA2::new(sample::morphism(&mut rng, &m1, &m2));
        let x1 = sample::submodule(&mut rng, &m1);
        let x2 = sample::submodule(&mut rng, &m2);
        let cfg = FiltrationConfig::new(&r, r.modulus()).unwrap();
        let once = pure_subrep_containing(&rep, &x1, &x2, &cfg).unwrap().sub;
        prop_assert!(once.s1.contains_submodule(&x1) && once.s2.contains_submodule(&x2));
        let twice = pure_subrep_containing(&rep, &once.s1, &once.s2, &cfg).unwrap().sub;
        prop_assert!(twice.same_as(&once));
    }

    #[test]
    fn manifests_round_trip(r in ring(), seed in any::<u64>()) {
        let rep = random_phantom_rep(seed, &r, 256);
        let filtration = build_filtration(&rep, &FiltrationConfig::new(&r, r.modulus()).unwrap()).unwrap();
        let mut m = Manifest::new(&r);
        m.add_rep("F", &rep).unwrap();
        m.add_filtration("P", &filtration).unwrap();
        let text = m.serialize();
        let back = Manifest::parse(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.serialize(), text);
    }
}
