//! Invariants over randomized inputs.

mod common;

use adiabat::construction::{EosDomain, TemperatureScale, DEFAULT_TOL};
use adiabat::noneq::{EmbeddedModel, Prop1Options};
use adiabat::random::{random_finite_model, RandomModelParams};
use adiabat::relation::BitMatrix;
use adiabat::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn temp() -> impl Strategy<Value = f64> {
    0.2f64..8.0
}

fn state() -> impl Strategy<Value = BlockPairState> {
    (temp(), temp()).prop_map(|(a, b)| BlockPairState::unit(a, b).unwrap())
}

/// A point of the forward sector: conduct a fraction `s` of the way to the
/// mean, then rub.
fn successor(x: &BlockPairState, s: f64, r1: f64, r2: f64) -> BlockPairState {
    let m = x.mean();
    BlockPairState::unit(x.t1 + s * (m - x.t1) + r1, x.t2 + s * (m - x.t2) + r2).unwrap()
}

fn moves() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0f64..=1.0, 0.0f64..2.0, 0.0f64..2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn toy_reflexive(x in state()) {
        prop_assert!(toy_precedes(&x, &x));
    }

    #[test]
    fn toy_constructed_successors_are_reached(x in state(), m1 in moves(), m2 in moves()) {
        let y = successor(&x, m1.0, m1.1, m1.2);
        let z = successor(&y, m2.0, m2.1, m2.2);
        prop_assert!(toy_precedes(&x, &y));
        prop_assert!(toy_precedes(&y, &z));
        prop_assert!(toy_precedes(&x, &z));
    }

    #[test]
    fn toy_transitive_on_random_triples(x in state(), y in state(), z in state()) {
        if toy_precedes(&x, &y) && toy_precedes(&y, &z) {
            prop_assert!(toy_precedes(&x, &z));
        }
    }

    #[test]
    fn toy_sectors_nest(x in state(), m in moves(), w in state()) {
        let y = successor(&x, m.0, m.1, m.2);
        if toy_precedes(&y, &w) {
            prop_assert!(toy_precedes(&x, &w));
        }
    }

    #[test]
    fn toy_extension_sandwiched(x in state()) {
        let (lo, mid, hi) = (toy_s_minus(&x), toy_extended_entropy(&x), toy_s_plus(&x));
        prop_assert!(lo <= mid + 1e-15 && mid <= hi + 1e-15);
        if (x.t1 - x.t2).abs() > 1e-6 {
            prop_assert!(lo < mid && mid < hi);
        }
        let d = BlockPairState::unit(x.t1, x.t1).unwrap();
        prop_assert_eq!(toy_s_minus(&d), toy_s_plus(&d));
    }

    #[test]
    fn toy_bounds_monotone(x in state(), m in moves()) {
        let y = successor(&x, m.0, m.1, m.2);
        prop_assert!(toy_s_minus(&x) <= toy_s_minus(&y) + 1e-12);
        prop_assert!(toy_s_plus(&x) <= toy_s_plus(&y) + 1e-12);
    }

    #[test]
    fn toy_sufficiency(x in state(), y in state()) {
        if toy_s_plus(&x) <= toy_s_minus(&y) {
            prop_assert!(toy_precedes(&x, &y));
        }
    }

    #[test]
    fn cattaneo_conserves_energy(t1 in 0.5f64..4.0, t2 in 0.5f64..4.0, tau in prop_oneof![Just(0.0f64), 0.25f64..2.0]) {
        let p = CattaneoParams { tau, k: 1.0, c: 1.0, dt: 0.005, t_end: 5.0 };
        let tr = cattaneo_simulate(&p, &BlockPairState::unit(t1, t2).unwrap(), 0.0).unwrap();
        prop_assert!(tr.energy_drift() <= 1e-9);
    }

    #[test]
    fn closure_is_idempotent_and_transitive(n in 1usize..12, edges in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
        let mut m = BitMatrix::new(n);
        for (a, b) in edges {
            if a < n && b < n {
                m.set(a, b, true);
            }
        }
        let mut c = m.clone();
        c.close();
        prop_assert!(m.is_subset(&c));
        let mut cc = c.clone();
        cc.close();
        prop_assert_eq!(&cc, &c);
        for i in 0..n {
            prop_assert!(c.get(i, i));
            for j in 0..n {
                for k in 0..n {
                    if c.get(i, j) && c.get(j, k) {
                        prop_assert!(c.get(i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_forms_agree(values in proptest::collection::vec(-3.0f64..3.0, 3..7)) {
        let mut vals = values.clone();
        vals[0] = 0.0;
        vals[1] = 1.0;
        let (m, pts) = common::additive(&vals);
        let refs = ReferencePair::new(&m, pts[0].clone(), pts[1].clone()).unwrap();
        let ev = EntropyEvaluator::new(&m, refs, DEFAULT_TOL).unwrap();
        for (p, v) in pts.iter().zip(&vals) {
            let sup = ev.canonical_entropy(p).unwrap();
            let inf = ev.canonical_entropy_inf(p).unwrap();
            prop_assert!((sup - inf).abs() <= 2.0 * DEFAULT_TOL);
            prop_assert!((sup - v).abs() <= DEFAULT_TOL);
        }
    }

    #[test]
    fn path_integral_is_additive(a in 0.5f64..5.0, b in 0.5f64..5.0, c in 0.5f64..5.0, va in 0.5f64..5.0, vb in 0.5f64..5.0, vc in 0.5f64..5.0) {
        let g = IdealGas::new(2.5, 1.0, 1.0, EosDomain { theta: (0.1, 10.0), volume: (0.1, 10.0) }).unwrap();
        let abs = TemperatureScale::Absolute;
        let ab = entropy_by_path_integration(&g, abs, (a, va), (b, vb), &[]).unwrap();
        let bc = entropy_by_path_integration(&g, abs, (b, vb), (c, vc), &[]).unwrap();
        let ac = entropy_by_path_integration(&g, abs, (a, va), (c, vc), &[(b, vb)]).unwrap();
        prop_assert!((ab + bc - ac).abs() <= 1e-12 * (1.0 + ac.abs()));
        let exact = g.entropy(c, vc).unwrap() - g.entropy(a, va).unwrap();
        prop_assert!((ac - exact).abs() <= 1e-8 * (1.0 + exact.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_models_satisfy_prop1(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = RandomModelParams { products: true, ..Default::default() };
        let m: FiniteEmbedded = random_finite_model(&mut rng, &params).unwrap();
        m.validate().unwrap();
        let all = m.states().unwrap();
        let opts = Prop1Options { composition: true, ..Default::default() };
        let r = verify_prop1(&m, &all, &opts).unwrap();
        prop_assert!(!r.any_fail(), "{}", r);
    }

    #[test]
    fn random_models_keep_theorem4_conditions_together(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = RandomModelParams { fill_gaps: true, ..Default::default() };
        let m: FiniteEmbedded = random_finite_model(&mut rng, &params).unwrap();
        let r = verify_theorem4(&m, 1e-12).unwrap();
        prop_assert!(r.consistent(), "{}", r.to_report());
    }
}
