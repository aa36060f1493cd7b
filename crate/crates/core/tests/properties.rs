//! Property suites for the stated invariants.

use std::sync::OnceLock;

use pnorm_core::consistency::{criterion_finite, criterion_sup, rewrite_check, sup_form_ratio_bounds};
use pnorm_core::math::functionals::{centering_c, g_inf, g_p};
use pnorm_core::procedure::{build_combined, build_enhanced, build_norm_test, Calibration, TestBattery, TestSpec};
use pnorm_core::{
    budget_from_geometric, power_curve, with_workers, AlternativeFamily, CombinedTest, Exponent, MonteCarloPlan,
};
use pnorm_core::critical::mc_calibrate;
use proptest::prelude::*;

fn vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_len, -3.0f64..3.0).prop_flat_map(|(n, log_scale)| {
        prop::collection::vec(-1.0f64..1.0, n).prop_map(move |v| v.into_iter().map(|x| x * 10f64.powf(log_scale)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn g_is_nondecreasing_in_p(p in 0.05f64..20.0, dq in 0.0f64..20.0, x in -50.0f64..50.0) {
        let q = p + dq;
        let (gp, gq) = (g_p(p, x, 1.0), g_p(q, x, 1.0));
        prop_assert!(gp <= gq * (1.0 + 1e-15), "g_{p}({x}) = {gp} > g_{q}({x}) = {gq}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn norms_decrease_in_exponent(y in vector(64), p in 1.0f64..10.0, dq in 0.0f64..30.0) {
        let q = p + dq;
        let np = pnorm_core::p_norm_stat(&y, Exponent::Finite(p)).unwrap();
        let nq = pnorm_core::p_norm_stat(&y, Exponent::Finite(q)).unwrap();
        let ns = pnorm_core::p_norm_stat(&y, Exponent::Sup).unwrap();
        prop_assert!(ns <= nq * (1.0 + 1e-12), "sup {ns} > ‖y‖_{q} = {nq}");
        prop_assert!(nq <= np * (1.0 + 1e-12), "‖y‖_{q} = {nq} > ‖y‖_{p} = {np}");
    }

    #[test]
    fn g_sandwich_above_two(p in 2.0f64..12.0, x in -30.0f64..30.0) {
        let g = g_p(p, x, 1.0);
        let (a, b) = (x.abs().powf(p), x * x);
        prop_assert!(0.5 * (a + b) <= g * (1.0 + 1e-12) && g <= (a + b) * (1.0 + 1e-12));
    }

    #[test]
    fn criterion_is_monotone_in_p(theta in vector(40), p in 0.1f64..8.0, dq in 0.0f64..8.0) {
        let a = criterion_finite(&theta, p, 1.0).unwrap();
        let b = criterion_finite(&theta, p + dq, 1.0).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-12));
    }

    #[test]
    fn criterion_is_robust_to_the_quadratic_window(theta in vector(40), p in 0.2f64..8.0, m in 0.05f64..20.0) {
        let base = criterion_finite(&theta, p, 1.0).unwrap();
        let alt = criterion_finite(&theta, p, m).unwrap();
        let (r1, r2) = (m.powf(p - 2.0), m.powf(2.0 - p));
        let c = 1f64.min(r1).min(r2);
        let cc = 1f64.max(r1).max(r2);
        prop_assert!(c * base <= alt * (1.0 + 1e-12) && alt <= cc * base * (1.0 + 1e-12),
            "{c}·{base} <= {alt} <= {cc}·{base}");
    }

    #[test]
    fn rewrite_sandwich(theta in vector(40), p in 2.0f64..8.0) {
        let r = rewrite_check(&theta, p).unwrap();
        let parts = r.two_norm_part.max(r.p_norm_part);
        prop_assert!(0.5 * parts <= r.criterion * (1.0 + 1e-12));
        prop_assert!(r.criterion <= (r.two_norm_part + r.p_norm_part) * (1.0 + 1e-12));
    }

    #[test]
    fn g_inf_is_strictly_decreasing(x in -30.0f64..30.0, dx in 1e-3f64..10.0) {
        prop_assert!(g_inf(x) > g_inf(x + dx));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    /// Every term of both sup forms has x = 𝔠_d − |θ_i| ≥ z, so the sum ratio
    /// lies in the per-term bound interval.
    #[test]
    fn sup_forms_stay_within_table(t in 0.0f64..10.0, d in 2usize..5000, seed in any::<u64>()) {
        let c = centering_c(d as u64).unwrap();
        let z = c - t;
        let (lo, hi) = sup_form_ratio_bounds(z).unwrap();
        let mut s = seed;
        let theta: Vec<f64> = (0..d).map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (s >> 11) as f64 / (1u64 << 53) as f64;
            // |θ_i| ≤ c − z keeps every argument at or above z.
            u * t * if s & 1 == 0 { 1.0 } else { -1.0 }
        }).collect();
        let k = criterion_sup(&theta).unwrap();
        prop_assume!(!k.saturated);
        let ratio = k.ratio_form / k.g_form;
        prop_assert!(lo <= ratio && ratio <= hi, "{lo} <= {ratio} <= {hi}");
    }
}

const D: usize = 64;

fn combined() -> &'static CombinedTest {
    static T: OnceLock<CombinedTest> = OnceLock::new();
    T.get_or_init(|| {
        let exps: Vec<Exponent> = [2.0, 3.0, 5.0].into_iter().map(Exponent::Finite).chain([Exponent::Sup]).collect();
        let budget = budget_from_geometric(exps.len(), 0.05, 0.5, 0.5).unwrap();
        build_combined(D, &exps, &budget, &MonteCarloPlan::new(4000, 17)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// ‖y‖_{p_j} ≥ κ_j for some member j forces the combined test to reject.
    #[test]
    fn combined_region_contains_member_regions(v in prop::collection::vec(-1.0f64..1.0, D), scale in 0.0f64..6.0) {
        let t = combined();
        let y: Vec<f64> = v.iter().map(|x| x * scale).collect();
        let any_member = t.exponents.iter().zip(&t.kappas)
            .any(|(e, k)| pnorm_core::p_norm_stat(&y, *e).unwrap() >= *k);
        let rejects = TestSpec::Combined(t.clone()).rejects(&y).unwrap();
        prop_assert!(!any_member || rejects);
        prop_assert!(t.c_d > 0.0 && t.c_d <= 1.0);
    }
}

fn enhanced_pair() -> &'static (TestSpec, TestSpec) {
    static P: OnceLock<(TestSpec, TestSpec)> = OnceLock::new();
    P.get_or_init(|| {
        let base = build_norm_test(Exponent::Finite(3.0), D, 0.05, &Calibration::MonteCarlo(MonteCarloPlan::new(4000, 2))).unwrap();
        let enh = build_enhanced(base.clone(), &MonteCarloPlan::new(2000, 3)).unwrap();
        (base, TestSpec::Enhanced(enh))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5000))]

    #[test]
    fn enhancement_dominates_base(v in prop::collection::vec(-1.0f64..1.0, D), scale in 0.0f64..5.0) {
        let (base, enh) = enhanced_pair();
        let y: Vec<f64> = v.iter().map(|x| x * scale).collect();
        prop_assert!(!base.rejects(&y).unwrap() || enh.rejects(&y).unwrap());
    }
}

#[test]
fn worker_count_does_not_change_outputs() {
    let d = 500;
    let run = |workers| {
        with_workers(workers, || {
            let cal = MonteCarloPlan::new(3000, 8).with_chunk_size(128);
            let tests = vec![
                build_norm_test(Exponent::Finite(1.0), d, 0.05, &Calibration::MonteCarlo(cal.clone())).unwrap(),
                build_norm_test(Exponent::Sup, d, 0.05, &Calibration::MonteCarlo(cal.clone())).unwrap(),
                TestSpec::Combined(
                    build_combined(
                        d,
                        &[Exponent::Finite(2.0), Exponent::Finite(4.0)],
                        &budget_from_geometric(2, 0.05, 0.5, 0.5).unwrap(),
                        &cal,
                    )
                    .unwrap(),
                ),
            ];
            let grid: Vec<f64> = (0..6).map(|i| 0.05 * i as f64).collect();
            let table = power_curve(&tests, &AlternativeFamily::Dense(1.0), &grid, d, &MonteCarloPlan::new(1500, 9).with_chunk_size(100)).unwrap();
            let kappa = mc_calibrate(Exponent::Finite(2.5), d, 0.05, &cal).unwrap().value;
            (table.to_csv(), kappa.to_bits())
        })
        .unwrap()
    };
    let one = run(1);
    let eight = run(8);
    assert_eq!(one.0, eight.0);
    assert_eq!(one.1, eight.1);
}

#[test]
fn enhancement_never_loses_a_rejection_under_simulation() {
    let (base, enh) = enhanced_pair();
    let battery = TestBattery::new(vec![base.clone(), enh.clone()]).unwrap();
    let mut eval = battery.evaluator();
    let mut s = 1u64;
    for _ in 0..20_000 {
        let y: Vec<f64> = (0..D)
            .map(|_| {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                ((s >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 7.0
            })
            .collect();
        let dec = eval.decide(&y);
        assert!(!dec[0] || dec[1]);
    }
}
