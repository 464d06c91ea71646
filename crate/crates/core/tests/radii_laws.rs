use std::f64::consts::PI;

use potts_core::constants::{c_of_q, q_from_kappa};
use potts_core::radii::*;
use proptest::prelude::*;

fn finite(m: MomentValue) -> f64 {
    m.value().expect("finite moment")
}

fn kappa_grid(n: usize) -> Vec<f64> {
    let (lo, hi) = (8.0 / 3.0, 4.0);
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

fn rho_grid(kappa: f64, n: usize) -> Vec<f64> {
    let (lo, hi) = (-2.0, kappa - 4.0);
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

#[test]
fn zeroth_moments_are_one() {
    for kappa in kappa_grid(20) {
        assert!((finite(moment_r_to_b(kappa, 0.0).unwrap()) - 1.0).abs() < 1e-12);
        assert!((finite(moment_b_to_r(kappa, 0.0).unwrap()) - 1.0).abs() < 1e-12);
        assert!((finite(cle_nonsimple_moment(kappa, 0.0).unwrap()) - 1.0).abs() < 1e-12);
        for rho in rho_grid(kappa, 10) {
            let fp = finite(fixed_point_moment(kappa, rho, 0.0).unwrap());
            let gr = finite(general_rho_moment(kappa, rho, 0.0).unwrap());
            assert!((fp - 1.0).abs() < 1e-12, "kappa {kappa} rho {rho}: {fp}");
            assert!((gr - 1.0).abs() < 1e-12, "kappa {kappa} rho {rho}: {gr}");
        }
    }
}

#[test]
fn partitions_sum_to_one() {
    let mut kappas = kappa_grid(20);
    kappas.extend([2.1, 2.4, 2.6]);
    for kappa in kappas {
        for rho in rho_grid(kappa, 10) {
            for law in [bcle_simple_moment, bcle_nonsimple_moment] {
                let t = finite(law(kappa, rho, 0.0, LoopEvent::TrueLoop).unwrap());
                let f = finite(law(kappa, rho, 0.0, LoopEvent::FalseLoop).unwrap());
                assert!((t + f - 1.0).abs() < 1e-10, "kappa {kappa} rho {rho}");
                assert!(t > 0.0 && f > 0.0);
            }
        }
    }
}

#[test]
fn r_to_b_threshold_flips() {
    for kappa in kappa_grid(20) {
        let thr = r_to_b_threshold(kappa);
        assert!(moment_r_to_b(kappa, thr + 1e-6).unwrap().is_finite());
        assert!(!moment_r_to_b(kappa, thr - 1e-6).unwrap().is_finite());
        assert!(!moment_r_to_b(kappa, thr).unwrap().is_finite());
    }
}

#[test]
fn b_to_r_threshold_flips_at_lambda0_and_g_is_one() {
    for kappa in kappa_grid(20) {
        let l0 = lambda0(kappa).unwrap();
        assert!(l0 < 0.0 && l0 > cle_nonsimple_threshold(kappa));
        assert!(moment_b_to_r(kappa, l0 + 1e-6).unwrap().is_finite());
        assert!(!moment_b_to_r(kappa, l0 - 1e-6).unwrap().is_finite());
        let t = fixed_point_terms(kappa, potts_rho(kappa), l0).unwrap().unwrap();
        assert!((t.g - 1.0).abs() < 1e-8, "kappa {kappa}: g = {}", t.g);
        // the renewal form agrees with the closed form about the flip
        assert!(fixed_point_moment(kappa, potts_rho(kappa), l0 + 1e-6).unwrap().is_finite());
        assert!(!fixed_point_moment(kappa, potts_rho(kappa), l0 - 1e-6).unwrap().is_finite());
    }
}

/// The defining equation written without the `sin` denominator, so that its
/// sign is meaningful across the whole interval.
fn lambda0_scan_function(kappa: f64, x: f64) -> f64 {
    let s = ((4.0 - kappa).powi(2) + 8.0 * kappa * x).sqrt();
    (PI * (kappa - 1.0) / kappa * s).sin()
        + 2.0 * (PI * (4.0 - kappa) / 2.0).cos() * (PI * (2.0 - kappa) / (2.0 * kappa) * s).sin()
}

#[test]
fn lambda0_matches_brute_force_scan() {
    let kappa = 3.2;
    let hi = 1.0 - kappa / 8.0 - 1.5 / kappa;
    let n = 1_000_000;
    let h = hi / n as f64;
    let mut crossings = Vec::new();
    let mut prev = lambda0_scan_function(kappa, 0.0);
    for i in 1..n {
        let x = i as f64 * h;
        let cur = lambda0_scan_function(kappa, x);
        if cur.signum() != prev.signum() {
            crossings.push(x);
        }
        prev = cur;
    }
    assert_eq!(crossings.len(), 1, "sign changes at {crossings:?}");
    let l0 = lambda0(kappa).unwrap();
    assert!((-l0 - crossings[0]).abs() <= h, "{l0} vs {}", crossings[0]);
}

#[test]
fn lambda0_matches_extended_precision() {
    for (kappa, want) in [
        (2.8, -0.077_645_628_239_934_19),
        (3.0, -0.052_083_333_333_333_333),
        (3.2, -0.036_584_822_598_315_92),
        (3.3, -0.031_176_426_612_029_9),
        (3.9, -0.015_061_768_887_793_6),
    ] {
        let got = lambda0(kappa).unwrap();
        assert!((got - want).abs() < 1e-13, "kappa {kappa}: {got}");
        assert!(lambda0_residual(kappa, -got).abs() < 1e-10);
    }
}

#[test]
fn extended_precision_moment_values() {
    // 30-digit evaluations of the same closed forms
    let rb = finite(moment_r_to_b(3.0, 1.0).unwrap());
    assert!((rb / 0.006_589_838_378_965_500_6 - 1.0).abs() < 1e-12);
    let nf = finite(bcle_nonsimple_moment(3.2, -1.2, 0.3, LoopEvent::FalseLoop).unwrap());
    assert!((nf / 0.211_040_998_455_752_94 - 1.0).abs() < 1e-12);
    let gr = finite(general_rho_moment(3.0, -1.2, 0.7).unwrap());
    assert!((gr / 0.006_482_776_624_464_505 - 1.0).abs() < 1e-11);
    let br = finite(moment_b_to_r(3.3, 2.0).unwrap());
    assert!((br / 0.000_651_330_730_342_117_06 - 1.0).abs() < 1e-11);
}

#[test]
fn r_to_b_monotone_documented_points() {
    let m05 = finite(moment_r_to_b(3.0, 0.5).unwrap());
    let m1 = finite(moment_r_to_b(3.0, 1.0).unwrap());
    let m2 = finite(moment_r_to_b(3.0, 2.0).unwrap());
    assert!(m05 > m1 && m1 > m2);
}

#[test]
fn derivation_chain_on_grid() {
    for kappa in [2.8, 3.0, 3.3, 3.9] {
        let rho = potts_rho(kappa);
        for lambda in [0.1, 0.5, 1.0, 2.0] {
            let fp = finite(fixed_point_moment(kappa, rho, lambda).unwrap());
            let gr = finite(general_rho_moment(kappa, rho, lambda).unwrap());
            let br = finite(moment_b_to_r(kappa, lambda).unwrap());
            assert!((fp - gr).abs() <= 1e-9 * fp, "kappa {kappa} lambda {lambda}");
            assert!((fp - br).abs() <= 1e-9 * fp, "kappa {kappa} lambda {lambda}");
        }
        for rho in rho_grid(kappa, 5) {
            for lambda in [0.1, 0.5, 1.0, 2.0] {
                let fp = finite(fixed_point_moment(kappa, rho, lambda).unwrap());
                let gr = finite(general_rho_moment(kappa, rho, lambda).unwrap());
                assert!((fp - gr).abs() <= 1e-9 * fp, "kappa {kappa} rho {rho} lambda {lambda}");
            }
        }
    }
}

#[test]
fn general_rho_documented_point() {
    let fp = finite(fixed_point_moment(3.0, -1.2, 0.7).unwrap());
    let gr = finite(general_rho_moment(3.0, -1.2, 0.7).unwrap());
    assert!((fp / gr - 1.0).abs() < 1e-9);
}

fn central_difference<F: Fn(f64) -> f64>(f: F) -> f64 {
    let h = 1e-6;
    (f(h) - f(-h)) / (2.0 * h)
}

#[test]
fn log_moments_match_finite_differences() {
    for kappa in [2.8, 3.0, 10.0 / 3.0, 3.5, 3.9] {
        let fd_rb = central_difference(|l| finite(moment_r_to_b(kappa, l).unwrap()));
        let fd_br = central_difference(|l| finite(moment_b_to_r(kappa, l).unwrap()));
        let rb = log_moment_r_to_b(kappa).unwrap();
        let br = log_moment_b_to_r(kappa).unwrap();
        assert!((rb / fd_rb - 1.0).abs() < 1e-5, "kappa {kappa}: {rb} vs {fd_rb}");
        assert!((br / fd_br - 1.0).abs() < 1e-5, "kappa {kappa}: {br} vs {fd_br}");
    }
}

/// `E[log R_{B->R}]` by the quotient rule applied to `U/V`, with the
/// derivatives taken term by term at `theta(0) = pi (4 - kappa)/kappa`.
fn log_b_to_r_quotient_rule(kappa: f64) -> f64 {
    let t0 = PI * (4.0 - kappa) / kappa;
    let h0 = -4.0 * PI / (4.0 - kappa);
    let c = 2.0 * (PI * (4.0 - kappa) / 2.0).cos();
    let (a1, a2) = (kappa - 2.0, 2.0 - kappa / 2.0);
    let (b1, b2) = (kappa - 1.0, 1.0 - kappa / 2.0);
    let u = (a1 * t0).sin() + c * (a2 * t0).sin();
    let v = (b1 * t0).sin() + c * (b2 * t0).sin();
    let du = h0 * (a1 * (a1 * t0).cos() + c * a2 * (a2 * t0).cos());
    let dv = h0 * (b1 * (b1 * t0).cos() + c * b2 * (b2 * t0).cos());
    let prefactor = 1.0 / (2.0 * (PI * (4.0 - kappa) / kappa).cos());
    prefactor * (du * v - u * dv) / (v * v)
}

#[test]
fn log_b_to_r_matches_quotient_rule_route() {
    for kappa in [2.8, 3.0, 3.3, 3.7, 3.95] {
        let a = log_moment_b_to_r(kappa).unwrap();
        let b = log_b_to_r_quotient_rule(kappa);
        assert!((a / b - 1.0).abs() < 1e-11, "kappa {kappa}: {a} vs {b}");
    }
}

#[test]
fn log_moments_are_negative() {
    for kappa in kappa_grid(50) {
        assert!(log_moment_r_to_b(kappa).unwrap() < 0.0);
        assert!(log_moment_b_to_r(kappa).unwrap() < 0.0);
    }
}

#[test]
fn c_kappa_methods_agree_on_grid() {
    for kappa in kappa_grid(50) {
        let a = c_kappa(kappa, CKappaMethod::FromLogs).unwrap();
        let b = c_kappa(kappa, CKappaMethod::ClosedForm).unwrap();
        assert!((a / b - 1.0).abs() < 1e-9, "kappa {kappa}");
        let c = c_of_q(q_from_kappa(kappa).unwrap()).unwrap();
        assert!((a / c - 1.0).abs() < 1e-9, "kappa {kappa}");
        assert!((c_kappa_squared(kappa).unwrap() / (a * a) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn continuation_across_theta_zero_is_continuous() {
    for kappa in [2.8, 3.0, 3.5, 3.9] {
        let star = (4.0f64 - kappa).powi(2) / (8.0 * kappa);
        let (lo, hi) = (star - 1e-12, star + 1e-12);
        let rho = -1.5f64.max(-2.0 + 0.5 * (kappa - 2.0));
        let laws: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(move |l| finite(moment_r_to_b(kappa, l).unwrap())),
            Box::new(move |l| finite(moment_b_to_r(kappa, l).unwrap())),
            Box::new(move |l| finite(cle_nonsimple_moment(kappa, l).unwrap())),
            Box::new(move |l| finite(fixed_point_moment(kappa, rho, l).unwrap())),
            Box::new(move |l| finite(general_rho_moment(kappa, rho, l).unwrap())),
            Box::new(move |l| {
                finite(bcle_simple_moment(kappa, rho, l, LoopEvent::TrueLoop).unwrap())
            }),
            Box::new(move |l| {
                finite(bcle_nonsimple_moment(kappa, rho, l, LoopEvent::FalseLoop).unwrap())
            }),
        ];
        for (i, law) in laws.iter().enumerate() {
            assert!((law(lo) - law(hi)).abs() < 1e-8, "law {i} kappa {kappa}");
        }
    }
}

fn above(thr: f64, frac: f64) -> f64 {
    thr + 1e-3 + frac * 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moments_decrease_in_lambda(
        kappa in 2.7f64..3.99,
        u in 0.0f64..1.0,
        gap in 0.001f64..1.0,
    ) {
        let l1 = above(r_to_b_threshold(kappa), u);
        let (a, b) = (moment_r_to_b(kappa, l1).unwrap(), moment_r_to_b(kappa, l1 + gap).unwrap());
        prop_assert!(finite(a) > finite(b));

        let l1 = above(lambda0(kappa).unwrap(), u);
        let (a, b) = (moment_b_to_r(kappa, l1).unwrap(), moment_b_to_r(kappa, l1 + gap).unwrap());
        prop_assert!(finite(a) > finite(b));

        let l1 = above(cle_nonsimple_threshold(kappa), u);
        let (a, b) = (cle_nonsimple_moment(kappa, l1).unwrap(), cle_nonsimple_moment(kappa, l1 + gap).unwrap());
        prop_assert!(finite(a) > finite(b));
    }

    #[test]
    fn bcle_moments_decrease_in_lambda(
        kappa in 2.1f64..3.99,
        rho_frac in 0.02f64..0.98,
        u in 0.0f64..1.0,
        gap in 0.001f64..1.0,
    ) {
        let rho = -2.0 + rho_frac * (kappa - 2.0);
        for event in [LoopEvent::TrueLoop, LoopEvent::FalseLoop] {
            let l1 = above(kappa / 8.0 - 1.0, u);
            let a = finite(bcle_simple_moment(kappa, rho, l1, event).unwrap());
            let b = finite(bcle_simple_moment(kappa, rho, l1 + gap, event).unwrap());
            prop_assert!(a > b && b > 0.0);
            let l1 = above(2.0 / kappa - 1.0, u);
            let a = finite(bcle_nonsimple_moment(kappa, rho, l1, event).unwrap());
            let b = finite(bcle_nonsimple_moment(kappa, rho, l1 + gap, event).unwrap());
            prop_assert!(a > b && b > 0.0);
        }
    }

    #[test]
    fn values_bracket_one(kappa in 2.7f64..3.99, lambda in -0.3f64..3.0) {
        for m in [moment_r_to_b(kappa, lambda).unwrap(), moment_b_to_r(kappa, lambda).unwrap()] {
            if let MomentValue::Finite(v) = m {
                prop_assert!(v > 0.0);
                if lambda >= 0.0 { prop_assert!(v <= 1.0 + 1e-12); }
                else { prop_assert!(v >= 1.0 - 1e-12); }
            }
        }
    }

    #[test]
    fn fixed_point_equals_general_rho(
        kappa in 2.7f64..3.99,
        rho_frac in 0.02f64..0.98,
        lambda in 0.0f64..3.0,
    ) {
        let rho = -2.0 + rho_frac * (kappa - 2.0);
        let fp = finite(fixed_point_moment(kappa, rho, lambda).unwrap());
        let gr = finite(general_rho_moment(kappa, rho, lambda).unwrap());
        prop_assert!((fp - gr).abs() <= 1e-9 * fp, "{} vs {}", fp, gr);
    }

    #[test]
    fn finiteness_matches_thresholds(kappa in 2.7f64..3.99, lambda in -0.2f64..0.1) {
        prop_assert_eq!(moment_r_to_b(kappa, lambda).unwrap().is_finite(), lambda > r_to_b_threshold(kappa));
        prop_assert_eq!(moment_b_to_r(kappa, lambda).unwrap().is_finite(), lambda > lambda0(kappa).unwrap());
        prop_assert_eq!(cle_nonsimple_moment(kappa, lambda).unwrap().is_finite(), lambda > cle_nonsimple_threshold(kappa));
    }
}
