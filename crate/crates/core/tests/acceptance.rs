//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! naming the criterion, then asserts it.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spacelike_core::algebra::normal_form;
use spacelike_core::expr::{Atom, OperatorExpr};
use spacelike_core::propagator::{
    falloff_fit, gamma_bessel, gamma_quadrature, k0, scan, Classification, K0_SPLICE,
};
use spacelike_core::theorems::{all_verified, interval, lorentz_classical, lorentz_momentum_form, run_all, FrameState};

fn report(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

#[test]
fn identity_suite() {
    let start = Instant::now();
    let records = run_all();
    let elapsed = start.elapsed();
    let verified = records.iter().filter(|r| r.verified()).count();
    let ok = records.len() == 13 && all_verified(&records) && elapsed < Duration::from_secs(5);
    report(
        "identity_suite",
        ok,
        format!("{verified}/{} exact, empty residuals, {elapsed:.2?}", records.len()),
    );
}

#[test]
fn threshold_quarter_factor() {
    use Classification::*;
    let rows = scan(0.1, 3.0, 30).unwrap();
    let at = |z: f64| rows.iter().find(|r| r.z == z).copied();
    let (half, one) = (at(0.5), at(1.0));
    let ok = matches!(half, Some(r) if r.class_eq2 == SpacelikeNonnegligible && r.class_eq13 == SpacelikeNonnegligible)
        && matches!(one, Some(r) if r.class_eq2 == SpacelikeNonnegligible && r.class_eq13 == SpacelikeNegligible);
    report(
        "threshold_quarter_factor",
        ok,
        format!(
            "z=0.5 -> {:?}, z=1.0 -> {:?}",
            half.map(|r| (r.class_eq2, r.class_eq13)),
            one.map(|r| (r.class_eq2, r.class_eq13))
        ),
    );
}

#[test]
fn cross_method_propagator() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let z: f64 = rng.gen_range(0.05..=20.0);
        let phi: f64 = rng.gen_range(-2.0..=2.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (tau, xi) = (z * phi.sinh(), sign * z * phi.cosh());
        let b = gamma_bessel(tau, xi).unwrap();
        let q = gamma_quadrature(tau, xi).unwrap();
        worst = worst.max((q - b).norm() / b.norm());
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-6 && elapsed < Duration::from_secs(10);
    report(
        "cross_method_propagator",
        ok,
        format!("100 points, max relative discrepancy {worst:.3e}, {elapsed:.2?}"),
    );
}

#[test]
fn asymptotic_falloff() {
    let slope = falloff_fit(5.0, 15.0, 50).unwrap();
    let ok = (slope + 2.0).abs() <= 0.02;
    report("asymptotic_falloff", ok, format!("slope of ln(|Gamma|^2 z) over [5, 15] = {slope:.6}"));
}

/// K1(2) to 20 digits; K0' = -K1.
const K1_AT_SPLICE: f64 = 0.139_865_881_816_522_427_28;

#[test]
fn k0_accuracy() {
    let (lo, hi) = (1e-3f64.ln(), 50f64.ln());
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let z = (lo + (hi - lo) * k as f64 / 49.0).exp();
        let want = common::k0_oracle(z);
        worst = worst.max((k0(z).unwrap() - want).abs() / want);
    }
    // Across the regime switch the raw difference also contains the true
    // change 2 delta K1(2); the jump is what remains after removing it.
    let delta = 1e-9;
    let raw = k0(K0_SPLICE - delta).unwrap() - k0(K0_SPLICE + delta).unwrap();
    let scale = k0(K0_SPLICE).unwrap();
    let jump = (raw - 2.0 * delta * K1_AT_SPLICE).abs() / scale;
    let ok = worst <= 1e-10 && jump <= 1e-10;
    report(
        "k0_accuracy",
        ok,
        format!(
            "max relative error {worst:.3e} at 50 points, splice jump {jump:.3e} \
             (raw difference {:.3e}, of which slope {:.3e})",
            raw.abs() / scale,
            2.0 * delta * K1_AT_SPLICE / scale
        ),
    );
}

#[test]
fn classical_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let (mut worst_interval, mut worst_agree): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let t: f64 = rng.gen_range(-1.0..=1.0);
        let x: f64 = rng.gen_range(-1.0..=1.0);
        let v: f64 = rng.gen_range(-0.99..=0.99);
        let (tp, xp) = lorentz_classical(t, x, v, 1.0).unwrap();
        let before = interval(t, x, 1.0);
        let after = interval(tp, xp, 1.0);
        worst_interval = worst_interval.max((after - before).abs() / before.abs().max(1.0));
        let frame = FrameState::from_mass_velocity(1.0, v, 1.0).unwrap();
        let (tq, xq) = lorentz_momentum_form(t, x, &frame).unwrap();
        let scale = tp.abs().max(xp.abs()).max(1.0);
        worst_agree = worst_agree.max((tq - tp).abs().max((xq - xp).abs()) / scale);
    }
    let ok = worst_interval <= 1e-12 && worst_agree <= 1e-12;
    report(
        "classical_invariance",
        ok,
        format!("1000 boosts, interval drift {worst_interval:.3e}, velocity/momentum form gap {worst_agree:.3e}"),
    );
}

#[test]
fn algebra_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut assoc_failures = 0;
    for _ in 0..500 {
        let (a, b, c) = (
            common::random_expr(&mut rng, 2),
            common::random_expr(&mut rng, 2),
            common::random_expr(&mut rng, 2),
        );
        let left = OperatorExpr::Product(vec![OperatorExpr::Product(vec![a.clone(), b.clone()]), c.clone()]);
        let right = OperatorExpr::Product(vec![a.clone(), OperatorExpr::Product(vec![b.clone(), c.clone()])]);
        let flat = OperatorExpr::Product(vec![a, b, c]);
        let (l, r, f) = (normal_form(&left), normal_form(&right), normal_form(&flat));
        if !(l.is_ok() && l == r && r == f) {
            assoc_failures += 1;
        }
    }
    let mut derivative_failures = 0;
    let minus_i_hbar = OperatorExpr::product(vec![OperatorExpr::integer(-1), Atom::I.into(), Atom::Hbar.into()]);
    for _ in 0..100 {
        let (f, df) = common::random_polynomial(&mut rng, 5);
        let x = OperatorExpr::atom(Atom::X);
        let lhs = OperatorExpr::difference(
            OperatorExpr::Product(vec![f.clone(), x.clone()]),
            OperatorExpr::Product(vec![x, f]),
        );
        let rhs = OperatorExpr::Product(vec![minus_i_hbar.clone(), df]);
        if normal_form(&lhs).unwrap() != normal_form(&rhs).unwrap() {
            derivative_failures += 1;
        }
    }
    let ok = assoc_failures == 0 && derivative_failures == 0;
    report(
        "algebra_properties",
        ok,
        format!(
            "500 triples, {assoc_failures} associativity failures; \
             100 polynomials, {derivative_failures} derivative-rule failures"
        ),
    );
}

#[test]
fn oracles_agree() {
    // The contour-deformed oracle against the literal oscillatory integral.
    let mut worst: f64 = 0.0;
    for z in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let (a, b) = (common::k0_oracle(z), common::k0_oscillatory(z));
        worst = worst.max((a - b).abs() / a);
    }
    assert!(worst < 1e-7, "oscillatory vs deformed oracle: {worst:.3e}");
    // Frozen high-precision value.
    assert!((common::k0_oracle(1.0) - 0.421_024_438_240_708_333_34).abs() < 1e-15);
}
