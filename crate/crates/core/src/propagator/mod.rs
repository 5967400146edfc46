//! Spacelike Klein–Gordon propagation amplitude in one spatial dimension.
//!
//! All numerics are dimensionless: `tau = c t / lambda_bar`,
//! `xi = x / lambda_bar`, `z = sqrt(xi^2 - tau^2)`, with `lambda_bar = hbar / m c`
//! the reduced Compton wavelength. For spacelike separations the amplitude
//! is fixed as `Gamma = K0(z) / 2 pi`, real and positive.
//!
//! Two independent evaluation paths:
//! * [`gamma_bessel`]: closed form through [`k0`];
//! * [`gamma_quadrature`]: the momentum integral in rapidity form,
//!   `Gamma = (1/4 pi) * int exp(tau sinh(theta) - |xi| cosh(theta)) d(theta)`,
//!   i.e. the oscillatory integrand `exp(-i(E t - p x))` after rotating the
//!   integration contour into the region where it decays. It is evaluated
//!   uncentred, so agreement with the closed form along a hyperbola also
//!   checks that the amplitude depends on `z` alone.

mod bessel;
mod quadrature;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

pub use bessel::{k0, EULER_GAMMA, K0_SPLICE, K0_UNDERFLOW};
pub use quadrature::{gk15, integrate, QuadratureReport};

/// Reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light, m/s.
pub const C_SI: f64 = 299_792_458.0;
/// `hbar c` in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// Relative tolerance requested from the quadrature path.
pub const QUADRATURE_RTOL: f64 = 1e-12;
/// Subinterval budget before the quadrature path reports non-convergence.
pub const QUADRATURE_MAX_INTERVALS: usize = 2000;
/// The integrand is truncated where it has fallen by `exp(-TAIL_EXPONENT)`.
pub const TAIL_EXPONENT: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PropagatorError {
    #[error("mass must be positive, got {0}")]
    NonpositiveMass(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interval is not spacelike (tau = {tau}, xi = {xi})")]
    NotSpacelike { tau: f64, xi: f64 },
    #[error(
        "quadrature did not converge: value {value:e}, error estimate {error_estimate:e} \
         after {intervals} subintervals"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        intervals: usize,
    },
    #[error("K0({z}) underflows double precision")]
    Underflow { z: f64 },
}

/// Threshold rule used to call a spacelike interval negligible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Amplitude rule: nonnegligible while `x^2 - c^2 t^2 <= lambda_bar^2`.
    AmplitudeEq2,
    /// Probability rule: nonnegligible while `x^2 - c^2 t^2 <= (lambda_bar / 2)^2`.
    ProbabilityEq13,
}

impl Criterion {
    pub const ALL: [Criterion; 2] = [Criterion::AmplitudeEq2, Criterion::ProbabilityEq13];

    /// Largest nonnegligible `xi^2 - tau^2`.
    pub fn bound(self) -> f64 {
        match self {
            Criterion::AmplitudeEq2 => 1.0,
            Criterion::ProbabilityEq13 => 0.25,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::AmplitudeEq2 => "amplitude_eq2",
            Criterion::ProbabilityEq13 => "probability_eq13",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    TimelikeOrLightlike,
    SpacelikeNonnegligible,
    SpacelikeNegligible,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::TimelikeOrLightlike => "timelike_or_lightlike",
            Classification::SpacelikeNonnegligible => "spacelike_nonnegligible",
            Classification::SpacelikeNegligible => "spacelike_negligible",
        }
    }
}

/// One spacelike sample of the amplitude, classified under both rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagatorPoint {
    pub tau: f64,
    pub xi: f64,
    pub z: f64,
    pub gamma: Complex64,
    pub prob: f64,
    pub class_eq2: Classification,
    pub class_eq13: Classification,
}

impl PropagatorPoint {
    /// `(c^2 t^2 - x^2) / lambda_bar^2`.
    pub fn interval(&self) -> f64 {
        (self.tau - self.xi) * (self.tau + self.xi)
    }

    pub fn classification(&self, criterion: Criterion) -> Classification {
        match criterion {
            Criterion::AmplitudeEq2 => self.class_eq2,
            Criterion::ProbabilityEq13 => self.class_eq13,
        }
    }
}

/// `hbar / (m c)` in metres for `m` in kilograms.
pub fn compton_wavelength(mass_kg: f64) -> Result<f64, PropagatorError> {
    check_mass(mass_kg)?;
    Ok(HBAR_SI / (mass_kg * C_SI))
}

/// `hbar / (m c)` in femtometres for `m` in MeV/c^2.
pub fn compton_wavelength_fm(mass_mev: f64) -> Result<f64, PropagatorError> {
    check_mass(mass_mev)?;
    Ok(HBAR_C_MEV_FM / mass_mev)
}

fn check_mass(m: f64) -> Result<(), PropagatorError> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(PropagatorError::NonpositiveMass(m))
    }
}

/// `(c t / lambda_bar, x / lambda_bar)`.
pub fn dimensionless(t: f64, x: f64, lambda_bar: f64, c: f64) -> Result<(f64, f64), PropagatorError> {
    if !(lambda_bar > 0.0 && lambda_bar.is_finite()) {
        return Err(PropagatorError::Domain(format!("lambda_bar must be positive, got {lambda_bar}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(PropagatorError::Domain(format!("c must be positive, got {c}")));
    }
    let (tau, xi) = (c * t / lambda_bar, x / lambda_bar);
    if !tau.is_finite() || !xi.is_finite() {
        return Err(PropagatorError::Domain("non-finite coordinates".into()));
    }
    Ok((tau, xi))
}

/// `z = sqrt(xi^2 - tau^2)` for strictly spacelike input.
pub fn spacelike_z(tau: f64, xi: f64) -> Result<f64, PropagatorError> {
    if !tau.is_finite() || !xi.is_finite() {
        return Err(PropagatorError::Domain("non-finite coordinates".into()));
    }
    let s = (xi - tau) * (xi + tau);
    if s > 0.0 {
        Ok(s.sqrt())
    } else {
        Err(PropagatorError::NotSpacelike { tau, xi })
    }
}

/// Closed form `K0(z) / 2 pi`.
pub fn gamma_bessel(tau: f64, xi: f64) -> Result<Complex64, PropagatorError> {
    let z = spacelike_z(tau, xi)?;
    Ok(Complex64::new(k0(z)? / (2.0 * PI), 0.0))
}

/// Rapidity integral of the momentum representation, evaluated by adaptive
/// Gauss–Kronrod quadrature.
pub fn gamma_quadrature(tau: f64, xi: f64) -> Result<Complex64, PropagatorError> {
    let z = spacelike_z(tau, xi)?;
    if z > K0_UNDERFLOW {
        return Err(PropagatorError::Underflow { z });
    }
    let a = xi.abs();
    // The exponent tau sinh(theta) - a cosh(theta) peaks at theta = phi with
    // value -z; the integrand is scaled by e^z and restored at the end.
    let phi = (tau / a).atanh();
    let half_width = (1.0 + TAIL_EXPONENT / z).acosh();
    let integrand = |theta: f64| (tau * theta.sinh() - a * theta.cosh() + z).exp();
    let report = integrate(
        integrand,
        phi - half_width,
        phi + half_width,
        0.0,
        QUADRATURE_RTOL,
        QUADRATURE_MAX_INTERVALS,
    );
    if !report.converged {
        return Err(PropagatorError::NonConvergence {
            value: report.value,
            error_estimate: report.error_estimate,
            intervals: report.intervals,
        });
    }
    Ok(Complex64::new(report.value * (-z).exp() / (4.0 * PI), 0.0))
}

/// Boundary-inclusive classification of `(tau, xi)` under one rule.
pub fn classify_interval(tau: f64, xi: f64, criterion: Criterion) -> Classification {
    let s = (xi - tau) * (xi + tau);
    if s <= 0.0 {
        Classification::TimelikeOrLightlike
    } else if s <= criterion.bound() {
        Classification::SpacelikeNonnegligible
    } else {
        Classification::SpacelikeNegligible
    }
}

/// Evaluates and classifies one spacelike point through the closed form.
pub fn point(tau: f64, xi: f64) -> Result<PropagatorPoint, PropagatorError> {
    let z = spacelike_z(tau, xi)?;
    let gamma = gamma_bessel(tau, xi)?;
    Ok(PropagatorPoint {
        tau,
        xi,
        z,
        gamma,
        prob: gamma.norm_sqr(),
        class_eq2: classify_interval(tau, xi, Criterion::AmplitudeEq2),
        class_eq13: classify_interval(tau, xi, Criterion::ProbabilityEq13),
    })
}

/// Least-squares slope of `ln(|Gamma|^2 z)` against `z` over `n` log-spaced
/// samples; tends to -2 as the window moves out.
pub fn falloff_fit(z_lo: f64, z_hi: f64, n: usize) -> Result<f64, PropagatorError> {
    if !(z_lo > 0.0 && z_lo < z_hi && z_hi.is_finite()) || n < 3 {
        return Err(PropagatorError::Domain(format!(
            "falloff_fit needs 0 < z_lo < z_hi and n >= 3, got ({z_lo}, {z_hi}, {n})"
        )));
    }
    let (l0, l1) = (z_lo.ln(), z_hi.ln());
    let samples = (0..n)
        .map(|k| {
            let z = (l0 + (l1 - l0) * k as f64 / (n - 1) as f64).exp();
            let g = k0(z)? / (2.0 * PI);
            Ok((z, (g * g * z).ln()))
        })
        .collect::<Result<Vec<_>, PropagatorError>>()?;
    let nf = n as f64;
    let mean_z = samples.iter().map(|s| s.0).sum::<f64>() / nf;
    let mean_y = samples.iter().map(|s| s.1).sum::<f64>() / nf;
    let (num, den) = samples.iter().fold((0.0, 0.0), |(num, den), &(z, y)| {
        (num + (z - mean_z) * (y - mean_y), den + (z - mean_z) * (z - mean_z))
    });
    Ok(num / den)
}

/// The `i`-th of `steps` evenly spaced values from `lo` to `hi`, with both
/// endpoints exact.
fn grid(lo: f64, hi: f64, steps: usize, i: usize) -> f64 {
    let last = (steps - 1) as f64;
    (lo * (last - i as f64) + hi * i as f64) / last
}

/// `tau = 0` slice with `xi = z` over `steps` evenly spaced `z`.
pub fn scan(z_min: f64, z_max: f64, steps: usize) -> Result<Vec<PropagatorPoint>, PropagatorError> {
    if !(z_min > 0.0 && z_min < z_max && z_max.is_finite()) || steps < 2 {
        return Err(PropagatorError::Domain(format!(
            "scan needs 0 < z_min < z_max and steps >= 2, got ({z_min}, {z_max}, {steps})"
        )));
    }
    (0..steps)
        .into_par_iter()
        .map(|i| point(0.0, grid(z_min, z_max, steps, i)))
        .collect()
}

/// Numerical check that `1 / (p^2 c^2 + m^2 c^4) <= 1 / (m^2 c^4)`, i.e. the
/// Hamiltonian is bounded below by the rest energy, in units `m = c = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HBoundReport {
    pub samples: usize,
    pub holds: bool,
    /// Number of samples where the bound is attained (only `p = 0`).
    pub equality_cases: usize,
}

/// Samples `p = 0` and `p_samples - 1` log-spaced magnitudes in
/// `[1e-8, 1e8]`, both signs.
pub fn hbound_check(p_samples: usize) -> HBoundReport {
    let n = p_samples.max(1);
    let mut holds = true;
    let mut equality_cases = 0;
    let mut check = |p: f64| {
        let inv = 1.0 / (p * p + 1.0);
        holds &= inv <= 1.0;
        if inv == 1.0 && p == 0.0 {
            equality_cases += 1;
        }
    };
    check(0.0);
    for k in 1..n {
        let e = if n > 2 { -8.0 + 16.0 * (k - 1) as f64 / (n - 2) as f64 } else { 0.0 };
        let p = 10f64.powf(e);
        check(if k % 2 == 0 { p } else { -p });
    }
    HBoundReport { samples: n, holds, equality_cases }
}
