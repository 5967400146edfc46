//! Modified Bessel function of the second kind, order zero.
//!
//! Two regimes meet at `z = 2`:
//! * `z <= 2`: ascending series
//!   `K0(z) = -(ln(z/2) + gamma) I0(z) + sum_k (z^2/4)^k / (k!)^2 * H_k`,
//!   with `H_k` the k-th harmonic number;
//! * `z > 2`: Steed's evaluation of the continued fraction for the
//!   confluent hypergeometric factor of `sqrt(pi/2z) e^-z`, i.e. the
//!   convergent form of the large-argument expansion.

use std::f64::consts::PI;

use super::PropagatorError;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch point between the two evaluation regimes.
pub const K0_SPLICE: f64 = 2.0;

/// Beyond this `e^-z` leaves the normal double range.
pub const K0_UNDERFLOW: f64 = 700.0;

pub(crate) fn k0_series(z: f64) -> f64 {
    let y = 0.25 * z * z;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term * harmonic < 1e-18 * tail.abs().max(i0) {
            break;
        }
    }
    -((0.5 * z).ln() + EULER_GAMMA) * i0 + tail
}

/// `sqrt(2z/pi) e^z K0(z)`, by Steed's algorithm; requires `z >= 2`-ish.
pub(crate) fn k0_scaled_cf(z: f64) -> f64 {
    const EPS: f64 = 1e-17;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    1.0 / s
}

pub(crate) fn k0_cf(z: f64) -> f64 {
    (PI / (2.0 * z)).sqrt() * (-z).exp() * k0_scaled_cf(z)
}

/// `K0(z)` to about 1e-15 relative for `0 < z <= 700`.
pub fn k0(z: f64) -> Result<f64, PropagatorError> {
    if z.is_nan() || z <= 0.0 || z.is_infinite() {
        return Err(PropagatorError::Domain(format!("k0 needs z > 0, got {z}")));
    }
    if z > K0_UNDERFLOW {
        return Err(PropagatorError::Underflow { z });
    }
    Ok(if z <= K0_SPLICE { k0_series(z) } else { k0_cf(z) })
}
