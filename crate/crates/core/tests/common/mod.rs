//! Helpers shared by the integration tests: an independent K0 oracle and
//! random expression generators.
#![allow(dead_code)]

use rand::Rng;
use spacelike_core::expr::{Atom, OperatorExpr};

/// `int_0^inf cos(z sinh u) du`, evaluated after deforming the contour onto
/// `u -> u + i pi/2`, where it becomes `int_0^inf exp(-z cosh u) du`. The
/// integrand is entire and decays double-exponentially, so the plain
/// trapezoid rule converges geometrically in the step size.
pub fn k0_oracle(z: f64) -> f64 {
    assert!(z > 0.0);
    let h = 1.0 / 64.0;
    // Scaled by e^z: exp(-z (cosh u - 1)) = exp(-2 z sinh^2(u/2)).
    let f = |u: f64| {
        let s = (0.5 * u).sinh();
        (-2.0 * z * s * s).exp()
    };
    let mut sum = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let v = f(k as f64 * h);
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    sum * h * (-z).exp()
}

/// Direct evaluation of the oscillatory form `int_0^inf cos(z s) / sqrt(1 + s^2) ds`
/// (the substitution `s = sinh u`). Integrates half-period by half-period with
/// composite Simpson and accelerates the alternating tail by repeated
/// averaging of partial sums. Accurate to about 1e-9 for moderate `z`.
pub fn k0_oscillatory(z: f64) -> f64 {
    let f = |s: f64| (z * s).cos() / (1.0 + s * s).sqrt();
    let simpson = |a: f64, b: f64| {
        let n = 400;
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for j in 1..n {
            acc += f(a + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    };
    let half = std::f64::consts::PI / z;
    let mut edge = 0.5 * half;
    let mut partial = simpson(0.0, edge);
    let mut sums = Vec::new();
    for _ in 0..40 {
        partial += simpson(edge, edge + half);
        edge += half;
        sums.push(partial);
    }
    while sums.len() > 1 {
        sums = sums.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    sums[0]
}

const ATOMS: [Atom; 8] = [
    Atom::X,
    Atom::T,
    Atom::P,
    Atom::H,
    Atom::Hbar,
    Atom::C,
    Atom::M,
    Atom::I,
];

/// Small random operator expression; `depth` bounds the nesting.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> OperatorExpr {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => OperatorExpr::integer(rng.gen_range(-3..=3)),
            1 => OperatorExpr::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4)),
            2 => OperatorExpr::pow(Atom::H.into(), -1),
            _ => ATOMS[rng.gen_range(0..ATOMS.len())].into(),
        };
    }
    match rng.gen_range(0..3) {
        0 => OperatorExpr::sum((0..rng.gen_range(2..=3)).map(|_| random_expr(rng, depth - 1)).collect()),
        1 => OperatorExpr::product((0..rng.gen_range(2..=3)).map(|_| random_expr(rng, depth - 1)).collect()),
        _ => OperatorExpr::pow(random_expr(rng, depth - 1), rng.gen_range(0..=2)),
    }
}

/// `sum_k a_k p^k` together with its derivative `sum_k k a_k p^(k-1)`.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: i32) -> (OperatorExpr, OperatorExpr) {
    let degree = rng.gen_range(0..=max_degree);
    let mut f = Vec::new();
    let mut df = Vec::new();
    for k in 0..=degree {
        let a = rng.gen_range(-5..=5i64);
        if a == 0 {
            continue;
        }
        let coeff = OperatorExpr::product(vec![OperatorExpr::integer(a), random_scalar(rng)]);
        f.push(OperatorExpr::product(vec![coeff.clone(), OperatorExpr::pow(Atom::P.into(), k)]));
        if k > 0 {
            df.push(OperatorExpr::product(vec![
                OperatorExpr::integer(k as i64),
                coeff,
                OperatorExpr::pow(Atom::P.into(), k - 1),
            ]));
        }
    }
    (OperatorExpr::sum(f), OperatorExpr::sum(df))
}

fn random_scalar<R: Rng>(rng: &mut R) -> OperatorExpr {
    const SCALARS: [Atom; 5] = [Atom::T, Atom::Hbar, Atom::C, Atom::M, Atom::I];
    let a = SCALARS[rng.gen_range(0..SCALARS.len())];
    OperatorExpr::pow(a.into(), rng.gen_range(0..=2))
}
