//! The identity suite for the quantum Lorentz transformation, and the
//! classical transformation it starts from.
//!
//! Every identity is stored as one or more `lhs = rhs` equations in the
//! input grammar. Verification reduces `lhs - rhs` to normal form; a theorem
//! holds only if every residual is exactly zero.

mod classical;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{normal_form, symmetrize, NormalForm};
use crate::expr::{parse, Atom, OperatorExpr};

pub use classical::{interval, lorentz_classical, lorentz_momentum_form, FrameState, KinematicsError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("unknown theorem '{0}'")]
    UnknownTheorem(String),
}

/// Primed coordinates as operators on the quantum frame:
/// `x' = (Hx + xH)/2mc^2 - tp/m`, `t' = tH/mc^2 - (px + xp)/2mc^2`.
const X_PRIME: &str = "1/2*m^-1*c^-2*(H*x + x*H) - m^-1*t*p";
const T_PRIME: &str = "m^-1*c^-2*t*H - 1/2*m^-1*c^-2*(p*x + x*p)";

/// The primed coordinates `(x', t')` with `t` already commuted through.
pub fn lorentz_operators() -> (OperatorExpr, OperatorExpr) {
    (parse(X_PRIME).unwrap(), parse(T_PRIME).unwrap())
}

/// The primed coordinates obtained by symmetrising every product of the
/// momentum-form classical transformation.
pub fn lorentz_operators_symmetrized() -> (OperatorExpr, OperatorExpr) {
    let a = OperatorExpr::atom;
    let inv_mc2 = || {
        vec![
            OperatorExpr::pow(a(Atom::M), -1),
            OperatorExpr::pow(a(Atom::C), -2),
        ]
    };
    let c2 = OperatorExpr::pow(a(Atom::C), 2);

    let x_body = OperatorExpr::difference(
        symmetrize(&a(Atom::H), &a(Atom::X)),
        OperatorExpr::Product(vec![c2, symmetrize(&a(Atom::P), &a(Atom::T))]),
    );
    let t_body = OperatorExpr::difference(
        symmetrize(&a(Atom::H), &a(Atom::T)),
        symmetrize(&a(Atom::P), &a(Atom::X)),
    );
    let mut xf = inv_mc2();
    xf.push(x_body);
    let mut tf = inv_mc2();
    tf.push(t_body);
    (OperatorExpr::Product(xf), OperatorExpr::Product(tf))
}

/// Branch of the nonrelativistic time-of-arrival operator
/// `T = ±(m/2)(p^-1 x + x p^-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

pub fn time_of_arrival(branch: Branch) -> OperatorExpr {
    let text = match branch {
        Branch::Plus => "1/2*m*(p^-1*x + x*p^-1)",
        Branch::Minus => "-1/2*m*(p^-1*x + x*p^-1)",
    };
    parse(text).unwrap()
}

/// One `lhs = rhs` statement.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub label: String,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl Equation {
    fn parse(label: &str, lhs: &str, rhs: &str) -> Equation {
        let lhs = expand(lhs);
        let rhs = expand(rhs);
        Equation {
            label: label.into(),
            lhs: parse(&lhs).unwrap_or_else(|e| panic!("{label}: {e}\n{lhs}")),
            rhs: parse(&rhs).unwrap_or_else(|e| panic!("{label}: {e}\n{rhs}")),
        }
    }

    pub fn check(&self) -> Check {
        let residual = normal_form(&OperatorExpr::difference(self.lhs.clone(), self.rhs.clone()))
            .expect("suite expressions only invert p, H and scalars");
        Check {
            label: self.label.clone(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            residual,
        }
    }
}

/// `X'`, `T'` and `TOA` placeholders in suite text.
fn expand(text: &str) -> String {
    text.replace("X'", &format!("({X_PRIME})"))
        .replace("T'", &format!("({T_PRIME})"))
        .replace("TOA", "(1/2*m*(p^-1*x + x*p^-1))")
}

/// A named identity before verification.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremDef {
    pub id: &'static str,
    pub citation: &'static str,
    /// Theorems whose steps lead into this one.
    pub depends_on: &'static [&'static str],
    pub equations: Vec<Equation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
    pub residual: NormalForm,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Outcome of verifying one identity. `status` is `Verified` iff every
/// residual is the empty normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremRecord {
    pub id: &'static str,
    pub citation: &'static str,
    pub depends_on: &'static [&'static str],
    pub checks: Vec<Check>,
    pub status: Status,
}

impl TheoremRecord {
    /// The headline statement is the last equation of the theorem.
    fn headline(&self) -> &Check {
        self.checks.last().expect("theorem has at least one equation")
    }

    pub fn lhs(&self) -> &OperatorExpr {
        &self.headline().lhs
    }

    pub fn rhs(&self) -> &OperatorExpr {
        &self.headline().rhs
    }

    /// The first nonzero residual, or zero when verified.
    pub fn residual(&self) -> &NormalForm {
        self.checks
            .iter()
            .find(|c| !c.holds())
            .map(|c| &c.residual)
            .unwrap_or(&self.headline().residual)
    }

    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

impl TheoremDef {
    pub fn verify(&self) -> TheoremRecord {
        let checks: Vec<Check> = self.equations.iter().map(Equation::check).collect();
        let status = if checks.iter().all(Check::holds) {
            Status::Verified
        } else {
            Status::Failed
        };
        TheoremRecord {
            id: self.id,
            citation: self.citation,
            depends_on: self.depends_on,
            checks,
            status,
        }
    }
}

fn def(
    id: &'static str,
    citation: &'static str,
    depends_on: &'static [&'static str],
    eqs: &[(&str, &str, &str)],
) -> TheoremDef {
    TheoremDef {
        id,
        citation,
        depends_on,
        equations: eqs.iter().map(|(l, a, b)| Equation::parse(l, a, b)).collect(),
    }
}

const A5_SQUARE: &str = "(2*x*p - i*hbar)*(2*x*p - i*hbar)";
const A6_SQUARE: &str = "(2*x*H - i*hbar*H^-1*p*c^2)*(2*x*H - i*hbar*H^-1*p*c^2)";

/// The full identity suite, in reporting order.
pub fn suite() -> Vec<TheoremDef> {
    let (x5, t5) = lorentz_operators_symmetrized();
    let (x7, t7) = lorentz_operators();
    let eq5_eq7 = TheoremDef {
        id: "T_eq5_eq7",
        citation: "symmetrised quantum transformation equals its reordered form once t commutes with H and p",
        depends_on: &[],
        equations: vec![
            Equation { label: "x'".into(), lhs: x5, rhs: x7 },
            Equation { label: "t'".into(), lhs: t5, rhs: t7 },
        ],
    };

    let a6_expanded = "4*x*H*x*H - 2*i*hbar*x*p*c^2 - 2*i*hbar*p*c^2*H^-1*x*H - hbar^2*H^-2*p^2*c^4";
    let a6_substituted = "4*x^2*H^2 - 4*i*hbar*x*p*c^2 - 2*i*hbar*x*p*c^2 - 2*i*hbar*p*c^2*x \
                          + 2*hbar^2*H^-2*p^2*c^4 - hbar^2*H^-2*p^2*c^4";
    let a6_collected =
        "4*x^2*H^2 - 6*i*hbar*x*p*c^2 - 2*i*hbar*c^2*(x*p - i*hbar) + hbar^2*H^-2*p^2*c^4";
    let a6_final = "4*x^2*H^2 - 8*i*hbar*x*p*c^2 - 2*hbar^2*c^2 + hbar^2*H^-2*p^2*c^4";
    let a7_lhs = format!("1/4*m^-2*c^-2*{A5_SQUARE} - 1/4*m^-2*c^-4*{A6_SQUARE}");

    vec![
        eq5_eq7,
        def(
            "T_eq6",
            "coordinate time commutes with the Hamiltonian and the momentum",
            &[],
            &[("tp = pt", "t*p", "p*t"), ("[H, t] = 0", "H*t - t*H", "0")],
        ),
        def(
            "T_eq8",
            "[H^2, x] = H[H, x] + [H, x]H = 2H[H, x]",
            &[],
            &[
                ("H[H,x] = [H,x]H", "H*(H*x - x*H)", "(H*x - x*H)*H"),
                ("product rule", "H^2*x - x*H^2", "H*(H*x - x*H) + (H*x - x*H)*H"),
                ("[H^2, x] = 2H[H, x]", "H^2*x - x*H^2", "2*H*(H*x - x*H)"),
            ],
        ),
        def(
            "T_eq9",
            "[H^2, x] = -2 i hbar p c^2 from the mass shell",
            &[],
            &[
                (
                    "p[p,x]c^2 + [p,x]pc^2",
                    "p*(p*x - x*p)*c^2 + (p*x - x*p)*p*c^2",
                    "-2*i*hbar*p*c^2",
                ),
                ("[H^2, x]", "H^2*x - x*H^2", "-2*i*hbar*p*c^2"),
            ],
        ),
        def(
            "T_eq10",
            "[H, x] = -i hbar H^-1 p c^2",
            &["T_eq8", "T_eq9"],
            &[
                ("2H[H,x] with the closed form", "2*H*(-i*hbar*H^-1*p*c^2)", "-2*i*hbar*p*c^2"),
                ("[H, x]", "H*x - x*H", "-i*hbar*H^-1*p*c^2"),
            ],
        ),
        def(
            "T_velocity",
            "dx/dt = (i/hbar)[H, x] = H^-1 p c^2",
            &["T_eq10"],
            &[("(i/hbar)[H, x]", "i*hbar^-1*(H*x - x*H)", "H^-1*p*c^2")],
        ),
        def(
            "T_a2",
            "cross terms of the squared interval cancel",
            &[],
            &[(
                "cross terms",
                "1/2*m^-2*c^-2*(-1*t*H*(p*x + x*p) - (p*x + x*p)*t*H + (H*x + x*H)*t*p + t*p*(H*x + x*H))",
                "0",
            )],
        ),
        def(
            "T_a5",
            "(2xp - i hbar)^2 = 4x^2p^2 - 8 i hbar xp - hbar^2",
            &[],
            &[
                ("px + xp", "p*x + x*p", "2*x*p - i*hbar"),
                ("expanded", A5_SQUARE, "4*x*p*x*p - 4*i*hbar*x*p - hbar^2"),
                ("normal ordered", A5_SQUARE, "4*x^2*p^2 - 8*i*hbar*x*p - hbar^2"),
            ],
        ),
        def(
            "T_a6",
            "(2xH - i hbar H^-1 p c^2)^2 = 4x^2H^2 - 8 i hbar xp c^2 - 2 hbar^2 c^2 + hbar^2 H^-2 p^2 c^4",
            &[],
            &[
                ("Hx + xH", "H*x + x*H", "2*x*H - i*hbar*H^-1*p*c^2"),
                ("expanded", A6_SQUARE, a6_expanded),
                ("reordered", A6_SQUARE, a6_substituted),
                ("collected", A6_SQUARE, a6_collected),
                ("normal ordered", A6_SQUARE, a6_final),
            ],
        ),
        def(
            "T_a7",
            "the x-dependent terms collapse to -x^2 + hbar^2 c^2 H^-2 / 4",
            &[],
            &[
                (
                    "difference of squares",
                    &a7_lhs,
                    "1/4*m^-2*c^-4*(-4*x^2*m^2*c^4 + hbar^2*c^2 - hbar^2*H^-2*p^2*c^4)",
                ),
                (
                    "mass shell",
                    &a7_lhs,
                    "-1*x^2 + 1/4*m^-2*c^-4*hbar^2*c^2*H^-2*(H^2 - p^2*c^2)",
                ),
                ("result", &a7_lhs, "-1*x^2 + 1/4*hbar^2*c^2*H^-2"),
            ],
        ),
        def(
            "T_eq11",
            "c^2 t'^2 - x'^2 = c^2 t^2 - x^2 + hbar^2 c^2 H^-2 / 4",
            &["T_a2", "T_a5", "T_a6", "T_a7"],
            &[
                (
                    "squared form",
                    "c^2*T'*T' - X'*X'",
                    "(m^-1*c^-1*t*H - 1/2*m^-1*c^-1*(p*x + x*p))^2 - (1/2*m^-1*c^-2*(H*x + x*H) - m^-1*t*p)^2",
                ),
                (
                    "cross terms dropped",
                    "c^2*T'*T' - X'*X'",
                    "m^-2*c^-2*t^2*H^2 + 1/4*m^-2*c^-2*(p*x + x*p)*(p*x + x*p) \
                     - 1/4*m^-2*c^-4*(H*x + x*H)*(H*x + x*H) - m^-2*t^2*p^2",
                ),
                (
                    "commutators substituted",
                    "c^2*T'*T' - X'*X'",
                    &format!("c^2*t^2 + 1/4*m^-2*c^-2*{A5_SQUARE} - 1/4*m^-2*c^-4*{A6_SQUARE}"),
                ),
                (
                    "interval",
                    "c^2*T'*T' - X'*X'",
                    "c^2*t^2 - x^2 + 1/4*hbar^2*c^2*H^-2",
                ),
            ],
        ),
        def(
            "T_eq19",
            "x't' - t'x' = -i hbar (H^-1 x + x H^-1) / 2",
            &[],
            &[(
                "[x', t']",
                "X'*T' - T'*X'",
                "-1/2*i*hbar*(H^-1*x + x*H^-1)",
            )],
        ),
        def(
            "T_eq20",
            "x T - T x = -i hbar (Hn^-1 x + x Hn^-1) / 4 with T = m(p^-1 x + x p^-1)/2, Hn = p^2/2m",
            &[],
            &[
                ("[x, p^-1]", "x*p^-1 - p^-1*x", "-i*hbar*p^-2"),
                ("Hn^-1 Hn = 1", "2*m*p^-2*(1/2*m^-1*p^2)", "1"),
                (
                    "[x, T]",
                    "x*TOA - TOA*x",
                    "-1/4*i*hbar*(2*m*p^-2*x + x*2*m*p^-2)",
                ),
            ],
        ),
    ]
}

/// Identifiers of the suite, in reporting order.
pub fn suite_ids() -> Vec<&'static str> {
    suite().iter().map(|d| d.id).collect()
}

pub fn run_theorem(id: &str) -> Result<TheoremRecord, TheoremError> {
    suite()
        .into_iter()
        .find(|d| d.id == id)
        .map(|d| d.verify())
        .ok_or_else(|| TheoremError::UnknownTheorem(id.to_string()))
}

/// Verifies every member concurrently; output order is the suite order.
pub fn run_all() -> Vec<TheoremRecord> {
    suite().par_iter().map(TheoremDef::verify).collect()
}

/// `None` or an empty filter runs everything.
pub fn run_filtered(filter: Option<&str>) -> Result<Vec<TheoremRecord>, TheoremError> {
    match filter {
        None | Some("") => Ok(run_all()),
        Some(id) => run_theorem(id).map(|r| vec![r]),
    }
}

pub fn all_verified(records: &[TheoremRecord]) -> bool {
    records.iter().all(TheoremRecord::verified)
}
