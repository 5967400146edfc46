//! Syntax trees for noncommutative operator expressions.
//!
//! The textual grammar is deliberately small:
//!
//! ```text
//! expr     := term (("+"|"-") term)* ;
//! term     := factor ("*" factor)* ;
//! factor   := ("-")? base ("^" signed_int)? ;
//! base     := "(" expr ")" | atom | rational ;
//! atom     := "x"|"t"|"p"|"H"|"hbar"|"c"|"m"|"i" ;
//! rational := int ("/" posint)? ;
//! ```
//!
//! There is no division operator. A fraction such as `(Hx + xH)/2mc^2` is
//! written `1/2*m^-1*c^-2*(H*x + x*H)`.

mod parse;
mod print;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub use parse::{parse, parse_bytes, ParseError};

/// The fixed alphabet of the operator algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Position operator.
    X,
    /// Coordinate time; central in the algebra.
    T,
    /// Momentum operator.
    P,
    /// Hamiltonian, subject to `H^2 = p^2 c^2 + m^2 c^4`.
    H,
    Hbar,
    C,
    M,
    /// Imaginary unit.
    I,
}

impl Atom {
    pub const ALL: [Atom; 8] = [
        Atom::X,
        Atom::T,
        Atom::P,
        Atom::H,
        Atom::Hbar,
        Atom::C,
        Atom::M,
        Atom::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::X => "x",
            Atom::T => "t",
            Atom::P => "p",
            Atom::H => "H",
            Atom::Hbar => "hbar",
            Atom::C => "c",
            Atom::M => "m",
            Atom::I => "i",
        }
    }

    pub fn from_name(name: &str) -> Option<Atom> {
        Atom::ALL.into_iter().find(|a| a.name() == name)
    }

    /// `x` and `t` have no inverse in the algebra.
    pub fn allows_negative_power(self) -> bool {
        !matches!(self, Atom::X | Atom::T)
    }

    /// Atoms that commute with every element.
    pub fn is_scalar(self) -> bool {
        matches!(self, Atom::T | Atom::Hbar | Atom::C | Atom::M | Atom::I)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parsed operator expression. Factor order in `Product` is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorExpr {
    Sum(Vec<OperatorExpr>),
    Product(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, i32),
    Atom(Atom),
    /// Always stored reduced, with a positive denominator.
    Rational(BigRational),
}

impl OperatorExpr {
    pub fn atom(a: Atom) -> Self {
        OperatorExpr::Atom(a)
    }

    pub fn integer(n: i64) -> Self {
        OperatorExpr::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer/denom`, reduced. Panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        OperatorExpr::Rational(BigRational::new(numer.into(), denom.into()))
    }

    /// Builds a sum, collapsing the single-term case.
    pub fn sum(mut terms: Vec<OperatorExpr>) -> Self {
        match terms.len() {
            0 => OperatorExpr::integer(0),
            1 => terms.pop().unwrap(),
            _ => OperatorExpr::Sum(terms),
        }
    }

    /// Builds an ordered product, collapsing the single-factor case.
    pub fn product(mut factors: Vec<OperatorExpr>) -> Self {
        match factors.len() {
            0 => OperatorExpr::integer(1),
            1 => factors.pop().unwrap(),
            _ => OperatorExpr::Product(factors),
        }
    }

    pub fn pow(base: OperatorExpr, exponent: i32) -> Self {
        OperatorExpr::Power(Box::new(base), exponent)
    }

    /// Negation as the parser produces it: literals fold, everything else
    /// gains a leading `-1` factor.
    pub fn negated(self) -> Self {
        match self {
            OperatorExpr::Rational(r) => OperatorExpr::Rational(-r),
            other => OperatorExpr::Product(vec![OperatorExpr::integer(-1), other]),
        }
    }

    /// `a - b` with the same tree shape the parser gives `a - b`.
    pub fn difference(a: OperatorExpr, b: OperatorExpr) -> Self {
        OperatorExpr::Sum(vec![a, b.negated()])
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            OperatorExpr::Sum(items) | OperatorExpr::Product(items) => {
                1 + items.iter().map(OperatorExpr::size).sum::<usize>()
            }
            OperatorExpr::Power(base, _) => 1 + base.size(),
            OperatorExpr::Atom(_) | OperatorExpr::Rational(_) => 1,
        }
    }

    pub(crate) fn is_negative_literal(&self) -> bool {
        matches!(self, OperatorExpr::Rational(r) if r.is_negative())
    }

    pub(crate) fn is_minus_one(&self) -> bool {
        matches!(self, OperatorExpr::Rational(r) if r.is_integer() && (-r).is_one())
    }
}

impl From<Atom> for OperatorExpr {
    fn from(a: Atom) -> Self {
        OperatorExpr::Atom(a)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_expr(f, self)
    }
}

/// Renders an operator expression in the input grammar.
///
/// `NormalForm` renders through its own `Display` impl; both re-parse to the
/// value they came from.
pub fn print_expr(e: &OperatorExpr) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_names_round_trip() {
        for a in Atom::ALL {
            assert_eq!(Atom::from_name(a.name()), Some(a));
        }
        assert_eq!(Atom::from_name("xp"), None);
    }

    #[test]
    fn negation_folds_literals() {
        assert_eq!(OperatorExpr::ratio(1, 2).negated(), OperatorExpr::ratio(-1, 2));
        assert_eq!(
            OperatorExpr::atom(Atom::X).negated(),
            OperatorExpr::Product(vec![OperatorExpr::integer(-1), Atom::X.into()])
        );
    }
}
