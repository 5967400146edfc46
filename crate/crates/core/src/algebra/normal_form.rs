use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::momentum::MomentumPart;
use super::{Coefficient, GaussianRational, Monomial};
use crate::expr::{Atom, OperatorExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("negative power of {0} has no inverse in the algebra")]
    NonInvertible(String),
}

/// Position of a term in the canonical ordering `x^x t^t (...) H^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub x: u32,
    pub t: u32,
    pub h: bool,
}

impl Key {
    pub const ONE: Key = Key { x: 0, t: 0, h: false };
}

/// Canonical representative of an operator in the quotient algebra.
///
/// Maps each `(x-power, t-power, H-flag)` to a nonzero [`Coefficient`]; two
/// operators are equal iff their normal forms are equal as maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: BTreeMap<Key, Coefficient>,
}

fn hbar_i(k: u32, binom: &BigInt) -> Coefficient {
    // binom * (-i hbar)^k
    let unit = GaussianRational::i_pow(-(k as i64));
    let k_scaled = unit.scale(&BigRational::from_integer(binom.clone()));
    Coefficient::monomial(Monomial { hbar: k as i32, ..Monomial::ONE }).scale(&k_scaled)
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn one() -> Self {
        Self::coefficient(Coefficient::one())
    }

    pub fn coefficient(c: Coefficient) -> Self {
        Self::term(Key::ONE, c)
    }

    pub fn term(key: Key, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        NormalForm { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: Key) -> Option<&Coefficient> {
        self.terms.get(&key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Coefficient)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: Key, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, k: &Coefficient) -> NormalForm {
        let mut out = NormalForm::zero();
        for (key, c) in &self.terms {
            out.add_term(*key, &c.mul(k));
        }
        out
    }

    fn grouped(&self) -> BTreeMap<(u32, u32), MomentumPart> {
        let mut out: BTreeMap<(u32, u32), MomentumPart> = BTreeMap::new();
        for (key, c) in &self.terms {
            let slot = out.entry((key.x, key.t)).or_default();
            if key.h {
                slot.g = c.clone();
            } else {
                slot.f = c.clone();
            }
        }
        out
    }

    fn from_grouped(groups: BTreeMap<(u32, u32), MomentumPart>) -> NormalForm {
        let mut terms = BTreeMap::new();
        for ((x, t), part) in groups {
            if !part.f.is_zero() {
                terms.insert(Key { x, t, h: false }, part.f);
            }
            if !part.g.is_zero() {
                terms.insert(Key { x, t, h: true }, part.g);
            }
        }
        NormalForm { terms }
    }

    /// Algebra product; reorders every cross term into canonical order.
    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let lhs = self.grouped();
        let rhs = other.grouped();
        let max_x = rhs.keys().map(|(x, _)| *x).max().unwrap_or(0) as usize;
        let mut acc: BTreeMap<(u32, u32), MomentumPart> = BTreeMap::new();
        for ((a, b), left) in &lhs {
            // F x^n = sum_k C(n,k) x^(n-k) (-i hbar)^k F^(k)
            let mut derivs = vec![left.clone()];
            for k in 1..=max_x {
                let next = derivs[k - 1].d_dp();
                if next.is_zero() {
                    break;
                }
                derivs.push(next);
            }
            for ((a2, b2), right) in &rhs {
                let mut binom = BigInt::one();
                for (k, deriv) in derivs.iter().enumerate().take(*a2 as usize + 1) {
                    let part = deriv.mul(right).scale(&hbar_i(k as u32, &binom));
                    let slot = acc.entry((a + a2 - k as u32, b + b2)).or_default();
                    *slot = slot.add(&part);
                    binom = binom * BigInt::from(*a2 as usize - k) / BigInt::from(k + 1);
                }
            }
        }
        NormalForm::from_grouped(acc)
    }

    pub fn pow(&self, n: u32) -> NormalForm {
        let mut result = NormalForm::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn atom(a: Atom) -> NormalForm {
        let mono = |m: Monomial| NormalForm::coefficient(Coefficient::monomial(m));
        match a {
            Atom::X => NormalForm::term(Key { x: 1, t: 0, h: false }, Coefficient::one()),
            Atom::T => NormalForm::term(Key { x: 0, t: 1, h: false }, Coefficient::one()),
            Atom::H => NormalForm::term(Key { x: 0, t: 0, h: true }, Coefficient::one()),
            Atom::P => mono(Monomial::p(1)),
            Atom::Hbar => mono(Monomial { hbar: 1, ..Monomial::ONE }),
            Atom::C => mono(Monomial { c: 1, ..Monomial::ONE }),
            Atom::M => mono(Monomial { m: 1, ..Monomial::ONE }),
            Atom::I => NormalForm::coefficient(Coefficient::constant(GaussianRational::i())),
        }
    }

    /// `H^-1 = H / (c^2 q)`.
    fn inverse_hamiltonian() -> NormalForm {
        let g = Coefficient::monomial(Monomial { c: -2, ..Monomial::ONE }).div_mass_shell();
        NormalForm::term(Key { x: 0, t: 0, h: true }, g)
    }

    fn atom_pow(a: Atom, n: i32) -> Result<NormalForm, AlgebraError> {
        let mono = |m: Monomial| Ok(NormalForm::coefficient(Coefficient::monomial(m)));
        match a {
            Atom::P => mono(Monomial::p(n)),
            Atom::Hbar => mono(Monomial { hbar: n, ..Monomial::ONE }),
            Atom::C => mono(Monomial { c: n, ..Monomial::ONE }),
            Atom::M => mono(Monomial { m: n, ..Monomial::ONE }),
            Atom::I => Ok(NormalForm::coefficient(Coefficient::constant(
                GaussianRational::i_pow(n as i64),
            ))),
            Atom::H if n < 0 => Ok(Self::inverse_hamiltonian().pow(n.unsigned_abs())),
            _ if n < 0 => Err(AlgebraError::NonInvertible(a.name().into())),
            _ => Ok(Self::atom(a).pow(n as u32)),
        }
    }

    /// The H-free, x-free, t-free part, if that is all there is.
    pub fn as_coefficient(&self) -> Option<&Coefficient> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Key::ONE),
            _ => None,
        }
    }
}

/// Reduces an expression to its normal form.
pub fn normal_form(e: &OperatorExpr) -> Result<NormalForm, AlgebraError> {
    Ok(match e {
        OperatorExpr::Atom(a) => NormalForm::atom(*a),
        OperatorExpr::Rational(r) => {
            NormalForm::coefficient(Coefficient::constant(GaussianRational::real(r.clone())))
        }
        OperatorExpr::Sum(terms) => {
            let mut acc = NormalForm::zero();
            for t in terms {
                acc = acc.add(&normal_form(t)?);
            }
            acc
        }
        OperatorExpr::Product(factors) => {
            let mut acc = NormalForm::one();
            for f in factors {
                acc = acc.mul(&normal_form(f)?);
                if acc.is_zero() {
                    break;
                }
            }
            acc
        }
        OperatorExpr::Power(base, n) => match base.as_ref() {
            OperatorExpr::Atom(a) => NormalForm::atom_pow(*a, *n)?,
            OperatorExpr::Rational(r) if *n < 0 => {
                if r.is_zero() {
                    return Err(AlgebraError::NonInvertible("0".into()));
                }
                let inv = r.recip();
                let k = num_traits::pow(inv, n.unsigned_abs() as usize);
                NormalForm::coefficient(Coefficient::constant(GaussianRational::real(k)))
            }
            other if *n < 0 => return Err(AlgebraError::NonInvertible(other.to_string())),
            other => normal_form(other)?.pow(*n as u32),
        },
    })
}

pub fn add(a: &NormalForm, b: &NormalForm) -> NormalForm {
    a.add(b)
}

pub fn mul(a: &NormalForm, b: &NormalForm) -> NormalForm {
    a.mul(b)
}

/// `[a, b] = ab - ba`, reduced.
pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Result<NormalForm, AlgebraError> {
    let na = normal_form(a)?;
    let nb = normal_form(b)?;
    Ok(na.mul(&nb).sub(&nb.mul(&na)))
}

/// Quantisation of a classical product: `1/2 (ab + ba)`, left unreduced.
pub fn symmetrize(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    OperatorExpr::Product(vec![
        OperatorExpr::ratio(1, 2),
        OperatorExpr::Sum(vec![
            OperatorExpr::Product(vec![a.clone(), b.clone()]),
            OperatorExpr::Product(vec![b.clone(), a.clone()]),
        ]),
    ])
}

pub fn is_zero(a: &NormalForm) -> bool {
    a.is_zero()
}

impl NormalForm {
    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }
}

impl Add for &NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: &NormalForm) -> NormalForm {
        NormalForm::add(self, rhs)
    }
}

impl Sub for &NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: &NormalForm) -> NormalForm {
        NormalForm::sub(self, rhs)
    }
}

impl Mul for &NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: &NormalForm) -> NormalForm {
        NormalForm::mul(self, rhs)
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        NormalForm::neg(self)
    }
}

fn push_power(out: &mut Vec<String>, name: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}

fn write_rational(s: &mut String, r: &BigRational) {
    if r.denom().is_one() {
        write!(s, "{}", r.numer()).unwrap();
    } else {
        write!(s, "{}/{}", r.numer(), r.denom()).unwrap();
    }
}

/// Printed in the input grammar. Terms are ordered by descending key; inside
/// a term the factor order is: rational, `i`, `hbar`, `c`, `m`, `x`, `t`,
/// `p`, `H`. Denominators `(p^2 + m^2 c^2)^k` are shown as `c^(2k) H^(-2k)`,
/// which is the same operator.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, coeff) in self.terms.iter().rev() {
            let k = coeff.qpow() as i64;
            for (mono, g) in coeff.numer().grlex_terms() {
                for (part, imaginary) in [(&g.re, false), (&g.im, true)] {
                    if part.is_zero() {
                        continue;
                    }
                    let mut factors = Vec::new();
                    if imaginary {
                        factors.push("i".to_string());
                    }
                    push_power(&mut factors, "hbar", mono.hbar as i64);
                    push_power(&mut factors, "c", mono.c as i64 + 2 * k);
                    push_power(&mut factors, "m", mono.m as i64);
                    push_power(&mut factors, "x", key.x as i64);
                    push_power(&mut factors, "t", key.t as i64);
                    push_power(&mut factors, "p", mono.p as i64);
                    push_power(&mut factors, "H", key.h as i64 - 2 * k);

                    let mut text = String::new();
                    let mag = part.abs();
                    if !mag.is_one() || factors.is_empty() {
                        write_rational(&mut text, &mag);
                        if !factors.is_empty() {
                            text.push('*');
                        }
                    }
                    text.push_str(&factors.join("*"));

                    let negative = part.is_negative();
                    match (first, negative) {
                        (true, false) => {}
                        (true, true) => f.write_char('-')?,
                        (false, false) => f.write_str(" + ")?,
                        (false, true) => f.write_str(" - ")?,
                    }
                    f.write_str(&text)?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}
