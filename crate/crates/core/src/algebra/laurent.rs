use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::GaussianRational;

/// Exponents of `hbar^a c^b m^d p^e`; any sign allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub hbar: i32,
    pub c: i32,
    pub m: i32,
    pub p: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { hbar: 0, c: 0, m: 0, p: 0 };

    pub fn p(e: i32) -> Self {
        Monomial { p: e, ..Self::ONE }
    }

    pub fn degree(&self) -> i64 {
        self.hbar as i64 + self.c as i64 + self.m as i64 + self.p as i64
    }

    fn times(self, o: Monomial) -> Monomial {
        Monomial {
            hbar: self.hbar + o.hbar,
            c: self.c + o.c,
            m: self.m + o.m,
            p: self.p + o.p,
        }
    }

    /// Graded-lex over (hbar, c, m, p): total degree first.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.cmp(self))
    }
}

/// Laurent polynomial in `hbar, c, m, p` with Gaussian-rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::ONE, GaussianRational::from_int(1))
    }

    pub fn term(mono: Monomial, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Laurent { terms }
    }

    pub fn constant(coeff: GaussianRational) -> Self {
        Self::term(Monomial::ONE, coeff)
    }

    pub fn monomial(mono: Monomial) -> Self {
        Self::term(mono, GaussianRational::from_int(1))
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms in graded-lex order, lowest degree first.
    pub fn grlex_terms(&self) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.grlex_cmp(b.0));
        v
    }

    fn add_term(&mut self, mono: Monomial, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(*mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, k: &GaussianRational) -> Laurent {
        if k.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn shift(&self, mono: Monomial) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.times(mono), c.clone())).collect(),
        }
    }

    /// Formal derivative with respect to `p`.
    pub fn d_dp(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            if m.p != 0 {
                let k = BigRational::from_integer(BigInt::from(m.p));
                out.add_term(Monomial { p: m.p - 1, ..*m }, &c.scale(&k));
            }
        }
        out
    }

    /// The mass-shell factor `p^2 + m^2 c^2`.
    pub fn mass_shell() -> Laurent {
        Laurent::monomial(Monomial::p(2)).add(&Laurent::monomial(Monomial {
            c: 2,
            m: 2,
            ..Monomial::ONE
        }))
    }

    /// Exact quotient by `p^2 + m^2 c^2`, or `None` if it does not divide.
    ///
    /// The divisor is monic in `p` with `p`-free lower coefficient, so long
    /// division in `p` over Laurent coefficients in `hbar, c, m` is exact.
    pub fn div_mass_shell(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let low = self.terms.keys().map(|m| m.p).min().unwrap();
        let m2c2 = Monomial { c: 2, m: 2, ..Monomial::ONE };
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some(top) = rem.terms.keys().map(|m| m.p).max() {
            if top - low < 2 {
                return None;
            }
            let lead: Vec<(Monomial, GaussianRational)> = rem
                .terms
                .iter()
                .filter(|(m, _)| m.p == top)
                .map(|(m, c)| (*m, c.clone()))
                .collect();
            for (m, c) in lead {
                let q = Monomial { p: m.p - 2, ..m };
                quot.add_term(q, &c);
                rem.add_term(m, &-&c);
                rem.add_term(q.times(m2c2), &-&c);
            }
        }
        Some(quot)
    }
}
