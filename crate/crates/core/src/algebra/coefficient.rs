use super::{GaussianRational, Laurent, Monomial};

/// Rational function of the commuting quantities `hbar, c, m, p`.
///
/// Every denominator that the algebra can produce is a Laurent monomial
/// times a power of `q = p^2 + m^2 c^2`; monomials are folded into the
/// numerator, so the value is stored as `numer / q^qpow` with
/// `qpow` minimal (`q` does not divide `numer` when `qpow > 0`). That makes
/// the representation unique and equality structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    numer: Laurent,
    qpow: u32,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(numer: Laurent) -> Self {
        Coefficient { numer, qpow: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn constant(k: GaussianRational) -> Self {
        Self::from_laurent(Laurent::constant(k))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_laurent(Laurent::monomial(m))
    }

    /// `numer / q^qpow`, reduced.
    pub fn new(numer: Laurent, qpow: u32) -> Self {
        let mut c = Coefficient { numer, qpow };
        c.reduce();
        c
    }

    fn reduce(&mut self) {
        if self.numer.is_zero() {
            self.qpow = 0;
            return;
        }
        while self.qpow > 0 {
            match self.numer.div_mass_shell() {
                Some(q) => {
                    self.numer = q;
                    self.qpow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numer(&self) -> &Laurent {
        &self.numer
    }

    /// Power of `p^2 + m^2 c^2` in the denominator.
    pub fn qpow(&self) -> u32 {
        self.qpow
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    fn lift(&self, to: u32) -> Laurent {
        let q = Laurent::mass_shell();
        let mut n = self.numer.clone();
        for _ in self.qpow..to {
            n = n.mul(&q);
        }
        n
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        let k = self.qpow.max(other.qpow);
        Coefficient::new(self.lift(k).add(&other.lift(k)), k)
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        let k = self.qpow.max(other.qpow);
        Coefficient::new(self.lift(k).sub(&other.lift(k)), k)
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient { numer: self.numer.neg(), qpow: self.qpow }
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        if self.is_zero() || other.is_zero() {
            return Coefficient::zero();
        }
        Coefficient::new(self.numer.mul(&other.numer), self.qpow + other.qpow)
    }

    pub fn scale(&self, k: &GaussianRational) -> Coefficient {
        Coefficient::new(self.numer.scale(k), self.qpow)
    }

    pub fn shift(&self, m: Monomial) -> Coefficient {
        Coefficient { numer: self.numer.shift(m), qpow: self.qpow }
    }

    /// Multiplies by `q = p^2 + m^2 c^2`.
    pub fn mul_mass_shell(&self) -> Coefficient {
        if self.is_zero() {
            return Coefficient::zero();
        }
        if self.qpow > 0 {
            Coefficient { numer: self.numer.clone(), qpow: self.qpow - 1 }
        } else {
            Coefficient::from_laurent(self.numer.mul(&Laurent::mass_shell()))
        }
    }

    /// Divides by `q = p^2 + m^2 c^2`.
    pub fn div_mass_shell(&self) -> Coefficient {
        Coefficient::new(self.numer.clone(), self.qpow + 1)
    }

    /// Formal `d/dp`, quotient rule through `dq/dp = 2p`.
    pub fn d_dp(&self) -> Coefficient {
        if self.qpow == 0 {
            return Coefficient::from_laurent(self.numer.d_dp());
        }
        let k = GaussianRational::from_int(2 * self.qpow as i64);
        let lhs = self.numer.d_dp().mul(&Laurent::mass_shell());
        let rhs = self.numer.shift(Monomial::p(1)).scale(&k);
        Coefficient::new(lhs.sub(&rhs), self.qpow + 1)
    }
}
