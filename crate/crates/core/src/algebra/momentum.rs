use super::{Coefficient, Monomial};

/// An element `f + g*H` of the commutative subalgebra generated by `p`, the
/// scalars and `H`, with `H^2 = c^2 q` and `q = p^2 + m^2 c^2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct MomentumPart {
    pub f: Coefficient,
    pub g: Coefficient,
}

const C2: Monomial = Monomial { hbar: 0, c: 2, m: 0, p: 0 };

impl MomentumPart {
    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn add(&self, o: &MomentumPart) -> MomentumPart {
        MomentumPart { f: self.f.add(&o.f), g: self.g.add(&o.g) }
    }

    pub fn mul(&self, o: &MomentumPart) -> MomentumPart {
        let hh = self.g.mul(&o.g).shift(C2).mul_mass_shell();
        MomentumPart {
            f: self.f.mul(&o.f).add(&hh),
            g: self.f.mul(&o.g).add(&self.g.mul(&o.f)),
        }
    }

    pub fn scale(&self, k: &Coefficient) -> MomentumPart {
        MomentumPart { f: self.f.mul(k), g: self.g.mul(k) }
    }

    /// `d/dp`, with `dH/dp = c^2 p / H = (p/q) H`.
    pub fn d_dp(&self) -> MomentumPart {
        let dh = self.g.shift(Monomial::p(1)).div_mass_shell();
        MomentumPart { f: self.f.d_dp(), g: self.g.d_dp().add(&dh) }
    }
}
