//! Exact reduction of operator expressions to canonical normal form.
//!
//! The algebra is generated by `x`, `p`, `H`, the central time `t` and the
//! commuting scalars `hbar, c, m, i`, subject to
//!
//! * `[x, p] = i*hbar`,
//! * `H^2 = p^2 c^2 + m^2 c^4` (applied eagerly),
//! * `H` commutes with `p`.
//!
//! Every element has a unique representation
//! `sum x^a t^b (f_ab(p) + g_ab(p) H)` with `f, g` rational functions in
//! `hbar, c, m, p`. Reordering a momentum function past `x` uses
//! `F x = x F - i*hbar dF/dp`, which covers `p x = x p - i hbar` and
//! `H x = x H - i hbar c^2 p H^-1` alike.

mod coefficient;
mod gaussian;
mod laurent;
mod momentum;
mod normal_form;

pub use coefficient::Coefficient;
pub use gaussian::GaussianRational;
pub use laurent::{Laurent, Monomial};
pub use normal_form::{
    add, commutator, is_zero, mul, normal_form, symmetrize, AlgebraError, Key, NormalForm,
};
