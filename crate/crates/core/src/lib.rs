//! Exact verification of operator identities for quantum Lorentz
//! transformations, and numerics for the spacelike propagation amplitude.
//!
//! * [`expr`]: operator expression syntax, parser and printer;
//! * [`algebra`]: canonical normal forms in the algebra generated by
//!   `x, p, H` with `[x, p] = i hbar` and `H^2 = p^2 c^2 + m^2 c^4`;
//! * [`theorems`]: the identity suite and the classical boost;
//! * [`propagator`]: `K0`, the amplitude by two methods, interval thresholds.

pub mod algebra;
pub mod expr;
pub mod propagator;
pub mod theorems;

pub use algebra::{commutator, normal_form, AlgebraError, NormalForm};
pub use expr::{parse, print_expr, Atom, OperatorExpr, ParseError};
pub use num_complex::Complex64;
pub use propagator::{Classification, Criterion, PropagatorError, PropagatorPoint};
pub use theorems::{Check, Status, TheoremError, TheoremRecord};
