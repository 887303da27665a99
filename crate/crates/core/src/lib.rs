//! Discrete logarithms in `F_{q^k}` through an elliptic basis.
//!
//! The field is represented by a point `F = (theta, tau)` on `y^2 = x^3 + ax + b`
//! over `F_q` satisfying `pi(F) = F + P_1` for a rational point `P_1` of order `k`.
//! Relations come from pulling polynomials on a three-variable model of the curve
//! back to the curve and comparing divisors; every relation can be checked
//! independently through the evaluation map [`psi`].

pub mod algebra;
pub mod curve;
pub mod divisor;
pub mod basis;
pub mod psi;
pub mod harvest;
pub mod solve;
pub mod cli;
