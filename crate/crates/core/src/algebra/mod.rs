//! Finite fields, polynomials over them, and factorization.

pub mod ext;
pub mod factor;
pub mod field;
pub mod fq;
pub mod linalg;
pub mod poly;
pub mod quad;

pub use ext::{ext_make, ExtElem, ExtFieldDesc};
pub use factor::{poly_factor, roots};
pub use field::Field;
pub use fq::{field_make, field_with_modulus, Fe, FieldDesc, FieldElem};
pub use poly::Poly;
pub use quad::Quad;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below 5")]
    CharTooSmall(u64),
    #[error("extension degree {0} is invalid")]
    BadDegree(usize),
    #[error("field size {0} exceeds the desk-scale cap")]
    TooLarge(u128),
    #[error("modulus must be monic with reduced coefficients")]
    BadModulus,
    #[error("modulus is reducible")]
    Reducible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// `x^(q^times)` for an element of `F_q` or of an extension.
pub fn frobenius<F: Field>(k: &F, x: &F::El, times: usize) -> F::El {
    k.frob_n(x, times)
}
