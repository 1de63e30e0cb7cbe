//! Exact scalars: Laurent polynomials in `v`, their fractions, and
//! integer polynomials in `q = v²`.

mod comb;
mod laurent;
mod qpoly;
mod ratfrac;

pub use comb::Combination;
pub use laurent::{gauss_binomial, quantum_factorial, quantum_integer, LaurentPoly};
pub use qpoly::{interpolate, IntPolyQ};
pub use ratfrac::{frac_eq, RatFrac};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    Inexact,
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("binomial index {t} out of range for {m}")]
    OutOfRange { m: i64, t: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("interpolation check failed")]
    Interpolation,
}

/// Canonical fraction `num / den`.
pub fn rf_normalize(num: LaurentPoly, den: LaurentPoly) -> Result<RatFrac, RingError> {
    RatFrac::new(num, den)
}
