//! Exact coefficient arithmetic in `s = q^{1/2}`.
//!
//! [`HalfPowerLaurent`] holds Laurent polynomials in `s`; [`RationalFunctionQ`]
//! holds reduced quotients of them. Every power of `q` in the crate is
//! expressed through `s`, so half-integral exponents are exact.

mod accum;
mod gaussian;
mod laurent;
mod qseries;
mod ratfunc;
mod zpoly;

#[cfg(test)]
mod proptests;

pub use accum::SharedDenominatorSum;
pub use gaussian::{GaussianRational, GaussianRationalFunction};
pub use laurent::HalfPowerLaurent;
pub use qseries::{gaussian_binomial, pochhammer, PochBase};
pub use ratfunc::RationalFunctionQ;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for a rational constant `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
