//! Exact arithmetic for A-elliptic multiple zeta values.
//!
//! The crate has two lanes:
//!
//! - an exact lane built on arbitrary-precision rationals: Laurent polynomials
//!   in the symbol `T` (which stands for `2*pi*i`), truncated power series in
//!   `q`, dense rational linear algebra, Eisenstein series, the differential
//!   equation for elliptic multiple zeta values and the q-expansions, relation
//!   checks and rank/dimension tables derived from it, the Fay-shuffle spaces
//!   `FSh_2(N)` and `W_N`, and the binomial determinant machinery;
//! - a floating-point lane ([`numeric`]) that evaluates theta and Kronecker
//!   series on the upper half-plane, computes iterated integrals along the
//!   real cycle of a once-punctured torus directly, and cross-validates them
//!   against the exact q-expansions.
//!
//! The series and matrix containers are generic over the scalar type through
//! [`scalar::Scalar`] / [`scalar::FieldScalar`]; the crate root pins the
//! concrete exact instantiations used everywhere:
//!
//! - [`Rational`]: arbitrary-precision rational numbers,
//! - [`TPoly`]: Laurent polynomials in `T` with [`Rational`] coefficients,
//! - [`QSeries`]: truncated `q`-series with [`TPoly`] coefficients,
//! - [`RatMatrix`]: dense matrices over [`Rational`].
//!
//! ```
//! use emzv::emzv::{emzv_qexpansion, MultiIndex};
//! use num_traits::Zero;
//!
//! // the value named by (0,3), exactly, to order 5
//! let series = emzv_qexpansion(&MultiIndex::new(vec![0, 3]), 5).unwrap();
//! assert!(series.constant().known().unwrap().is_zero());
//! assert_eq!(series.qpart().coeff(1).to_string(), "-1*T^2");
//! assert_eq!(series.qpart().coeff(2).to_string(), "-9/2*T^2");
//! ```

pub mod combinat;
pub mod eisenstein;
pub mod emzv;
pub mod error;
pub mod fayshuffle;
pub mod laurent;
pub mod linind;
pub mod matrix;
pub mod numeric;
pub mod scalar;
pub mod series;
pub mod verify;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Laurent polynomial in the symbol `T = 2*pi*i` over [`Rational`].
pub type TPoly = laurent::LaurentPoly<Rational>;

/// Truncated power series in `q` with [`TPoly`] coefficients.
pub type QSeries = series::PowerSeries<TPoly>;

/// Dense matrix over [`Rational`].
pub type RatMatrix = matrix::Matrix<Rational>;

pub use error::Error;

/// Shorthand for `Rational::new(num, den)`; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(num.into(), den.into())
}

/// Shorthand for the integer rational `n/1`.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(num.into())
}
