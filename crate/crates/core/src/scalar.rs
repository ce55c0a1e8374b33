//! Scalar traits the generic containers are parameterized over.

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring scalar. Satisfied by the exact rationals, by floating
/// point types, and by [`crate::laurent::LaurentPoly`] over any of those, so
/// series can nest.
pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Field scalar, as needed by Gaussian elimination.
///
/// `pivot_weight` steers pivot selection: among the nonzero candidates of a
/// column the entry with the smallest weight is chosen. Exact types report
/// their bit size so elimination prefers small entries; floating types invert
/// the magnitude so elimination prefers large pivots.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn pivot_weight(&self) -> u64 {
        1
    }
}

impl FieldScalar for BigRational {
    fn pivot_weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl FieldScalar for f64 {
    fn pivot_weight(&self) -> u64 {
        // Monotone decreasing in |x|: picks the largest pivot.
        (1.0 / self.abs()).to_bits()
    }
}

impl FieldScalar for Complex64 {
    fn pivot_weight(&self) -> u64 {
        (1.0 / self.norm()).to_bits()
    }
}
