//! Laurent polynomials in one symbol with exact coefficient arithmetic.
//!
//! The exponent may be negative; for the crate's main instantiation
//! [`crate::TPoly`] the symbol is `T = 2*pi*i` and the exponent records the
//! power of `2*pi*i` an exact coefficient carries. Integration in `tau`
//! produces negative relative exponents, which is why a plain polynomial
//! does not suffice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Scalar;

/// Laurent polynomial `sum_e c_e * X^e` with exponents in `i32`.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<R> {
    terms: BTreeMap<i32, R>,
}

impl<R: Scalar> LaurentPoly<R> {
    pub fn new() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: i32, coeff: R) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn constant(coeff: R) -> Self {
        Self::monomial(0, coeff)
    }

    pub fn from_terms(entries: impl IntoIterator<Item = (i32, R)>) -> Self {
        let mut poly = Self::new();
        for (exp, coeff) in entries {
            poly.add_term(exp, coeff);
        }
        poly
    }

    pub fn add_term(&mut self, exp: i32, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, coeff);
            }
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
        }
    }

    /// Coefficient of `X^exp` (zero if absent).
    pub fn coeff(&self, exp: i32) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest and largest exponent, if nonzero.
    pub fn exp_range(&self) -> Option<(i32, i32)> {
        let min = *self.terms.keys().next()?;
        let max = *self.terms.keys().next_back()?;
        Some((min, max))
    }

    /// Multiply by `X^delta`.
    pub fn shift(&self, delta: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + delta, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &R) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone() * factor.clone());
        }
        out
    }
}

impl<R: Scalar> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Scalar> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Scalar> One for LaurentPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Scalar> Add for LaurentPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Scalar> Sub for LaurentPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Scalar> Neg for LaurentPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Scalar> Mul for LaurentPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Scalar> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = LaurentPoly::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl LaurentPoly<BigRational> {
    /// Divide every coefficient by the nonzero integer `n`.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        let factor = BigRational::new(1.into(), n.into());
        self.scale(&factor)
    }

    /// Evaluate at a complex value of the symbol.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let c = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            acc += c * x.powi(*e);
        }
        acc
    }
}

impl<R: Scalar + fmt::Display> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*T^{e}")?;
            }
        }
        Ok(())
    }
}
