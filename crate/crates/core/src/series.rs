//! Truncated power series over a generic coefficient scalar.
//!
//! A series keeps exactly the coefficients of `q^0 ... q^M` where `M` is its
//! order. Truncation is always explicit: binary operations combine at the
//! minimum of the two orders and every constructor takes the order as an
//! argument.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> PowerSeries<C> {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// The constant series `c + 0*q + ...` of the given order.
    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// Build from the full coefficient vector `q^0 ..= q^len-1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least q^0");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Copy truncated to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation cannot extend a series");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    fn min_order(&self, rhs: &Self) -> usize {
        self.order().min(rhs.order())
    }
}

impl<C: Scalar> Add for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn add(self, rhs: &PowerSeries<C>) -> PowerSeries<C> {
        let m = self.min_order(rhs);
        PowerSeries {
            coeffs: (0..=m)
                .map(|n| self.coeffs[n].clone() + rhs.coeffs[n].clone())
                .collect(),
        }
    }
}

impl<C: Scalar> Sub for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn sub(self, rhs: &PowerSeries<C>) -> PowerSeries<C> {
        let m = self.min_order(rhs);
        PowerSeries {
            coeffs: (0..=m)
                .map(|n| self.coeffs[n].clone() - rhs.coeffs[n].clone())
                .collect(),
        }
    }
}

impl<C: Scalar> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Truncated Cauchy product at the minimum of the two orders.
impl<C: Scalar> Mul for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn mul(self, rhs: &PowerSeries<C>) -> PowerSeries<C> {
        let m = self.min_order(rhs);
        let mut coeffs = vec![C::zero(); m + 1];
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[i].clone() * rhs.coeffs[j].clone();
                coeffs[i + j] = std::mem::replace(&mut coeffs[i + j], C::zero()) + term;
            }
        }
        PowerSeries { coeffs }
    }
}

/// Operations tied to `q = exp(2*pi*i*tau)`, for series whose coefficients
/// are Laurent polynomials in `T = 2*pi*i` over the rationals.
impl PowerSeries<LaurentPoly<BigRational>> {
    /// Apply `2*pi*i * d/dtau`: the coefficient of `q^n` is multiplied by
    /// `n * T^2`.
    pub fn tau_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    LaurentPoly::zero()
                } else {
                    c.shift(2)
                        .scale(&BigRational::from_integer((n as i64).into()))
                }
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Invert [`Self::tau_derivative`]: divide the coefficient of `q^n` by
    /// `n * T^2`. Fails unless the constant term is exactly zero, which is
    /// the signal that the integrand cannot integrate to a pure q-series.
    pub fn integrate_tau(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    LaurentPoly::zero()
                } else {
                    c.shift(-2).div_int(n as i64)
                }
            })
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Smallest and largest `T`-exponent appearing in any coefficient.
    pub fn t_exp_range(&self) -> Option<(i32, i32)> {
        let mut range: Option<(i32, i32)> = None;
        for c in &self.coeffs {
            if let Some((lo, hi)) = c.exp_range() {
                range = Some(match range {
                    None => (lo, hi),
                    Some((a, b)) => (a.min(lo), b.max(hi)),
                });
            }
        }
        range
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*q^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use crate::{rat_int, QSeries, TPoly};

    fn t_monomial_series(entries: &[(usize, i32, i64)], order: usize) -> QSeries {
        let mut s = QSeries::zero(order);
        for &(n, e, c) in entries {
            s.set_coeff(n, TPoly::monomial(e, rat_int(c)));
        }
        s
    }

    #[test]
    fn difference_of_squares() {
        // (1 + q)(1 - q) at order 2 is 1 - q^2
        let a = t_monomial_series(&[(0, 0, 1), (1, 0, 1)], 2);
        let b = t_monomial_series(&[(0, 0, 1), (1, 0, -1)], 2);
        let expected = t_monomial_series(&[(0, 0, 1), (2, 0, -1)], 2);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let a = t_monomial_series(&[(0, 2, 3), (2, -1, 5)], 4);
        assert_eq!(&a * &QSeries::one(4), a);
    }

    #[test]
    fn monomial_product_truncates() {
        // (T q) * (T q) at order 3 is T^2 q^2
        let a = t_monomial_series(&[(1, 1, 1)], 3);
        let expected = t_monomial_series(&[(2, 2, 1)], 3);
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn combine_at_minimum_order() {
        let a = QSeries::one(5);
        let b = QSeries::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn integrate_tau_examples() {
        // T^4 q integrates to T^2 q; verified by applying the forward
        // derivative to the result.
        let s = t_monomial_series(&[(1, 4, 1)], 3);
        let integrated = s.integrate_tau().unwrap();
        assert_eq!(integrated, t_monomial_series(&[(1, 2, 1)], 3));
        assert_eq!(integrated.tau_derivative(), s);

        assert!(QSeries::zero(2).integrate_tau().unwrap().is_zero());

        // T^4 (q + 2 q^2) integrates to T^2 (q + q^2).
        let s = t_monomial_series(&[(1, 4, 1), (2, 4, 2)], 4);
        let integrated = s.integrate_tau().unwrap();
        assert_eq!(integrated, t_monomial_series(&[(1, 2, 1), (2, 2, 1)], 4));
        assert_eq!(integrated.tau_derivative(), s);
    }

    #[test]
    fn integrate_tau_rejects_constant_term() {
        let s = QSeries::one(2);
        assert_eq!(s.integrate_tau(), Err(crate::Error::NonzeroConstantTerm));
    }

    #[test]
    fn integration_inverts_derivative_roundtrip() {
        let s = t_monomial_series(&[(1, 3, 7), (2, -2, 5), (4, 0, -3)], 5);
        assert_eq!(s.tau_derivative().integrate_tau().unwrap(), s);
    }

    mod ring_laws {
        use super::*;
        use crate::rat;
        use proptest::prelude::*;

        fn arb_series() -> impl Strategy<Value = QSeries> {
            proptest::collection::vec((-2i32..=2, -9i64..=9, 1i64..=4), 4).prop_map(|entries| {
                let coeffs = entries
                    .into_iter()
                    .map(|(e, p, q)| TPoly::monomial(e, rat(p, q)))
                    .collect();
                QSeries::from_coeffs(coeffs)
            })
        }

        proptest! {
            #[test]
            fn addition_is_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            }

            #[test]
            fn multiplication_is_commutative(a in arb_series(), b in arb_series()) {
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn multiplication_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
