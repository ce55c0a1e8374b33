//! The length-two Fay-shuffle space `FSh_2(N)`, its polynomial analogue
//! `W_N`, the pole element, and the Hilbert-series cross-check.
//!
//! `FSh_2(N)` lives inside the space `V'_N` of rational functions
//! `P = sum_{i=0}^{N} c_i X^{i-1} Y^{N-1-i}`, homogeneous of degree `N-2`
//! with at most simple poles along `X = 0` and `Y = 0`. Its defining
//! equations are
//!
//! ```text
//! P(X,Y) + P(X+Y,-Y) + P(-X-Y,X) = 0        (Fay)
//! P(X,Y) + P(Y,X) = 0                        (shuffle)
//! ```
//!
//! The Fay equation is turned into finitely many linear equations by
//! multiplying through by `X*Y*(X+Y)`, which clears every denominator and is
//! generically nonvanishing, so the resulting polynomial identity in degree
//! `N+1` is equivalent to the rational one.

use num_traits::{One, Zero};

use crate::combinat::binom;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::{RatMatrix, Rational};

/// Element of `V'_N` in the coefficient basis `c_0..c_N`,
/// `P = sum_i c_i X^{i-1} Y^{N-1-i}`.
#[derive(Clone, PartialEq, Debug)]
pub struct HomogLaurent {
    weight: u32,
    coeffs: Vec<Rational>,
}

impl HomogLaurent {
    pub fn new(weight: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            weight as usize + 1,
            "V'_N has N+1 basis elements"
        );
        HomogLaurent { weight, coeffs }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when the `1/Y` and `1/X` components vanish.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs[self.weight as usize].is_zero()
    }

    /// Evaluate at an exact rational point with `x, y` both nonzero.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        assert!(
            !x.is_zero() && !y.is_zero(),
            "evaluation point on a pole axis"
        );
        let n = self.weight as i64;
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * rational_pow(x, i as i64 - 1) * rational_pow(y, n - 1 - i as i64);
            }
        }
        acc
    }
}

fn rational_pow(x: &Rational, exp: i64) -> Rational {
    let positive = (0..exp.abs()).fold(Rational::one(), |acc, _| acc * x);
    if exp >= 0 {
        positive
    } else {
        Rational::one() / positive
    }
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Rows of the cleared Fay equation: coefficient of `X^a Y^{N+1-a}` in
/// `XY(X+Y) * [P(X,Y) + P(X+Y,-Y) + P(-X-Y,X)]` for `a = 0..N+1`.
fn fay_rows(weight: u32) -> Vec<Vec<Rational>> {
    let n = weight as usize;
    let mut rows = vec![vec![Rational::zero(); n + 1]; n + 2];
    for i in 0..=n {
        // XY(X+Y) * X^{i-1} Y^{N-1-i} = X^{i+1} Y^{N-i} + X^i Y^{N-i+1}
        rows[i + 1][i] += Rational::one();
        rows[i][i] += Rational::one();
        // XY(X+Y) * (X+Y)^{i-1} (-Y)^{N-1-i} = (-1)^{N-1-i} X Y^{N-i} (X+Y)^i
        let s2 = sign(weight as i64 - 1 - i as i64);
        for j in 0..=i {
            rows[j + 1][i] += s2.clone() * Rational::from_integer(binom(i as i64, j as i64));
        }
        // XY(X+Y) * (-X-Y)^{i-1} X^{N-1-i} = (-1)^{i-1} X^{N-i} Y (X+Y)^i
        let s3 = sign(i as i64 - 1);
        for j in 0..=i {
            rows[n - i + j][i] += s3.clone() * Rational::from_integer(binom(i as i64, j as i64));
        }
    }
    rows
}

/// Rows of the shuffle equation `c_i + c_{N-i} = 0`.
fn shuffle_rows(weight: u32) -> Vec<Vec<Rational>> {
    let n = weight as usize;
    let mut rows = vec![vec![Rational::zero(); n + 1]; n + 1];
    for i in 0..=n {
        rows[i][i] += Rational::one();
        rows[i][n - i] += Rational::one();
    }
    rows
}

/// The linear system over the `N+1` coefficients of `V'_N` whose kernel is
/// `FSh_2(N)`. Shuffle rows come first so elimination meets the cheap
/// entries early.
pub fn fsh_system(weight: u32) -> RatMatrix {
    let mut rows = shuffle_rows(weight);
    rows.extend(fay_rows(weight));
    Matrix::from_rows(rows)
}

pub fn fsh_dim(weight: u32) -> usize {
    fsh_system(weight).kernel_dim()
}

/// Kernel basis in reduced echelon form.
pub fn fsh_basis(weight: u32) -> Vec<HomogLaurent> {
    fsh_system(weight)
        .kernel()
        .into_iter()
        .map(|coeffs| HomogLaurent::new(weight, coeffs))
        .collect()
}

/// Evaluate both defining equations on an element, exactly (in the cleared
/// polynomial form, which is equivalent).
pub fn fsh_check(p: &HomogLaurent) -> bool {
    fsh_system(p.weight())
        .mul_vec(p.coeffs())
        .iter()
        .all(Rational::is_zero)
}

/// Dimension of the polynomial part `FSh_2(N)` intersected with the
/// degree-`N-2` polynomials, obtained by additionally forcing the two pole
/// coefficients to zero.
pub fn fsh_polynomial_dim(weight: u32) -> usize {
    let n = weight as usize;
    let mut rows = shuffle_rows(weight);
    rows.extend(fay_rows(weight));
    let mut pole0 = vec![Rational::zero(); n + 1];
    pole0[0] = Rational::one();
    let mut pole_n = vec![Rational::zero(); n + 1];
    pole_n[n] = Rational::one();
    rows.push(pole0);
    rows.push(pole_n);
    Matrix::from_rows(rows).kernel_dim()
}

/// The pole element of odd weight:
/// `X^{N-1}/Y - Y^{N-1}/X - (X^{N-1} - Y^{N-1})/(X+Y)`,
/// expanded into the `V'_N` basis. The third quotient is a polynomial since
/// `N-1` is even.
pub fn ptilde(weight: u32) -> Result<HomogLaurent, Error> {
    if weight.is_multiple_of(2) {
        return Err(Error::EvenWeight(weight));
    }
    let n = weight as usize;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    coeffs[0] = -Rational::one();
    // (X^{N-1} - Y^{N-1}) / (X+Y) = sum_{j=0}^{N-2} (-1)^j X^{N-2-j} Y^j,
    // and X^{N-2-j} Y^j sits at basis position i = N-1-j. Empty at N = 1.
    for j in 0..n.saturating_sub(1) {
        let i = n - 1 - j;
        coeffs[i] -= sign(j as i64);
    }
    Ok(HomogLaurent::new(weight, coeffs))
}

/// Homogeneous polynomial of degree `N` in the basis `X^a Y^{N-a}`,
/// `a = 0..N`; the carrier of the `W_N` systems.
#[derive(Clone, PartialEq, Debug)]
pub struct HomogPoly {
    degree: u32,
    coeffs: Vec<Rational>,
}

impl HomogPoly {
    pub fn new(degree: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        HomogPoly { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let n = self.degree as i64;
        let mut acc = Rational::zero();
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * rational_pow(x, a as i64) * rational_pow(y, n - a as i64);
            }
        }
        acc
    }
}

/// The polynomial analogue: kernel dimension of
/// `P(X,Y) + P(Y,X) = 0`, `P(X,Y) + P(Y,-X-Y) + P(-X-Y,X) = 0`
/// on homogeneous polynomials `P = sum_a d_a X^a Y^{N-a}` of degree `N`.
pub fn w_system(weight: u32) -> RatMatrix {
    let n = weight as usize;
    let mut rows = vec![vec![Rational::zero(); n + 1]; 2 * (n + 1)];
    for a in 0..=n {
        // shuffle
        rows[a][a] += Rational::one();
        rows[a][n - a] += Rational::one();
        // fay: P(X,Y) term
        rows[n + 1 + a][a] += Rational::one();
        // P(Y,-X-Y) = d_a Y^a (-1)^{N-a} (X+Y)^{N-a}
        let s2 = sign(weight as i64 - a as i64);
        for j in 0..=n - a {
            rows[n + 1 + j][a] +=
                s2.clone() * Rational::from_integer(binom((n - a) as i64, j as i64));
        }
        // P(-X-Y,X) = d_a (-1)^a (X+Y)^a X^{N-a}
        let s3 = sign(a as i64);
        for j in 0..=a {
            rows[n + 1 + (n - a + j)][a] +=
                s3.clone() * Rational::from_integer(binom(a as i64, j as i64));
        }
    }
    Matrix::from_rows(rows)
}

pub fn w_dim(weight: u32) -> usize {
    w_system(weight).kernel_dim()
}

/// Kernel basis of the polynomial system, in reduced echelon form.
pub fn w_basis(weight: u32) -> Vec<HomogPoly> {
    w_system(weight)
        .kernel()
        .into_iter()
        .map(|coeffs| HomogPoly::new(weight, coeffs))
        .collect()
}

/// Coefficients of `t / ((1-t)^2 (1+t+t^2))` up to `t^max_order`, by exact
/// power series division over the rationals. The coefficient of `t^N` equals
/// `dim W_N`.
pub fn hilbert_wn(max_order: usize) -> Vec<u64> {
    // denominator (1-t)^2 (1+t+t^2) = 1 - t - t^3 + t^4
    let den = [1i64, -1, 0, -1, 1];
    let mut quotient: Vec<Rational> = Vec::with_capacity(max_order + 1);
    for k in 0..=max_order {
        let mut acc = if k == 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
        for i in 1..=k.min(4) {
            acc -= Rational::from_integer(den[i].into()) * quotient[k - i].clone();
        }
        quotient.push(acc);
    }
    quotient
        .into_iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "Hilbert series coefficients must be integers"
            );
            let (num, _) = c.into_raw();
            u64::try_from(num).expect("nonnegative coefficient")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn weight_zero_is_trivial() {
        // The single basis element X^{-1} Y^{-1} is symmetric, so shuffle
        // forces it to zero.
        assert_eq!(fsh_dim(0), 0);
    }

    #[test]
    fn weight_one_kernel_is_the_pole_line() {
        assert_eq!(fsh_dim(1), 1);
        let basis = fsh_basis(1);
        assert_eq!(basis.len(), 1);
        // 1/X - 1/Y up to scale: coefficients (c_0, c_1) with c_0 = -c_1.
        let c = basis[0].coeffs();
        assert_eq!(c[0], -c[1].clone());
        assert!(!c[0].is_zero());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(fsh_dim(4), 0);
        assert_eq!(fsh_dim(3), 2);
        assert_eq!(fsh_dim(11), 4);
    }

    #[test]
    fn kernel_elements_satisfy_reflection() {
        // P(X,Y) = P(-Y,-X), i.e. c_j = (-1)^N c_{N-j}.
        for weight in [1u32, 3, 5, 7, 9] {
            for b in fsh_basis(weight) {
                let c = b.coeffs();
                let n = weight as usize;
                for j in 0..=n {
                    let expected = c[n - j].clone() * sign(weight as i64);
                    assert_eq!(c[j], expected, "weight {weight}, j={j}");
                }
            }
        }
    }

    #[test]
    fn ptilde_is_in_the_fay_shuffle_space() {
        for weight in [1u32, 3, 5, 7, 11] {
            let p = ptilde(weight).unwrap();
            assert!(fsh_check(&p), "weight {weight}");
            assert!(!p.is_polynomial());
        }
        assert!(matches!(ptilde(4), Err(Error::EvenWeight(4))));
    }

    #[test]
    fn symmetric_junk_fails_fsh_check() {
        // All-ones coefficients violate antisymmetry.
        let weight = 3;
        let junk = HomogLaurent::new(weight, vec![rat_int(1); 4]);
        assert!(!fsh_check(&junk));
    }

    #[test]
    fn pole_decomposition_in_odd_weight() {
        // dim FSh_2(N) = dim of its polynomial part + 1 for odd N.
        for weight in [1u32, 3, 5, 7, 9, 11] {
            assert_eq!(
                fsh_dim(weight),
                fsh_polynomial_dim(weight) + 1,
                "weight {weight}"
            );
        }
    }

    #[test]
    fn kernel_elements_vanish_at_random_rational_points() {
        // Independent of the coefficient-collection machinery: evaluate the
        // defining equations directly in exact rational arithmetic.
        let points = [
            (rat(2, 3), rat(5, 7)),
            (rat(-3, 5), rat(1, 4)),
            (rat(7, 2), rat(-2, 9)),
        ];
        for weight in [1u32, 3, 5, 7, 9, 13] {
            let mut elements = fsh_basis(weight);
            elements.push(ptilde(weight).unwrap());
            for p in &elements {
                for (x, y) in &points {
                    let sum = x.clone() + y.clone();
                    assert!(!sum.is_zero());
                    let fay = p.eval(x, y) + p.eval(&sum, &-y.clone()) + p.eval(&-sum.clone(), x);
                    assert!(fay.is_zero(), "weight {weight} at ({x},{y})");
                    let shuffle = p.eval(x, y) + p.eval(y, x);
                    assert!(shuffle.is_zero(), "weight {weight} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn w_basis_elements_vanish_at_random_rational_points() {
        let points = [(rat(2, 3), rat(5, 7)), (rat(-3, 5), rat(1, 4))];
        for weight in [1u32, 4, 7, 10] {
            for p in w_basis(weight) {
                for (x, y) in &points {
                    let sum = x.clone() + y.clone();
                    let fay = p.eval(x, y) + p.eval(y, &-sum.clone()) + p.eval(&-sum.clone(), x);
                    assert!(fay.is_zero(), "weight {weight} at ({x},{y})");
                    let shuffle = p.eval(x, y) + p.eval(y, x);
                    assert!(shuffle.is_zero(), "weight {weight} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn w_dim_examples() {
        assert_eq!(w_dim(0), 0);
        assert_eq!(w_dim(1), 1);
        assert_eq!(w_dim(7), 3);
    }

    #[test]
    fn w1_kernel_is_x_minus_y() {
        let kernel = w_system(1).kernel();
        assert_eq!(kernel.len(), 1);
        // d_0 = -d_1: P = X - Y up to scale (basis is X^a Y^{N-a}).
        assert_eq!(kernel[0][0], -kernel[0][1].clone());
    }

    #[test]
    fn hilbert_series_starts_with_zero() {
        let coeffs = hilbert_wn(8);
        assert_eq!(coeffs[0], 0);
        assert_eq!(coeffs[1], 1);
    }

    #[test]
    fn hilbert_matches_w_dim_small() {
        let coeffs = hilbert_wn(12);
        for weight in 0..=12u32 {
            assert_eq!(
                coeffs[weight as usize] as usize,
                w_dim(weight),
                "weight {weight}"
            );
        }
    }

    #[test]
    fn polynomial_part_matches_w_of_shifted_weight() {
        for weight in [3u32, 5, 7, 9, 11, 13] {
            assert_eq!(
                fsh_polynomial_dim(weight),
                w_dim(weight - 2),
                "weight {weight}"
            );
        }
    }
}
