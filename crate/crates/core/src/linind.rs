//! Linear independence of length-two values: the coefficient matrix of the
//! derivatives in the Eisenstein basis, its rank certificate, and the
//! binomial matrices `M_n = L_n U_n` with `det M_n = (2n+1)!!` behind it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{binom, double_factorial_odd};
use crate::emzv::{derivative_expansion, MultiIndex};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::{RatMatrix, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BinomMatrixKind {
    /// `m_{i,j} = C(2j+1, i) - delta_{2j+1, i}`
    M,
    /// `l_{i,j} = C(j, i-j)`, unipotent lower triangular
    L,
    /// `u_{0,j} = 1`, `u_{i,j} = C(2j-i, i-1) (2j+1)/i` for `0 < i < 2j+1`,
    /// zero otherwise; upper triangular with diagonal `1, 3, 5, ...`
    U,
}

/// The `(n+1) x (n+1)` matrix of the given kind, indices `0 <= i, j <= n`.
pub fn binom_matrix(n: u32, kind: BinomMatrixKind) -> RatMatrix {
    let size = n as usize + 1;
    Matrix::from_fn(size, size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        match kind {
            BinomMatrixKind::M => {
                let delta = if 2 * j + 1 == i {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                Rational::from_integer(binom(2 * j + 1, i) - delta)
            }
            BinomMatrixKind::L => Rational::from_integer(binom(j, i - j)),
            BinomMatrixKind::U => {
                if i == 0 {
                    Rational::one()
                } else if i < 2 * j + 1 {
                    Rational::new(binom(2 * j - i, i - 1) * (2 * j + 1), i.into())
                } else {
                    Rational::zero()
                }
            }
        }
    })
}

/// Determinant of `M_n`, which equals `(2n+1)!!`.
pub fn det_m(n: u32) -> Rational {
    assert!(n >= 1);
    binom_matrix(n, BinomMatrixKind::M)
        .det()
        .expect("square by construction")
}

/// Check `M_n = L_n U_n` entrywise, `det L_n = 1` and `det U_n = (2n+1)!!`,
/// all exactly.
pub fn verify_lu(n: u32) -> bool {
    let m = binom_matrix(n, BinomMatrixKind::M);
    let l = binom_matrix(n, BinomMatrixKind::L);
    let u = binom_matrix(n, BinomMatrixKind::U);
    let product_matches = l.mul(&u) == m;
    let det_l = l.det().expect("square");
    let det_u = u.det().expect("square");
    product_matches
        && det_l == Rational::one()
        && det_u == Rational::from_integer(double_factorial_odd(n))
}

/// Direct exact summation of
/// `sum_{k=0}^{b} C(a-b+k, k) C(a-b+1, a-2b+2k+1) = C(a, b)`.
pub fn verify_binom_identity(a: u32, b: u32) -> bool {
    let (a, b) = (i64::from(a), i64::from(b));
    let mut acc = BigInt::zero();
    for k in 0..=b {
        acc += binom(a - b + k, k) * binom(a - b + 1, a - 2 * b + 2 * k + 1);
    }
    acc == binom(a, b)
}

/// Coefficient matrix of `{2 pi i d/dtau I(r, N-r) : 0 <= r <= k}` in the
/// basis `{G_{N+1-2s} I(2s) : 0 <= s <= (N+1)/2}`, for odd `N` and
/// `k = floor(N/3)`. Built by specializing the generic derivative operator,
/// never hand-coded, so the closed formulas and the generic extraction
/// cross-check each other.
#[derive(Clone, Debug)]
pub struct CMatrix {
    weight: u32,
    k: u32,
    matrix: RatMatrix,
}

impl CMatrix {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of rows minus one.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

pub fn matrix_c(weight: u32) -> Result<CMatrix, Error> {
    if weight.is_multiple_of(2) {
        return Err(Error::EvenWeight(weight));
    }
    let k = weight / 3;
    let cols = (weight as usize + 3) / 2;
    let mut matrix = RatMatrix::zero(k as usize + 1, cols);
    for r in 0..=k {
        let expansion = derivative_expansion(&MultiIndex::new(vec![r, weight - r]));
        for term in expansion.terms() {
            debug_assert_eq!(term.eis_index + term.lower.weight(), weight + 1);
            let lower = term.lower.entries()[0];
            debug_assert_eq!(lower % 2, 0);
            let s = (lower / 2) as usize;
            *matrix.at_mut(r as usize, s) = matrix.at(r as usize, s).clone() + term.coeff.clone();
        }
    }
    Ok(CMatrix { weight, k, matrix })
}

pub fn rank_c(weight: u32) -> Result<usize, Error> {
    Ok(matrix_c(weight)?.matrix().rank())
}

/// True when the left kernel is trivial, i.e. the kernel of the transpose
/// acting on row vectors contains only zero, i.e. the rank equals `k + 1`.
pub fn verify_rank_c(weight: u32) -> Result<bool, Error> {
    let c = matrix_c(weight)?;
    let left_kernel = c.matrix().transpose().kernel();
    Ok(left_kernel.is_empty() && c.matrix().rank() == c.k() as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    #[test]
    fn m1_is_the_expected_two_by_two() {
        let m = binom_matrix(1, BinomMatrixKind::M);
        assert_eq!(m, RatMatrix::from_int_rows(&[&[1, 1], &[0, 3]]));
        assert_eq!(det_m(1), rat_int(3));
    }

    #[test]
    fn det_m_examples() {
        assert_eq!(det_m(2), rat_int(15));
        assert_eq!(det_m(10), Rational::from_integer(double_factorial_odd(10)));
    }

    #[test]
    fn lu_examples() {
        assert!(verify_lu(1));
        assert!(verify_lu(20));
    }

    #[test]
    fn perturbed_u_fails_lu() {
        let m = binom_matrix(3, BinomMatrixKind::M);
        let l = binom_matrix(3, BinomMatrixKind::L);
        let mut u = binom_matrix(3, BinomMatrixKind::U);
        *u.at_mut(1, 1) = u.at(1, 1).clone() + Rational::one();
        assert!(l.mul(&u) != m);
    }

    #[test]
    fn binom_identity_examples() {
        assert!(verify_binom_identity(2, 1));
        assert!(verify_binom_identity(0, 0));
        assert!(verify_binom_identity(60, 29));
    }

    #[test]
    fn c3_first_row() {
        let c = matrix_c(3).unwrap();
        assert_eq!(c.matrix().rows(), 2);
        assert_eq!(c.matrix().cols(), 3);
        assert_eq!(c.matrix().row(0), &[rat_int(-3), rat_int(0), rat_int(3)]);
    }

    #[test]
    fn first_row_is_minus_n_zeros_n() {
        for weight in [3u32, 5, 9, 15, 21] {
            let c = matrix_c(weight).unwrap();
            let row = c.matrix().row(0);
            assert_eq!(row[0], rat_int(-i64::from(weight)));
            assert_eq!(row[row.len() - 1], rat_int(i64::from(weight)));
            for entry in &row[1..row.len() - 1] {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn interior_block_is_scaled_binomial_matrix() {
        // Entry (i+1, j+1) equals (N - 2j - 2) (C(2j+1, i) - delta_{2j+1, i})
        // for 0 <= i, j <= k-1.
        for weight in [5u32, 7, 9, 13, 21] {
            let c = matrix_c(weight).unwrap();
            let k = c.k() as i64;
            for i in 0..k {
                for j in 0..k {
                    let delta = if 2 * j + 1 == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    let expected = Rational::from_integer(
                        BigInt::from(i64::from(weight) - 2 * j - 2) * (binom(2 * j + 1, i) - delta),
                    );
                    assert_eq!(
                        c.matrix().at(i as usize + 1, j as usize + 1),
                        &expected,
                        "weight {weight}, ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn rank_certificates() {
        assert!(verify_rank_c(3).unwrap());
        assert!(verify_rank_c(9).unwrap());
        assert!(matches!(matrix_c(4), Err(Error::EvenWeight(4))));
    }

    #[test]
    fn deleting_any_row_drops_rank_by_one() {
        for weight in [3u32, 5, 9, 15] {
            let c = matrix_c(weight).unwrap();
            let k = c.k() as usize;
            assert_eq!(c.matrix().rank(), k + 1);
            for r in 0..=k {
                assert_eq!(
                    c.matrix().without_row(r).rank(),
                    k,
                    "weight {weight}, row {r}"
                );
            }
        }
    }
}
