//! Direct iterated integrals along straight-line paths on the real cycle,
//! and cross-validation against the exact q-expansions.
//!
//! The generating series of iterated integrals along a path satisfies a
//! first-order linear equation, so a word of length `r` is integrated by
//! propagating the `r+1` prefix coefficients with adaptive step-doubled
//! classical Runge-Kutta. All one-forms are smooth on the closed path when
//! no index equals 1; an interior index 1 is integrable (the prefix weight
//! vanishes at the endpoints) but gets no certified tolerance.

use num_complex::Complex64;

use super::{omega_coeffs, TauPoint};
use crate::emzv::{emzv_qexpansion, EMZVSeries, MultiIndex};
use crate::error::Error;

/// Straight path `xi(t) = start + dir * t`, `t in [0, 1]`, on the real axis
/// (the `r`-coordinate is 0 along it, so the exponential prefactor of the
/// generating form is trivial).
#[derive(Clone, Copy, Debug)]
pub struct LinePath {
    pub start: f64,
    pub dir: f64,
}

impl LinePath {
    pub const CYCLE: LinePath = LinePath {
        start: 0.0,
        dir: 1.0,
    };

    fn at(&self, t: f64) -> f64 {
        self.start + self.dir * t
    }
}

const LATTICE_EPS: f64 = 1e-9;
const NEAR_LATTICE_SHIFT: f64 = 1e-5;

/// Values `f^(0) .. f^(kmax)` at the real point `s`. At a lattice point the
/// limits are used: `f^(0) = 1`, odd orders vanish by parity, even orders
/// are sampled a tiny shift away (the error is quadratic in the shift).
fn f_values_real(s: f64, tau: &TauPoint, kmax: usize) -> Result<Vec<Complex64>, Error> {
    let dist = (s - s.round()).abs();
    if dist < LATTICE_EPS {
        let shifted = omega_coeffs(
            Complex64::new(s.round() + NEAR_LATTICE_SHIFT, 0.0),
            tau,
            kmax,
        )?;
        Ok((0..=kmax)
            .map(|k| match k {
                0 => Complex64::new(1.0, 0.0),
                1 => shifted.f(1),
                k if k % 2 == 1 => Complex64::new(0.0, 0.0),
                k => shifted.f(k),
            })
            .collect())
    } else {
        let f = omega_coeffs(Complex64::new(s, 0.0), tau, kmax)?;
        Ok((0..=kmax).map(|k| f.f(k)).collect())
    }
}

struct Propagator<'a> {
    word: &'a [u32],
    path: LinePath,
    tau: &'a TauPoint,
    kmax: usize,
}

impl Propagator<'_> {
    fn deriv(&self, t: f64, y: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        let f = f_values_real(self.path.at(t), self.tau, self.kmax)?;
        let mut dy = vec![Complex64::new(0.0, 0.0); y.len()];
        for (j, &letter) in self.word.iter().enumerate() {
            dy[j + 1] = y[j] * f[letter as usize] * self.path.dir;
        }
        Ok(dy)
    }

    fn rk4_step(&self, t: f64, h: f64, y: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        let add = |a: &[Complex64], b: &[Complex64], s: f64| -> Vec<Complex64> {
            a.iter().zip(b).map(|(x, d)| x + d * s).collect()
        };
        let k1 = self.deriv(t, y)?;
        let k2 = self.deriv(t + h / 2.0, &add(y, &k1, h / 2.0))?;
        let k3 = self.deriv(t + h / 2.0, &add(y, &k2, h / 2.0))?;
        let k4 = self.deriv(t + h, &add(y, &k3, h))?;
        Ok(y.iter()
            .enumerate()
            .map(|(j, x)| x + (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0))
            .collect())
    }
}

/// Integrate the word along the path. Returns the value, the accumulated
/// error estimate, and whether the step control stayed within its budget.
pub fn word_integral(
    word: &[u32],
    path: LinePath,
    tau: &TauPoint,
    tol: f64,
) -> Result<(Complex64, f64, bool), Error> {
    let kmax = word.iter().copied().max().unwrap_or(0) as usize;
    let prop = Propagator {
        word,
        path,
        tau,
        kmax,
    };
    let mut y = vec![Complex64::new(0.0, 0.0); word.len() + 1];
    y[0] = Complex64::new(1.0, 0.0);
    if word.is_empty() {
        return Ok((y[0], 0.0, true));
    }

    let min_h = 1e-10;
    let mut t = 0.0;
    let mut h = 0.05f64;
    let mut err_acc = 0.0;
    let mut certified = true;
    while t < 1.0 {
        h = h.min(1.0 - t);
        let full = prop.rk4_step(t, h, &y)?;
        let mid = prop.rk4_step(t, h / 2.0, &y)?;
        let halves = prop.rk4_step(t + h / 2.0, h / 2.0, &mid)?;
        let delta = full
            .iter()
            .zip(&halves)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        let err = delta / 15.0;
        let budget = 0.5 * tol * h;
        if err <= budget || h <= min_h {
            if err > budget {
                certified = false;
            }
            // local extrapolation of the step-doubling pair
            y = halves
                .iter()
                .zip(&full)
                .map(|(b, a)| b + (b - a) / 15.0)
                .collect();
            t += h;
            err_acc += err;
            let grow = if err > 0.0 {
                0.9 * (budget / err).powf(0.25)
            } else {
                2.0
            };
            h = (h * grow.clamp(0.5, 2.5)).clamp(min_h, 0.25);
        } else {
            h = (h * 0.5).max(min_h);
        }
    }
    Ok((y[word.len()], err_acc, certified))
}

/// The iterated integral of `f^(n_1) ... f^(n_r)` over the ordered simplex
/// of the unit cycle, with adaptive step control targeting `tol`.
///
/// Boundary index 1 is rejected (that case needs tangential base point
/// regularization). An interior index 1 is computed best-effort without a
/// certificate; for all other words the certificate is enforced.
pub fn iterated_integral_alpha(
    index: &MultiIndex,
    tau: &TauPoint,
    tol: f64,
) -> Result<Complex64, Error> {
    Ok(iterated_integral_with_estimate(index, tau, tol)?.0)
}

/// Like [`iterated_integral_alpha`], but also returns the accumulated error
/// estimate of the step control.
pub fn iterated_integral_with_estimate(
    index: &MultiIndex,
    tau: &TauPoint,
    tol: f64,
) -> Result<(Complex64, f64), Error> {
    let word = index.entries();
    if word.first() == Some(&1) || word.last() == Some(&1) {
        return Err(Error::BoundaryOne);
    }
    let interior_one = word.len() > 2 && word[1..word.len() - 1].contains(&1);
    let (value, err, certified) = word_integral(word, LinePath::CYCLE, tau, tol)?;
    if !certified && !interior_one {
        return Err(Error::ToleranceNotMet(tol));
    }
    Ok((value, err))
}

/// Residual of the reversal-of-paths identity: integrating the word along
/// the reversed parameterization equals `(-1)^r` times the integral of the
/// reversed word.
pub fn path_reversal_residual(word: &[u32], tau: &TauPoint, tol: f64) -> Result<f64, Error> {
    let reversed_path = LinePath {
        start: 1.0,
        dir: -1.0,
    };
    let (lhs, _, _) = word_integral(word, reversed_path, tau, tol)?;
    let mut rev_word = word.to_vec();
    rev_word.reverse();
    let (rhs, _, _) = word_integral(&rev_word, LinePath::CYCLE, tau, tol)?;
    let sign = if word.len().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    Ok((lhs - sign * rhs).norm())
}

/// Residual of the composition-of-paths identity after splitting the cycle
/// at `1/2` and recombining.
pub fn path_composition_residual(word: &[u32], tau: &TauPoint, tol: f64) -> Result<f64, Error> {
    let (full, _, _) = word_integral(word, LinePath::CYCLE, tau, tol)?;
    let first = LinePath {
        start: 0.0,
        dir: 0.5,
    };
    let second = LinePath {
        start: 0.5,
        dir: 0.5,
    };
    let mut recombined = Complex64::new(0.0, 0.0);
    for k in 0..=word.len() {
        let (a, _, _) = word_integral(&word[..k], first, tau, tol)?;
        let (b, _, _) = word_integral(&word[k..], second, tau, tol)?;
        recombined += a * b;
    }
    Ok((full - recombined).norm())
}

/// Evaluate an exact q-expansion at the point: substitute `T = 2 pi i` and
/// `q = exp(2 pi i tau)`.
pub fn eval_emzv_series(series: &EMZVSeries, tau: &TauPoint) -> Result<Complex64, Error> {
    let constant = series.constant().known().ok_or(Error::UnknownConstant)?;
    let t = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut value = constant.eval_complex(t);
    let mut q_power = Complex64::new(1.0, 0.0);
    for n in 1..=series.order() {
        q_power *= tau.q();
        value += series.qpart().coeff(n).eval_complex(t) * q_power;
    }
    Ok(value)
}

#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub index: MultiIndex,
    pub numeric: Complex64,
    /// Accumulated error estimate of the adaptive integration.
    pub numeric_error_estimate: f64,
    pub series_value: Complex64,
    pub abs_diff: f64,
    pub tol: f64,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.abs_diff < self.tol
    }
}

/// Compare the direct iterated integral against the evaluated q-expansion
/// of the same index.
pub fn cross_validate(
    index: &MultiIndex,
    tau: &TauPoint,
    order: usize,
    tol: f64,
) -> Result<CrossValidation, Error> {
    let q_tail = tau.q().norm().powi(order as i32 + 1);
    assert!(
        q_tail < tol / 10.0,
        "truncation order {order} too small at this tau for tolerance {tol:e}"
    );
    let series = emzv_qexpansion(index, order)?;
    let series_value = eval_emzv_series(&series, tau)?;
    let (numeric, numeric_error_estimate) =
        iterated_integral_with_estimate(index, tau, tol / 10.0)?;
    let abs_diff = (numeric - series_value).norm();
    Ok(CrossValidation {
        index: index.clone(),
        numeric,
        numeric_error_estimate,
        series_value,
        abs_diff,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tau_i() -> TauPoint {
        TauPoint::new(Complex64::new(0.0, 1.0)).unwrap()
    }

    fn idx(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    #[test]
    fn f0_integrates_to_path_length() {
        let value = iterated_integral_alpha(&idx(&[0]), &tau_i(), 1e-10).unwrap();
        assert!((value - 1.0).norm() < 1e-10);
    }

    #[test]
    fn simplex_volume_with_unit_integrand() {
        let value = iterated_integral_alpha(&idx(&[0, 0]), &tau_i(), 1e-10).unwrap();
        assert!((value - 0.5).norm() < 1e-9);
    }

    #[test]
    fn length_one_weight_two_matches_bernoulli_constant() {
        // (2 pi i)^2 B_2 / 2! = -pi^2 / 3
        let value = iterated_integral_alpha(&idx(&[2]), &tau_i(), 1e-9).unwrap();
        let expected = Complex64::new(-PI * PI / 3.0, 0.0);
        assert!((value - expected).norm() < 1e-8, "got {value}");
    }

    #[test]
    fn boundary_one_is_rejected() {
        assert!(matches!(
            iterated_integral_alpha(&idx(&[1, 2]), &tau_i(), 1e-8),
            Err(Error::BoundaryOne)
        ));
        assert!(matches!(
            iterated_integral_alpha(&idx(&[2, 1]), &tau_i(), 1e-8),
            Err(Error::BoundaryOne)
        ));
    }

    #[test]
    fn reversal_and_composition_identities() {
        let tau = tau_i();
        for word in [&[0u32][..], &[2], &[0, 2], &[2, 3], &[0, 2, 3]] {
            let rev = path_reversal_residual(word, &tau, 1e-9).unwrap();
            assert!(rev < 1e-8, "reversal residual {rev:e} for {word:?}");
            let comp = path_composition_residual(word, &tau, 1e-9).unwrap();
            assert!(comp < 1e-8, "composition residual {comp:e} for {word:?}");
        }
    }

    #[test]
    fn cross_validation_0_3_at_tau_i() {
        let cv = cross_validate(&idx(&[0, 3]), &tau_i(), 40, 1e-6).unwrap();
        assert!(cv.passed(), "difference {:e}", cv.abs_diff);
    }

    #[test]
    fn even_weight_values_match_the_constant() {
        // I(m,n) with m+n even equals its constant term; check (2,2)
        // numerically against the closed form.
        let tau = tau_i();
        let series = emzv_qexpansion(&idx(&[2, 2]), 30).unwrap();
        let series_value = eval_emzv_series(&series, &tau).unwrap();
        let numeric = iterated_integral_alpha(&idx(&[2, 2]), &tau, 1e-8).unwrap();
        assert!((numeric - series_value).norm() < 1e-7);
    }

    #[test]
    fn numeric_shuffle_product() {
        // I(2) I(2) = I(2,2) + I(2,2) by the shuffle product formula.
        let tau = tau_i();
        let single = iterated_integral_alpha(&idx(&[2]), &tau, 1e-9).unwrap();
        let double = iterated_integral_alpha(&idx(&[2, 2]), &tau, 1e-9).unwrap();
        assert!((single * single - 2.0 * double).norm() < 1e-8);
    }

    #[test]
    fn eval_requires_known_constant() {
        let series = emzv_qexpansion(&idx(&[0, 2, 3]), 10).unwrap();
        assert!(matches!(
            eval_emzv_series(&series, &tau_i()),
            Err(Error::UnknownConstant)
        ));
    }

    #[test]
    fn precision_ladder() {
        // Halving the step-control tolerance changes the result by less than
        // the reported error estimate.
        let tau = tau_i();
        for word in [&[2u32][..], &[0, 3], &[2, 2]] {
            let (coarse, err_coarse, certified) =
                word_integral(word, LinePath::CYCLE, &tau, 1e-8).unwrap();
            let (fine, err_fine, _) = word_integral(word, LinePath::CYCLE, &tau, 5e-9).unwrap();
            assert!(certified);
            assert!(
                (coarse - fine).norm() <= err_coarse + err_fine,
                "{word:?}: moved {:e}, estimates {:e} + {:e}",
                (coarse - fine).norm(),
                err_coarse,
                err_fine
            );
        }
    }
}
