//! Floating-point evaluation of theta and Kronecker series on the upper
//! half-plane, the coefficient functions of the doubly periodic generating
//! form, pointwise verification of their functional equations, and direct
//! iterated integrals along the real cycle of the once-punctured torus.

mod integrate;

pub use integrate::{
    cross_validate, eval_emzv_series, iterated_integral_alpha, iterated_integral_with_estimate,
    path_composition_residual, path_reversal_residual, word_integral, CrossValidation, LinePath,
};

use num_complex::Complex64;

use crate::combinat::binom_conv;
use crate::error::Error;

use num_traits::ToPrimitive;

/// Default truncation of the theta sums; at `tau = i` the tail is far below
/// double precision.
pub const DEFAULT_THETA_TERMS: i64 = 40;

/// A point of the upper half-plane together with its nome `q`.
#[derive(Clone, Copy, Debug)]
pub struct TauPoint {
    tau: Complex64,
    q: Complex64,
}

impl TauPoint {
    pub fn new(tau: Complex64) -> Result<Self, Error> {
        // NaN imaginary parts fail the comparison and are rejected too.
        if tau.im.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotUpperHalfPlane);
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        Ok(TauPoint {
            tau,
            q: (two_pi_i * tau).exp(),
        })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }
}

/// Distance of `z` from the lattice `Z + Z tau`, measured in the
/// fundamental-domain coordinates `z = s + r tau`.
pub fn lattice_distance(z: Complex64, tau: Complex64) -> f64 {
    let r = z.im / tau.im;
    let s = z.re - r * tau.re;
    let dr = r - r.round();
    let ds = s - s.round();
    (dr * dr + ds * ds).sqrt()
}

fn theta_terms_with_derivs(
    xi: Complex64,
    tau: &TauPoint,
    terms: i64,
    max_order: usize,
) -> Vec<Complex64> {
    let pi = std::f64::consts::PI;
    let i_pi_tau = Complex64::new(0.0, pi) * tau.tau();
    let two_pi_i = Complex64::new(0.0, 2.0 * pi);
    // Tail bound: the next term has magnitude at most
    // exp(-pi Im(tau) (terms+3/2)^2 + 2 pi |Im(xi)| (terms+3/2)).
    let m = terms as f64 + 1.5;
    let tail = (-pi * tau.tau().im * m * m + 2.0 * pi * xi.im.abs() * m).exp();
    assert!(tail < 1e-18, "theta truncation too small for this argument");

    let mut sums = vec![Complex64::new(0.0, 0.0); max_order + 1];
    for n in -terms..=terms {
        let half = n as f64 + 0.5;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let mut term = sign * (i_pi_tau * half * half + two_pi_i * half * xi).exp();
        let weight = two_pi_i * half;
        for sum in sums.iter_mut() {
            *sum += term;
            term *= weight;
        }
    }
    sums
}

/// The odd Jacobi theta function
/// `theta(xi) = sum_n (-1)^n q^{(n+1/2)^2 / 2} e^{(n+1/2) 2 pi i xi}`,
/// as a partial sum over `n in [-terms, terms]`.
pub fn theta(xi: Complex64, tau: &TauPoint, terms: i64) -> Complex64 {
    theta_terms_with_derivs(xi, tau, terms, 0)[0]
}

/// `order`-th derivative of theta in `xi`, by term-wise differentiation.
pub fn theta_deriv(xi: Complex64, tau: &TauPoint, terms: i64, order: usize) -> Complex64 {
    theta_terms_with_derivs(xi, tau, terms, order)[order]
}

/// Kronecker series `F(xi, alpha) = theta'(0) theta(xi+alpha) / (theta(xi) theta(alpha))`.
pub fn kronecker_f(xi: Complex64, alpha: Complex64, tau: &TauPoint) -> Result<Complex64, Error> {
    if lattice_distance(xi, tau.tau()) < 1e-12 || lattice_distance(alpha, tau.tau()) < 1e-12 {
        return Err(Error::PoleAtLatticePoint);
    }
    let terms = DEFAULT_THETA_TERMS;
    let theta_prime0 = theta_deriv(Complex64::new(0.0, 0.0), tau, terms, 1);
    Ok(theta_prime0 * theta(xi + alpha, tau, terms)
        / (theta(xi, tau, terms) * theta(alpha, tau, terms)))
}

/// Expansion of `e^{2 pi i r alpha} F(xi, alpha)` in powers of `alpha`:
/// `coeffs[k]` is the coefficient function `f^(k)(xi)` of `alpha^{k-1}`.
#[derive(Clone, Debug)]
pub struct AlphaSeries {
    coeffs: Vec<Complex64>,
}

impl AlphaSeries {
    pub fn kmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient function `f^(k)`; `f(0)` is identically 1.
    pub fn f(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }
}

/// Compute `f^(0) .. f^(kmax)` at `xi` by truncated power-series division of
/// the theta Taylor series; `r = Im(xi) / Im(tau)` enters through the
/// exponential prefactor.
pub fn omega_coeffs(xi: Complex64, tau: &TauPoint, kmax: usize) -> Result<AlphaSeries, Error> {
    if lattice_distance(xi, tau.tau()) < 1e-12 {
        return Err(Error::PoleAtLatticePoint);
    }
    let terms = DEFAULT_THETA_TERMS;
    let r = xi.im / tau.tau().im;

    // Taylor coefficients in alpha of theta(xi + alpha) and of theta(alpha)/alpha.
    let at_xi = theta_terms_with_derivs(xi, tau, terms, kmax);
    let at_zero = theta_terms_with_derivs(Complex64::new(0.0, 0.0), tau, terms, kmax + 1);
    let mut fact = 1.0;
    let mut num = Vec::with_capacity(kmax + 1);
    let mut den = Vec::with_capacity(kmax + 1);
    for j in 0..=kmax {
        if j > 0 {
            fact *= j as f64;
        }
        num.push(at_xi[j] / fact);
        den.push(at_zero[j + 1] / (fact * (j as f64 + 1.0)));
    }

    // alpha * F(xi, alpha) = theta'(0)/theta(xi) * theta(xi+alpha) / (theta(alpha)/alpha)
    let scale = at_zero[1] / at_xi[0];
    let mut g = vec![Complex64::new(0.0, 0.0); kmax + 1];
    for j in 0..=kmax {
        let mut acc = num[j] * scale;
        for i in 1..=j {
            acc -= den[i] * g[j - i];
        }
        g[j] = acc / den[0];
    }

    // Multiply by the series of e^{2 pi i r alpha}.
    let w = Complex64::new(0.0, 2.0 * std::f64::consts::PI * r);
    let mut exp_coeffs = vec![Complex64::new(1.0, 0.0); kmax + 1];
    for j in 1..=kmax {
        exp_coeffs[j] = exp_coeffs[j - 1] * w / j as f64;
    }
    let coeffs = (0..=kmax)
        .map(|k| (0..=k).map(|i| g[i] * exp_coeffs[k - i]).sum())
        .collect();
    Ok(AlphaSeries { coeffs })
}

/// Small deterministic generator for sample points.
pub(crate) struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64 { state: seed.max(1) }
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Pointwise residuals of the functional equations of the coefficient forms.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub tau: Complex64,
    pub samples: usize,
    pub kmax: usize,
    pub tol: f64,
    pub max_periodicity: f64,
    pub max_parity: f64,
    pub max_fay: f64,
    pub max_s_transform: f64,
}

impl PropertyReport {
    pub fn max_residual(&self) -> f64 {
        self.max_periodicity
            .max(self.max_parity)
            .max(self.max_fay)
            .max(self.max_s_transform)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() < self.tol
    }
}

/// Check double periodicity, parity, the Fay identity, and the modular
/// S-transformation of the coefficient functions at random non-lattice
/// points (lattice distance above 0.05 in fundamental-domain coordinates).
pub fn check_properties(
    tau: &TauPoint,
    samples: usize,
    kmax: usize,
    tol: f64,
    seed: u64,
) -> Result<PropertyReport, Error> {
    let mut rng = XorShift64::new(seed);
    let t = tau.tau();
    let s_tau = TauPoint::new(-Complex64::new(1.0, 0.0) / t)?;
    let mut report = PropertyReport {
        tau: t,
        samples,
        kmax,
        tol,
        max_periodicity: 0.0,
        max_parity: 0.0,
        max_fay: 0.0,
        max_s_transform: 0.0,
    };

    let draw_point = |rng: &mut XorShift64| -> Complex64 {
        loop {
            let s = rng.range(0.1, 0.9);
            let r = rng.range(0.1, 0.9);
            let xi = Complex64::new(s, 0.0) + Complex64::new(r, 0.0) * t;
            if lattice_distance(xi, t) > 0.05 {
                return xi;
            }
        }
    };

    for _ in 0..samples {
        let xi = draw_point(&mut rng);
        let f = omega_coeffs(xi, tau, kmax)?;
        let shifted_one = omega_coeffs(xi + 1.0, tau, kmax)?;
        let shifted_tau = omega_coeffs(xi + t, tau, kmax)?;
        let negated = omega_coeffs(-xi, tau, kmax)?;
        let s_image = omega_coeffs(xi / t, &s_tau, kmax)?;
        for k in 0..=kmax {
            let p1 = (shifted_one.f(k) - f.f(k)).norm();
            let p2 = (shifted_tau.f(k) - f.f(k)).norm();
            report.max_periodicity = report.max_periodicity.max(p1).max(p2);
            let parity_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let par = (negated.f(k) - parity_sign * f.f(k)).norm();
            report.max_parity = report.max_parity.max(par);
            // S-transformation: f^(k)(xi/tau) at -1/tau equals tau^k f^(k)(xi).
            // The exponent k (not k+1) is forced by the residue normalization:
            // f^(0) is identically 1 on both sides.
            let st = (s_image.f(k) - t.powi(k as i32) * f.f(k)).norm();
            report.max_s_transform = report.max_s_transform.max(st);
        }

        // Fay identity between this point and an independent second point.
        let xi2 = {
            let mut p = draw_point(&mut rng);
            while lattice_distance(xi - p, t) <= 0.05 {
                p = draw_point(&mut rng);
            }
            p
        };
        let f1 = omega_coeffs(xi, tau, kmax)?;
        let f2 = omega_coeffs(xi2, tau, kmax)?;
        let f12 = omega_coeffs(xi - xi2, tau, kmax)?;
        let f21 = omega_coeffs(xi2 - xi, tau, kmax)?;
        for m in 0..=kmax {
            for n in 0..=kmax.saturating_sub(m) {
                let lhs = f1.f(m) * f2.f(n);
                let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
                let mut rhs = -sign_n * f12.f(m + n);
                for r in 0..=n {
                    let c = binom_conv((m + r) as i64 - 1, m as i64 - 1)
                        .to_f64()
                        .expect("small binomial");
                    rhs += c * f21.f(n - r) * f1.f(m + r);
                }
                for r in 0..=m {
                    let c = binom_conv((n + r) as i64 - 1, n as i64 - 1)
                        .to_f64()
                        .expect("small binomial");
                    rhs += c * f12.f(m - r) * f2.f(n + r);
                }
                report.max_fay = report.max_fay.max((lhs - rhs).norm());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_i() -> TauPoint {
        TauPoint::new(Complex64::new(0.0, 1.0)).unwrap()
    }

    #[test]
    fn tau_must_be_in_upper_half_plane() {
        assert!(TauPoint::new(Complex64::new(1.0, -0.2)).is_err());
        assert!(TauPoint::new(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn theta_is_odd() {
        let tau = tau_i();
        let z = Complex64::new(0.31, 0.17);
        assert!(theta(Complex64::new(0.0, 0.0), &tau, 40).norm() < 1e-15);
        assert!((theta(-z, &tau, 40) + theta(z, &tau, 40)).norm() < 1e-14);
    }

    #[test]
    fn theta_shift_by_one_flips_sign() {
        let tau = tau_i();
        let z = Complex64::new(0.27, -0.05);
        let lhs = theta(z + 1.0, &tau, 40);
        let rhs = -theta(z, &tau, 40);
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn kronecker_is_antisymmetric_under_joint_negation() {
        // All three theta factors are odd, so F(-xi, -alpha) = -F(xi, alpha);
        // the dxi factor of the generating form restores the symmetry.
        let tau = tau_i();
        let xi = Complex64::new(0.31, 0.21);
        let alpha = Complex64::new(0.13, -0.09);
        let a = kronecker_f(xi, alpha, &tau).unwrap();
        let b = kronecker_f(-xi, -alpha, &tau).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn kronecker_periodicity_in_xi() {
        let tau = tau_i();
        let xi = Complex64::new(0.41, 0.18);
        let alpha = Complex64::new(0.23, 0.11);
        let a = kronecker_f(xi + 1.0, alpha, &tau).unwrap();
        let b = kronecker_f(xi, alpha, &tau).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn kronecker_rejects_lattice_points() {
        let tau = tau_i();
        let alpha = Complex64::new(0.2, 0.1);
        assert!(matches!(
            kronecker_f(Complex64::new(1.0, 0.0), alpha, &tau),
            Err(Error::PoleAtLatticePoint)
        ));
    }

    #[test]
    fn residue_of_the_simple_pole_is_one() {
        // alpha * F(xi, alpha) -> 1 along a shrinking sequence.
        let tau = tau_i();
        let xi = Complex64::new(0.37, 0.22);
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let alpha = Complex64::new(0.1, 0.05) / (4.0_f64).powi(k);
            let val = alpha * kronecker_f(xi, alpha, &tau).unwrap();
            let dev = (val - 1.0).norm();
            assert!(dev < last, "should approach 1");
            last = dev;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn f0_is_identically_one() {
        let tau = tau_i();
        for (s, r) in [(0.21, 0.13), (0.52, 0.71), (0.83, 0.4)] {
            let xi = Complex64::new(s, 0.0) + Complex64::new(r, 0.0) * tau.tau();
            let f = omega_coeffs(xi, &tau, 6).unwrap();
            assert!((f.f(0) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn omega_matches_kronecker_at_small_alpha() {
        // Partial sums of the alpha-expansion approximate e^{2 pi i r alpha} F.
        let tau = tau_i();
        let xi = Complex64::new(0.3, 0.0) + Complex64::new(0.25, 0.0) * tau.tau();
        let r = xi.im / tau.tau().im;
        let alpha = Complex64::new(0.02, 0.015);
        let f = omega_coeffs(xi, &tau, 12).unwrap();
        let mut series = Complex64::new(0.0, 0.0);
        for k in 0..=12 {
            series += f.f(k) * alpha.powi(k as i32 - 1);
        }
        let direct = (Complex64::new(0.0, 2.0 * std::f64::consts::PI * r) * alpha).exp()
            * kronecker_f(xi, alpha, &tau).unwrap();
        assert!((series - direct).norm() < 1e-10);
    }

    #[test]
    fn property_report_at_tau_i() {
        let tau = tau_i();
        let report = check_properties(&tau, 6, 8, 1e-9, 42).unwrap();
        assert!(
            report.passed(),
            "residuals: periodicity {:.3e}, parity {:.3e}, fay {:.3e}, s {:.3e}",
            report.max_periodicity,
            report.max_parity,
            report.max_fay,
            report.max_s_transform
        );
    }
}
