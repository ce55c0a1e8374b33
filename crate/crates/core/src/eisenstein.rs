//! Bernoulli numbers, even zeta values as `T`-monomials, and Eisenstein
//! series q-expansions.
//!
//! Conventions: `G_0 = -1` identically, `G_n = 0` for odd `n`, and for
//! `k >= 1`
//!
//! `G_2k = 2 zeta(2k) + 2 T^{2k} / (2k-1)! * sum_{n>=1} sigma_{2k-1}(n) q^n`
//!
//! with `T = 2*pi*i`. Even zeta values are stored exactly through the Euler
//! closed form `zeta(2k) = -B_{2k} T^{2k} / (2 (2k)!)`, the only way to land
//! them in the Laurent ring over the rationals.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{binom, factorial};
use crate::error::Error;
use crate::{QSeries, Rational, TPoly};

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// The Bernoulli number `B_n` of the generating series `t / (e^t - 1)`,
/// so `B_1 = -1/2`. Computed once per index through the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0` and memoized.
pub fn bernoulli(n: u32) -> Rational {
    let n = n as usize;
    {
        let table = bernoulli_table().read().unwrap();
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_table().write().unwrap();
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binom(m as i64 + 1, j as i64)) * b;
        }
        let value = -acc / Rational::from_integer(BigInt::from(m as i64 + 1));
        table.push(value);
    }
    table[n].clone()
}

/// `zeta(2k)` as a single `T`-monomial of exponent `2k`; `zeta(0) = -1/2`.
pub fn zeta_even(index: u32) -> Result<TPoly, Error> {
    if !index.is_multiple_of(2) {
        return Err(Error::OddIndex(index));
    }
    let coeff = -bernoulli(index) / (Rational::from_integer(BigInt::from(2)) * factorial(index));
    Ok(TPoly::monomial(index as i32, coeff))
}

/// Divisor sum `sigma_m(n) = sum_{d | n} d^m` for `n >= 1`, by direct
/// enumeration of divisor pairs.
pub fn divisor_sum(m: u32, n: u64) -> BigInt {
    assert!(n >= 1);
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(m);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(m);
            }
        }
        d += 1;
    }
    acc
}

/// An Eisenstein series together with its weight tag.
#[derive(Clone, PartialEq, Debug)]
pub struct EisensteinSeries {
    index: u32,
    series: QSeries,
}

impl EisensteinSeries {
    pub fn index(&self) -> u32 {
        self.index
    }

    /// Weight of the series in the `T`-grading.
    pub fn weight(&self) -> u32 {
        self.index
    }

    pub fn series(&self) -> &QSeries {
        &self.series
    }

    pub fn into_series(self) -> QSeries {
        self.series
    }
}

static G_CACHE: OnceLock<RwLock<HashMap<(u32, usize), QSeries>>> = OnceLock::new();

fn g_qseries(index: u32, order: usize) -> QSeries {
    debug_assert!(index.is_multiple_of(2));
    let cache = G_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = cache.read().unwrap().get(&(index, order)) {
        return s.clone();
    }
    let mut series = QSeries::zero(order);
    if index == 0 {
        series.set_coeff(0, TPoly::constant(-Rational::one()));
    } else {
        let two_zeta = zeta_even(index)
            .unwrap()
            .scale(&Rational::from_integer(2.into()));
        series.set_coeff(0, two_zeta);
        let scale = Rational::new(2.into(), factorial(index - 1));
        for n in 1..=order {
            let sigma = divisor_sum(index - 1, n as u64);
            let coeff = scale.clone() * Rational::from_integer(sigma);
            series.set_coeff(n, TPoly::monomial(index as i32, coeff));
        }
    }
    cache
        .write()
        .unwrap()
        .insert((index, order), series.clone());
    series
}

/// The q-expansion of `G_index` to the given order. Odd indices return the
/// zero series (`G_odd = 0` by definition), index 0 the constant `-1`.
pub fn eisenstein_q(index: u32, order: usize) -> EisensteinSeries {
    let series = if !index.is_multiple_of(2) {
        QSeries::zero(order)
    } else {
        g_qseries(index, order)
    };
    EisensteinSeries { index, series }
}

/// Indefinite Eisenstein integral: a `tau`-linear part plus a q-series.
///
/// The `tau`-linear coefficient is `2 zeta(2k)` and the `q^n` coefficient of
/// the q-part is `-g_n / (T n)`, where `g_n` is the `q^n` coefficient of
/// `G_2k`. The two parts are kept separate since the `tau` term is not a
/// q-series.
#[derive(Clone, PartialEq, Debug)]
pub struct IndefEisenstein {
    index: u32,
    tau_coeff: TPoly,
    qpart: QSeries,
}

impl IndefEisenstein {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn weight(&self) -> u32 {
        self.index
    }

    pub fn tau_coeff(&self) -> &TPoly {
        &self.tau_coeff
    }

    pub fn qpart(&self) -> &QSeries {
        &self.qpart
    }
}

pub fn indefinite_eisenstein(index: u32, order: usize) -> IndefEisenstein {
    assert!(
        index.is_multiple_of(2),
        "indefinite Eisenstein integrals are indexed by even weights"
    );
    let g = eisenstein_q(index, order);
    // Well-definedness of the regularized integral: G_2k - 2 zeta(2k) must
    // vanish at q^0, i.e. the constant term of G_2k is exactly 2 zeta(2k).
    let tau_coeff = zeta_even(index)
        .unwrap()
        .scale(&Rational::from_integer(2.into()));
    assert_eq!(g.series().coeff(0), &tau_coeff);
    let mut qpart = QSeries::zero(order);
    for n in 1..=order {
        let g_n = g.series().coeff(n);
        if !g_n.is_zero() {
            qpart.set_coeff(n, g_n.shift(-1).div_int(-(n as i64)));
        }
    }
    IndefEisenstein {
        index,
        tau_coeff,
        qpart,
    }
}
