//! The full verification suite: every check the crate promises, packaged so
//! the CLI (`verify-all`) and the acceptance tests run exactly the same code.

use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::eisenstein::bernoulli;
use crate::emzv::{
    self, assemble_rhs, closed_length2_derivative, derivative_expansion, emzv_qexpansion,
    length3_derivative_rank, verify_relations_len2, MultiIndex,
};
use crate::fayshuffle::{fsh_dim, fsh_polynomial_dim, hilbert_wn, w_dim};
use crate::linind::{det_m, verify_binom_identity, verify_lu, verify_rank_c};
use crate::numeric::{
    check_properties, cross_validate, iterated_integral_alpha, path_composition_residual,
    path_reversal_residual, TauPoint,
};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "Fay-shuffle dimensions up to weight 101"),
    (2, "W_N dimensions, Hilbert series, polynomial part"),
    (
        3,
        "binomial determinant, LU factorization, binomial identity",
    ),
    (4, "rank of C_N up to 101 and closed length-two formulas"),
    (5, "length-two ranks (odd) and constancy (even)"),
    (
        6,
        "purity: zero constant term of every length-two derivative",
    ),
    (7, "reflection, shuffle, and Fay relations up to weight 30"),
    (8, "numeric cross-validation of iterated integrals"),
    (9, "pointwise form properties and path identities"),
    (10, "length-three rank report with truncation stability"),
];

pub fn run_criterion(id: u8) -> CriterionOutcome {
    match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => panic!("unknown criterion {id}"),
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id)).collect()
}

fn outcome(id: u8, passed: bool, detail: String) -> CriterionOutcome {
    let name = CRITERIA[id as usize - 1].1;
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
    }
}

/// fsh_dim(N) = 0 for even N <= 100 and floor(N/3)+1 for odd N <= 101.
fn criterion_1() -> CriterionOutcome {
    let mut failures = Vec::new();
    for weight in (0..=100u32).step_by(2) {
        let dim = fsh_dim(weight);
        if dim != 0 {
            failures.push(format!("even weight {weight}: dim {dim} != 0"));
        }
    }
    for weight in (1..=101u32).step_by(2) {
        let dim = fsh_dim(weight);
        let expected = (weight / 3 + 1) as usize;
        if dim != expected {
            failures.push(format!("odd weight {weight}: dim {dim} != {expected}"));
        }
    }
    let detail = if failures.is_empty() {
        "all dimensions match: 0 for even N <= 100, floor(N/3)+1 for odd N <= 101".into()
    } else {
        failures.join("; ")
    };
    outcome(1, failures.is_empty(), detail)
}

/// w_dim(N) = floor((N+2)/3) for N <= 60, matching the Hilbert series
/// coefficient by coefficient, and w_dim(N-2) equals the polynomial-part
/// dimension of FSh_2(N) for odd 3 <= N <= 41.
fn criterion_2() -> CriterionOutcome {
    let mut failures = Vec::new();
    let hilbert = hilbert_wn(60);
    for weight in 0..=60u32 {
        let dim = w_dim(weight);
        let expected = weight.div_ceil(3) as usize;
        if dim != expected {
            failures.push(format!("w_dim({weight}) = {dim} != {expected}"));
        }
        if hilbert[weight as usize] as usize != dim {
            failures.push(format!(
                "hilbert coefficient at t^{weight} is {} but w_dim is {dim}",
                hilbert[weight as usize]
            ));
        }
    }
    for weight in (3..=41u32).step_by(2) {
        let poly = fsh_polynomial_dim(weight);
        let w = w_dim(weight - 2);
        if poly != w {
            failures.push(format!(
                "polynomial part of FSh_2({weight}) is {poly} but w_dim({}) is {w}",
                weight - 2
            ));
        }
    }
    let detail = if failures.is_empty() {
        "w_dim, Hilbert coefficients, and Fay-shuffle polynomial parts all agree".into()
    } else {
        failures.join("; ")
    };
    outcome(2, failures.is_empty(), detail)
}

/// det M_n = (2n+1)!! and M_n = L_n U_n for 1 <= n <= 30; the binomial
/// identity for all 0 <= b <= a <= 60.
fn criterion_3() -> CriterionOutcome {
    let mut failures = Vec::new();
    for n in 1..=30u32 {
        let det = det_m(n);
        let expected = Rational::from_integer(crate::combinat::double_factorial_odd(n));
        if det != expected {
            failures.push(format!("det M_{n} = {det} != {expected}"));
        }
        if !verify_lu(n) {
            failures.push(format!("LU factorization fails at n = {n}"));
        }
    }
    for a in 0..=60u32 {
        for b in 0..=a {
            if !verify_binom_identity(a, b) {
                failures.push(format!("binomial identity fails at (a,b) = ({a},{b})"));
            }
        }
    }
    let detail = if failures.is_empty() {
        "determinants, LU factorizations, and the binomial identity all verified exactly".into()
    } else {
        failures.join("; ")
    };
    outcome(3, failures.is_empty(), detail)
}

/// rank C_N = floor(N/3)+1 for odd N <= 101, with the generic extraction
/// matching the closed length-two formulas term by term for all m+n <= 30.
fn criterion_4() -> CriterionOutcome {
    let mut failures = Vec::new();
    for weight in (1..=101u32).step_by(2) {
        match verify_rank_c(weight) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("C_{weight} does not have full row rank")),
            Err(e) => failures.push(format!("C_{weight}: {e}")),
        }
    }
    for total in 0..=30u32 {
        for m in 0..=total {
            let n = total - m;
            let generic = derivative_expansion(&MultiIndex::new(vec![m, n]));
            let closed = closed_length2_derivative(m, n);
            // Term-by-term equality modulo terms whose length-one factor
            // vanishes identically, plus exact equality of the assembled
            // series including those terms.
            if generic.terms_modulo_vanishing() != closed.terms_modulo_vanishing() {
                failures.push(format!("extraction mismatch at ({m},{n})"));
            } else if assemble_rhs(&generic, 2).unwrap() != assemble_rhs(&closed, 2).unwrap() {
                failures.push(format!("assembled derivative mismatch at ({m},{n})"));
            }
        }
    }
    let detail = if failures.is_empty() {
        "C_N has full row rank for all odd N <= 101; extraction matches the closed formulas for m+n <= 30".into()
    } else {
        failures.join("; ")
    };
    outcome(4, failures.is_empty(), detail)
}

/// Length-two ranks: floor(N/3)+1 at order N+20 and stable at N+30 for odd
/// N <= 51; for even N <= 40 every q-part vanishes and the constant matches
/// the closed constant-term formulas.
fn criterion_5() -> CriterionOutcome {
    let mut failures = Vec::new();
    for weight in (1..=51u32).step_by(2) {
        let expected = (weight / 3 + 1) as usize;
        let rank = emzv::grlen2_rank(weight, weight as usize + 20).unwrap();
        let stable = emzv::grlen2_rank(weight, weight as usize + 30).unwrap();
        if rank != expected {
            failures.push(format!("weight {weight}: rank {rank} != {expected}"));
        }
        if rank != stable {
            failures.push(format!(
                "weight {weight}: rank unstable ({rank} vs {stable})"
            ));
        }
        // parity, odd direction: no individual q-part vanishes in odd weight
        for m in 0..=weight {
            let index = MultiIndex::new(vec![m, weight - m]);
            let series = emzv_qexpansion(&index, weight as usize + 20).unwrap();
            if series.qpart().is_zero() {
                failures.push(format!("{index}: odd-weight q-part vanishes"));
            }
        }
    }
    for weight in (0..=40u32).step_by(2) {
        for m in 0..=weight {
            let index = MultiIndex::new(vec![m, weight - m]);
            let series = emzv_qexpansion(&index, weight as usize + 10).unwrap();
            if !series.qpart().is_zero() {
                failures.push(format!("{index}: q-part does not vanish"));
            }
            let expected = emzv::constant_term(&index).unwrap();
            if series.constant().known() != Some(&expected) {
                failures.push(format!("{index}: constant differs from the closed formula"));
            }
        }
    }
    let detail = if failures.is_empty() {
        "odd ranks equal floor(N/3)+1 (stable under order increase); even-weight values are the closed constants".into()
    } else {
        failures.join("; ")
    };
    outcome(5, failures.is_empty(), detail)
}

/// The assembled derivative of every length-two index of weight <= 40 has
/// exactly zero constant term.
fn criterion_6() -> CriterionOutcome {
    let mut failures = Vec::new();
    for weight in 0..=40u32 {
        for m in 0..=weight {
            let index = MultiIndex::new(vec![m, weight - m]);
            let rhs = assemble_rhs(&derivative_expansion(&index), 2).unwrap();
            if !rhs.coeff(0).is_zero() {
                failures.push(format!("{index}: constant term {}", rhs.coeff(0)));
            }
        }
    }
    let detail = if failures.is_empty() {
        "every length-two derivative assembles with exactly zero constant term (weights <= 40)"
            .into()
    } else {
        failures.join("; ")
    };
    outcome(6, failures.is_empty(), detail)
}

/// Relation suite at weights N <= 30: reflection and shuffle exact, Fay
/// exact on q-parts (and on constants for m,n >= 2); boundary constant
/// cases are reported without failing the run.
fn criterion_7() -> CriterionOutcome {
    let mut failures = Vec::new();
    let mut boundary_reports = Vec::new();
    for weight in 0..=30u32 {
        let report = verify_relations_len2(weight, weight as usize + 20).unwrap();
        for entry in &report.entries {
            if entry.passed {
                continue;
            }
            let line = format!(
                "weight {weight} {} {:?} {}: {}",
                entry.relation,
                entry.pair,
                entry.part,
                entry.discrepancy.as_deref().unwrap_or("")
            );
            if entry.boundary {
                boundary_reports.push(line);
            } else {
                failures.push(line);
            }
        }
    }
    let mut detail = String::new();
    if failures.is_empty() {
        let _ = write!(
            detail,
            "all asserted identities hold exactly up to weight 30; {} boundary constant case(s) reported",
            boundary_reports.len()
        );
    } else {
        detail = failures.join("; ");
    }
    for line in &boundary_reports {
        let _ = write!(detail, "; boundary: {line}");
    }
    outcome(7, failures.is_empty(), detail)
}

fn taus_for_cross_validation() -> Vec<Complex64> {
    vec![Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.0)]
}

/// Numeric cross-validation: length-one values against the Bernoulli
/// constants to 1e-8, and five indices against their q-expansions to 1e-6.
fn criterion_8() -> CriterionOutcome {
    let mut failures = Vec::new();
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    for tau_value in taus_for_cross_validation() {
        let tau = TauPoint::new(tau_value).unwrap();
        for n in [0u32, 2, 4, 6] {
            let numeric = iterated_integral_alpha(&MultiIndex::new(vec![n]), &tau, 1e-9).unwrap();
            let b = bernoulli(n);
            let expected = two_pi_i.powi(n as i32) * b.numer().to_f64().unwrap()
                / (b.denom().to_f64().unwrap() * crate::combinat::factorial(n).to_f64().unwrap());
            let diff = (numeric - expected).norm();
            if diff >= 1e-8 {
                failures.push(format!("I({n}) at tau {tau_value}: |diff| = {diff:e}"));
            }
        }
        for entries in [[0u32, 3], [2, 3], [0, 5], [2, 2], [3, 3]] {
            let index = MultiIndex::new(entries.to_vec());
            let cv = cross_validate(&index, &tau, 40, 1e-6).unwrap();
            if !cv.passed() {
                failures.push(format!(
                    "{index} at tau {tau_value}: |numeric - series| = {:e}",
                    cv.abs_diff
                ));
            }
        }
    }
    let detail = if failures.is_empty() {
        "iterated integrals match Bernoulli constants (1e-8) and q-expansions (1e-6) at both sample points".into()
    } else {
        failures.join("; ")
    };
    outcome(8, failures.is_empty(), detail)
}

/// Pointwise checks of the form properties at 20 random non-lattice points
/// with kmax = 8, plus the path reversal and composition identities, all
/// below 1e-8.
fn criterion_9() -> CriterionOutcome {
    let mut failures = Vec::new();
    let tol = 1e-8;
    for tau_value in [Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.5)] {
        let tau = TauPoint::new(tau_value).unwrap();
        let report = check_properties(&tau, 20, 8, tol, 0x5eed).unwrap();
        if !report.passed() {
            failures.push(format!(
                "tau {tau_value}: residuals per={:e} par={:e} fay={:e} s={:e}",
                report.max_periodicity, report.max_parity, report.max_fay, report.max_s_transform
            ));
        }
        let letters = [0u32, 2, 3];
        let mut words: Vec<Vec<u32>> = Vec::new();
        for &a in &letters {
            words.push(vec![a]);
            for &b in &letters {
                words.push(vec![a, b]);
                for &c in &letters {
                    words.push(vec![a, b, c]);
                }
            }
        }
        for word in &words {
            let rev = path_reversal_residual(word, &tau, 1e-9).unwrap();
            if rev >= tol {
                failures.push(format!(
                    "reversal residual {rev:e} for {word:?} at tau {tau_value}"
                ));
            }
            let comp = path_composition_residual(word, &tau, 1e-9).unwrap();
            if comp >= tol {
                failures.push(format!(
                    "composition residual {comp:e} for {word:?} at tau {tau_value}"
                ));
            }
        }
    }
    let detail = if failures.is_empty() {
        "periodicity, parity, Fay, S-transformation, reversal, and composition all below 1e-8"
            .into()
    } else {
        failures.join("; ")
    };
    outcome(9, failures.is_empty(), detail)
}

/// Length-three q-part ranks for N <= 13: stable under a truncation-order
/// increase by 10; reported next to the published lower-bound table (even
/// weights) and next to floor((N+1)/6) for odd weights, without asserting
/// equality to either.
fn criterion_10() -> CriterionOutcome {
    let mut failures = Vec::new();
    let mut table = String::from("N: computed (published, odd-weight formula)");
    for weight in 0..=13u32 {
        let order = weight as usize + 20;
        let rank = length3_derivative_rank(weight, order).unwrap();
        let stable = length3_derivative_rank(weight, order + 10).unwrap();
        if rank != stable {
            failures.push(format!(
                "weight {weight}: rank {rank} unstable (vs {stable})"
            ));
        }
        let published = emzv::d3_table_value(weight)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into());
        let formula = if weight % 2 == 1 {
            ((weight + 1) / 6).to_string()
        } else {
            "-".into()
        };
        let _ = write!(table, "; {weight}: {rank} ({published}, {formula})");
    }
    let detail = if failures.is_empty() {
        table
    } else {
        format!("{}; {}", failures.join("; "), table)
    };
    outcome(10, failures.is_empty(), detail)
}
