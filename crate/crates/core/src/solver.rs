//! The certified driver: an ε-approximation of the first positive root s0
//! of the limit function, and the α sweep built on it.
//!
//! The stopping rule works on pairs (r_n, r_{n+1}) with n even. Odd-degree
//! roots approach s0 from below and even ones from above, so each pair
//! brackets s0 and the difference bounds |s0 - r_n| directly; the loop
//! stops at the first even n with r_n - r_{n+1} < ε.

use crate::analysis::{
    check_assumption_a, check_assumption_b, nonexistence_evidence, AssumptionReport,
    ExistenceReport,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::rootfind::{default_scan_limit, smallest_positive_root};
use crate::series::TruncatedPolynomial;
use crate::specialfn::{validate_alpha, CoefficientTable};

/// Grid density for the Assumption B derivative sample.
const ASSUMPTION_B_GRID: usize = 1000;

/// Whether the ε bound is backed by both assumptions or returned with a
/// failed check attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Certificate {
    Certified,
    Heuristic,
}

/// A certified approximation of s0.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct S0Approximation {
    pub alpha: f64,
    /// r_ñ, the returned approximation.
    pub value: f64,
    /// Achieved |r_ñ - r_{ñ+1}|; bounds |s0 - value| when the certificate
    /// holds.
    pub epsilon: f64,
    pub requested_epsilon: f64,
    /// ñ: the even degree the stopping test fired at.
    pub degree_used: usize,
    /// First even degree with a positive root and Assumption A.
    pub n0: usize,
    pub certificate: Certificate,
    pub assumption_a: AssumptionReport,
    pub assumption_b: AssumptionReport,
    /// Every (degree, root) computed, n0 through ñ+1 consecutively.
    pub root_sequence: Vec<(usize, f64)>,
    /// Even degrees below n0, tried and rejected (no root, or root without
    /// Assumption A).
    pub skipped_even_degrees: Vec<usize>,
}

/// Approximates s0 to within ε:
/// scans even degrees upward for the first n0 whose truncation has a
/// positive root and satisfies Assumption A, then walks the root sequence
/// until an even/odd pair differs by less than ε, and finally runs the
/// Assumption B checks on [r_{n0+1}, r_n0].
///
/// Roots are refined to `root_tol`, which must be at most ε/100 so
/// bisection error cannot pollute the stopping test.
pub fn approximate_s0(
    alpha: f64,
    epsilon: f64,
    max_degree: usize,
    root_tol: f64,
) -> Result<S0Approximation> {
    validate_alpha(alpha)?;
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::Domain {
            what: "epsilon must be positive",
            value: epsilon,
        });
    }
    if !root_tol.is_finite() || root_tol <= 0.0 || root_tol > epsilon / 100.0 {
        return Err(Error::Domain {
            what: "root_tol must be positive and at most epsilon/100",
            value: root_tol,
        });
    }
    if !(2..=199).contains(&max_degree) {
        return Err(Error::Domain {
            what: "max_degree must lie in 2..=199",
            value: max_degree as f64,
        });
    }

    let table = CoefficientTable::build(alpha, max_degree + 2)?;
    let root_of = |n: usize| -> Result<Option<f64>> {
        let p = TruncatedPolynomial::from_table(&table, n)?;
        let x_max = default_scan_limit(alpha, n)?;
        Ok(smallest_positive_root(&p, x_max, root_tol).map(|r| r.value))
    };

    // stage 1: discover n0
    let mut skipped_even_degrees = Vec::new();
    let mut base = None;
    let mut n0 = 2;
    while n0 <= max_degree {
        if let Some(r) = root_of(n0)? {
            let report = check_assumption_a(alpha, n0, r)?;
            if report.holds {
                base = Some((r, report));
                break;
            }
        }
        skipped_even_degrees.push(n0);
        n0 += 2;
    }
    let (r_n0, assumption_a) = base.ok_or(Error::NoRootFound { alpha, max_degree })?;

    // stage 2: walk even/odd pairs until the difference drops under ε
    let mut root_sequence = vec![(n0, r_n0)];
    let chase = |n: usize, seq: &mut Vec<(usize, f64)>| -> Result<f64> {
        let r = root_of(n)?.ok_or(Error::NoRootFound {
            alpha,
            max_degree: n,
        })?;
        seq.push((n, r));
        Ok(r)
    };
    let mut n = n0;
    let mut r_even = r_n0;
    let (degree_used, achieved) = loop {
        let r_odd = chase(n + 1, &mut root_sequence)?;
        let diff = (r_even - r_odd).abs();
        if diff < epsilon {
            break (n, diff);
        }
        if n + 3 > max_degree {
            return Err(Error::NoRootFound { alpha, max_degree });
        }
        n += 2;
        r_even = chase(n, &mut root_sequence)?;
    };
    let value = root_sequence
        .iter()
        .find(|(d, _)| *d == degree_used)
        .expect("stopping degree is in the sequence")
        .1;

    // stage 3: Assumption B on [r_{n0+1}, r_n0]
    let r_n0_odd = root_sequence[1].1;
    let assumption_b = check_assumption_b(alpha, n0, r_n0_odd, r_n0, ASSUMPTION_B_GRID)?;
    let certificate = if assumption_a.holds && assumption_b.holds {
        Certificate::Certified
    } else {
        Certificate::Heuristic
    };

    Ok(S0Approximation {
        alpha,
        value,
        epsilon: achieved,
        requested_epsilon: epsilon,
        degree_used,
        n0,
        certificate,
        assumption_a,
        assumption_b,
        root_sequence,
        skipped_even_degrees,
    })
}

/// One α of a sweep.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepEntry {
    pub alpha: f64,
    pub outcome: SweepOutcome,
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SweepOutcome {
    Solved(Box<S0Approximation>),
    NoRoot(Box<ExistenceReport>),
    Failed(String),
}

fn sweep_root_tol(epsilon: f64) -> f64 {
    (epsilon / 100.0).min(1e-9)
}

fn sweep_one(alpha: f64, epsilon: f64, max_degree: usize) -> SweepEntry {
    let tol = sweep_root_tol(epsilon);
    let outcome = match approximate_s0(alpha, epsilon, max_degree, tol) {
        Ok(s0) => SweepOutcome::Solved(Box::new(s0)),
        Err(Error::NoRootFound { .. }) => match nonexistence_evidence(alpha, max_degree, tol) {
            Ok(report) => SweepOutcome::NoRoot(Box::new(report)),
            Err(e) => SweepOutcome::Failed(e.to_string()),
        },
        Err(e) => SweepOutcome::Failed(e.to_string()),
    };
    SweepEntry { alpha, outcome }
}

/// Per-α existence / approximation sweep. Entries are independent and pure;
/// with the `parallel` feature they run on the rayon pool. Output order
/// always matches input order, and a failing entry never aborts the rest.
pub fn sweep_alpha(alphas: &[f64], epsilon: f64, max_degree: usize) -> Vec<SweepEntry> {
    exec::map_ordered(alphas.to_vec(), |alpha| {
        sweep_one(alpha, epsilon, max_degree)
    })
}

/// Sequential twin of [`sweep_alpha`], for comparison benchmarks and as the
/// portable reference path.
pub fn sweep_alpha_sequential(alphas: &[f64], epsilon: f64, max_degree: usize) -> Vec<SweepEntry> {
    exec::map_ordered_sequential(alphas.to_vec(), |alpha| {
        sweep_one(alpha, epsilon, max_degree)
    })
}
