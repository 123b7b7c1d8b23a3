//! Machine checks of the hypotheses the certificate rests on: the two
//! Gamma-ratio assumptions, ratio monotonicity, interlacing of the
//! truncations against a high-degree proxy, and the non-existence evidence
//! procedure over the fractional index.

use crate::error::{Error, Result};
use crate::exec;
use crate::rootfind::{default_scan_limit, smallest_positive_root};
use crate::series::TruncatedPolynomial;
use crate::specialfn::{gamma_ratio, lgamma_raw, validate_alpha, CoefficientTable};

/// Which hypothesis a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Assumption {
    A,
    B,
}

/// Outcome of checking Assumption A or B at an even base degree n0.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AssumptionReport {
    pub which: Assumption,
    pub alpha: f64,
    pub n0: usize,
    pub holds: bool,
    /// bound - root; the hypothesis holds when this is >= 0 (and, for B,
    /// the derivative stays <= 0 on the grid).
    pub margin: f64,
    /// The Gamma-ratio side of the inequality: Γ(2n0+6)/Γ(2n0+5-α) for A,
    /// that times (n0+1)/(n0+2) for B.
    pub bound: f64,
    /// The root side: r_n0 for A, the interval's right end for B.
    pub root: f64,
    /// B only: largest p'_n0 value seen on the sample grid.
    pub derivative_max: Option<f64>,
}

fn require_even(n0: usize) -> Result<()> {
    if n0 % 2 != 0 {
        return Err(Error::EvenDegreeRequired { degree: n0 });
    }
    Ok(())
}

/// Assumption A: Γ(2n0+6)/Γ(2n0+5-α) >= r_n0 for an even n0 whose
/// truncation has the verified first positive root r_n0.
pub fn check_assumption_a(alpha: f64, n0: usize, r_n0: f64) -> Result<AssumptionReport> {
    validate_alpha(alpha)?;
    require_even(n0)?;
    if !r_n0.is_finite() || r_n0 < 0.0 {
        return Err(Error::Domain {
            what: "root must be finite and non-negative",
            value: r_n0,
        });
    }
    let bound = gamma_ratio(2.0 * n0 as f64 + 6.0, 2.0 * n0 as f64 + 5.0 - alpha)?;
    let margin = bound - r_n0;
    Ok(AssumptionReport {
        which: Assumption::A,
        alpha,
        n0,
        holds: margin >= 0.0,
        margin,
        bound,
        root: r_n0,
        derivative_max: None,
    })
}

/// Assumption B: p'_n0 <= 0 on [r_lo, r_hi] = [r_{n0+1}, r_n0], sampled on
/// `grid_points` points, and ((n0+1)/(n0+2))·Γ(2n0+6)/Γ(2n0+5-α) >= r_hi.
///
/// The sign condition is a dense sample, not an interval proof: the grid
/// size is the caller's rigor knob.
pub fn check_assumption_b(
    alpha: f64,
    n0: usize,
    r_lo: f64,
    r_hi: f64,
    grid_points: usize,
) -> Result<AssumptionReport> {
    validate_alpha(alpha)?;
    require_even(n0)?;
    if !(r_lo.is_finite() && r_hi.is_finite() && 0.0 <= r_lo && r_lo <= r_hi) {
        return Err(Error::InvalidInterval { lo: r_lo, hi: r_hi });
    }
    if grid_points < 100 {
        return Err(Error::Domain {
            what: "assumption B needs at least 100 grid points",
            value: grid_points as f64,
        });
    }
    let p = TruncatedPolynomial::new(alpha, n0)?;
    let mut derivative_max = f64::NEG_INFINITY;
    if r_lo == r_hi {
        derivative_max = p.eval_derivative(r_lo);
    } else {
        let h = (r_hi - r_lo) / (grid_points - 1) as f64;
        for i in 0..grid_points {
            let x = r_lo + h * i as f64;
            derivative_max = derivative_max.max(p.eval_derivative(x));
        }
    }
    let ratio_term = (n0 as f64 + 1.0) / (n0 as f64 + 2.0)
        * gamma_ratio(2.0 * n0 as f64 + 6.0, 2.0 * n0 as f64 + 5.0 - alpha)?;
    let margin = ratio_term - r_hi;
    Ok(AssumptionReport {
        which: Assumption::B,
        alpha,
        n0,
        holds: margin >= 0.0 && derivative_max <= 0.0,
        margin,
        bound: ratio_term,
        root: r_hi,
        derivative_max: Some(derivative_max),
    })
}

/// Verifies that f(x) = Γ(x+1)/Γ(x-α) and
/// g(x) = x·Γ(2x+4)/((x+1)·Γ(2x+3-α)) are strictly increasing over the
/// integers 1..=k_max, in log space. At x = 1, α = 1 the f denominator is
/// Γ(0) = ∞, i.e. ln f = -∞, which any finite successor exceeds.
pub fn verify_lemma_monotonicity(alpha: f64, k_max: usize) -> Result<bool> {
    validate_alpha(alpha)?;
    if k_max < 2 {
        return Err(Error::Domain {
            what: "monotonicity check needs k_max >= 2",
            value: k_max as f64,
        });
    }
    let log_f = |x: f64| {
        if x - alpha <= 0.0 {
            f64::NEG_INFINITY
        } else {
            lgamma_raw(x + 1.0) - lgamma_raw(x - alpha)
        }
    };
    let log_g = |x: f64| {
        x.ln() + lgamma_raw(2.0 * x + 4.0) - (x + 1.0).ln() - lgamma_raw(2.0 * x + 3.0 - alpha)
    };
    for k in 1..k_max {
        let x = k as f64;
        if !(log_f(x + 1.0) > log_f(x)) || !(log_g(x + 1.0) > log_g(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a grid interlacing check.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum InterlacingOutcome {
    Holds,
    /// An ordering violation larger than the numerical slack at abscissa x.
    Violated { x: f64 },
    /// The proxy's tail bound ate more than half the even-odd envelope
    /// somewhere: the proxy degree is too low to discriminate.
    Inconclusive { x: f64, tail_bound: f64, gap: f64 },
}

impl InterlacingOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, InterlacingOutcome::Holds)
    }
}

/// Grid check of p_{n0+1} < p_{n0+3} < p_∞ < p_{n0+2} < p_{n0} on
/// (0, r_n0], with a degree-`proxy_degree` truncation standing in for p_∞
/// and its tail bound added as slack. Differences below the f64 resolution
/// of the evaluations (eps times the all-positive term sum) count as ties,
/// not violations.
pub fn verify_interlacing(
    alpha: f64,
    n0: usize,
    proxy_degree: usize,
    grid_points: usize,
) -> Result<InterlacingOutcome> {
    validate_alpha(alpha)?;
    require_even(n0)?;
    if proxy_degree < n0 + 20 {
        return Err(Error::Domain {
            what: "proxy degree must be at least n0 + 20",
            value: proxy_degree as f64,
        });
    }
    if grid_points < 2 {
        return Err(Error::Domain {
            what: "interlacing check needs at least 2 grid points",
            value: grid_points as f64,
        });
    }
    let table = CoefficientTable::build(alpha, proxy_degree + 1)?;
    let p0 = TruncatedPolynomial::from_table(&table, n0)?;
    let p1 = TruncatedPolynomial::from_table(&table, n0 + 1)?;
    let p2 = TruncatedPolynomial::from_table(&table, n0 + 2)?;
    let p3 = TruncatedPolynomial::from_table(&table, n0 + 3)?;
    let proxy = TruncatedPolynomial::from_table(&table, proxy_degree)?;

    let x_max = default_scan_limit(alpha, n0)?;
    let r0 = smallest_positive_root(&p0, x_max, 1e-10).ok_or(Error::NoRootFound {
        alpha,
        max_degree: n0,
    })?;

    let mut worst_inconclusive: Option<(f64, f64, f64)> = None;
    for i in 1..=grid_points {
        let x = r0.value * i as f64 / grid_points as f64;
        let (v0, v1, v2, v3) = (p0.eval(x), p1.eval(x), p2.eval(x), p3.eval(x));
        let vp = proxy.eval(x);
        let tb = proxy.tail_bound(x).unwrap_or(f64::INFINITY);
        let noise = 4.0 * f64::EPSILON * proxy.eval_abs(x);
        let poly_slack = noise;
        let proxy_slack = tb + noise;
        if v1 > v3 + poly_slack
            || v3 > vp + proxy_slack
            || vp > v2 + proxy_slack
            || v2 > v0 + poly_slack
        {
            return Ok(InterlacingOutcome::Violated { x });
        }
        let envelope = v2 - v3;
        if envelope > 4.0 * noise && tb > 0.5 * envelope {
            let entry = (x, tb, envelope);
            worst_inconclusive = Some(match worst_inconclusive {
                Some(prev) if prev.1 >= tb => prev,
                _ => entry,
            });
        }
    }
    if let Some((x, tail_bound, gap)) = worst_inconclusive {
        return Ok(InterlacingOutcome::Inconclusive { x, tail_bound, gap });
    }
    Ok(InterlacingOutcome::Holds)
}

/// Grid check of the parity orderings p_{n0+4} < p_{n0+2} < p_{n0} (even)
/// and p_{n0+1} < p_{n0+3} < p_{n0+5} (odd) over (0, r_n0].
pub fn verify_parity_monotonicity(
    alpha: f64,
    n0: usize,
    grid_points: usize,
) -> Result<InterlacingOutcome> {
    validate_alpha(alpha)?;
    require_even(n0)?;
    if grid_points < 2 {
        return Err(Error::Domain {
            what: "parity check needs at least 2 grid points",
            value: grid_points as f64,
        });
    }
    let table = CoefficientTable::build(alpha, n0 + 6)?;
    let polys: Vec<TruncatedPolynomial> = (0..=5)
        .map(|d| TruncatedPolynomial::from_table(&table, n0 + d))
        .collect::<Result<_>>()?;
    let x_max = default_scan_limit(alpha, n0)?;
    let r0 = smallest_positive_root(&polys[0], x_max, 1e-10).ok_or(Error::NoRootFound {
        alpha,
        max_degree: n0,
    })?;
    for i in 1..=grid_points {
        let x = r0.value * i as f64 / grid_points as f64;
        let v: Vec<f64> = polys.iter().map(|p| p.eval(x)).collect();
        let slack = 4.0 * f64::EPSILON * polys[5].eval_abs(x);
        if v[4] > v[2] + slack || v[2] > v[0] + slack {
            return Ok(InterlacingOutcome::Violated { x });
        }
        if v[1] > v[3] + slack || v[3] > v[5] + slack {
            return Ok(InterlacingOutcome::Violated { x });
        }
    }
    Ok(InterlacingOutcome::Holds)
}

/// One odd degree in an existence sweep: its first positive root, the
/// certified interval limit Γ(2m+6)/Γ(2m+5-α), and whether the root falls
/// inside it.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OddRootEntry {
    pub degree: usize,
    pub root: f64,
    pub bound: f64,
    pub condition_ok: bool,
}

/// Final call of an existence sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Verdict {
    Exists,
    NoEvidenceOfRoot,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "exists",
            Verdict::NoEvidenceOfRoot => "no-evidence-of-root",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence for or against a positive root of the limit function at a given
/// fractional index.
///
/// "No evidence" is exactly that: every odd-degree root lies inside its
/// certified root-free interval for the limit, and no even truncation up to
/// `max_degree_checked` crosses zero. It is numerical evidence, not proof.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExistenceReport {
    pub alpha: f64,
    pub max_degree_checked: usize,
    /// First (degree, root) among even truncations, if any crossed.
    pub even_root_found: Option<(usize, f64)>,
    pub odd_roots: Vec<OddRootEntry>,
    pub verdict: Verdict,
}

/// Runs the existence sweep at one α: roots of all odd truncations up to
/// `max_degree` with their interval bounds, absence checks for all even
/// ones, and the combined verdict.
pub fn nonexistence_evidence(
    alpha: f64,
    max_degree: usize,
    tol: f64,
) -> Result<ExistenceReport> {
    validate_alpha(alpha)?;
    if max_degree < 3 {
        return Err(Error::Domain {
            what: "existence sweep needs max_degree >= 3",
            value: max_degree as f64,
        });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain {
            what: "tolerance must be positive",
            value: tol,
        });
    }
    let table = CoefficientTable::build(alpha, max_degree + 1)?;

    let degrees: Vec<usize> = (1..=max_degree).collect();
    let found = exec::map_ordered(degrees, |m| {
        let p = TruncatedPolynomial::from_table(&table, m).expect("degree within cap");
        let bound = default_scan_limit(alpha, m).expect("ratio in range");
        // odd truncations always cross somewhere; widen past the certified
        // limit if needed so the root can still be reported (condition_ok
        // will be false then)
        let mut root = smallest_positive_root(&p, bound, tol);
        if root.is_none() && m % 2 == 1 {
            for widen in [4.0, 16.0] {
                root = smallest_positive_root(&p, widen * bound, tol);
                if root.is_some() {
                    break;
                }
            }
        }
        (m, bound, root)
    });

    let mut even_root_found = None;
    let mut odd_roots = Vec::new();
    let mut all_odd_ok = true;
    for (m, bound, root) in found {
        if m % 2 == 0 {
            if even_root_found.is_none() {
                if let Some(r) = root {
                    even_root_found = Some((m, r.value));
                }
            }
        } else {
            match root {
                Some(r) => {
                    let condition_ok = r.value <= bound;
                    all_odd_ok &= condition_ok;
                    odd_roots.push(OddRootEntry {
                        degree: m,
                        root: r.value,
                        bound,
                        condition_ok,
                    });
                }
                None => {
                    all_odd_ok = false;
                    odd_roots.push(OddRootEntry {
                        degree: m,
                        root: f64::NAN,
                        bound,
                        condition_ok: false,
                    });
                }
            }
        }
    }
    let verdict = if even_root_found.is_some() {
        Verdict::Exists
    } else if all_odd_ok {
        Verdict::NoEvidenceOfRoot
    } else {
        Verdict::Inconclusive
    };
    Ok(ExistenceReport {
        alpha,
        max_degree_checked: max_degree,
        even_root_found,
        odd_roots,
        verdict,
    })
}
