//! Smallest-positive-root location: sign-scan bracketing with
//! derivative-guided refinement, then guaranteed bisection.

use crate::error::{Error, Result};
use crate::series::TruncatedPolynomial;
use crate::specialfn::gamma_ratio;

/// Levels of step halving applied where p' changes sign across a scan cell,
/// so no crossing wider than initial_step / 2^10 is missed.
const REFINE_LEVELS: u32 = 10;

/// Grid cells in the default scan, step = x_max / 1024.
pub const DEFAULT_SCAN_CELLS: usize = 1024;

/// A located smallest positive root of a truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RootResult {
    /// Midpoint of the final bracket.
    pub value: f64,
    /// Final enclosing interval, p(bracket_lo) > 0 >= p(bracket_hi).
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Degree of the truncation searched.
    pub degree: usize,
    /// Achieved bracket width (<= the requested tolerance).
    pub refine_tol: f64,
    /// Bisection iterations spent.
    pub iterations: usize,
}

/// The scan limit the theory certifies: Γ(2n+6)/Γ(2n+5-α). Roots beyond it
/// carry no existence guarantee, so scanning further adds nothing.
pub fn default_scan_limit(alpha: f64, degree: usize) -> Result<f64> {
    let n = degree as f64;
    gamma_ratio(2.0 * n + 6.0, 2.0 * n + 5.0 - alpha)
}

/// Scans (0, x_max] for the first sign change of p, positive to
/// non-positive. Cells where p stays positive but p' changes sign are
/// subdivided up to 10 levels, so a dip narrower than the base step is
/// still caught down to initial_step/1024. Returns the enclosing cell, or
/// None when no crossing is found — a valid outcome, not an error.
pub fn find_first_bracket(
    p: &TruncatedPolynomial,
    x_max: f64,
    initial_step: f64,
) -> Option<(f64, f64)> {
    assert!(
        x_max.is_finite() && x_max > 0.0 && initial_step.is_finite() && initial_step > 0.0,
        "scan needs positive finite x_max and step"
    );
    let mut a = 0.0f64;
    let mut va = p.eval(a);
    let mut da = p.eval_derivative(a);
    while a < x_max {
        let b = (a + initial_step).min(x_max);
        let vb = p.eval(b);
        let db = p.eval_derivative(b);
        if let Some(bracket) = scan_cell(p, a, va, da, b, vb, db, REFINE_LEVELS) {
            return Some(bracket);
        }
        a = b;
        va = vb;
        da = db;
    }
    None
}

/// Checks one cell for the first positive-to-nonpositive crossing,
/// descending left-first. Crossing cells are narrowed to the refinement
/// resolution so a coarse cell spanning several crossings still yields the
/// first one; positive-positive cells are only descended where p' flips
/// sign (the signature of an interior dip).
#[allow(clippy::too_many_arguments)]
fn scan_cell(
    p: &TruncatedPolynomial,
    a: f64,
    va: f64,
    da: f64,
    b: f64,
    vb: f64,
    db: f64,
    depth: u32,
) -> Option<(f64, f64)> {
    if va <= 0.0 {
        // already past a crossing the caller will have caught
        return None;
    }
    let crossing = vb <= 0.0;
    if depth == 0 {
        return crossing.then_some((a, b));
    }
    if !crossing && da.signum() == db.signum() {
        return None;
    }
    let m = 0.5 * (a + b);
    if m <= a || m >= b {
        return crossing.then_some((a, b));
    }
    let vm = p.eval(m);
    let dm = p.eval_derivative(m);
    scan_cell(p, a, va, da, m, vm, dm, depth - 1)
        .or_else(|| scan_cell(p, m, vm, dm, b, vb, db, depth - 1))
}

/// Bisects a sign-change bracket down to width <= tol. Convergence is
/// guaranteed by construction; the bracket invariant p(lo) > 0 >= p(hi)
/// holds at every iteration.
pub fn refine(p: &TruncatedPolynomial, bracket: (f64, f64), tol: f64) -> Result<RootResult> {
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    if !(p.eval(lo) > 0.0 && p.eval(hi) <= 0.0) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // f64 resolution exhausted
        }
        if p.eval(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(RootResult {
        value: 0.5 * (lo + hi),
        bracket_lo: lo,
        bracket_hi: hi,
        degree: p.degree(),
        refine_tol: hi - lo,
        iterations,
    })
}

/// First positive root of p in (0, x_max], refined to absolute width tol,
/// or None when p has no sign change there.
pub fn smallest_positive_root(
    p: &TruncatedPolynomial,
    x_max: f64,
    tol: f64,
) -> Option<RootResult> {
    let step = x_max / DEFAULT_SCAN_CELLS as f64;
    let bracket = find_first_bracket(p, x_max, step)?;
    Some(refine(p, bracket, tol).expect("scan produced a valid bracket"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::CoefficientTable;

    const TOL: f64 = 1e-10;

    fn poly(alpha: f64, n: usize) -> TruncatedPolynomial {
        TruncatedPolynomial::new(alpha, n).unwrap()
    }

    fn root(alpha: f64, n: usize) -> Option<RootResult> {
        let p = poly(alpha, n);
        let x_max = default_scan_limit(alpha, n).unwrap();
        smallest_positive_root(&p, x_max, TOL)
    }

    #[test]
    fn linear_root_is_exact_reciprocal() {
        // p_1 root = 1/a_1 for any α
        for &alpha in &[0.2, 0.526, 0.9] {
            let p = poly(alpha, 1);
            let r = smallest_positive_root(&p, 60.0, TOL).unwrap();
            let want = 1.0 / p.table().a(1);
            assert!((r.value - want).abs() < TOL, "alpha={alpha}");
            assert!(r.bracket_lo <= r.value && r.value <= r.bracket_hi);
            assert!(r.refine_tol <= TOL);
        }
    }

    #[test]
    fn even_quadratic_has_no_root_at_classic_index() {
        // 1 - x/6 + x²/120 has negative discriminant
        assert!(root(1.0, 2).is_none());
    }

    #[test]
    fn degrees_without_positive_roots() {
        // all even truncations through degree 10 stay positive at α = 0.527
        for n in [2, 4, 6, 8, 10] {
            assert!(root(0.527, n).is_none(), "degree {n}");
        }
        let p = poly(0.527, 10);
        assert!(find_first_bracket(&p, 60.0, 60.0 / 1024.0).is_none());
    }

    #[test]
    fn first_even_root_appears_at_degree_12() {
        let r = root(0.527, 12).unwrap();
        assert!((r.value - 17.31407405809517).abs() < 1e-9, "got {}", r.value);
        let p = poly(0.527, 12);
        assert!(p.eval(r.bracket_lo) > 0.0 && p.eval(r.bracket_hi) < 0.0);
    }

    #[test]
    fn tabulated_roots_across_alpha() {
        // reference roots refined to 1e-20 with mpmath
        let cases = [
            (0.527, 13, 17.30910486451016),
            (0.527, 14, 17.30961110696943),
            (0.527, 15, 17.30956418467211),
            (0.6, 13, 12.97715514738646),
            (0.7, 12, 11.45145302639966),
            (0.526, 1, 4.596026998310653),
        ];
        for &(alpha, n, want) in &cases {
            let r = root(alpha, n).unwrap();
            assert!(
                (r.value - want).abs() < 1e-9,
                "alpha={alpha} n={n}: got {}, want {want}",
                r.value
            );
        }
    }

    #[test]
    fn classic_limit_root_is_pi_squared() {
        let r = root(1.0, 60).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!((r.value - pi2).abs() < 1e-9, "got {}", r.value);
    }

    #[test]
    fn root_residual_bounded_by_slope_times_tol() {
        for &(alpha, n) in &[(0.527f64, 12usize), (0.6, 13), (1.0, 8), (0.526, 9)] {
            let p = poly(alpha, n);
            let x_max = default_scan_limit(alpha, n).unwrap();
            let r = smallest_positive_root(&p, x_max, TOL).unwrap();
            let bound = 2.0 * p.eval_derivative(r.value).abs() * r.refine_tol;
            assert!(
                p.eval(r.value).abs() <= bound.max(1e-300),
                "alpha={alpha} n={n}: |p| = {:e}, bound = {bound:e}",
                p.eval(r.value).abs()
            );
        }
    }

    #[test]
    fn minimality_no_earlier_sign_change() {
        // p stays positive on the scan grid strictly before the root
        let p = poly(0.526, 9);
        let x_max = default_scan_limit(0.526, 9).unwrap();
        let r = smallest_positive_root(&p, x_max, TOL).unwrap();
        let step = r.value / 2000.0;
        let mut x = step;
        while x < r.value - TOL {
            assert!(p.eval(x) > 0.0, "x={x}");
            x += step;
        }
    }

    #[test]
    fn odd_degrees_always_cross_below_certified_limit() {
        for &alpha in &[0.1, 0.3, 0.526, 0.7, 1.0] {
            let table = CoefficientTable::build(alpha, 22).unwrap();
            for n in (1..=21).step_by(2) {
                let p = TruncatedPolynomial::from_table(&table, n).unwrap();
                let x_max = default_scan_limit(alpha, n).unwrap();
                assert!(
                    smallest_positive_root(&p, x_max, TOL).is_some(),
                    "alpha={alpha} degree={n}"
                );
            }
        }
    }

    #[test]
    fn sequence_ordering_around_the_limit_root() {
        // r_13 < r_15 < s0 proxy < r_14 < r_12 at α = 0.527
        let table = CoefficientTable::build(0.527, 201).unwrap();
        let mut roots = std::collections::HashMap::new();
        for n in [12usize, 13, 14, 15, 200] {
            let p = TruncatedPolynomial::from_table(&table, n).unwrap();
            let r = smallest_positive_root(&p, 40.0, 1e-12).unwrap();
            roots.insert(n, r.value);
        }
        assert!(roots[&13] < roots[&15]);
        assert!(roots[&15] < roots[&200]);
        assert!(roots[&200] < roots[&14]);
        assert!(roots[&14] < roots[&12]);
    }

    #[test]
    fn refine_rejects_invalid_brackets() {
        let p = poly(0.527, 12);
        assert!(matches!(
            refine(&p, (1.0, 2.0), TOL),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(matches!(
            refine(&p, (5.0, 3.0), TOL),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn narrow_dip_found_by_derivative_descent() {
        // the p_200 proxy at α=0.527 has its certified dip near 17.3 but a
        // default scan limit in the thousands: the base step is ~9 wide and
        // only the derivative-guided subdivision can catch the crossing
        let p = poly(0.527, 200);
        let x_max = default_scan_limit(0.527, 200).unwrap();
        assert!(x_max > 5000.0);
        let r = smallest_positive_root(&p, x_max, 1e-10).unwrap();
        assert!((r.value - 17.30956784803416).abs() < 1e-8, "got {}", r.value);
    }
}
