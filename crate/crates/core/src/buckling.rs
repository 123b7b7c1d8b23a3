//! Physics surface: critical load, deflection curves, symmetrization, and
//! the solution-residual norm for a concrete column.
//!
//! SI units throughout (Pa, m, N); no conversion layer.

use crate::error::{Error, Result};
use crate::series::{SolutionCurve, TruncatedPolynomial, MAX_DEGREE};
use crate::solver::S0Approximation;
use crate::specialfn::{gamma, validate_alpha};

/// Physical inputs: stiffness, geometry, fractional index, and the free
/// amplitude scale b1 = y'(0) (indeterminate at the critical load, pure
/// scale on the curves; defaults to 1).
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ColumnSpec {
    /// Young's modulus E (Pa).
    pub young_modulus: f64,
    /// Second moment of area I (m^4).
    pub second_moment: f64,
    /// Column length l (m).
    pub length: f64,
    /// Fractional index α in (0, 1].
    pub alpha: f64,
    /// Initial slope y'(0).
    pub initial_slope: f64,
}

impl ColumnSpec {
    pub fn new(
        young_modulus: f64,
        second_moment: f64,
        length: f64,
        alpha: f64,
        initial_slope: f64,
    ) -> Result<Self> {
        validate_alpha(alpha)?;
        for (what, v) in [
            ("Young's modulus must be positive", young_modulus),
            ("second moment of area must be positive", second_moment),
            ("column length must be positive", length),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain { what, value: v });
            }
        }
        if !initial_slope.is_finite() {
            return Err(Error::Domain {
                what: "initial slope must be finite",
                value: initial_slope,
            });
        }
        Ok(ColumnSpec {
            young_modulus,
            second_moment,
            length,
            alpha,
            initial_slope,
        })
    }
}

/// The critical buckling force P = E·I·Γ(2-α)·s0/l² and the load parameter
/// λ = P/(E·I·Γ(2-α)) = s0/l².
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalLoad {
    /// Force (N).
    pub force: f64,
    /// λ (1/m²).
    pub lambda: f64,
    /// The approximation consumed, certificate included.
    pub s0: S0Approximation,
}

/// Maps a certified s0 to the critical load of a concrete column. The
/// approximation must have been computed at the column's fractional index.
pub fn critical_load(spec: &ColumnSpec, s0: &S0Approximation) -> Result<CriticalLoad> {
    if spec.alpha != s0.alpha {
        return Err(Error::AlphaMismatch {
            spec_alpha: spec.alpha,
            s0_alpha: s0.alpha,
        });
    }
    let lambda = s0.value / (spec.length * spec.length);
    let force =
        spec.young_modulus * spec.second_moment * gamma(2.0 - spec.alpha)? * lambda;
    Ok(CriticalLoad {
        force,
        lambda,
        s0: s0.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CurveKind {
    Raw,
    Symmetrized,
}

/// Sampled deflection values, y scaled by b1.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CurveSamples {
    /// Abscissae in [0, l] (m), uniform.
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub kind: CurveKind,
}

/// Truncation error budget for curve evaluation.
const CURVE_TAIL_TOL: f64 = 1e-12;

/// Samples y(x) = b1·x·p_N(λx²) on a uniform grid over [0, l] at the
/// certified λ = s0/l², with N raised until the series tail over the whole
/// span is below 1e-12.
pub fn deflection_curve(
    spec: &ColumnSpec,
    s0: &S0Approximation,
    n_samples: usize,
) -> Result<CurveSamples> {
    if n_samples < 2 {
        return Err(Error::Domain {
            what: "curve needs at least 2 samples",
            value: n_samples as f64,
        });
    }
    if spec.alpha != s0.alpha {
        return Err(Error::AlphaMismatch {
            spec_alpha: spec.alpha,
            s0_alpha: s0.alpha,
        });
    }
    let lambda = s0.value / (spec.length * spec.length);
    let u_max = s0.value; // λ l²
    let mut degree = s0.degree_used.max(8);
    loop {
        let probe = TruncatedPolynomial::new(spec.alpha, degree)?;
        match probe.tail_bound(u_max) {
            Some(tb) if tb < CURVE_TAIL_TOL => break,
            _ if degree >= MAX_DEGREE => {
                return Err(Error::Domain {
                    what: "tail tolerance unreachable within the degree cap",
                    value: degree as f64,
                });
            }
            _ => degree += 4,
        }
    }
    let curve = SolutionCurve::new(spec.alpha, lambda, spec.initial_slope, degree)?;
    let h = spec.length / (n_samples - 1) as f64;
    let mut xs = Vec::with_capacity(n_samples);
    let mut ys = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let x = if i + 1 == n_samples {
            spec.length
        } else {
            h * i as f64
        };
        xs.push(x);
        ys.push(curve.eval(x));
    }
    Ok(CurveSamples {
        xs,
        ys,
        kind: CurveKind::Raw,
    })
}

/// w(x) = (y(x) + y(l-x))/2 on the same grid; w is symmetric about l/2 by
/// construction. The grid must be uniform so the reflection lands on
/// sample points.
pub fn symmetrize(curve: &CurveSamples) -> Result<CurveSamples> {
    let n = curve.xs.len();
    if n < 2 {
        return Err(Error::NonUniformGrid);
    }
    let span = curve.xs[n - 1] - curve.xs[0];
    let h = span / (n - 1) as f64;
    for (i, &x) in curve.xs.iter().enumerate() {
        if (x - (curve.xs[0] + h * i as f64)).abs() > 1e-9 * span.abs().max(1.0) {
            return Err(Error::NonUniformGrid);
        }
    }
    let ys = (0..n)
        .map(|i| 0.5 * (curve.ys[i] + curve.ys[n - 1 - i]))
        .collect();
    Ok(CurveSamples {
        xs: curve.xs.clone(),
        ys,
        kind: CurveKind::Symmetrized,
    })
}

/// Max |Caputo residual| of the degree-`degree` truncated solution over
/// `n_samples` points of (0, l], at the certified λ.
///
/// Evaluated through the telescoped closed form, which stays meaningful far
/// below the cancellation floor of f64 summation; the termwise identity
/// behind it is validated in the series tests.
pub fn residual_norm(
    spec: &ColumnSpec,
    s0: &S0Approximation,
    degree: usize,
    n_samples: usize,
) -> Result<f64> {
    if degree == 0 {
        return Err(Error::Domain {
            what: "residual needs degree >= 1",
            value: 0.0,
        });
    }
    if n_samples == 0 {
        return Err(Error::Domain {
            what: "residual needs at least 1 sample",
            value: 0.0,
        });
    }
    if spec.alpha != s0.alpha {
        return Err(Error::AlphaMismatch {
            spec_alpha: spec.alpha,
            s0_alpha: s0.alpha,
        });
    }
    let lambda = s0.value / (spec.length * spec.length);
    let curve = SolutionCurve::new(spec.alpha, lambda, spec.initial_slope, degree)?;
    let mut worst = 0.0f64;
    for i in 1..=n_samples {
        let x = spec.length * i as f64 / n_samples as f64;
        worst = worst.max(curve.caputo_residual_closed_form(x).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::approximate_s0;

    const PI: f64 = std::f64::consts::PI;

    fn unit_column(alpha: f64) -> ColumnSpec {
        ColumnSpec::new(1.0, 1.0, 1.0, alpha, 1.0).unwrap()
    }

    #[test]
    fn classic_limit_reproduces_euler_load() {
        let s0 = approximate_s0(1.0, 1e-6, 40, 1e-10).unwrap();
        let load = critical_load(&unit_column(1.0), &s0).unwrap();
        assert!((load.force - PI * PI).abs() < 1e-6, "P = {}", load.force);
        assert!((load.lambda - PI * PI).abs() < 1e-6);

        // scaled: E=200 GPa, I=1e-6 m^4, l=2 m -> P = π²·200e9·1e-6/4
        let col = ColumnSpec::new(200e9, 1e-6, 2.0, 1.0, 1.0).unwrap();
        let load = critical_load(&col, &s0).unwrap();
        assert!((load.force - 4.9348022e5).abs() < 1.0, "P = {}", load.force);
    }

    #[test]
    fn fractional_load_carries_the_gamma_factor() {
        let s0 = approximate_s0(0.527, 1e-3, 40, 1e-9).unwrap();
        let load = critical_load(&unit_column(0.527), &s0).unwrap();
        // P = Γ(1.473)·s0 for a unit column; Γ(1.473) = 0.885658377619 (mpmath)
        let want = 0.8856583776189722 * s0.value;
        assert!((load.force - want).abs() / want < 1e-12);
        // λ roundtrip: λ·E·I·Γ(2-α) = P and λ·l² = s0
        assert!((load.lambda - s0.value).abs() / s0.value < 1e-12);
    }

    #[test]
    fn load_scales_linearly_in_stiffness_and_inverse_square_in_length() {
        let s0 = approximate_s0(0.7, 1e-6, 40, 1e-10).unwrap();
        let base = critical_load(&unit_column(0.7), &s0).unwrap().force;
        let doubled_e = ColumnSpec::new(2.0, 1.0, 1.0, 0.7, 1.0).unwrap();
        assert!((critical_load(&doubled_e, &s0).unwrap().force - 2.0 * base).abs() < 1e-12);
        let doubled_l = ColumnSpec::new(1.0, 1.0, 2.0, 0.7, 1.0).unwrap();
        assert!((critical_load(&doubled_l, &s0).unwrap().force - base / 4.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_mismatch_is_rejected() {
        let s0 = approximate_s0(0.7, 1e-6, 40, 1e-10).unwrap();
        assert!(matches!(
            critical_load(&unit_column(0.6), &s0),
            Err(Error::AlphaMismatch { .. })
        ));
    }

    #[test]
    fn classic_curve_is_a_sine_arch() {
        // at α=1, λ=π², l=1: y(x) = b1·sin(πx)/π
        let s0 = approximate_s0(1.0, 1e-6, 40, 1e-10).unwrap();
        let curve = deflection_curve(&unit_column(1.0), &s0, 100).unwrap();
        assert_eq!(curve.ys[0], 0.0);
        for (&x, &y) in curve.xs.iter().zip(&curve.ys) {
            let want = (PI * x).sin() / PI;
            assert!((y - want).abs() < 1e-9, "x={x}: y={y}, want {want}");
        }
        // midpoint ratio y(1/2)/b1 = 1/π
        let mid = curve.ys[49];
        assert!((curve.xs[49] - 0.494949494949).abs() < 1e-9);
        assert!((mid - (PI * curve.xs[49]).sin() / PI).abs() < 1e-9);
    }

    #[test]
    fn curve_endpoint_vanishes_within_certificate() {
        let s0 = approximate_s0(0.527, 1e-3, 40, 1e-9).unwrap();
        let spec = unit_column(0.527);
        let curve = deflection_curve(&spec, &s0, 64).unwrap();
        assert_eq!(curve.ys[0], 0.0);
        // |y(l)| = |b1·l·p(s0_approx)|: bounded by slope times the ε bound
        // plus the series tail
        let endpoint = curve.ys.last().unwrap().abs();
        assert!(endpoint < 1e-3, "endpoint {endpoint}");
    }

    #[test]
    fn symmetrize_fixes_symmetric_curves() {
        let s0 = approximate_s0(1.0, 1e-6, 40, 1e-10).unwrap();
        let curve = deflection_curve(&unit_column(1.0), &s0, 101).unwrap();
        let sym = symmetrize(&curve).unwrap();
        assert_eq!(sym.kind, CurveKind::Symmetrized);
        for i in 0..curve.ys.len() {
            assert!((sym.ys[i] - curve.ys[i]).abs() < 1e-12);
            // w(x) = w(l-x) exactly by construction
            assert_eq!(sym.ys[i], sym.ys[curve.ys.len() - 1 - i]);
        }
    }

    #[test]
    fn symmetrize_rejects_non_uniform_grids() {
        let bad = CurveSamples {
            xs: vec![0.0, 0.1, 0.5, 1.0],
            ys: vec![0.0, 0.2, 0.3, 0.0],
            kind: CurveKind::Raw,
        };
        assert!(matches!(symmetrize(&bad), Err(Error::NonUniformGrid)));
    }

    #[test]
    fn residual_norm_decays_with_degree() {
        let s0 = approximate_s0(0.6, 1e-6, 40, 1e-10).unwrap();
        let spec = unit_column(0.6);
        let r10 = residual_norm(&spec, &s0, 10, 50).unwrap();
        let r20 = residual_norm(&spec, &s0, 20, 50).unwrap();
        assert!(r20 / r10 < 1e-6, "r10={r10:e} r20={r20:e}");
    }

    #[test]
    fn residual_norm_classic_limit_is_negligible() {
        let s0 = approximate_s0(1.0, 1e-6, 40, 1e-10).unwrap();
        let r = residual_norm(&unit_column(1.0), &s0, 60, 50).unwrap();
        assert!(r < 1e-30, "r = {r:e}");
    }

    #[test]
    fn residual_norm_zero_amplitude() {
        let s0 = approximate_s0(0.6, 1e-6, 40, 1e-10).unwrap();
        let spec = ColumnSpec::new(1.0, 1.0, 1.0, 0.6, 0.0).unwrap();
        assert_eq!(residual_norm(&spec, &s0, 12, 20).unwrap(), 0.0);
    }
}
