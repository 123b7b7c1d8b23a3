//! Truncations p_n of the limit series, their derivatives, tail bounds, and
//! the Caputo residual of the truncated solution.
//!
//! p_n(x) = Σ_{k=0..n} (-1)^k a_k x^k with the a_k from
//! [`CoefficientTable`]. The limit p_∞ is never materialized: callers pair a
//! truncation with [`TruncatedPolynomial::tail_bound`] and pick the degree so
//! the bound is below their tolerance.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::specialfn::{validate_alpha, CoefficientTable};

/// Hard cap on truncation degree. Coefficients decay factorially, so no
/// tolerance in this problem needs more.
pub const MAX_DEGREE: usize = 200;

/// A truncation p_n(x) = Σ (-1)^k a_k x^k for fixed α.
///
/// Evaluation runs Horner in double-double (a compensated scheme): near the
/// existence boundary the alternating terms reach magnitude ~6 while the sum
/// is ~0, and root refinement needs the sign honest well below that.
#[derive(Clone, Debug)]
pub struct TruncatedPolynomial {
    table: CoefficientTable,
    degree: usize,
}

impl TruncatedPolynomial {
    pub fn new(alpha: f64, degree: usize) -> Result<Self> {
        let table = CoefficientTable::build(alpha, 0)?;
        Self::from_table(&table, degree)
    }

    /// Builds p_n on top of an existing table, sharing the prefix. The table
    /// is extended by one entry past `degree` so the tail bound is available.
    pub fn from_table(table: &CoefficientTable, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Domain {
                what: "degree exceeds the cap of 200",
                value: degree as f64,
            });
        }
        Ok(TruncatedPolynomial {
            table: table.extended(degree + 1),
            degree,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.table.alpha()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    /// Signed coefficient c_k = (-1)^k a_k.
    pub fn coeff(&self, k: usize) -> f64 {
        let a = self.table.a(k);
        if k % 2 == 0 {
            a
        } else {
            -a
        }
    }

    pub fn coeffs(&self) -> Vec<f64> {
        (0..=self.degree).map(|k| self.coeff(k)).collect()
    }

    fn coeff_dd(&self, k: usize) -> Dd {
        let a = self.table.a_dd(k);
        if k % 2 == 0 {
            a
        } else {
            a.neg()
        }
    }

    /// p_n(x). Exactly 1 at x = 0.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(x.is_finite() && x >= 0.0, "eval domain is finite x >= 0");
        let mut s = Dd::ZERO;
        for k in (0..=self.degree).rev() {
            s = s.mul_f64(x).add(self.coeff_dd(k));
        }
        s.to_f64()
    }

    /// p_n'(x). Exact for degree <= 1.
    pub fn eval_derivative(&self, x: f64) -> f64 {
        assert!(x.is_finite() && x >= 0.0, "eval domain is finite x >= 0");
        let mut s = Dd::ZERO;
        for k in (1..=self.degree).rev() {
            s = s.mul_f64(x).add(self.coeff_dd(k).mul_f64(k as f64));
        }
        s.to_f64()
    }

    /// Σ a_k x^k: the condition scale of `eval` (all terms taken positive).
    /// Grid comparisons use eps times this as the resolvable-difference floor.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let mut s = 0.0f64;
        for k in (0..=self.degree).rev() {
            s = s * x + self.table.a(k);
        }
        s
    }

    /// Geometric majorant of |p_∞(x) - p_n(x)|: the first neglected term
    /// a_{n+1} x^{n+1} divided by (1 - q), where q = x·Γ(2n+3-α)/Γ(2n+4) is
    /// the first neglected term ratio. Term ratios decrease in k, so q < 1
    /// makes the geometric sum valid. Returns None when q >= 1; the caller
    /// must raise the degree.
    pub fn tail_bound(&self, x: f64) -> Option<f64> {
        assert!(x.is_finite() && x >= 0.0, "tail_bound domain is finite x >= 0");
        if x == 0.0 {
            return Some(0.0);
        }
        let n = self.degree;
        let q = x * self.table.step_ratio(n + 1);
        if q >= 1.0 {
            return None;
        }
        // log space: x^{n+1} alone can overflow long before the product does
        let lg = self.table.log_a(n + 1) + (n as f64 + 1.0) * x.ln();
        Some(lg.exp() / (1.0 - q))
    }
}

/// The truncated solution y_n(x) = b1 · x · p_n(λx²) of the fractional
/// initial value problem, with y(0) = 0 and y'(0) = b1.
#[derive(Clone, Debug)]
pub struct SolutionCurve {
    poly: TruncatedPolynomial,
    lambda: f64,
    slope_scale: f64,
}

impl SolutionCurve {
    pub fn new(alpha: f64, lambda: f64, slope_scale: f64, degree: usize) -> Result<Self> {
        validate_alpha(alpha)?;
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain {
                what: "lambda must be positive and finite",
                value: lambda,
            });
        }
        if !slope_scale.is_finite() {
            return Err(Error::Domain {
                what: "slope scale b1 must be finite",
                value: slope_scale,
            });
        }
        if degree == 0 {
            return Err(Error::Domain {
                what: "solution curve needs degree >= 1",
                value: 0.0,
            });
        }
        Ok(SolutionCurve {
            poly: TruncatedPolynomial::new(alpha, degree)?,
            lambda,
            slope_scale,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.poly.alpha()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// y'(0) = b1.
    pub fn slope_scale(&self) -> f64 {
        self.slope_scale
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// y_n(x) = b1 · x · p_n(λx²).
    pub fn eval(&self, x: f64) -> f64 {
        self.slope_scale * x * self.poly.eval(self.lambda * x * x)
    }

    /// The Caputo residual D^{1+α} y_n(x) + λ x^{1-α} y_n(x), summed termwise
    /// by the power rule D^{1+α} x^{2k+1} = (Γ(2k+2)/Γ(2k+1-α)) x^{2k-α}.
    ///
    /// The two halves cancel down to the single surviving term
    /// (-1)^n a_n λ^{n+1} x^{2n+2-α}, typically ~15 orders below the largest
    /// term, so the sum is accumulated in double-double with the powers of
    /// u = λx² and the coefficient chain carried unrounded.
    pub fn caputo_residual(&self, x: f64) -> f64 {
        assert!(x.is_finite() && x > 0.0, "residual domain is finite x > 0");
        let n = self.poly.degree();
        let t = self.poly.table();
        let u = Dd::from_f64(self.lambda).mul_f64(x).mul_f64(x);

        // fractional-derivative half: Σ_{k=1..n} (-1)^k a_k (Γ(2k+2)/Γ(2k+1-α)) λ^k x^{2k-α}
        // with x^{-α} factored out of both halves
        let mut deriv_half = Dd::ZERO;
        let mut u_pow = Dd::ONE;
        for k in 1..=n {
            u_pow = u_pow.mul(u);
            let term = t.a_dd(k).div(t.step_ratio_dd(k)).mul(u_pow);
            deriv_half = if k % 2 == 0 {
                deriv_half.add(term)
            } else {
                deriv_half.add(term.neg())
            };
        }

        // λ x^{1-α} y_n(x) = b1 x^{-α} · u · p_n(u), termwise
        let mut p_half = Dd::ZERO;
        let mut u_pow = Dd::ONE;
        for k in 0..=n {
            if k > 0 {
                u_pow = u_pow.mul(u);
            }
            let term = t.a_dd(k).mul(u_pow);
            p_half = if k % 2 == 0 {
                p_half.add(term)
            } else {
                p_half.add(term.neg())
            };
        }

        let total = deriv_half.add(p_half.mul(u));
        self.slope_scale * x.powf(-self.alpha()) * total.to_f64()
    }

    /// The same residual through the telescoped closed form
    /// (-1)^n a_n λ^{n+1} x^{2n+2-α} b1, evaluated in log space.
    pub fn caputo_residual_closed_form(&self, x: f64) -> f64 {
        assert!(x.is_finite() && x > 0.0, "residual domain is finite x > 0");
        let n = self.poly.degree();
        let lg = self.poly.table().log_a(n)
            + (n as f64 + 1.0) * self.lambda.ln()
            + (2.0 * n as f64 + 2.0 - self.alpha()) * x.ln();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.slope_scale * lg.exp()
    }
}
