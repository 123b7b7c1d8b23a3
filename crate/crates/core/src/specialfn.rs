//! Log-gamma, safe Gamma ratios, and the coefficient chain of the series
//! solution.
//!
//! Everything downstream is built from ratios Γ(a)/Γ(b) with arguments up to
//! several hundred, where Γ itself overflows f64. All ratios therefore go
//! through `log_gamma`, and the coefficient table keeps a log-space copy of
//! every entry for the ranges where the raw values underflow.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Lanczos coefficients (g = 607/128, 15 terms).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

const LN_SQRT_2PI: f64 = 0.918938533204672741780329736406;

/// ln Γ(x) for x > 0, no domain check. Callers guarantee positivity.
pub(crate) fn lgamma_raw(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // reflection: ln Γ(x) = ln(π / sin(πx)) − ln Γ(1 − x)
        let s = (std::f64::consts::PI * x).sin();
        return std::f64::consts::PI.ln() - s.ln() - lgamma_raw(1.0 - x);
    }
    let mut acc = LANCZOS_COEF[0];
    for (j, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + j as f64 - 1.0);
    }
    let t = x + LANCZOS_G - 0.5;
    (x - 0.5) * t.ln() - t + LN_SQRT_2PI + (acc / x).ln()
}

/// Natural logarithm of the Gamma function.
///
/// Relative accuracy is better than 1e-13 on [0.5, 1000]; arguments in
/// (0, 0.5) go through the reflection formula.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain {
            what: "log_gamma requires x > 0",
            value: x,
        });
    }
    Ok(lgamma_raw(x))
}

/// Γ(x) for x > 0, via `exp(log_gamma(x))`.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// Γ(a)/Γ(b) computed in log space, so it never overflows an intermediate
/// even when both Gammas individually would.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    let d = log_gamma(a)? - log_gamma(b)?;
    let r = d.exp();
    if r.is_infinite() {
        return Err(Error::Overflow { what: "gamma_ratio" });
    }
    Ok(r)
}

/// The sequence a_0..a_n with a_0 = 1 and
/// a_k = a_{k-1} * Γ(2k+1-α)/Γ(2k+2), for a fixed fractional index α.
///
/// The per-step ratio is advanced by the Γ recurrence
/// ρ_k = ρ_{k-1} * (2k-α)(2k-1-α) / ((2k+1)(2k)), seeded with
/// ρ_1 = Γ(3-α)/6, and the whole chain is carried in double-double. The
/// roots downstream can be so flat (|p'| ~ 1e-3 near the existence
/// boundary) that the ~1e-14 noise of an exp(lgamma-lgamma) product per
/// step would shift them by more than 1e-8; with this construction the
/// only transcendental error is the single Γ(3-α) evaluation, which acts
/// as a common factor ρ_1^k and merely rescales the abscissa by ~1e-15.
///
/// Tables are immutable; `extended` returns a longer copy.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    alpha: f64,
    values: Vec<f64>,
    log_values: Vec<f64>,
    chain: Vec<Dd>,
    ratios: Vec<Dd>,
}

pub(crate) fn validate_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Domain {
            what: "fractional index must lie in (0, 1]",
            value: alpha,
        });
    }
    Ok(())
}

impl CoefficientTable {
    /// Builds a_0..a_n.
    pub fn build(alpha: f64, n: usize) -> Result<Self> {
        validate_alpha(alpha)?;
        let mut table = CoefficientTable {
            alpha,
            values: vec![1.0],
            log_values: vec![0.0],
            chain: vec![Dd::ONE],
            ratios: vec![Dd::ONE],
        };
        table.push_to(n);
        Ok(table)
    }

    /// A new table extended to max index n (returns a plain copy if the
    /// table is already long enough).
    pub fn extended(&self, n: usize) -> Self {
        let mut t = self.clone();
        t.push_to(n);
        t
    }

    fn push_to(&mut self, n: usize) {
        while self.chain.len() <= n {
            let k = self.chain.len();
            let rho = if k == 1 {
                Dd::from_f64(lgamma_raw(3.0 - self.alpha).exp()).div_f64(6.0)
            } else {
                let kk = 2.0 * k as f64;
                let num = Dd::from_sub(kk, self.alpha).mul(Dd::from_sub(kk - 1.0, self.alpha));
                self.ratios[k - 1].mul(num).div_f64((kk + 1.0) * kk)
            };
            let a = self.chain[k - 1].mul(rho);
            self.values.push(a.to_f64());
            self.log_values
                .push(self.log_values[k - 1] + rho.to_f64().ln());
            self.chain.push(a);
            self.ratios.push(rho);
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Largest index k for which a_k is stored.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// a_k. Underflows to subnormal/zero once ln a_k drops below about
    /// -745 (k ~ 110 and up, depending on α); use `log_a` there.
    pub fn a(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// ln a_k, finite for every stored k.
    pub fn log_a(&self, k: usize) -> f64 {
        self.log_values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The ratio a_k / a_{k-1} = Γ(2k+1-α)/Γ(2k+2) as built, k >= 1.
    pub fn step_ratio(&self, k: usize) -> f64 {
        self.ratios[k].to_f64()
    }

    pub(crate) fn a_dd(&self, k: usize) -> Dd {
        self.chain[k]
    }

    pub(crate) fn step_ratio_dd(&self, k: usize) -> Dd {
        self.ratios[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // mpmath (60 significant digits), see tools/reference_roots.py
    const LGAMMA_REF: [(f64, f64); 12] = [
        (0.5, 0.572364942924700087071713675677),
        (1.0, 0.0),
        (1.473, -0.12142398103964329315612568124),
        (2.474, 0.266567234952739086333559731047),
        (5.0, 3.1780538303479456196469416013),
        (8.0, 8.52516136106541430016553103635),
        (28.473, 66.1292188978044596658120286932),
        (30.0, 71.2570389671680090100744070426),
        (48.0, 136.802722637326368469643563853),
        (100.0, 359.13420536957539877604401046),
        (500.0, 2605.11585036173389265867427356),
        (1000.0, 5905.22042320918121182607691236),
    ];

    #[test]
    fn log_gamma_reference_values() {
        for &(x, want) in &LGAMMA_REF {
            let got = log_gamma(x).unwrap();
            let scale = want.abs().max(1.0);
            assert!(
                (got - want).abs() / scale < 1e-13,
                "lgamma({x}): got {got}, want {want}"
            );
        }
    }

    #[test]
    fn log_gamma_below_half_uses_reflection() {
        // mpmath: lgamma(0.474) and lgamma(0.2)
        assert!((log_gamma(0.474).unwrap() - 0.625135398472654782306837863504).abs() < 1e-14);
        assert!((log_gamma(0.2).unwrap() - 1.52406382243078452488105649393).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.0).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn gamma_ratio_examples() {
        // 3!/1! = 6
        assert!((gamma_ratio(4.0, 2.0).unwrap() - 6.0).abs() < 1e-12);
        // the two ratio values quoted next to the assumption checks
        assert!((gamma_ratio(30.0, 28.473).unwrap() - 168.649073752439409186).abs() < 1e-9);
        assert!((gamma_ratio(48.0, 46.474).unwrap() - 353.090174825774820749).abs() < 1e-9);
        assert!((gamma_ratio(8.0, 6.474).unwrap() - 18.3413616819995626737).abs() < 1e-10);
    }

    #[test]
    fn gamma_ratio_shift_identity() {
        // Γ(x+1)/Γ(x) = x
        for &x in &[0.5, 1.0, 2.474, 28.473, 500.0] {
            let r = gamma_ratio(x + 1.0, x).unwrap();
            assert!(
                (r - x).abs() / x < 1e-13,
                "gamma_ratio({}, {}) = {r}, want {x}",
                x + 1.0,
                x
            );
        }
    }

    #[test]
    fn gamma_ratio_overflow_detected() {
        assert_eq!(
            gamma_ratio(1000.0, 1.0),
            Err(Error::Overflow { what: "gamma_ratio" })
        );
    }

    #[test]
    fn gamma_small_values() {
        assert!((gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
        // Γ(2-α) at α = 0.527, used by the load formula (mpmath)
        assert!((gamma(1.473).unwrap() - 0.8856583776189722393624).abs() < 1e-14);
    }

    #[test]
    fn coefficients_alpha_one_are_inverse_odd_factorials() {
        let t = CoefficientTable::build(1.0, 50).unwrap();
        assert_eq!(t.a(0), 1.0);
        assert!((t.a(1) - 1.0 / 6.0).abs() < 1e-16);
        assert!((t.a(2) - 1.0 / 120.0).abs() < 1e-17);
        // telescoping: a_k * (2k+1)! = 1
        let mut fact = 1.0f64;
        for k in 1..=50 {
            // extend (2k-1)! -> (2k+1)!
            fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            let rel = (t.a(k) * fact - 1.0).abs();
            // beyond ~k=28 the factorial itself is no longer exact in f64;
            // compare in log space there
            if fact.is_finite() && (2 * k + 1) <= 27 {
                assert!(rel < 1e-12, "k={k}: a_k*(2k+1)! = {}", t.a(k) * fact);
            } else {
                let lg = t.log_a(k) + lgamma_raw((2 * k + 2) as f64);
                assert!(lg.abs() < 1e-11, "k={k}: log residual {lg}");
            }
        }
    }

    #[test]
    fn coefficient_reference_values() {
        // mpmath, 30 digits
        let t = CoefficientTable::build(0.6, 12).unwrap();
        assert!((t.a(3) - 0.000835614836209163612415637968592).abs() / t.a(3) < 1e-12);
        assert!(
            (t.a(12) - 4.41778310829284584180377806405e-21).abs() / t.a(12) < 1e-12
        );
        let t = CoefficientTable::build(0.526, 3).unwrap();
        assert!((1.0 / t.a(1) - 4.59602699831065329776).abs() < 1e-12);
        assert!((t.a(2) - 0.0203439074461367715575671826574).abs() / t.a(2) < 1e-13);
        assert!((t.a(3) - 0.00110918195709005247192960798591).abs() / t.a(3) < 1e-13);
    }

    #[test]
    fn rejects_alpha_outside_unit_interval() {
        assert!(CoefficientTable::build(0.0, 4).is_err());
        assert!(CoefficientTable::build(1.0001, 4).is_err());
        assert!(CoefficientTable::build(-0.3, 4).is_err());
        assert!(CoefficientTable::build(f64::NAN, 4).is_err());
    }

    #[test]
    fn extension_preserves_prefix() {
        let t = CoefficientTable::build(0.527, 10).unwrap();
        let u = t.extended(40);
        assert_eq!(u.max_index(), 40);
        for k in 0..=10 {
            assert_eq!(t.a(k), u.a(k));
            assert_eq!(t.log_a(k), u.log_a(k));
        }
    }

    #[test]
    fn log_values_track_values() {
        let t = CoefficientTable::build(0.7, 100).unwrap();
        for k in 0..=100 {
            if t.a(k) > 1e-290 {
                assert!(
                    (t.log_a(k) - t.a(k).ln()).abs() < 1e-12,
                    "k={k}: log_a={}, ln a={}",
                    t.log_a(k),
                    t.a(k).ln()
                );
            }
        }
    }

    proptest! {
        // a_k / a_{k-1} equals the lgamma-route ratio to 1e-12, any α, k <= 100
        #[test]
        fn recurrence_consistency(alpha in 0.01f64..=1.0) {
            let t = CoefficientTable::build(alpha, 100).unwrap();
            for k in 1..=100usize {
                let want = (lgamma_raw(2.0 * k as f64 + 1.0 - alpha)
                    - lgamma_raw(2.0 * k as f64 + 2.0))
                .exp();
                let got = t.step_ratio(k);
                prop_assert!(
                    ((got - want) / want).abs() < 1e-12,
                    "alpha={alpha} k={k}: ratio {got} vs lgamma route {want}"
                );
            }
        }

        // monotone decay: a_{k+1} < a_k for k >= 1 (checked in log space so
        // deep-underflow entries still participate)
        #[test]
        fn monotone_decay(alpha in 0.01f64..=1.0) {
            let t = CoefficientTable::build(alpha, 120).unwrap();
            prop_assert!(t.a(0) == 1.0);
            for k in 1..120usize {
                prop_assert!(t.log_a(k + 1) < t.log_a(k), "alpha={alpha} k={k}");
                prop_assert!(t.a(k) > 0.0 || t.log_a(k) < -740.0);
            }
        }
    }
}
