//! Certified critical buckling loads for the fractional (Caputo) Euler
//! column.
//!
//! The deflection of a pinned column with a fractional curvature index
//! α ∈ (0, 1] solves D^{1+α} y = -λ x^{1-α} y, whose solution is
//! y(x) = b1·x·p_∞(λx²) for an alternating power series p_∞ built from
//! Gamma-ratio coefficients. Buckling happens at the smallest positive root
//! s0 of p_∞, and the critical load is P = E·I·Γ(2-α)·s0/l².
//!
//! The crate locates s0 with a machine-checked error certificate:
//!
//! * [`specialfn`] — log-gamma, safe Gamma ratios, the coefficient chain;
//! * [`series`] — truncations p_n, tail bounds, the Caputo residual;
//! * [`rootfind`] — first-positive-root bracketing and bisection;
//! * [`analysis`] — the hypotheses behind the certificate, plus the
//!   non-existence evidence sweep (for α ≤ 0.526 no positive root exists);
//! * [`solver`] — the ε-certified approximation of s0 and the α sweep;
//! * [`buckling`] — loads, deflection curves, symmetrization, residuals.
//!
//! ```
//! let s0 = fracol::solver::approximate_s0(1.0, 1e-6, 40, 1e-10).unwrap();
//! let pi2 = std::f64::consts::PI.powi(2);
//! assert!((s0.value - pi2).abs() < 1e-6); // classic Euler case
//! ```
//!
//! With the default `parallel` feature, α sweeps run on the rayon pool;
//! results are deterministic and ordered either way.

pub mod analysis;
pub mod buckling;
pub mod rootfind;
pub mod series;
pub mod solver;
pub mod specialfn;

mod dd;
mod error;
mod exec;

pub use error::{Error, Result};
