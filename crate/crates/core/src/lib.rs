//! Thermodynamic formalism for cookie-cutter maps on the unit interval.
//!
//! A cookie-cutter map sends each of n >= 2 disjoint closed subintervals of
//! [0, 1] expandingly onto [0, 1]; its repeller is the Cantor-like set of
//! points whose whole forward orbit stays inside the branch intervals. This
//! crate computes the three objects that describe the repeller's fractal
//! geometry:
//!
//! * the pressure curve f(t) = P(-t log |T'|) (closed form for affine
//!   systems, transfer-operator collocation otherwise),
//! * the Hausdorff dimension of the repeller as the Newton-Raphson root of
//!   Bowen's equation P(-d log |T'|) = 0,
//! * the Lyapunov spectrum L(alpha) via the Legendre transform of the
//!   pressure,
//!
//! and numerically certifies the identity L(-P'(-t log |T'|)) = N_P(t)
//! relating the spectrum to the Newton map of the pressure.
//!
//! ```
//! use cookie_cutter::{BranchSpec, CookieCutterSystem, PressureEvaluator};
//! use cookie_cutter::analysis::bowen_dimension;
//!
//! // middle-third Cantor set: dim_H = log 2 / log 3
//! let system = CookieCutterSystem::new(&[
//!     BranchSpec::Affine { interval: (0.0, 1.0 / 3.0) },
//!     BranchSpec::Affine { interval: (2.0 / 3.0, 1.0) },
//! ])?;
//! let evaluator = PressureEvaluator::analytic(system)?;
//! let (d, _trace) = bowen_dimension(&evaluator)?;
//! assert!((d - 2f64.ln() / 3f64.ln()).abs() < 1e-12);
//! # Ok::<(), cookie_cutter::Error>(())
//! ```

pub mod analysis;
pub mod chebyshev;
pub mod config;
pub mod defaults;
pub mod error;
pub mod matrix;
pub mod pressure;
pub mod spectrum;
pub mod system;

#[cfg(test)]
pub(crate) mod testutil;

pub use analysis::{ConvexFunction, FnConvex, LegendreResult, NewtonTrace};
pub use error::{Error, Result};
pub use pressure::{Backend, EquilibriumWeights, PressureEvaluator};
pub use spectrum::{AlphaRange, IdentityReport, SpectrumCurve, SpectrumPoint};
pub use system::{Branch, BranchSpec, CookieCutterSystem, SymbolicWord};
