//! The Lyapunov spectrum L(alpha) and the certification of the identity
//! L(-P'(-t log |T'|)) = N_P(t).
//!
//! L(alpha) is the Hausdorff dimension of the level set
//! J(alpha) = { x : lambda(x) = alpha }, computed through the Legendre-type
//! formula L(alpha) = (P(-t_alpha log |T'|) + t_alpha alpha) / alpha where
//! -d/dt P(-t log |T'|) |_{t_alpha} = alpha. The attainable exponents fill an
//! interval [alpha_min, alpha_max]; outside of it the level sets are empty.

use crate::analysis::{newton_map, solve_t_alpha};
use crate::defaults;
use crate::error::{Error, Result};
use crate::pressure::{Backend, PressureEvaluator};

/// One row of the spectrum curve.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumPoint {
    /// Lyapunov exponent level.
    pub alpha: f64,
    /// Tangency parameter, f'(t_alpha) = -alpha (NaN for the degenerate
    /// one-point spectrum).
    pub t_alpha: f64,
    /// L(alpha), a Hausdorff dimension in [0, 1].
    pub dimension: f64,
    /// N_P(t_alpha); equals `dimension` up to solver noise.
    pub newton_value: f64,
    /// h(mu_alpha) = alpha * L(alpha) = P(t_alpha) + t_alpha * alpha.
    pub entropy: f64,
}

/// Attainable Lyapunov exponents [alpha_min, alpha_max].
#[derive(Debug, Clone, Copy)]
pub struct AlphaRange {
    pub alpha_min: f64,
    pub alpha_max: f64,
}

/// Residual report for the identity L(-P'(t)) = N_P(t) over a t grid.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub t_grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Spectrum curve; `degenerate` flags the one-point collapse of equal-slope
/// affine systems.
#[derive(Debug, Clone)]
pub struct SpectrumCurve {
    pub points: Vec<SpectrumPoint>,
    pub degenerate: bool,
}

/// The exponent interval.
///
/// Affine systems: exactly (min_i log s_i, max_i log s_i). Otherwise the
/// interval is estimated as (-P'(T), -P'(-T)) at the saturation point T = 60
/// and is approximate; when the transfer matrix at the extreme is too
/// ill-scaled for double precision the cap is halved (60 -> 30 -> 15) until
/// the eigensolve succeeds.
pub fn alpha_range(evaluator: &PressureEvaluator) -> Result<AlphaRange> {
    if let Some(slopes) = evaluator.system().affine_slopes() {
        let logs: Vec<f64> = slopes.iter().map(|s| s.ln()).collect();
        let alpha_min = logs.iter().copied().fold(f64::INFINITY, f64::min);
        let alpha_max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        return Ok(AlphaRange {
            alpha_min,
            alpha_max,
        });
    }
    let alpha_min = saturated_exponent(evaluator, defaults::ALPHA_SATURATION_T)?;
    let alpha_max = saturated_exponent(evaluator, -defaults::ALPHA_SATURATION_T)?;
    Ok(AlphaRange {
        alpha_min,
        alpha_max,
    })
}

/// -P'(cap), halving the cap while the extreme-t eigenproblem diverges.
fn saturated_exponent(evaluator: &PressureEvaluator, cap: f64) -> Result<f64> {
    let mut t = cap;
    loop {
        match evaluator.pressure_derivative(t) {
            Ok(d) => return Ok(-d),
            Err(Error::PowerIterationDiverged { .. }) if t.abs() > 10.0 => t *= 0.5,
            Err(e) => return Err(e),
        }
    }
}

/// The spectrum at one exponent level, alpha strictly inside the range.
pub fn lyapunov_spectrum(evaluator: &PressureEvaluator, alpha: f64) -> Result<SpectrumPoint> {
    if evaluator.is_degenerate() {
        return Err(Error::DegeneratePressure);
    }
    let t_alpha = solve_t_alpha(evaluator, alpha)?;
    let entropy = evaluator.pressure(t_alpha)? + t_alpha * alpha;
    let dimension = entropy / alpha;
    let newton_value = newton_map(evaluator, t_alpha)?;
    Ok(SpectrumPoint {
        alpha,
        t_alpha,
        dimension,
        newton_value,
        entropy,
    })
}

/// Uniform alpha grid over the exponent interval shrunk by `margin`
/// (relative, 0 < margin < 1/2) on both sides; the endpoints themselves have
/// t_alpha = +/-inf and are never evaluated.
///
/// Degenerate systems yield the single flagged point
/// (log s, log n / log s) instead of an error.
pub fn spectrum_curve(
    evaluator: &PressureEvaluator,
    steps: usize,
    margin: f64,
) -> Result<SpectrumCurve> {
    assert!(steps >= 2, "need at least 2 grid points");
    assert!(margin > 0.0 && margin < 0.5, "margin must lie in (0, 1/2)");
    if evaluator.is_degenerate() {
        return Ok(SpectrumCurve {
            points: vec![degenerate_point(evaluator)],
            degenerate: true,
        });
    }
    let range = alpha_range(evaluator)?;
    let width = range.alpha_max - range.alpha_min;
    let lo = range.alpha_min + margin * width;
    let hi = range.alpha_max - margin * width;
    let points = linspace(lo, hi, steps)
        .into_iter()
        .map(|alpha| lyapunov_spectrum(evaluator, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumCurve {
        points,
        degenerate: false,
    })
}

fn degenerate_point(evaluator: &PressureEvaluator) -> SpectrumPoint {
    let system = evaluator.system();
    let slope = 1.0 / system.branches()[0].width();
    let alpha = slope.ln();
    let dimension = (system.branch_count() as f64).ln() / alpha;
    SpectrumPoint {
        alpha,
        t_alpha: f64::NAN,
        dimension,
        newton_value: dimension, // N_P is constant at the root for linear P
        entropy: alpha * dimension,
    }
}

/// Certifies L(-P'(t)) = N_P(t) on a uniform t grid.
///
/// For each t the exponent alpha = -P'(t) is fed back through the full
/// spectrum pipeline — t_alpha is re-solved from alpha rather than reusing t,
/// so the residual measures the round trip and not an algebraic tautology.
pub fn verify_identity(
    evaluator: &PressureEvaluator,
    t_min: f64,
    t_max: f64,
    steps: usize,
    tolerance: f64,
) -> Result<IdentityReport> {
    assert!(steps >= 2, "need at least 2 grid points");
    assert!(t_min < t_max, "empty t interval");
    assert!(tolerance > 0.0);
    if evaluator.is_degenerate() {
        return Err(Error::DegeneratePressure);
    }
    let t_grid = linspace(t_min, t_max, steps);
    let mut residuals = Vec::with_capacity(steps);
    for &t in &t_grid {
        let alpha = -evaluator.pressure_derivative(t)?;
        let point = lyapunov_spectrum(evaluator, alpha)?;
        let newton = newton_map(evaluator, t)?;
        residuals.push((point.dimension - newton).abs());
    }
    let max_residual = residuals.iter().copied().fold(0.0f64, f64::max);
    Ok(IdentityReport {
        t_grid,
        residuals,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    })
}

/// Default identity tolerance for an evaluator's backend: the collocation
/// error budget is dominated by the numeric P'.
pub fn default_identity_tolerance(evaluator: &PressureEvaluator) -> f64 {
    match evaluator.backend() {
        Backend::Analytic => defaults::IDENTITY_TOL_ANALYTIC,
        Backend::Collocation => defaults::IDENTITY_TOL_COLLOCATION,
    }
}

/// Entropy of the equilibrium measure mu_t: h(mu_t) = P(t) - t P'(t),
/// in [0, log n].
pub fn equilibrium_entropy(evaluator: &PressureEvaluator, t: f64) -> Result<f64> {
    Ok(evaluator.pressure(t)? - t * evaluator.pressure_derivative(t)?)
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|k| lo + h * k as f64).collect()
}
