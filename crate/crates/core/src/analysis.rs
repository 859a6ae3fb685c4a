//! Convex-function machinery: Newton maps, Newton-Raphson with trace
//! diagnostics, support lines, Legendre transforms, and the t_alpha solver.
//!
//! Everything here is phrased for a strictly decreasing convex C^2 function
//! f; the pressure is the intended instance, but any [`ConvexFunction`]
//! works. The two tangent-line constructions are dual: the Newton map
//! N_f(t) = t - f(t)/f'(t) is the horizontal-axis intercept of the tangent
//! at t, and the Legendre transform F(alpha) = f(t_alpha) + alpha t_alpha is
//! the vertical-axis intercept of the support line of slope -alpha. They tie
//! together as N_f(t_alpha) = F(alpha)/alpha.

use crate::defaults;
use crate::error::{Error, Result};

/// A strictly decreasing convex function of class C^2.
///
/// `value` must be strictly decreasing and `derivative` strictly negative
/// and increasing on the working interval; violations surface as solver
/// errors, not unsoundness.
pub trait ConvexFunction {
    fn value(&self, t: f64) -> Result<f64>;

    fn derivative(&self, t: f64) -> Result<f64>;

    /// f''(t) >= 0. Default: central difference of `derivative`.
    fn second_derivative(&self, t: f64) -> Result<f64> {
        central_second_difference(self, t)
    }

    /// True when f is affine (constant derivative). Legendre operations
    /// reject such functions: every support line has the same slope.
    fn is_affine(&self) -> bool {
        false
    }
}

/// Central difference of `derivative` with step h = 1e-4; used as the default
/// second derivative and by the collocation pressure backend.
pub fn central_second_difference<F: ConvexFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let h = 1e-4;
    Ok((f.derivative(t + h)? - f.derivative(t - h)?) / (2.0 * h))
}

/// Convex function given by closures; handy for closed-form test functions
/// such as t -> e^{-t} - 1/2.
pub struct FnConvex<F, D>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    value: F,
    derivative: D,
}

impl<F, D> FnConvex<F, D>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    pub fn new(value: F, derivative: D) -> Self {
        FnConvex { value, derivative }
    }
}

impl<F, D> ConvexFunction for FnConvex<F, D>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    fn value(&self, t: f64) -> Result<f64> {
        Ok((self.value)(t))
    }

    fn derivative(&self, t: f64) -> Result<f64> {
        Ok((self.derivative)(t))
    }
}

/// N_f(t) = t - f(t)/f'(t).
///
/// Well-defined for all t because f' never vanishes; fixed points are
/// exactly the roots of f.
pub fn newton_map<F: ConvexFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let v = f.value(t)?;
    let d = f.derivative(t)?;
    let next = t - v / d;
    if !next.is_finite() {
        return Err(Error::NonFiniteValue { t });
    }
    Ok(next)
}

/// N'_f(t) = f(t) f''(t) / f'(t)^2; vanishes at the root, which is why the
/// root is a super-attracting fixed point of N_f.
pub fn newton_derivative<F: ConvexFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let v = f.value(t)?;
    let d = f.derivative(t)?;
    let dd = f.second_derivative(t)?;
    let out = v * dd / (d * d);
    if !out.is_finite() {
        return Err(Error::NonFiniteValue { t });
    }
    Ok(out)
}

/// One Newton-Raphson run: the iterate sequence with residuals, for
/// convergence-rate diagnostics.
#[derive(Debug, Clone)]
pub struct NewtonTrace {
    /// (t_k, f(t_k)) for every evaluated iterate, starting at t_0.
    pub iterates: Vec<(f64, f64)>,
    pub converged: bool,
    pub root: f64,
}

/// Newton-Raphson for a decreasing convex f with a root.
///
/// A sign-change bracket is located first by doubling expansion around t0
/// (reported as `NoRootBracket` if none exists within |t| <= 10^3); Newton
/// steps that would leave the current bracket fall back to bisection, so the
/// iteration converges globally while staying quadratic near the root. Stops
/// when |f(t_k)| < tol or |t_{k+1} - t_k| < tol.
pub fn newton_solve<F: ConvexFunction + ?Sized>(
    f: &F,
    t0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<NewtonTrace> {
    assert!(tol > 0.0 && max_iter >= 1);
    if !t0.is_finite() {
        return Err(Error::NonFiniteValue { t: t0 });
    }
    let (mut lo, mut hi) = expand_root_bracket(f, t0)?;

    let mut t = t0;
    let mut ft = checked_value(f, t)?;
    let mut iterates = vec![(t, ft)];
    for _ in 0..max_iter {
        if ft.abs() < tol {
            return Ok(NewtonTrace {
                iterates,
                converged: true,
                root: t,
            });
        }
        // f decreasing: f > 0 puts the root to the right
        if ft > 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
        let dt = f.derivative(t)?;
        let mut next = t - ft / dt;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let fnext = checked_value(f, next)?;
        iterates.push((next, fnext));
        let step = (next - t).abs();
        t = next;
        ft = fnext;
        if step < tol {
            return Ok(NewtonTrace {
                iterates,
                converged: true,
                root: t,
            });
        }
    }
    Err(Error::MaxIterationsExceeded { max_iter })
}

fn checked_value<F: ConvexFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let v = f.value(t)?;
    if !v.is_finite() {
        return Err(Error::NonFiniteValue { t });
    }
    Ok(v)
}

/// Expands [t0 - 1, t0 + 1] by doubling until f changes sign across it.
fn expand_root_bracket<F: ConvexFunction + ?Sized>(f: &F, t0: f64) -> Result<(f64, f64)> {
    let mut lo = t0 - 1.0;
    let mut hi = t0 + 1.0;
    let mut flo = checked_value(f, lo)?;
    let mut fhi = checked_value(f, hi)?;
    loop {
        if flo < 0.0 {
            // even the left end is past the root
            if lo.abs() > defaults::BRACKET_LIMIT {
                return Err(Error::NoRootBracket { lo, hi });
            }
            lo -= hi - lo;
            flo = checked_value(f, lo)?;
        } else if fhi > 0.0 {
            if hi.abs() > defaults::BRACKET_LIMIT {
                return Err(Error::NoRootBracket { lo, hi });
            }
            hi += hi - lo;
            fhi = checked_value(f, hi)?;
        } else {
            return Ok((lo, hi));
        }
    }
}

/// Hausdorff dimension of the repeller: the unique root d of the pressure,
/// P(-d log |T'|) = 0, found by Newton from t0 = 1 at tolerance 1e-13.
pub fn bowen_dimension(
    evaluator: &crate::pressure::PressureEvaluator,
) -> Result<(f64, NewtonTrace)> {
    let trace = newton_solve(
        evaluator,
        defaults::BOWEN_T0,
        defaults::NEWTON_TOL,
        defaults::NEWTON_MAX_ITER,
    )?;
    Ok((trace.root, trace))
}

/// The unique t with f'(t) = -alpha, by bracket doubling from [-1, 1] and
/// bisection on the (monotone) derivative down to a 1e-12 bracket.
///
/// Expansion past |t| = 10^3 without straddling means alpha lies outside the
/// closure of the range of -f'.
pub fn solve_t_alpha<F: ConvexFunction + ?Sized>(f: &F, alpha: f64) -> Result<f64> {
    if f.is_affine() {
        return Err(Error::DegeneratePressure);
    }
    if !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    let g = |t: f64| -> Result<f64> {
        let d = f.derivative(t)?;
        if !d.is_finite() {
            return Err(Error::NonFiniteValue { t });
        }
        Ok(d + alpha)
    };
    let mut lo = -1.0;
    let mut hi = 1.0;
    let mut glo = g(lo)?;
    while glo > 0.0 {
        if lo.abs() > defaults::BRACKET_LIMIT {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        lo -= hi - lo;
        glo = g(lo)?;
    }
    let mut ghi = g(hi)?;
    while ghi < 0.0 {
        if hi.abs() > defaults::BRACKET_LIMIT {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        hi += hi - lo;
        ghi = g(hi)?;
    }
    while hi - lo > defaults::BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The support line of slope -alpha touches the graph of f at t_alpha and
/// intercepts the vertical axis at F(alpha).
#[derive(Debug, Clone, Copy)]
pub struct LegendreResult {
    pub alpha: f64,
    pub t_alpha: f64,
    /// F(alpha) = f(t_alpha) + alpha t_alpha = inf_t (f(t) + alpha t).
    pub value: f64,
    /// Slope of the support line, -alpha.
    pub slope: f64,
}

/// Legendre transform F(alpha) = inf_t (f(t) + alpha t), computed through
/// the tangency point t_alpha.
pub fn legendre_transform<F: ConvexFunction + ?Sized>(f: &F, alpha: f64) -> Result<LegendreResult> {
    let t_alpha = solve_t_alpha(f, alpha)?;
    let value = f.value(t_alpha)? + alpha * t_alpha;
    Ok(LegendreResult {
        alpha,
        t_alpha,
        value,
        slope: -alpha,
    })
}

/// |N_f(t_alpha) - F(alpha)/alpha|. The identity N_f(t_alpha) = F(alpha)/alpha
/// is algebraic, so the residual is pure solver noise.
pub fn lemma_rel_residual<F: ConvexFunction + ?Sized>(f: &F, alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    let legendre = legendre_transform(f, alpha)?;
    let newton = newton_map(f, legendre.t_alpha)?;
    Ok((newton - legendre.value / alpha).abs())
}
