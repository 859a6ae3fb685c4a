//! The pressure function f(t) = P(-t log |T'|) and its derivative.
//!
//! Two backends:
//!
//! * Analytic — all-affine systems admit the closed form
//!   P(t) = log sum_i s_i^{-t} with slopes s_i, evaluated here in log-sum-exp
//!   form so arbitrarily large |t| stays finite.
//! * Collocation — the transfer operator
//!   (L_t g)(x) = sum_i psi'_i(x)^t g(psi_i(x))
//!   discretized at Chebyshev nodes with barycentric Lagrange interpolation;
//!   P(t) is the log of the leading eigenvalue, found by power iteration.
//!   The weight psi'^t is computed as exp(t log psi'), valid since validation
//!   guarantees psi' > 0.
//!
//! P is strictly decreasing and convex, strictly so unless the system is
//! affine-degenerate; P'(t) = -∫ log |T'| dmu_t < 0.

use crate::analysis::{central_second_difference, ConvexFunction};
use crate::chebyshev::ChebyshevGrid;
use crate::defaults;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::system::CookieCutterSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Analytic,
    Collocation,
}

/// Evaluates f(t) := P(-t log |T'|) and f'(t) for a fixed system.
///
/// Immutable after construction; evaluations at distinct t are independent.
#[derive(Debug, Clone)]
pub struct PressureEvaluator {
    system: CookieCutterSystem,
    backend: Backend,
    power_iter_tol: f64,
    power_iter_max: usize,
    log_slopes: Vec<f64>,              // analytic backend
    tables: Option<CollocationTables>, // collocation backend
}

/// t-independent pieces of the collocation matrix, precomputed per system:
/// log psi'_i(x_j) and the interpolation rows l_k(psi_i(x_j)).
#[derive(Debug, Clone)]
struct CollocationTables {
    nodes: usize,
    log_psi_prime: Vec<Vec<f64>>,
    basis: Vec<SquareMatrix>,
}

impl CollocationTables {
    fn new(system: &CookieCutterSystem, nodes: usize) -> Self {
        assert!(nodes >= 8, "collocation needs at least 8 nodes");
        let grid = ChebyshevGrid::new(nodes);
        let mut log_psi_prime = Vec::with_capacity(system.branch_count());
        let mut basis = Vec::with_capacity(system.branch_count());
        for branch in system.branches() {
            let mut logs = Vec::with_capacity(nodes);
            let mut rows = SquareMatrix::zeros(nodes);
            for (j, &x) in grid.nodes().iter().enumerate() {
                logs.push(branch.psi_prime(x).ln());
                grid.basis_row(branch.psi(x), rows.row_mut(j));
            }
            log_psi_prime.push(logs);
            basis.push(rows);
        }
        CollocationTables {
            nodes,
            log_psi_prime,
            basis,
        }
    }

    /// M[j][k] = sum_i psi'_i(x_j)^t l_k(psi_i(x_j)).
    fn assemble(&self, t: f64) -> SquareMatrix {
        let n = self.nodes;
        let mut m = SquareMatrix::zeros(n);
        for (logs, rows) in self.log_psi_prime.iter().zip(&self.basis) {
            for (j, &log_deriv) in logs.iter().enumerate().take(n) {
                let weight = (t * log_deriv).exp();
                let dst = m.row_mut(j);
                for (d, &b) in dst.iter_mut().zip(rows.row(j)) {
                    *d += weight * b;
                }
            }
        }
        m
    }
}

impl PressureEvaluator {
    /// Closed-form backend; requires every branch affine.
    pub fn analytic(system: CookieCutterSystem) -> Result<Self> {
        let slopes = system.affine_slopes().ok_or(Error::NotAffine)?;
        Ok(PressureEvaluator {
            system,
            backend: Backend::Analytic,
            power_iter_tol: defaults::POWER_ITER_TOL,
            power_iter_max: defaults::POWER_ITER_MAX,
            log_slopes: slopes.iter().map(|s| s.ln()).collect(),
            tables: None,
        })
    }

    /// Transfer-operator collocation backend with N nodes (N >= 8).
    pub fn collocation(system: CookieCutterSystem, nodes: usize) -> Self {
        let tables = CollocationTables::new(&system, nodes);
        PressureEvaluator {
            system,
            backend: Backend::Collocation,
            power_iter_tol: defaults::POWER_ITER_TOL,
            power_iter_max: defaults::POWER_ITER_MAX,
            log_slopes: Vec::new(),
            tables: Some(tables),
        }
    }

    /// Analytic when the system is all-affine, collocation otherwise.
    pub fn auto(system: CookieCutterSystem, nodes: usize) -> Self {
        if system.is_affine() {
            Self::analytic(system).expect("all-affine checked")
        } else {
            Self::collocation(system, nodes)
        }
    }

    pub fn with_power_iteration(mut self, tol: f64, max_iter: usize) -> Self {
        assert!(tol > 0.0 && max_iter > 0);
        self.power_iter_tol = tol;
        self.power_iter_max = max_iter;
        self
    }

    pub fn system(&self) -> &CookieCutterSystem {
        &self.system
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn nodes(&self) -> usize {
        self.tables.as_ref().map_or(0, |t| t.nodes)
    }

    /// Degenerate pressure is linear in t: Legendre machinery must refuse it.
    pub fn is_degenerate(&self) -> bool {
        self.system.is_affine_degenerate()
    }

    /// f(t) = P(-t log |T'|).
    pub fn pressure(&self, t: f64) -> Result<f64> {
        match self.backend {
            Backend::Analytic => Ok(self.pressure_analytic(t)),
            Backend::Collocation => self.pressure_collocation(t),
        }
    }

    /// f'(t); always negative.
    pub fn pressure_derivative(&self, t: f64) -> Result<f64> {
        match self.backend {
            Backend::Analytic => Ok(self.derivative_analytic(t)),
            Backend::Collocation => self.derivative_richardson(t),
        }
    }

    fn pressure_analytic(&self, t: f64) -> f64 {
        // log sum exp(-t log s_i)
        let m = self
            .log_slopes
            .iter()
            .map(|l| -t * l)
            .fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = self.log_slopes.iter().map(|l| (-t * l - m).exp()).sum();
        m + sum.ln()
    }

    /// Equilibrium weights p_i(t) = s_i^{-t} / sum_j s_j^{-t} as a softmax.
    fn analytic_weights(&self, t: f64) -> Vec<f64> {
        let m = self
            .log_slopes
            .iter()
            .map(|l| -t * l)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut p: Vec<f64> = self.log_slopes.iter().map(|l| (-t * l - m).exp()).collect();
        let sum: f64 = p.iter().sum();
        for w in &mut p {
            *w /= sum;
        }
        p
    }

    fn derivative_analytic(&self, t: f64) -> f64 {
        let p = self.analytic_weights(t);
        -p.iter()
            .zip(&self.log_slopes)
            .map(|(w, l)| w * l)
            .sum::<f64>()
    }

    fn pressure_collocation(&self, t: f64) -> Result<f64> {
        let tables = self.tables.as_ref().expect("collocation backend");
        let mut m = tables.assemble(t);
        m.balance();
        let (lambda, _) = leading_eigenvalue(&m, self.power_iter_tol, self.power_iter_max)?;
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::NonFiniteValue { t });
        }
        Ok(lambda.ln())
    }

    /// Central difference with one Richardson extrapolation level,
    /// (4 D_{h/2} - D_h) / 3 at base step h = 1e-3. P is analytic in t, so
    /// this reaches ~1e-9 without eigenvalue perturbation formulas.
    fn derivative_richardson(&self, t: f64) -> Result<f64> {
        let h = defaults::DERIV_STEP;
        let d_h = (self.pressure(t + h)? - self.pressure(t - h)?) / (2.0 * h);
        let d_h2 = (self.pressure(t + 0.5 * h)? - self.pressure(t - 0.5 * h)?) / h;
        Ok((4.0 * d_h2 - d_h) / 3.0)
    }
}

impl ConvexFunction for PressureEvaluator {
    fn value(&self, t: f64) -> Result<f64> {
        self.pressure(t)
    }

    fn derivative(&self, t: f64) -> Result<f64> {
        self.pressure_derivative(t)
    }

    fn second_derivative(&self, t: f64) -> Result<f64> {
        match self.backend {
            // Var_{p(t)}(log s), the exact curvature of log sum s_i^{-t}.
            Backend::Analytic => {
                let p = self.analytic_weights(t);
                let mean: f64 = p.iter().zip(&self.log_slopes).map(|(w, l)| w * l).sum();
                Ok(p.iter()
                    .zip(&self.log_slopes)
                    .map(|(w, l)| w * (l - mean) * (l - mean))
                    .sum())
            }
            Backend::Collocation => central_second_difference(self, t),
        }
    }

    fn is_affine(&self) -> bool {
        self.is_degenerate()
    }
}

/// The collocation matrix for L_t at N Chebyshev nodes.
///
/// For all-affine systems the constant function is an exact eigenvector with
/// eigenvalue sum_i s_i^{-t}: every row sums to that value.
pub fn transfer_matrix(system: &CookieCutterSystem, t: f64, nodes: usize) -> SquareMatrix {
    CollocationTables::new(system, nodes).assemble(t)
}

/// Leading eigenvalue by power iteration from the all-ones vector with
/// sup-norm normalization; converged when successive Rayleigh quotients agree
/// to `tol` (relative). The transfer operator is positivity-improving on the
/// systems in scope, so the leading eigenvalue is simple and positive and the
/// eigenvector can be taken entrywise positive.
pub fn leading_eigenvalue(
    matrix: &SquareMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>)> {
    let n = matrix.dim();
    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    let mut prev = f64::NAN;
    for _ in 0..max_iter {
        matrix.mul_vec(&v, &mut w);
        let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let vv: f64 = v.iter().map(|a| a * a).sum();
        let lambda = vw / vv;
        let sup = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if sup == 0.0 || !lambda.is_finite() {
            return Err(Error::PowerIterationDiverged { max_iter });
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / sup;
        }
        if (lambda - prev).abs() <= tol * lambda.abs().max(f64::MIN_POSITIVE) {
            return Ok((lambda, v));
        }
        prev = lambda;
    }
    Err(Error::PowerIterationDiverged { max_iter })
}

/// Bernoulli weights of the equilibrium measure mu_t for an affine system:
/// p_i(t) = s_i^{-t} / sum_j s_j^{-t}.
#[derive(Debug, Clone)]
pub struct EquilibriumWeights {
    pub t: f64,
    pub weights: Vec<f64>,
}

/// Weights of mu_t for an all-affine system; satisfies
/// sum_i p_i log s_i = -P'(t).
pub fn equilibrium_weights(system: &CookieCutterSystem, t: f64) -> Result<EquilibriumWeights> {
    if !system.is_affine() {
        return Err(Error::NotAffine);
    }
    let evaluator = PressureEvaluator::analytic(system.clone())?;
    Ok(EquilibriumWeights {
        t,
        weights: evaluator.analytic_weights(t),
    })
}
