//! The single source of truth for default numerical parameters, shared by
//! the library, the CLI flags, and the test suites.

/// Collocation nodes N for the transfer-operator discretization.
pub const NODES: usize = 64;
/// Relative tolerance on successive Rayleigh quotients in power iteration.
pub const POWER_ITER_TOL: f64 = 1e-13;
/// Power-iteration cap.
pub const POWER_ITER_MAX: usize = 10_000;
/// Newton-Raphson stopping tolerance (on |f| and on step size).
pub const NEWTON_TOL: f64 = 1e-13;
/// Newton-Raphson iteration cap.
pub const NEWTON_MAX_ITER: usize = 100;
/// Bisection bracket width for the t_alpha solve.
pub const BISECT_TOL: f64 = 1e-12;
/// Bracket expansion gives up past |t| = 10^3 (the pressure derivative
/// saturates exponentially fast, so this is far beyond double saturation).
pub const BRACKET_LIMIT: f64 = 1e3;
/// Base step for the Richardson-extrapolated central difference of P.
pub const DERIV_STEP: f64 = 1e-3;
/// Identity tolerance for verify runs on the analytic backend.
pub const IDENTITY_TOL_ANALYTIC: f64 = 1e-10;
/// Identity tolerance for verify runs on the collocation backend.
pub const IDENTITY_TOL_COLLOCATION: f64 = 1e-6;
/// Relative margin keeping spectrum grids away from the interval endpoints
/// (where t_alpha diverges).
pub const SPECTRUM_MARGIN: f64 = 1e-3;
/// Default t-grid for pressure/verify runs.
pub const T_GRID_MIN: f64 = -2.0;
pub const T_GRID_MAX: f64 = 3.0;
pub const T_GRID_STEPS: usize = 101;
/// Saturation point used as a proxy for t -> +/- infinity in the numeric
/// exponent-range estimate.
pub const ALPHA_SATURATION_T: f64 = 60.0;
/// Starting point for the Bowen-dimension Newton solve.
pub const BOWEN_T0: f64 = 1.0;
/// Monte-Carlo sampling defaults.
pub const SAMPLE_T: f64 = 1.0;
pub const SAMPLE_PATHS: usize = 100;
pub const SAMPLE_PATH_LENGTH: usize = 10_000;
pub const SAMPLE_SEED: u64 = 42;
