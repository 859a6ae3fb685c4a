//! Subcommand implementations. Data rows go to stdout; `#`-prefixed comment
//! lines carry metadata so every output stays machine-parseable. Floats are
//! printed with 17 significant digits so doubles round-trip exactly.

use crate::{Failure, OutputFormat, EXIT_COMPUTE};
use cookie_cutter::analysis::newton_solve;
use cookie_cutter::pressure::equilibrium_weights;
use cookie_cutter::spectrum::{default_identity_tolerance, spectrum_curve, verify_identity};
use cookie_cutter::{CookieCutterSystem, PressureEvaluator};

/// 17 significant digits; NaN as the literal token `nan`.
fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn validate(system: &CookieCutterSystem) {
    println!("branches: {}", system.branch_count());
    for (i, branch) in system.branches().iter().enumerate() {
        let (a, b) = branch.interval();
        if branch.is_affine() {
            println!(
                "  {i}: affine     interval [{a:.12}, {b:.12}]  slope {:.12}",
                1.0 / branch.width()
            );
        } else {
            println!(
                "  {i}: quadratic  interval [{a:.12}, {b:.12}]  epsilon {:.12}",
                branch.epsilon()
            );
        }
    }
    println!("degenerate: {}", system.is_affine_degenerate());
}

pub fn dimension(
    evaluator: &PressureEvaluator,
    t0: f64,
    tol: f64,
    trace: bool,
) -> Result<(), Failure> {
    let result = newton_solve(evaluator, t0, tol, cookie_cutter::defaults::NEWTON_MAX_ITER)
        .map_err(Failure::from)?;
    if trace {
        println!("# k t_k P(t_k)");
        for (k, (t, p)) in result.iterates.iter().enumerate() {
            println!("# {k} {} {}", sci(*t), sci(*p));
        }
    }
    // d lies in (0, 1): 15 decimals are 15 significant digits
    println!("{:.15}", result.root);
    Ok(())
}

pub fn pressure(
    evaluator: &PressureEvaluator,
    t_min: f64,
    t_max: f64,
    steps: usize,
    output: OutputFormat,
) -> Result<(), Failure> {
    if t_min >= t_max || steps < 2 {
        return Err(Failure {
            code: EXIT_COMPUTE,
            message: "need t-min < t-max and steps >= 2".into(),
        });
    }
    let mut rows = Vec::with_capacity(steps);
    for t in linspace(t_min, t_max, steps) {
        let p = evaluator.pressure(t)?;
        let dp = evaluator.pressure_derivative(t)?;
        rows.push((t, p, dp));
    }
    match output {
        OutputFormat::Csv => {
            println!("t,P,Pprime");
            for (t, p, dp) in rows {
                println!("{},{},{}", sci(t), sci(p), sci(dp));
            }
        }
        OutputFormat::Pretty => {
            println!("{:>24} {:>24} {:>24}", "t", "P", "Pprime");
            for (t, p, dp) in rows {
                println!("{t:>24.15} {p:>24.15} {dp:>24.15}");
            }
        }
    }
    Ok(())
}

pub fn spectrum(
    evaluator: &PressureEvaluator,
    steps: usize,
    margin: f64,
    output: OutputFormat,
) -> Result<(), Failure> {
    if !(margin > 0.0 && margin < 0.5) || steps < 2 {
        return Err(Failure {
            code: EXIT_COMPUTE,
            message: "need margin in (0, 1/2) and steps >= 2".into(),
        });
    }
    let curve = spectrum_curve(evaluator, steps, margin)?;
    match output {
        OutputFormat::Csv => {
            println!("alpha,t_alpha,L,newton,entropy");
            for p in &curve.points {
                println!(
                    "{},{},{},{},{}",
                    sci(p.alpha),
                    sci(p.t_alpha),
                    sci(p.dimension),
                    sci(p.newton_value),
                    sci(p.entropy)
                );
            }
        }
        OutputFormat::Pretty => {
            println!(
                "{:>22} {:>22} {:>22} {:>22} {:>22}",
                "alpha", "t_alpha", "L", "newton", "entropy"
            );
            for p in &curve.points {
                println!(
                    "{:>22.15} {:>22.15} {:>22.15} {:>22.15} {:>22.15}",
                    p.alpha, p.t_alpha, p.dimension, p.newton_value, p.entropy
                );
            }
        }
    }
    if curve.degenerate {
        println!("# degenerate");
    }
    Ok(())
}

pub fn verify(
    evaluator: &PressureEvaluator,
    t_min: f64,
    t_max: f64,
    steps: usize,
    tol: Option<f64>,
) -> Result<(), Failure> {
    let tolerance = tol.unwrap_or_else(|| default_identity_tolerance(evaluator));
    if tolerance.is_nan() || tolerance <= 0.0 || t_min >= t_max || steps < 2 {
        return Err(Failure {
            code: EXIT_COMPUTE,
            message: "bad verification parameters".into(),
        });
    }
    let report = verify_identity(evaluator, t_min, t_max, steps, tolerance)?;
    println!(
        "grid: t in [{}, {}], {} points",
        sci(t_min),
        sci(t_max),
        report.t_grid.len()
    );
    println!(
        "max residual: {} (tolerance {})",
        sci(report.max_residual),
        sci(tolerance)
    );
    if report.pass {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failure::verification(format!(
            "identity residual {} exceeds tolerance {}",
            sci(report.max_residual),
            sci(tolerance)
        )))
    }
}

pub fn sample(
    system: &CookieCutterSystem,
    t: f64,
    path_length: usize,
    paths: usize,
    seed: u64,
) -> Result<(), Failure> {
    if path_length == 0 || paths == 0 {
        return Err(Failure {
            code: EXIT_COMPUTE,
            message: "need paths >= 1 and path-length >= 1".into(),
        });
    }
    let weights = equilibrium_weights(system, t)?;
    let evaluator = PressureEvaluator::analytic(system.clone())?;
    let target = -evaluator.pressure_derivative(t)?;
    let values = system.sample_lyapunov(&weights.weights, path_length, paths, seed)?;

    println!("path,lambda");
    for (i, v) in values.iter().enumerate() {
        println!("{i},{}", sci(*v));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let stderr = if values.len() > 1 {
        let var =
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
        (var / values.len() as f64).sqrt()
    } else {
        f64::NAN
    };
    let zscore = (mean - target) / stderr;
    println!("# mean {}", sci(mean));
    println!("# stderr {}", sci(stderr));
    println!("# target {}", sci(target));
    println!("# zscore {}", sci(zscore));
    Ok(())
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|k| lo + h * k as f64).collect()
}
