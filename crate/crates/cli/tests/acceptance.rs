//! Acceptance suite: ten numbered criteria, one test each, run at the
//! tolerances stated in the README. Every test prints a `[PASS]` line with
//! the measured quantity (visible with `--nocapture`).

use cookie_cutter::analysis::{bowen_dimension, legendre_transform, lemma_rel_residual};
use cookie_cutter::config::load_system;
use cookie_cutter::pressure::equilibrium_weights;
use cookie_cutter::spectrum::{alpha_range, spectrum_curve, verify_identity};
use cookie_cutter::{defaults, BranchSpec, CookieCutterSystem, FnConvex, PressureEvaluator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::time::Instant;

const LN2: f64 = std::f64::consts::LN_2;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run_binary(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_cookie-cutter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn uneven_evaluator() -> PressureEvaluator {
    PressureEvaluator::analytic(load_system(&config("uneven.json")).unwrap()).unwrap()
}

/// d for slopes (2, 4): 2^{-d} + 4^{-d} = 1, so u = 2^{-d} solves u + u^2 = 1
/// and d = -log2((sqrt 5 - 1)/2).
fn golden_dimension() -> f64 {
    -(((5f64.sqrt() - 1.0) / 2.0).ln()) / LN2
}

/// Random affine system with 2..=5 branches, slopes in [1.5, 8], one branch
/// per cell of a uniform partition with gaps >= 0.01.
fn random_affine_system(rng: &mut ChaCha8Rng) -> CookieCutterSystem {
    let n = rng.gen_range(2usize..=5);
    let cell = 1.0 / n as f64;
    let specs: Vec<BranchSpec> = (0..n)
        .map(|i| {
            let wmax = (cell - 0.02).min(1.0 / 1.5);
            let w = rng.gen_range(0.125..wmax);
            let a = i as f64 * cell + rng.gen_range(0.0..(cell - w - 0.01));
            BranchSpec::Affine {
                interval: (a, a + w),
            }
        })
        .collect();
    CookieCutterSystem::new(&specs).expect("construction is valid")
}

#[test]
fn acceptance_01_main_theorem_affine() {
    let start = Instant::now();

    // the headline reproduction command on the slopes-(2,4) system
    let out = run_binary(&[
        "verify",
        config("uneven.json").to_str().unwrap(),
        "--backend",
        "analytic",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    let reported: f64 = text
        .lines()
        .find(|l| l.starts_with("max residual"))
        .and_then(|l| l.split_whitespace().nth(2))
        .unwrap()
        .parse()
        .unwrap();
    assert!(reported <= 1e-10, "cmd_verify residual {reported}");

    // 50 randomized affine systems
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut system = random_affine_system(&mut rng);
        while system.is_affine_degenerate() {
            system = random_affine_system(&mut rng);
        }
        let evaluator = PressureEvaluator::analytic(system).unwrap();
        let report = verify_identity(&evaluator, -2.0, 3.0, 101, 1e-10).unwrap();
        assert!(
            report.pass,
            "random system residual {}",
            report.max_residual
        );
        worst = worst.max(report.max_residual);
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {elapsed:.2}s exceeds 1s");
    println!(
        "[PASS] criterion 1: affine identity; cmd residual {reported:.2e}, \
         worst of 50 random systems {worst:.2e} (<= 1e-10), {elapsed:.2}s"
    );
}

#[test]
fn acceptance_02_main_theorem_nonlinear() {
    let start = Instant::now();
    let system = load_system(&config("quadratic.json")).unwrap();

    let run = |nodes: usize| {
        let evaluator = PressureEvaluator::collocation(system.clone(), nodes);
        verify_identity(
            &evaluator,
            defaults::T_GRID_MIN,
            defaults::T_GRID_MAX,
            defaults::T_GRID_STEPS,
            defaults::IDENTITY_TOL_COLLOCATION,
        )
        .unwrap()
    };
    let report_64 = run(64);
    assert!(
        report_64.pass && report_64.max_residual <= 1e-6,
        "N=64 residual {}",
        report_64.max_residual
    );

    // Both identity sides share the numeric P', so the discretization error
    // cancels and the residual sits at the solver-noise floor (~1e-15) for
    // every N >= 16; "shrinks" is therefore asserted up to that floor.
    let report_128 = run(128);
    assert!(
        report_128.max_residual <= report_64.max_residual.max(1e-12),
        "N=128 residual {} vs N=64 residual {}",
        report_128.max_residual,
        report_64.max_residual
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "runtime {elapsed:.1}s exceeds 30s");
    println!(
        "[PASS] criterion 2: nonlinear identity; N=64 residual {:.2e} (<= 1e-6), \
         N=128 residual {:.2e}, {elapsed:.1}s",
        report_64.max_residual, report_128.max_residual
    );
}

#[test]
fn acceptance_03_bowen_dimension() {
    // Cantor: closed form log 2 / log 3
    let cantor = PressureEvaluator::analytic(load_system(&config("cantor.json")).unwrap()).unwrap();
    let (d_cantor, _) = bowen_dimension(&cantor).unwrap();
    assert!(
        (d_cantor - 0.6309297535714574).abs() <= 1e-12,
        "cantor d = {d_cantor}"
    );

    // slopes (2, 4): golden-ratio closed form plus a bisection cross-check
    let uneven = uneven_evaluator();
    let (d, trace) = bowen_dimension(&uneven).unwrap();
    assert!(
        (d - golden_dimension()).abs() <= 1e-12,
        "golden oracle, d = {d}"
    );
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if uneven.pressure(mid).unwrap() > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!(
        (d - 0.5 * (lo + hi)).abs() <= 1e-12,
        "bisection cross-check"
    );

    // quadratic convergence of the Newton trace
    let errors: Vec<f64> = trace.iterates.iter().map(|&(t, _)| (t - d).abs()).collect();
    assert!(errors.len() >= 4, "trace has {} iterates", errors.len());
    let mut ratios = Vec::new();
    for k in 0..errors.len() - 1 {
        if errors[k] > 1e-8 && errors[k] < 0.5 {
            ratios.push(errors[k + 1] / (errors[k] * errors[k]));
        }
    }
    assert!(
        ratios.len() >= 2 && ratios.iter().all(|&r| r < 10.0),
        "ratios {ratios:?}"
    );

    println!(
        "[PASS] criterion 3: d_cantor = {d_cantor:.15}, d_(2,4) = {d:.15} (both within 1e-12), \
         error ratios |e_k+1|/|e_k|^2 = {ratios:.3?}"
    );
}

#[test]
fn acceptance_04_lemma_rel() {
    let exponential = FnConvex::new(|t: f64| (-t).exp() - 0.5, |t: f64| -(-t).exp());
    let mut worst = 0.0f64;
    for alpha in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let residual = lemma_rel_residual(&exponential, alpha).unwrap();
        assert!(residual <= 1e-10, "exp alpha={alpha}: {residual}");
        worst = worst.max(residual);
    }

    // 100-point alpha grids over both analytic test pressures: the 1e-10
    // bound needs closed-form derivatives (numeric P' carries ~1e-10 of
    // differencing noise by itself, see the collocation check below)
    let uneven = uneven_evaluator();
    for k in 0..100 {
        let alpha = 0.72 + (1.36 - 0.72) * k as f64 / 99.0;
        let residual = lemma_rel_residual(&uneven, alpha).unwrap();
        assert!(residual <= 1e-10, "(2,4) alpha={alpha}: {residual}");
        worst = worst.max(residual);
    }
    let three_branch = PressureEvaluator::analytic(
        CookieCutterSystem::new(&[
            BranchSpec::Affine {
                interval: (0.0, 0.4),
            },
            BranchSpec::Affine {
                interval: (0.45, 0.7),
            },
            BranchSpec::Affine {
                interval: (0.8, 0.95),
            },
        ])
        .unwrap(),
    )
    .unwrap();
    for k in 0..100 {
        // slopes (2.5, 4, 20/3): alpha strictly inside (log 2.5, log 20/3)
        let alpha = 0.93 + (1.88 - 0.93) * k as f64 / 99.0;
        let residual = lemma_rel_residual(&three_branch, alpha).unwrap();
        assert!(residual <= 1e-10, "3-branch alpha={alpha}: {residual}");
        worst = worst.max(residual);
    }

    // collocation backend: same identity, at the numeric-P' error budget
    let quadratic = PressureEvaluator::collocation(
        load_system(&config("quadratic.json")).unwrap(),
        defaults::NODES,
    );
    let range = alpha_range(&quadratic).unwrap();
    let width = range.alpha_max - range.alpha_min;
    let mut worst_colloc = 0.0f64;
    for k in 0..100 {
        let alpha = range.alpha_min + width * (0.02 + 0.96 * k as f64 / 99.0);
        let residual = lemma_rel_residual(&quadratic, alpha).unwrap();
        assert!(
            residual <= defaults::IDENTITY_TOL_COLLOCATION,
            "quad alpha={alpha}: {residual}"
        );
        worst_colloc = worst_colloc.max(residual);
    }
    println!(
        "[PASS] criterion 4: lemma residual N_f(t_a) = F(a)/a; worst analytic {worst:.2e} \
         (<= 1e-10), worst collocation {worst_colloc:.2e} (<= 1e-6)"
    );
}

#[test]
fn acceptance_05_legendre_inf_oracle() {
    // dense-grid minimization of f(t) + alpha t over t in [-20, 20], step 1e-4
    let step = 1e-4;
    let uneven = uneven_evaluator();
    let mut worst = 0.0f64;
    for alpha in [0.75, 0.95, 1.1, 1.3] {
        let transform = legendre_transform(&uneven, alpha).unwrap();
        let mut best = f64::INFINITY;
        let mut k = 0u64;
        loop {
            let t = -20.0 + step * k as f64;
            if t > 20.0 {
                break;
            }
            best = best.min(uneven.pressure(t).unwrap() + alpha * t);
            k += 1;
        }
        let diff = (transform.value - best).abs();
        assert!(diff <= 1e-6, "(2,4) alpha={alpha}: {diff}");
        worst = worst.max(diff);
    }

    // collocation backend: f(t) + alpha t is convex, so restricting the sweep
    // to grid points near the tangency returns the exact same grid minimum
    // as the full [-20, 20] sweep at a fraction of the cost
    let quadratic = PressureEvaluator::collocation(
        load_system(&config("quadratic.json")).unwrap(),
        defaults::NODES,
    );
    let range = alpha_range(&quadratic).unwrap();
    for frac in [0.25, 0.75] {
        let alpha = range.alpha_min + (range.alpha_max - range.alpha_min) * frac;
        let transform = legendre_transform(&quadratic, alpha).unwrap();
        let k_center = ((transform.t_alpha + 20.0) / step).round() as i64;
        let mut best = f64::INFINITY;
        for k in (k_center - 2000)..=(k_center + 2000) {
            let t = -20.0 + step * k as f64;
            best = best.min(quadratic.pressure(t).unwrap() + alpha * t);
        }
        let diff = (transform.value - best).abs();
        assert!(diff <= 1e-6, "quad alpha={alpha}: {diff}");
        worst = worst.max(diff);
    }
    println!(
        "[PASS] criterion 5: tangency F(a) vs dense-grid inf; worst gap {worst:.2e} (<= 1e-6)"
    );
}

#[test]
fn acceptance_06_spectrum_maximum_is_dimension() {
    let uneven = uneven_evaluator();
    let curve = spectrum_curve(&uneven, 1001, defaults::SPECTRUM_MARGIN).unwrap();
    let (d, _) = bowen_dimension(&uneven).unwrap();
    let (argmax, max_l) = curve.points.iter().map(|p| (p.alpha, p.dimension)).fold(
        (f64::NAN, f64::NEG_INFINITY),
        |acc, x| if x.1 > acc.1 { x } else { acc },
    );
    assert!((max_l - d).abs() <= 1e-6, "max L = {max_l}, d = {d}");

    let alpha_star = -uneven.pressure_derivative(d).unwrap();
    let grid_step = curve.points[1].alpha - curve.points[0].alpha;
    assert!(
        (argmax - alpha_star).abs() <= grid_step,
        "argmax {argmax} vs -P'(d) = {alpha_star}, step {grid_step}"
    );
    println!(
        "[PASS] criterion 6: max L over 1001 points = {max_l:.9} vs d = {d:.9} \
         (gap {:.2e} <= 1e-6), attained within one grid step of -P'(d)",
        (max_l - d).abs()
    );
}

#[test]
fn acceptance_07_backend_equivalence() {
    let mut worst = 0.0f64;
    for file in ["uneven.json", "cantor.json"] {
        let system = load_system(&config(file)).unwrap();
        let analytic = PressureEvaluator::analytic(system.clone()).unwrap();
        for nodes in [8, 16, 64] {
            let collocation = PressureEvaluator::collocation(system.clone(), nodes);
            for k in 0..=60 {
                let t = -2.0 + 6.0 * k as f64 / 60.0;
                let diff = (analytic.pressure(t).unwrap() - collocation.pressure(t).unwrap()).abs();
                assert!(diff <= 1e-10, "{file} N={nodes} t={t}: {diff}");
                worst = worst.max(diff);
            }
        }
    }
    println!("[PASS] criterion 7: affine collocation == analytic, worst {worst:.2e} (<= 1e-10)");
}

#[test]
fn acceptance_08_pressure_shape() {
    let evaluators = [
        (
            "cantor",
            PressureEvaluator::analytic(load_system(&config("cantor.json")).unwrap()).unwrap(),
        ),
        ("uneven", uneven_evaluator()),
        (
            "quadratic",
            PressureEvaluator::collocation(
                load_system(&config("quadratic.json")).unwrap(),
                defaults::NODES,
            ),
        ),
    ];
    for (name, evaluator) in &evaluators {
        let ts: Vec<f64> = (0..1001).map(|k| -2.0 + 6.0 * k as f64 / 1000.0).collect();
        let ps: Vec<f64> = ts.iter().map(|&t| evaluator.pressure(t).unwrap()).collect();
        for (k, w) in ps.windows(2).enumerate() {
            assert!(w[1] < w[0], "{name}: strict decrease fails at t={}", ts[k]);
        }
        for k in 0..ts.len() - 2 {
            let mid = evaluator.pressure((ts[k] + ts[k + 2]) / 2.0).unwrap();
            assert!(
                mid <= (ps[k] + ps[k + 2]) / 2.0 + 1e-10,
                "{name}: midpoint convexity fails at t={}",
                ts[k + 1]
            );
        }
    }
    println!(
        "[PASS] criterion 8: strict decrease and midpoint convexity on 1001-point grids \
         for cantor, uneven, quadratic"
    );
}

#[test]
fn acceptance_09_monte_carlo_lyapunov() {
    let start = Instant::now();
    let system = load_system(&config("uneven.json")).unwrap();
    let weights = equilibrium_weights(&system, 1.0).unwrap();
    assert!((weights.weights[0] - 2.0 / 3.0).abs() <= 1e-14);
    assert!((weights.weights[1] - 1.0 / 3.0).abs() <= 1e-14);

    let values = system
        .sample_lyapunov(&weights.weights, 10_000, 100, defaults::SAMPLE_SEED)
        .unwrap();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var =
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
    let stderr = (var / values.len() as f64).sqrt();
    let target = 4.0 / 3.0 * LN2;
    let z = (mean - target) / stderr;
    assert!(z.abs() <= 3.0, "mean {mean}, target {target}, z = {z}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.1}s exceeds 5s");
    println!(
        "[PASS] criterion 9: 100 x 10^4 Birkhoff samples, mean {mean:.7} vs target {target:.7}, \
         |z| = {:.2} (<= 3), {elapsed:.1}s",
        z.abs()
    );
}

#[test]
fn acceptance_10_degenerate_handling() {
    let cantor = PressureEvaluator::analytic(load_system(&config("cantor.json")).unwrap()).unwrap();
    let curve = spectrum_curve(&cantor, 101, defaults::SPECTRUM_MARGIN).unwrap();
    assert!(curve.degenerate);
    assert_eq!(curve.points.len(), 1, "exactly one point");
    let point = &curve.points[0];
    assert!((point.alpha - 3f64.ln()).abs() <= 1e-12);
    assert!((point.dimension - LN2 / 3f64.ln()).abs() <= 1e-12);

    let out = run_binary(&["verify", config("cantor.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "DegeneratePressure exit code");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degenerate"), "{err}");

    println!(
        "[PASS] criterion 10: cantor spectrum is the single point \
         (log 3, log2/log3) = ({:.7}, {:.7}); cmd_verify exits 4 on it",
        point.alpha, point.dimension
    );
}
