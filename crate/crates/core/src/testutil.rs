//! Shared fixtures and generators for the unit tests.

use crate::system::{BranchSpec, CookieCutterSystem};
use proptest::prelude::*;

/// Middle-third Cantor construction: slopes (3, 3), affine-degenerate.
pub(crate) fn cantor() -> CookieCutterSystem {
    CookieCutterSystem::new(&[
        BranchSpec::Affine {
            interval: (0.0, 1.0 / 3.0),
        },
        BranchSpec::Affine {
            interval: (2.0 / 3.0, 1.0),
        },
    ])
    .unwrap()
}

/// Two affine branches with slopes (2, 4); the workhorse non-degenerate system.
pub(crate) fn slopes_2_4() -> CookieCutterSystem {
    CookieCutterSystem::new(&[
        BranchSpec::Affine {
            interval: (0.0, 0.5),
        },
        BranchSpec::Affine {
            interval: (0.75, 1.0),
        },
    ])
    .unwrap()
}

/// The two-branch quadratic system used by the nonlinear certification runs.
pub(crate) fn quad_system() -> CookieCutterSystem {
    CookieCutterSystem::new(&[
        BranchSpec::QuadraticPerturbed {
            interval: (0.0, 0.35),
            epsilon: 0.3,
        },
        BranchSpec::QuadraticPerturbed {
            interval: (0.6, 0.95),
            epsilon: -0.2,
        },
    ])
    .unwrap()
}

/// Strongly nonlinear quadratic system: wide branches, |epsilon| = 0.85.
/// Collocation converges slowly enough here to observe the decay in N.
pub(crate) fn strong_quad_system() -> CookieCutterSystem {
    CookieCutterSystem::new(&[
        BranchSpec::QuadraticPerturbed {
            interval: (0.0, 0.48),
            epsilon: 0.85,
        },
        BranchSpec::QuadraticPerturbed {
            interval: (0.52, 0.995),
            epsilon: -0.85,
        },
    ])
    .unwrap()
}

/// A valid system of 2..=5 branches, mixing affine and quadratic kinds,
/// one branch per cell of a uniform partition (gaps >= 0.015 by construction;
/// widths <= cell - 0.02, so expansion holds for any |epsilon| <= 0.9).
pub(crate) fn arb_system() -> BoxedStrategy<CookieCutterSystem> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let cell = 1.0 / n as f64;
            let branch = (0.12f64..0.9, 0.0f64..1.0, -0.9f64..0.9, any::<bool>());
            proptest::collection::vec(branch, n).prop_map(move |params| {
                let specs: Vec<BranchSpec> = params
                    .iter()
                    .enumerate()
                    .map(|(i, &(wfrac, pos, eps, affine))| {
                        let wmax = cell - 0.02;
                        let w = 0.08 + wfrac * (wmax - 0.08);
                        let a = i as f64 * cell + pos * (cell - w - 0.015);
                        let interval = (a, a + w);
                        if affine {
                            BranchSpec::Affine { interval }
                        } else {
                            BranchSpec::QuadraticPerturbed {
                                interval,
                                epsilon: eps,
                            }
                        }
                    })
                    .collect();
                CookieCutterSystem::new(&specs).expect("constructed valid")
            })
        })
        .boxed()
}

/// All-affine variant of [`arb_system`], never degenerate by construction.
pub(crate) fn arb_affine_system() -> BoxedStrategy<CookieCutterSystem> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let cell = 1.0 / n as f64;
            proptest::collection::vec((0.12f64..0.9, 0.0f64..1.0), n).prop_map(move |params| {
                let specs: Vec<BranchSpec> = params
                    .iter()
                    .enumerate()
                    .map(|(i, &(wfrac, pos))| {
                        let wmax = cell - 0.02;
                        // spread the width fractions so slopes differ
                        let w = 0.08 + (wfrac + i as f64 * 0.07).min(0.95) * (wmax - 0.08);
                        let a = i as f64 * cell + pos * (cell - w - 0.015);
                        BranchSpec::Affine {
                            interval: (a, a + w),
                        }
                    })
                    .collect();
                CookieCutterSystem::new(&specs).expect("constructed valid")
            })
        })
        .boxed()
}
