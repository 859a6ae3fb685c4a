//! Cookie-cutter maps on [0, 1].
//!
//! A system is a family of n >= 2 expanding full branches T: I_i -> [0, 1] on
//! pairwise-disjoint closed subintervals. Branches are specified through their
//! inverse maps psi_i (contractions [0, 1] -> I_i) in closed form, so the
//! transfer operator can be evaluated without any root finding. The forward
//! map is recovered by inverting psi analytically.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance under which all-affine slopes count as equal
/// (the pressure is then linear in t and the spectrum collapses).
const DEGENERACY_RTOL: f64 = 1e-12;

/// Raw description of one full branch, before validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchSpec {
    /// psi(y) = a + (b-a) y. Constant expansion |T'| = 1/(b-a).
    Affine { interval: (f64, f64) },
    /// psi(y) = a + (b-a)(y + eps y(y-1)), psi'(y) = (b-a)(1 + eps(2y-1)).
    ///
    /// Monotone for |eps| < 1, uniformly expanding when (b-a)(1+|eps|) < 1.
    QuadraticPerturbed { interval: (f64, f64), epsilon: f64 },
}

/// One validated branch of a cookie-cutter map.
#[derive(Debug, Clone, Copy)]
pub struct Branch {
    a: f64,
    b: f64,
    epsilon: f64,
    affine: bool,
}

impl Branch {
    fn from_spec(spec: &BranchSpec) -> Result<Self> {
        let (interval, epsilon, affine) = match *spec {
            BranchSpec::Affine { interval } => (interval, 0.0, true),
            BranchSpec::QuadraticPerturbed { interval, epsilon } => (interval, epsilon, false),
        };
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b && b <= 1.0) {
            return Err(Error::InvalidInterval { a, b });
        }
        if !affine && epsilon.abs() >= 1.0 {
            return Err(Error::NonMonotone {
                a,
                b,
                eps: epsilon.abs(),
            });
        }
        let branch = Branch {
            a,
            b,
            epsilon,
            affine,
        };
        let sup = branch.sup_psi_prime();
        if sup >= 1.0 {
            return Err(Error::NotExpanding { a, b, sup });
        }
        Ok(branch)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Inverse branch psi: [0, 1] -> [a, b], strictly increasing.
    pub fn psi(&self, y: f64) -> f64 {
        let w = self.width();
        if self.affine {
            self.a + w * y
        } else {
            self.a + w * (y + self.epsilon * y * (y - 1.0))
        }
    }

    /// psi'(y) > 0.
    pub fn psi_prime(&self, y: f64) -> f64 {
        let w = self.width();
        if self.affine {
            w
        } else {
            w * (1.0 + self.epsilon * (2.0 * y - 1.0))
        }
    }

    /// T restricted to this branch: the inverse of psi, mapping [a, b] onto [0, 1].
    pub fn invert(&self, x: f64) -> f64 {
        let u = (x - self.a) / self.width();
        if self.affine || self.epsilon == 0.0 {
            return u.clamp(0.0, 1.0);
        }
        // Root of eps y^2 + (1-eps) y - u = 0 in [0, 1], rationalized so the
        // discriminant never cancels (it equals (1+eps)^2 > 0 at u = 1).
        let c = 1.0 - self.epsilon;
        let y = 2.0 * u / (c + (c * c + 4.0 * self.epsilon * u).sqrt());
        y.clamp(0.0, 1.0)
    }

    pub fn sup_psi_prime(&self) -> f64 {
        self.width() * (1.0 + self.epsilon.abs())
    }

    pub fn min_psi_prime(&self) -> f64 {
        self.width() * (1.0 - self.epsilon.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// A finite word over the branch alphabet {0, ..., n-1}, coding a cylinder
/// set of the repeller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicWord {
    symbols: Vec<usize>,
}

impl SymbolicWord {
    pub fn new(symbols: Vec<usize>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(SymbolicWord { symbols })
    }

    /// Word repeating `symbol` `len` times.
    pub fn constant(symbol: usize, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(SymbolicWord {
            symbols: vec![symbol; len],
        })
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // enforced non-empty at construction
    }
}

/// A validated cookie-cutter map: n >= 2 expanding full branches on
/// pairwise-disjoint closed subintervals of [0, 1], sorted by left endpoint.
#[derive(Debug, Clone)]
pub struct CookieCutterSystem {
    branches: Vec<Branch>,
    affine_degenerate: bool,
}

impl CookieCutterSystem {
    /// Validates the specs and assembles a system.
    ///
    /// Branch-level invariants (interval bounds, monotonicity, expansion) are
    /// checked first, then the branch count, then pairwise disjointness with
    /// strict gaps (touching intervals are rejected so the symbolic coding of
    /// the repeller stays unambiguous).
    pub fn new(specs: &[BranchSpec]) -> Result<Self> {
        let mut branches = specs
            .iter()
            .map(Branch::from_spec)
            .collect::<Result<Vec<_>>>()?;
        if branches.len() < 2 {
            return Err(Error::TooFewBranches(branches.len()));
        }
        branches.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("validated finite"));
        for pair in branches.windows(2) {
            if pair[0].b >= pair[1].a {
                return Err(Error::OverlappingIntervals {
                    a0: pair[0].a,
                    b0: pair[0].b,
                    a1: pair[1].a,
                    b1: pair[1].b,
                });
            }
        }
        let w0 = branches[0].width();
        let affine_degenerate = branches.iter().all(|br| br.affine)
            && branches
                .iter()
                .all(|br| (br.width() - w0).abs() <= DEGENERACY_RTOL * w0);
        Ok(CookieCutterSystem {
            branches,
            affine_degenerate,
        })
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// True iff all branches are affine with equal slopes (within 1e-12
    /// relative). The pressure is then linear in t.
    pub fn is_affine_degenerate(&self) -> bool {
        self.affine_degenerate
    }

    pub fn is_affine(&self) -> bool {
        self.branches.iter().all(|br| br.affine)
    }

    /// Expansion factors s_i = 1/(b_i - a_i) when every branch is affine.
    pub fn affine_slopes(&self) -> Option<Vec<f64>> {
        if !self.is_affine() {
            return None;
        }
        Some(self.branches.iter().map(|br| 1.0 / br.width()).collect())
    }

    fn branch_index_of(&self, x: f64) -> Result<usize> {
        self.branches
            .iter()
            .position(|br| br.contains(x))
            .ok_or(Error::OutsideDomain(x))
    }

    fn check_word(&self, word: &SymbolicWord) -> Result<()> {
        let n = self.branch_count();
        match word.symbols().iter().find(|&&s| s >= n) {
            Some(&symbol) => Err(Error::SymbolOutOfRange { symbol, n }),
            None => Ok(()),
        }
    }

    /// T(x) for x in some branch interval.
    pub fn forward(&self, x: f64) -> Result<f64> {
        let i = self.branch_index_of(x)?;
        Ok(self.branches[i].invert(x))
    }

    /// |T'(x)| = 1/psi'(T(x)) > 1.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let i = self.branch_index_of(x)?;
        let br = &self.branches[i];
        Ok(1.0 / br.psi_prime(br.invert(x)))
    }

    /// The cylinder interval psi_{i_1} o ... o psi_{i_m}([0, 1]).
    pub fn cylinder(&self, word: &SymbolicWord) -> Result<(f64, f64)> {
        self.check_word(word)?;
        let (mut lo, mut hi) = (0.0, 1.0);
        for &s in word.symbols().iter().rev() {
            lo = self.branches[s].psi(lo);
            hi = self.branches[s].psi(hi);
        }
        Ok((lo, hi))
    }

    /// Birkhoff average (1/m) sum_k log |T'| along the orbit coded by `word`.
    ///
    /// Evaluated on the backward orbit u_k = psi_{i_k}(u_{k+1}) anchored at
    /// u_{m+1} = 1/2, which gives (-1/m) sum_k log psi'_{i_k}(u_{k+1}). The
    /// anchor choice washes out geometrically; for affine systems the result
    /// is exactly the symbol-frequency average of the log slopes.
    pub fn birkhoff_lyapunov(&self, word: &SymbolicWord) -> Result<f64> {
        self.check_word(word)?;
        let mut y = 0.5;
        let mut sum = 0.0;
        for &s in word.symbols().iter().rev() {
            let br = &self.branches[s];
            sum += br.psi_prime(y).ln();
            y = br.psi(y);
        }
        Ok(-sum / word.len() as f64)
    }

    /// Draws `paths` i.i.d. symbolic words of length `path_length` with
    /// symbols ~ `weights` and returns their Birkhoff averages.
    ///
    /// RNG: ChaCha8, one stream per path derived from (seed, path index), so
    /// paths could be evaluated concurrently with results identical to this
    /// sequential loop. Symbols are drawn by inverse CDF over the weights.
    pub fn sample_lyapunov(
        &self,
        weights: &[f64],
        path_length: usize,
        paths: usize,
        seed: u64,
    ) -> Result<Vec<f64>> {
        let n = self.branch_count();
        if weights.len() != n {
            return Err(Error::BadWeights(format!(
                "expected {} weights, got {}",
                n,
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::BadWeights(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadWeights(format!("weights sum to {sum}, not 1")));
        }
        assert!(path_length >= 1, "path_length must be >= 1");
        assert!(paths >= 1, "paths must be >= 1");

        let last_positive = weights
            .iter()
            .rposition(|&w| w > 0.0)
            .ok_or_else(|| Error::BadWeights("all weights are zero".into()))?;
        let mut out = Vec::with_capacity(paths);
        for path in 0..paths {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(path as u64);
            let symbols: Vec<usize> = (0..path_length)
                .map(|_| sample_symbol(weights, last_positive, rng.gen::<f64>()))
                .collect();
            let word = SymbolicWord::new(symbols).expect("path_length >= 1");
            out.push(self.birkhoff_lyapunov(&word)?);
        }
        Ok(out)
    }
}

/// Inverse-CDF draw: first index whose cumulative weight exceeds u.
fn sample_symbol(weights: &[f64], last_positive: usize, u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    // u landed at/above the accumulated total (rounding); take the last
    // symbol that has positive probability.
    last_positive
}
