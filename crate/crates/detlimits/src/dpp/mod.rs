//! Determinantal machinery: pattern probabilities, covariances, exact window
//! samplers, the Plancherel and plane-partition samplers, and brute-force
//! enumeration oracles.

mod glauber;
mod linalg;
mod oracle;
mod plancherel;
mod sampler;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{LatticeSite, Pattern};
use crate::error::{Error, Result};
use crate::kernels::{CorrelationKernel, KernelBlock};

pub use glauber::{default_burn_in, expected_weight, geweke_z, macmahon_vacuum, sample_plane_partition, GlauberChain};
pub use linalg::{det, submatrix};
pub use oracle::{
    oracle_expectation, plancherel_tail, pp_tail, OracleModel, OraclePattern, PlancherelOracle, PpOracle,
    ORACLE_TAIL_LIMIT,
};
pub use plancherel::sample_plancherel;
pub use sampler::{sample_window, WindowSampler, CLAMP_TOL};

/// A finite window of sites with the occupation of each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowConfig<S> {
    pub window: Vec<S>,
    pub occupied: Vec<bool>,
}

impl<S: LatticeSite> WindowConfig<S> {
    /// Builds the configuration on `window` (sorted) whose particles are `points`.
    pub fn from_points(window: Vec<S>, points: &[S]) -> Self {
        let occupied = window.iter().map(|s| points.binary_search(s).is_ok()).collect();
        WindowConfig { window, occupied }
    }

    /// `None` when the site is outside the window.
    pub fn get(&self, s: &S) -> Option<bool> {
        self.window.binary_search(s).ok().map(|i| self.occupied[i])
    }

    /// `1{m ⊂ X}`; fails when a site of `m` is outside the window.
    pub fn contains_pattern(&self, m: &Pattern<S>) -> Result<bool> {
        for s in m.sites() {
            match self.get(s) {
                Some(true) => {}
                Some(false) => return Ok(false),
                None => return Err(Error::Coverage(format!("site {s} outside the window"))),
            }
        }
        Ok(true)
    }

    /// Occupations as a string of `0`/`1`.
    pub fn bit_string(&self) -> String {
        self.occupied.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn points(&self) -> Vec<S> {
        self.window.iter().zip(&self.occupied).filter(|(_, &o)| o).map(|(s, _)| *s).collect()
    }
}

/// `(seed, stream)` names an independent deterministic random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSeed { seed, stream }
    }

    /// ChaCha8 keyed by `seed` on stream `stream`.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream);
        r
    }

    pub fn with_stream(&self, stream: u64) -> Self {
        RngSeed { seed: self.seed, stream }
    }
}

fn clamp_probability(p: Complex64, what: &str) -> f64 {
    if p.im.abs() > 1e-9 * p.re.abs().max(1.0) {
        log::warn!("{what}: imaginary part {:e} discarded", p.im);
    }
    let v = p.re;
    if !(-1e-12..=1.0 + 1e-12).contains(&v) {
        log::warn!("{what}: determinant {v} outside [0, 1]");
    }
    v.clamp(-1e-9, 1.0 + 1e-9)
}

/// Determinant of a principal submatrix of a precomputed square block.
pub fn block_probability(block: &KernelBlock, idx: &[usize]) -> f64 {
    debug_assert_eq!(block.rows, block.cols);
    clamp_probability(det(&submatrix(&block.values, block.rows, idx), idx.len()), "pattern probability")
}

/// `E[c_m] = det[K(m_i, m_j)]`, clamped to `[−1e−9, 1 + 1e−9]`; 1 for `m = ∅`.
pub fn pattern_probability<K: CorrelationKernel + ?Sized>(k: &K, m: &Pattern<K::Site>) -> Result<f64> {
    if m.is_empty() {
        return Ok(1.0);
    }
    let mat = k.matrix(m.sites())?;
    Ok(clamp_probability(det(&mat, m.len()), "pattern probability"))
}

/// `det K|_{m ⊔ m′} − det K|_m · det K|_{m′}` for disjoint patterns.
pub fn pattern_covariance<K: CorrelationKernel + ?Sized>(k: &K, m: &Pattern<K::Site>, m2: &Pattern<K::Site>) -> Result<f64> {
    if !m.is_disjoint(m2) {
        return Err(Error::Overlap(format!("patterns {m} and {m2} share a site")));
    }
    let all = m.union(m2)?;
    let block = k.block(all.sites(), all.sites())?;
    let pos = |p: &Pattern<K::Site>| -> Vec<usize> {
        p.sites().iter().map(|s| all.sites().binary_search(s).expect("site of the union")).collect()
    };
    let n = all.len();
    let whole = det(&block.values, n).re;
    let (i1, i2) = (pos(m), pos(m2));
    let d1 = det(&submatrix(&block.values, n, &i1), i1.len()).re;
    let d2 = det(&submatrix(&block.values, n, &i2), i2.len()).re;
    Ok(whole - d1 * d2)
}
