use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;

use super::linalg::det;
use super::{RngSeed, WindowConfig};
use crate::combinatorics::LatticeSite;
use crate::error::{Error, Result};
use crate::kernels::CorrelationKernel;

/// Tolerated excursion of a conditional probability outside `[0, 1]`.
pub const CLAMP_TOL: f64 = 1e-7;
/// Smallest pivot accepted by the sequential sampler.
const PIVOT_TOL: f64 = 1e-10;
/// Largest window for the exact inclusion–exclusion table.
const EXACT_MAX: usize = 16;

/// Exact sampler for a determinantal process restricted to a finite window.
///
/// Sites are decided in order. After each decision the kernel is replaced by
/// its Schur complement: `K − K[·,x]K[x,·]/K[x,x]` on inclusion and
/// `K − K[·,x]K[x,·]/(K[x,x] − 1)` on exclusion. When a conditional
/// probability leaves `[−1e−7, 1 + 1e−7]` or a pivot falls below `1e−10`,
/// the remaining sites are drawn from the exact conditional law given by
/// inclusion–exclusion, which requires at most 16 sites.
pub struct WindowSampler<S> {
    window: Vec<S>,
    k: Vec<Complex64>,
    exact: OnceLock<Vec<f64>>,
}

impl<S: LatticeSite> WindowSampler<S> {
    /// `window` must be sorted and duplicate-free.
    pub fn new<K: CorrelationKernel<Site = S> + ?Sized>(kernel: &K, window: Vec<S>) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::Parameter("window".into(), "must be nonempty".into()));
        }
        if window.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("window".into(), "must be sorted and duplicate-free".into()));
        }
        let k = kernel.matrix(&window)?;
        Ok(WindowSampler { window, k, exact: OnceLock::new() })
    }

    pub fn window(&self) -> &[S] {
        &self.window
    }

    /// `P(X ∩ W = S)` for every subset `S` (bit `i` ↔ site `i`), by
    /// `(−1)^{|W∖S|} det(K − 1_{W∖S})`.
    pub fn exact_probabilities(&self) -> Result<&[f64]> {
        let w = self.window.len();
        if w > EXACT_MAX {
            return Err(Error::Degenerate(format!("exact table needs ≤ {EXACT_MAX} sites, window has {w}")));
        }
        Ok(self.exact.get_or_init(|| {
            (0..1usize << w)
                .map(|mask| {
                    let mut m = self.k.clone();
                    let mut sign = 1.0;
                    for i in 0..w {
                        if mask & (1 << i) == 0 {
                            m[i * w + i] -= 1.0;
                            sign = -sign;
                        }
                    }
                    (sign * det(&m, w).re).max(0.0)
                })
                .collect()
        }))
    }

    fn finish_exact<R: Rng + ?Sized>(&self, decided: usize, mask: usize, rng: &mut R) -> Result<usize> {
        let probs = self.exact_probabilities()?;
        let low = (1usize << decided) - 1;
        let cands: Vec<(usize, f64)> =
            probs.iter().enumerate().filter(|(s, _)| s & low == mask & low).map(|(s, &p)| (s, p)).collect();
        let total: f64 = cands.iter().map(|c| c.1).sum();
        if !(total > 0.0) {
            return Err(Error::Degenerate("conditioning event has zero probability".into()));
        }
        let mut u = rng.random::<f64>() * total;
        for &(s, p) in &cands {
            if u < p {
                return Ok(s);
            }
            u -= p;
        }
        Ok(cands.last().expect("nonempty").0)
    }

    /// One configuration on the window.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<WindowConfig<S>> {
        let w = self.window.len();
        let mut m = self.k.clone();
        let mut mask = 0usize;
        for i in 0..w {
            let p = m[i * w + i].re;
            if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&p) {
                log::debug!("conditional probability {p} at step {i}; exact fallback");
                mask = self.finish_exact(i, mask, rng)?;
                return Ok(self.config(mask));
            }
            let p = p.clamp(0.0, 1.0);
            let take = rng.random::<f64>() < p;
            let pivot = if take { m[i * w + i] } else { m[i * w + i] - 1.0 };
            if pivot.norm() < PIVOT_TOL {
                log::debug!("pivot {} at step {i}; exact fallback", pivot.norm());
                mask = self.finish_exact(i, mask, rng)?;
                return Ok(self.config(mask));
            }
            if take {
                mask |= 1 << i;
            }
            for a in i + 1..w {
                let fa = m[a * w + i] / pivot;
                if fa.norm() == 0.0 {
                    continue;
                }
                for b in i + 1..w {
                    let v = m[i * w + b];
                    m[a * w + b] -= fa * v;
                }
            }
        }
        Ok(self.config(mask))
    }

    fn config(&self, mask: usize) -> WindowConfig<S> {
        WindowConfig { window: self.window.clone(), occupied: (0..self.window.len()).map(|i| mask & (1 << i) != 0).collect() }
    }
}

/// One exact sample of the process restricted to `window`.
pub fn sample_window<K: CorrelationKernel + ?Sized>(kernel: &K, window: Vec<K::Site>, seed: &RngSeed) -> Result<WindowConfig<K::Site>> {
    WindowSampler::new(kernel, window)?.sample(&mut seed.rng())
}
