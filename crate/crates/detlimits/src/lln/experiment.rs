use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{pp_map, shur_map, Pattern, PpWindow, SitePP};
use crate::contour::QuadSettings;
use crate::dpp::{default_burn_in, sample_plancherel, GlauberChain, RngSeed, WindowConfig, WindowSampler};
use crate::error::{Error, Result};
use crate::kernels::{CorrelationKernel, SchurKernel, ZgProfile};
use crate::specialfn::{GCoefficients, QParam};

use super::statistic::{empirical_statistic_pp, empirical_statistic_schur_with_range, pp_window_bounds, schur_window};
use super::{limit_integral_pp, limit_integral_schur, pairwise_sum_real, TestFunction};

/// Default absolute tolerance for the reference integral.
pub const DEFAULT_INTEGRAL_TOL: f64 = 1e-9;

/// A law-of-large-numbers experiment: model, scale, test function and pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum LlnSpec {
    /// Symmetric Schur measure with symbol `G` at scale `α`.
    Schur { g: GCoefficients, alpha: f64, f: TestFunction, pattern: Pattern<i64> },
    /// Plane partitions with `q = e^{−r}`; `steps` Glauber proposals per
    /// replica (default: the burn-in).
    PlanePartition { r: f64, f: TestFunction, pattern: Pattern<SitePP>, steps: Option<u64> },
}

impl LlnSpec {
    pub fn scale(&self) -> f64 {
        match self {
            LlnSpec::Schur { alpha, .. } => *alpha,
            LlnSpec::PlanePartition { r, .. } => *r,
        }
    }

    pub fn pattern_strings(&self) -> Vec<String> {
        match self {
            LlnSpec::Schur { pattern, .. } => pattern.sites().iter().map(|s| s.to_string()).collect(),
            LlnSpec::PlanePartition { pattern, .. } => pattern.sites().iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Outcome of [`run_lln_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: LlnSpec,
    pub seed: RngSeed,
    pub replicas: usize,
    pub sigma_samples: Vec<f64>,
    pub i_value: f64,
    pub i_quadrature_error: f64,
    pub mean: f64,
    /// Unbiased sample variance of `sigma_samples`.
    pub variance: f64,
    /// `sqrt(variance / replicas)`.
    pub stderr: f64,
    /// `(mean − I)/stderr`; absent when `stderr = 0`.
    pub z_score: Option<f64>,
}

/// `(mean, unbiased variance)` with order-fixed pairwise sums.
pub fn mean_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum_real(xs) / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    (mean, pairwise_sum_real(&dev) / (n - 1.0))
}

/// Stream of replica `k` derived from the experiment seed.
pub fn replica_seed(seed: &RngSeed, k: usize) -> RngSeed {
    seed.with_stream((seed.stream << 32) | k as u64)
}

enum SchurSampler {
    Plancherel { theta: f64 },
    Window(WindowSampler<i64>),
}

fn schur_sigmas(g: &GCoefficients, alpha: f64, f: &TestFunction, m: &Pattern<i64>, replicas: usize, seed: &RngSeed) -> Result<Vec<f64>> {
    let profile = ZgProfile::new(g);
    let ur = (profile.u_min, profile.u_max);
    let (a, b) = schur_window(f, m, alpha, ur);
    let sampler = match g.plancherel_theta() {
        Some(theta) => SchurSampler::Plancherel { theta: theta * alpha },
        None => {
            if g.is_zero() {
                log::info!("G ≡ 0: the configuration is the vacuum");
            }
            let kernel = SchurKernel::new(g.clone(), alpha, QuadSettings::default())?;
            SchurSampler::Window(WindowSampler::new(&kernel, (a..=b).collect())?)
        }
    };
    let window: Vec<i64> = (a..=b).collect();
    (0..replicas)
        .into_par_iter()
        .map(|k| {
            let mut rng = replica_seed(seed, k).rng();
            let config = match &sampler {
                SchurSampler::Plancherel { theta } => {
                    let lambda = sample_plancherel(*theta, &mut rng)?;
                    WindowConfig::from_points(window.clone(), &shur_map(&lambda, (a, b)))
                }
                SchurSampler::Window(s) => s.sample(&mut rng)?,
            };
            empirical_statistic_schur_with_range(&config, f, m, alpha, ur)
        })
        .collect()
}

fn pp_sigmas(r: f64, f: &TestFunction, m: &Pattern<SitePP>, steps: Option<u64>, replicas: usize, seed: &RngSeed) -> Result<Vec<f64>> {
    let q = QParam::from_r(r)?;
    let steps = steps.unwrap_or_else(|| default_burn_in(q.q));
    let (t_min, t_max, h2_min, h2_max) = pp_window_bounds(f, m, r);
    let window = PpWindow { t_min, t_max, h2_min, h2_max };
    (0..replicas)
        .into_par_iter()
        .map(|k| {
            let mut rng = replica_seed(seed, k).rng();
            let mut chain = GlauberChain::new(q.q)?;
            chain.run(steps, &mut rng, None);
            let pts = pp_map(&chain.state(), &window);
            let config = WindowConfig::from_points(window.admissible_sites(), &pts);
            empirical_statistic_pp(&config, f, m, r)
        })
        .collect()
}

/// Draws `replicas` independent configurations, evaluates `Σ(f, m, ·)` on
/// each and compares the mean with `I(f, m)`.
///
/// Replica `k` uses stream [`replica_seed`]`(seed, k)`; the result does not
/// depend on the number of worker threads.
pub fn run_lln_experiment(spec: &LlnSpec, replicas: usize, seed: RngSeed) -> Result<ExperimentResult> {
    run_lln_experiment_tol(spec, replicas, seed, DEFAULT_INTEGRAL_TOL)
}

/// [`run_lln_experiment`] with an explicit tolerance for `I(f, m)`.
pub fn run_lln_experiment_tol(spec: &LlnSpec, replicas: usize, seed: RngSeed, tol: f64) -> Result<ExperimentResult> {
    if replicas < 2 {
        return Err(Error::Usage(format!("replicas must be ≥ 2, got {replicas}")));
    }
    let (sigmas, (i_value, i_err)) = match spec {
        LlnSpec::Schur { g, alpha, f, pattern } => {
            if !(*alpha > 0.0) {
                return Err(Error::Parameter("alpha".into(), format!("must be positive, got {alpha}")));
            }
            (schur_sigmas(g, *alpha, f, pattern, replicas, &seed)?, limit_integral_schur(f, pattern, g, tol)?)
        }
        LlnSpec::PlanePartition { r, f, pattern, steps } => {
            (pp_sigmas(*r, f, pattern, *steps, replicas, &seed)?, limit_integral_pp(f, pattern, tol)?)
        }
    };
    let (mean, variance) = mean_variance(&sigmas);
    let stderr = (variance / replicas as f64).sqrt();
    let z_score = if stderr > 0.0 { Some((mean - i_value) / stderr) } else { None };
    Ok(ExperimentResult {
        spec: spec.clone(),
        seed,
        replicas,
        sigma_samples: sigmas,
        i_value,
        i_quadrature_error: i_err,
        mean,
        variance,
        stderr,
        z_score,
    })
}

/// Σ values for the independent-Bernoulli field with the one-point function
/// `K_α(x, x)` of the Schur model; its variance dominates the determinantal one.
pub fn run_bernoulli_field(g: &GCoefficients, alpha: f64, f: &TestFunction, m: &Pattern<i64>, replicas: usize, seed: RngSeed) -> Result<Vec<f64>> {
    use rand::Rng;
    let profile = ZgProfile::new(g);
    let ur = (profile.u_min, profile.u_max);
    let (a, b) = schur_window(f, m, alpha, ur);
    let window: Vec<i64> = (a..=b).collect();
    let kernel = SchurKernel::new(g.clone(), alpha, QuadSettings::default())?;
    let block = kernel.block(&window, &window)?;
    let diag: Vec<f64> = (0..window.len()).map(|i| block.get(i, i).re.clamp(0.0, 1.0)).collect();
    (0..replicas)
        .into_par_iter()
        .map(|k| {
            let mut rng = replica_seed(&seed, k).rng();
            let occupied: Vec<bool> = diag.iter().map(|&p| rng.random::<f64>() < p).collect();
            let config = WindowConfig { window: window.clone(), occupied };
            empirical_statistic_schur_with_range(&config, f, m, alpha, ur)
        })
        .collect()
}

/// Number of sites in the window read by a Schur experiment.
pub fn schur_window_len(g: &GCoefficients, alpha: f64, f: &TestFunction, m: &Pattern<i64>) -> usize {
    let p = ZgProfile::new(g);
    let (a, b) = schur_window(f, m, alpha, (p.u_min, p.u_max));
    (b - a + 1).max(0) as usize
}
