use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::{ModelName, RunConfig, Subcommand};
use crate::combinatorics::{pp_map, shur_map, LatticeSite, Pattern, PpWindow, SitePP};
use crate::dpp::{
    block_probability, default_burn_in, sample_plancherel, GlauberChain, PlancherelOracle, PpOracle, RngSeed, WindowConfig,
    WindowSampler,
};
use crate::error::{Error, Result};
use crate::kernels::{BuiltKernel, CorrelationKernel, KernelSpec, PpKernel, SchurKernel};
use crate::lln::{
    convergence_study, decorrelation_study, replica_seed, run_lln_experiment_tol, ExperimentResult, LlnSpec, StudyModel,
};
use crate::specialfn::GCoefficients;

/// Default enumeration depth of `oracle-check` for the Plancherel model.
pub const DEFAULT_MAX_WEIGHT_PLANCHEREL: u32 = 12;
/// Default enumeration depth of `oracle-check` for plane partitions.
pub const DEFAULT_MAX_WEIGHT_PP: u32 = 31;

/// Result of a run that completed without error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ToleranceFailure,
}

/// Process exit status: 0 success, 1 tolerance or run failure, 2 usage error.
pub fn exit_code(r: &Result<Outcome>) -> i32 {
    match r {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::ToleranceFailure) => 1,
        Err(Error::Usage(_) | Error::ConfigParse { .. } | Error::ConfigValidation { .. }) => 2,
        Err(_) => 1,
    }
}

/// Shortest round-trip text of `x`, in exponent form outside `[1e−4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn version_stamp() -> String {
    format!("detlimits {}", env!("CARGO_PKG_VERSION"))
}

fn config_json(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

/// `#`-prefixed provenance lines that open every text output.
fn preamble(cfg: &RunConfig) -> String {
    format!("# {}\n# config: {}\n", version_stamp(), config_json(cfg))
}

fn emit(cfg: &RunConfig, ext: &str, body: &str) -> Result<()> {
    match &cfg.output {
        Some(stem) => {
            let path = format!("{stem}.{ext}");
            if let Some(dir) = std::path::Path::new(&path).parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(&path, body)?;
            log::info!("wrote {path}");
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn json_doc<T: Serialize>(cfg: &RunConfig, key: &str, value: &T) -> Result<String> {
    let mut doc = serde_json::Map::new();
    doc.insert("version".into(), json!(version_stamp()));
    doc.insert("config".into(), config_json(cfg));
    doc.insert(key.into(), serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?);
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Runs the subcommand described by a validated config.
pub fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.subcommand()? {
        Subcommand::Kernel => run_kernel(cfg),
        Subcommand::Sample => run_sample(cfg),
        Subcommand::OracleCheck => run_oracle_check(cfg),
        Subcommand::Lln => run_lln(cfg),
        Subcommand::Converge => run_converge(cfg),
        Subcommand::Decorrelate => run_decorrelate(cfg),
    }
}

fn kernel_spec(cfg: &RunConfig) -> Result<KernelSpec> {
    let quad = cfg.tolerances.quad_settings();
    Ok(match cfg.model()? {
        ModelName::Schur | ModelName::Plancherel => KernelSpec::Schur { g: cfg.g_coefficients()?, alpha: cfg.alpha()?, quad },
        ModelName::Sine => KernelSpec::Sine { g: cfg.g_coefficients()?, u: cfg.u.expect("validated") },
        ModelName::PlanePartition => KernelSpec::Pp { q: cfg.qparam()?.q, quad },
        ModelName::ExtendedSine => KernelSpec::ExtendedSine { tau: cfg.tau.expect("validated"), chi: cfg.chi.expect("validated") },
    })
}

fn kernel_csv<S: LatticeSite>(k: &dyn CorrelationKernel<Site = S>, sites: &[S], out: &mut String) -> Result<()> {
    let block = k.block(sites, sites)?;
    out.push_str("row,col,re,im,error\n");
    for (i, a) in sites.iter().enumerate() {
        for (j, b) in sites.iter().enumerate() {
            let v = block.get(i, j);
            writeln!(out, "{a},{b},{},{},{}", num(v.re), num(v.im), num(block.error(i, j))).expect("write to string");
        }
    }
    Ok(())
}

fn run_kernel(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = preamble(cfg);
    match kernel_spec(cfg)?.build()? {
        BuiltKernel::Integer(k) => kernel_csv(k.as_ref(), &cfg.int_sites_list()?, &mut out)?,
        BuiltKernel::Plane(k) => kernel_csv(k.as_ref(), &cfg.plane_sites_list()?, &mut out)?,
    }
    emit(cfg, "csv", &out)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct SampleSummary {
    window: Vec<String>,
    samples: usize,
    /// Empirical `P(x ∈ X)` per window site.
    one_point: Vec<f64>,
    /// Counts of each occupation string; windows of at most 16 sites only.
    configurations: Option<BTreeMap<String, usize>>,
}

fn summarize<S: LatticeSite>(configs: &[WindowConfig<S>], window: &[S]) -> SampleSummary {
    let n = configs.len();
    let one_point = (0..window.len())
        .map(|i| configs.iter().filter(|c| c.occupied[i]).count() as f64 / n as f64)
        .collect();
    let configurations = (window.len() <= 16).then(|| {
        let mut m = BTreeMap::new();
        for c in configs {
            *m.entry(c.bit_string()).or_insert(0) += 1;
        }
        m
    });
    SampleSummary { window: window.iter().map(|s| s.to_string()).collect(), samples: n, one_point, configurations }
}

fn run_sample(cfg: &RunConfig) -> Result<Outcome> {
    let seed = RngSeed::new(cfg.seed()?, cfg.stream);
    let n = cfg.samples.expect("validated");
    let mut lines = preamble(cfg);
    let summary = match cfg.model()? {
        ModelName::PlanePartition => {
            let q = cfg.qparam()?.q;
            let window: PpWindow = cfg.plane_window()?;
            let sites = window.admissible_sites();
            let steps = cfg.steps.unwrap_or_else(|| default_burn_in(q));
            let configs: Vec<WindowConfig<SitePP>> = (0..n)
                .into_par_iter()
                .map(|k| {
                    let mut rng = replica_seed(&seed, k).rng();
                    let mut chain = GlauberChain::new(q)?;
                    chain.run(steps, &mut rng, None);
                    Ok(WindowConfig::from_points(sites.clone(), &pp_map(&chain.state(), &window)))
                })
                .collect::<Result<_>>()?;
            writeln!(lines, "# window: {}", sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")).expect("write");
            for c in &configs {
                lines.push_str(&c.bit_string());
                lines.push('\n');
            }
            summarize(&configs, &sites)
        }
        model => {
            let alpha = cfg.alpha()?;
            let (a, b) = cfg.int_window()?;
            let window: Vec<i64> = (a..=b).collect();
            let g = cfg.g_coefficients()?;
            let configs: Vec<WindowConfig<i64>> = match (model, g.plancherel_theta()) {
                (ModelName::Plancherel, _) | (_, Some(_)) => {
                    let theta = alpha * g.plancherel_theta().unwrap_or(1.0);
                    (0..n)
                        .into_par_iter()
                        .map(|k| {
                            let lambda = sample_plancherel(theta, &mut replica_seed(&seed, k).rng())?;
                            Ok(WindowConfig::from_points(window.clone(), &shur_map(&lambda, (a, b))))
                        })
                        .collect::<Result<_>>()?
                }
                _ => {
                    let kernel = SchurKernel::new(g, alpha, cfg.tolerances.quad_settings())?;
                    let sampler = WindowSampler::new(&kernel, window.clone())?;
                    (0..n).into_par_iter().map(|k| sampler.sample(&mut replica_seed(&seed, k).rng())).collect::<Result<_>>()?
                }
            };
            writeln!(lines, "# window: {a}..{b}").expect("write");
            for c in &configs {
                lines.push_str(&c.bit_string());
                lines.push('\n');
            }
            summarize(&configs, &window)
        }
    };
    emit(cfg, "txt", &lines)?;
    emit(cfg, "json", &json_doc(cfg, "summary", &summary)?)?;
    Ok(Outcome::Success)
}

/// Every subset of `0..n` with `1 ≤ size ≤ k`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn run_oracle_check(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.max_pattern_size.unwrap_or(2);
    let tol = cfg.tolerances.oracle;
    let mut out = preamble(cfg);
    out.push_str("pattern,kernel_value,oracle_value,abs_diff,tail_bound\n");
    let mut worst = 0.0f64;
    let mut row = |pattern: String, kv: f64, ov: f64, tail: f64| {
        let d = (kv - ov).abs();
        worst = worst.max(d);
        writeln!(out, "{pattern},{},{},{},{}", num(kv), num(ov), num(d), num(tail)).expect("write to string");
    };
    match cfg.model()? {
        ModelName::Plancherel => {
            let theta = cfg.alpha()?;
            let (a, b) = cfg.int_window()?;
            let n = cfg.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT_PLANCHEREL);
            let oracle = PlancherelOracle::new(theta, (a, b), n)?;
            let sites: Vec<i64> = (a..=b).collect();
            let kernel = SchurKernel::new(GCoefficients::plancherel(1.0), theta, cfg.tolerances.quad_settings())?;
            let block = kernel.block(&sites, &sites)?;
            for idx in subsets(sites.len(), k) {
                let p = Pattern::new(idx.iter().map(|&i| sites[i]).collect())?;
                row(p.to_string(), block_probability(&block, &idx), oracle.expectation(&p)?, oracle.tail);
            }
        }
        ModelName::PlanePartition => {
            let q = cfg.qparam()?;
            let window = cfg.plane_window()?;
            let n = cfg.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT_PP);
            let oracle = PpOracle::new(window, n)?;
            let sites = oracle.sites().to_vec();
            let kernel = PpKernel::new(q, cfg.tolerances.quad_settings())?;
            let block = kernel.block(&sites, &sites)?;
            for idx in subsets(sites.len(), k) {
                let p = Pattern::new(idx.iter().map(|&i| sites[i]).collect())?;
                let (ov, tail) = oracle.expectation(q.q, &p)?;
                row(p.to_string(), block_probability(&block, &idx), ov, tail);
            }
        }
        _ => unreachable!("validated"),
    }
    emit(cfg, "csv", &out)?;
    Ok(if worst <= tol { Outcome::Success } else { Outcome::ToleranceFailure })
}

fn lln_spec(cfg: &RunConfig) -> Result<LlnSpec> {
    let f = cfg.test_function()?;
    Ok(match cfg.model()? {
        ModelName::PlanePartition => LlnSpec::PlanePartition { r: cfg.qparam()?.r, f, pattern: cfg.plane_pattern()?, steps: cfg.steps },
        _ => LlnSpec::Schur { g: cfg.g_coefficients()?, alpha: cfg.alpha()?, f, pattern: cfg.int_pattern()? },
    })
}

/// `|mean − I|` accepted by `lln`: `z·stderr + δ_I`, plus the Riemann-sum
/// bound `ω_f(1/α)·(u_max − u_min)` when the pattern is empty and Σ is deterministic.
pub fn lln_tolerance(res: &ExperimentResult, z: f64) -> f64 {
    let mut tol = z * res.stderr + res.i_quadrature_error;
    if let LlnSpec::Schur { g, alpha, f, pattern } = &res.spec {
        if pattern.is_empty() {
            let (lo, hi) = crate::kernels::u_range(g);
            tol += f.modulus_of_continuity(1.0 / alpha) * (hi - lo);
        }
    }
    tol
}

fn run_lln(cfg: &RunConfig) -> Result<Outcome> {
    let seed = RngSeed::new(cfg.seed()?, cfg.stream);
    let spec = lln_spec(cfg)?;
    let res = run_lln_experiment_tol(&spec, cfg.replicas.expect("validated"), seed, cfg.tolerances.integral)?;
    let mut csv = preamble(cfg);
    csv.push_str("replica,sigma\n");
    for (k, s) in res.sigma_samples.iter().enumerate() {
        writeln!(csv, "{k},{}", num(*s)).expect("write to string");
    }
    let ok = (res.mean - res.i_value).abs() <= lln_tolerance(&res, cfg.tolerances.z);
    emit(cfg, "json", &json_doc(cfg, "result", &res)?)?;
    emit(cfg, "csv", &csv)?;
    Ok(if ok { Outcome::Success } else { Outcome::ToleranceFailure })
}

fn study_model(cfg: &RunConfig) -> Result<StudyModel> {
    Ok(match cfg.model()? {
        ModelName::PlanePartition => StudyModel::PlanePartition { pattern: cfg.plane_pattern()? },
        _ => StudyModel::Schur { g: cfg.g_coefficients()?, pattern: cfg.int_pattern()? },
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn run_converge(cfg: &RunConfig) -> Result<Outcome> {
    let table = convergence_study(
        &study_model(cfg)?,
        cfg.position.as_deref().expect("validated"),
        cfg.scales.as_deref().expect("validated"),
        cfg.tolerances.quad_settings(),
    )?;
    let mut out = preamble(cfg);
    out.push_str("scale,value,limit,error,ratio,fit_slope\n");
    for (i, r) in table.rows.iter().enumerate() {
        let ratio = if i == 0 { None } else { Some(table.ratios[i - 1]) };
        writeln!(out, "{},{},{},{},{},{}", num(r.scale), num(r.value), num(r.limit), num(r.error), fmt_opt(ratio), fmt_opt(table.slope))
            .expect("write to string");
    }
    emit(cfg, "csv", &out)?;
    Ok(Outcome::Success)
}

fn run_decorrelate(cfg: &RunConfig) -> Result<Outcome> {
    let scale = match cfg.model()? {
        ModelName::PlanePartition => cfg.qparam()?.r,
        _ => cfg.alpha()?,
    };
    let pairs: Vec<(Vec<f64>, Vec<f64>)> =
        cfg.pairs.as_ref().expect("validated").iter().map(|[a, b]| (a.clone(), b.clone())).collect();
    let table = decorrelation_study(&study_model(cfg)?, &pairs, scale, cfg.tolerances.quad_settings())?;
    let mut out = preamble(cfg);
    out.push_str("separation,covariance,abs_covariance,fit_slope\n");
    for r in &table.rows {
        writeln!(out, "{},{},{},{}", num(r.separation), num(r.covariance), num(r.covariance.abs()), fmt_opt(table.slope)).expect("write to string");
    }
    emit(cfg, "csv", &out)?;
    Ok(Outcome::Success)
}
