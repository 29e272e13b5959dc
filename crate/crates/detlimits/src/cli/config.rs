use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Pattern, PpWindow, SitePP};
use crate::contour::{QuadSettings, DEFAULT_MAX_NODES, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lln::TestFunction;
use crate::specialfn::{GCoefficients, QParam};

/// Subcommands of the batch front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Kernel,
    Sample,
    OracleCheck,
    Lln,
    Converge,
    Decorrelate,
}

impl Subcommand {
    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::Kernel => "kernel",
            Subcommand::Sample => "sample",
            Subcommand::OracleCheck => "oracle-check",
            Subcommand::Lln => "lln",
            Subcommand::Converge => "converge",
            Subcommand::Decorrelate => "decorrelate",
        }
    }
}

/// Models understood by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ModelName {
    /// Symmetric Schur measure with symbol `g` at scale `alpha`.
    Schur,
    /// Poissonized Plancherel: `G(z) = z − 1/z` at scale `theta`.
    Plancherel,
    /// Plane partitions with weight `q^{|π|}`.
    PlanePartition,
    /// Discrete sine kernel at `u` (kernel subcommand only).
    Sine,
    /// Extended sine kernel at `(tau, chi)` (kernel subcommand only).
    ExtendedSine,
}

/// A complex coefficient written as a number or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(&self) -> Complex64 {
        match *self {
            ComplexValue::Real(x) => Complex64::new(x, 0.0),
            ComplexValue::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// `[g]` table: coefficients `c_1, …, c_K` of `G`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GConfig {
    pub coeffs: Vec<ComplexValue>,
    #[serde(default = "default_margin")]
    pub radius_margin: f64,
}

fn default_margin() -> f64 {
    1.0
}

/// A site written as an integer (`ℤ`) or a string `"t:h"` (`ℤ × ½ℤ`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SiteValue {
    Int(i64),
    Text(String),
}

/// `[tolerances]` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Contour quadrature tolerance.
    pub quad: f64,
    pub max_nodes: usize,
    /// Contour separation override.
    pub eps: Option<f64>,
    /// Largest accepted |kernel − oracle| in `oracle-check`.
    pub oracle: f64,
    /// Accepted |mean − I| in units of the standard error in `lln`.
    pub z: f64,
    /// Absolute tolerance of the reference integral in `lln`.
    pub integral: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quad: DEFAULT_TOL, max_nodes: DEFAULT_MAX_NODES, eps: None, oracle: 1e-6, z: 3.0, integral: 1e-9 }
    }
}

impl Tolerances {
    pub fn quad_settings(&self) -> QuadSettings {
        QuadSettings { tol: self.quad, max_nodes: self.max_nodes, eps: self.eps }
    }
}

/// A validated run description.
///
/// Keys are flat except for the `[g]`, `[f]` and `[tolerances]` tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: Option<Subcommand>,
    pub model: Option<ModelName>,
    /// Output stem; extensions are appended per subcommand. Stdout when absent.
    pub output: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub stream: u64,
    pub g: Option<GConfig>,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub u: Option<f64>,
    pub tau: Option<f64>,
    pub chi: Option<f64>,
    /// Sites at which `kernel` evaluates the full matrix.
    pub sites: Option<Vec<SiteValue>>,
    pub pattern: Option<Vec<SiteValue>>,
    /// `[a, b]` on `ℤ`, or `[t_min, t_max, h_min, h_max]` on `ℤ × ½ℤ`.
    pub window: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub steps: Option<u64>,
    pub max_weight: Option<u32>,
    pub max_pattern_size: Option<usize>,
    pub replicas: Option<usize>,
    pub scales: Option<Vec<f64>>,
    /// `[u]` or `[τ, χ]`.
    pub position: Option<Vec<f64>>,
    /// Pairs of positions for `decorrelate`.
    pub pairs: Option<Vec<[Vec<f64>; 2]>>,
    pub f: Option<TestFunction>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

fn invalid(key: &str, msg: impl Into<String>) -> Error {
    Error::ConfigValidation { key: key.into(), msg: msg.into() }
}

/// Deserializes without validation; the caller may still apply overrides.
pub fn parse_config_raw(text: &str) -> Result<RunConfig> {
    toml::from_str::<RunConfig>(text).map_err(|e| Error::ConfigParse {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        msg: e.message().to_string(),
    })
}

/// Parses and validates a TOML run description.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg = parse_config_raw(text)?;
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn subcommand(&self) -> Result<Subcommand> {
        self.subcommand.ok_or_else(|| invalid("subcommand", "missing"))
    }

    pub fn model(&self) -> Result<ModelName> {
        self.model.ok_or_else(|| invalid("model", "missing"))
    }

    fn need<T: Copy>(&self, v: Option<T>, key: &str) -> Result<T> {
        v.ok_or_else(|| invalid(key, format!("required by `{}`", self.subcommand.map(|s| s.name()).unwrap_or("?"))))
    }

    /// `G` for the Schur-type models; Plancherel is `z − 1/z`.
    pub fn g_coefficients(&self) -> Result<GCoefficients> {
        match self.model()? {
            ModelName::Plancherel => Ok(GCoefficients::plancherel(1.0)),
            _ => {
                let g = self.g.as_ref().ok_or_else(|| invalid("g.coeffs", "required by this model"))?;
                GCoefficients::new(g.coeffs.iter().map(|c| c.value()).collect(), g.radius_margin)
                    .map_err(|e| invalid("g.coeffs", e.to_string()))
            }
        }
    }

    /// Scale `α` of Schur-type models; for Plancherel `theta` and `alpha` are synonyms.
    pub fn alpha(&self) -> Result<f64> {
        let a = match (self.model()?, self.theta, self.alpha) {
            (ModelName::Plancherel, Some(t), Some(a)) if t != a => {
                return Err(invalid("theta", "theta and alpha disagree for the Plancherel model"))
            }
            (ModelName::Plancherel, Some(t), _) => t,
            (_, _, Some(a)) => a,
            _ => return Err(invalid("alpha", "required")),
        };
        Ok(a)
    }

    /// `q` of the plane-partition model, from `q` or `r = −log q`.
    pub fn qparam(&self) -> Result<QParam> {
        match (self.q, self.r) {
            (Some(_), Some(_)) => Err(invalid("q", "give either q or r, not both")),
            (Some(q), None) => QParam::from_q(q).map_err(|e| invalid("q", e.to_string())),
            (None, Some(r)) => QParam::from_r(r).map_err(|e| invalid("r", e.to_string())),
            (None, None) => Err(invalid("q", "required")),
        }
    }

    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| Error::Usage(format!("--seed is mandatory for `{}`", self.subcommand.map(|s| s.name()).unwrap_or("?"))))
    }

    fn is_plane(&self) -> Result<bool> {
        Ok(matches!(self.model()?, ModelName::PlanePartition | ModelName::ExtendedSine))
    }

    fn int_sites(list: &[SiteValue], key: &str) -> Result<Vec<i64>> {
        list.iter()
            .map(|s| match s {
                SiteValue::Int(v) => Ok(*v),
                SiteValue::Text(t) => t.trim().parse::<i64>().map_err(|_| invalid(key, format!("`{t}` is not an integer site"))),
            })
            .collect()
    }

    fn plane_sites(list: &[SiteValue], key: &str) -> Result<Vec<SitePP>> {
        list.iter()
            .map(|s| match s {
                SiteValue::Text(t) => t.parse::<SitePP>().map_err(|e| invalid(key, e.to_string())),
                SiteValue::Int(v) => Err(invalid(key, format!("site {v} needs the form \"t:h\""))),
            })
            .collect()
    }

    pub fn int_pattern(&self) -> Result<Pattern<i64>> {
        let list = self.pattern.as_deref().unwrap_or(&[]);
        Pattern::new(Self::int_sites(list, "pattern")?).map_err(|e| invalid("pattern", e.to_string()))
    }

    pub fn plane_pattern(&self) -> Result<Pattern<SitePP>> {
        let list = self.pattern.as_deref().unwrap_or(&[]);
        let sites = Self::plane_sites(list, "pattern")?;
        if let Some(s) = sites.iter().find(|s| !s.is_admissible()) {
            return Err(invalid("pattern", format!("site {s} violates h + (|t|+1)/2 ∈ ℤ")));
        }
        Pattern::new(sites).map_err(|e| invalid("pattern", e.to_string()))
    }

    pub fn int_sites_list(&self) -> Result<Vec<i64>> {
        Self::int_sites(self.sites.as_deref().ok_or_else(|| invalid("sites", "required"))?, "sites")
    }

    pub fn plane_sites_list(&self) -> Result<Vec<SitePP>> {
        Self::plane_sites(self.sites.as_deref().ok_or_else(|| invalid("sites", "required"))?, "sites")
    }

    pub fn int_window(&self) -> Result<(i64, i64)> {
        match self.window.as_deref() {
            Some([a, b]) if a.fract() == 0.0 && b.fract() == 0.0 && a <= b => Ok((*a as i64, *b as i64)),
            Some(_) => Err(invalid("window", "expected [a, b] with integers a ≤ b")),
            None => Err(invalid("window", "required")),
        }
    }

    pub fn plane_window(&self) -> Result<PpWindow> {
        match self.window.as_deref() {
            Some([t0, t1, h0, h1])
                if t0.fract() == 0.0 && t1.fract() == 0.0 && (2.0 * h0).fract() == 0.0 && (2.0 * h1).fract() == 0.0 && t0 <= t1 && h0 <= h1 =>
            {
                Ok(PpWindow { t_min: *t0 as i64, t_max: *t1 as i64, h2_min: (2.0 * h0) as i64, h2_max: (2.0 * h1) as i64 })
            }
            Some(_) => Err(invalid("window", "expected [t_min, t_max, h_min, h_max] with integer t and half-integer h")),
            None => Err(invalid("window", "required")),
        }
    }

    pub fn test_function(&self) -> Result<TestFunction> {
        let f = self.f.clone().ok_or_else(|| invalid("f", "required"))?;
        f.validate().map_err(|e| invalid("f", e.to_string()))?;
        Ok(f)
    }

    /// Checks required keys and numeric ranges for the selected subcommand.
    pub fn validate(&self) -> Result<()> {
        let sub = self.subcommand()?;
        let model = self.model()?;
        let t = &self.tolerances;
        if !(t.quad > 0.0) {
            return Err(invalid("tolerances.quad", "must be positive"));
        }
        if t.max_nodes < 8 || !t.max_nodes.is_power_of_two() {
            return Err(invalid("tolerances.max_nodes", "must be a power of two ≥ 8"));
        }
        if t.eps.is_some_and(|e| !(e > 0.0)) {
            return Err(invalid("tolerances.eps", "must be positive"));
        }
        for (k, v) in [("tolerances.oracle", t.oracle), ("tolerances.z", t.z), ("tolerances.integral", t.integral)] {
            if !(v > 0.0) {
                return Err(invalid(k, "must be positive"));
            }
        }
        for (k, v) in [("theta", self.theta), ("alpha", self.alpha), ("r", self.r)] {
            if let Some(v) = v {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(invalid(k, format!("must be positive, got {v}")));
                }
            }
        }
        if let Some(q) = self.q {
            if !(q > 0.0 && q < 1.0) {
                return Err(invalid("q", format!("must lie in (0, 1), got {q}")));
            }
        }
        let plane = self.is_plane()?;
        if self.pattern.is_some() {
            if plane {
                self.plane_pattern()?;
            } else {
                self.int_pattern()?;
            }
        }
        let schur_like = matches!(model, ModelName::Schur | ModelName::Plancherel);
        match sub {
            Subcommand::Kernel => {
                match model {
                    ModelName::Schur | ModelName::Plancherel => {
                        self.g_coefficients()?;
                        self.alpha()?;
                    }
                    ModelName::Sine => {
                        self.g_coefficients()?;
                        self.need(self.u, "u")?;
                    }
                    ModelName::PlanePartition => {
                        self.qparam()?;
                    }
                    ModelName::ExtendedSine => {
                        self.need(self.tau, "tau")?;
                        self.need(self.chi, "chi")?;
                    }
                }
                if plane {
                    self.plane_sites_list()?;
                } else {
                    self.int_sites_list()?;
                }
            }
            Subcommand::Sample => {
                if schur_like {
                    self.g_coefficients()?;
                    self.alpha()?;
                    self.int_window()?;
                } else if model == ModelName::PlanePartition {
                    self.qparam()?;
                    self.plane_window()?;
                } else {
                    return Err(invalid("model", "sample supports schur, plancherel and plane_partition"));
                }
                if self.need(self.samples, "samples")? == 0 {
                    return Err(invalid("samples", "must be ≥ 1"));
                }
            }
            Subcommand::OracleCheck => {
                match model {
                    ModelName::Plancherel => {
                        self.alpha()?;
                        self.int_window()?;
                    }
                    ModelName::PlanePartition => {
                        self.qparam()?;
                        self.plane_window()?;
                    }
                    _ => return Err(invalid("model", "oracle-check supports plancherel and plane_partition")),
                }
            }
            Subcommand::Lln => {
                let f = self.test_function()?;
                if schur_like {
                    self.g_coefficients()?;
                    self.alpha()?;
                    if f.dim() != 1 {
                        return Err(invalid("f", "the Schur model needs a function of one variable"));
                    }
                } else if model == ModelName::PlanePartition {
                    self.qparam()?;
                    if f.dim() != 2 {
                        return Err(invalid("f", "the plane-partition model needs a function of two variables"));
                    }
                } else {
                    return Err(invalid("model", "lln supports schur, plancherel and plane_partition"));
                }
                let n = self.need(self.replicas, "replicas")?;
                if n < 2 {
                    return Err(Error::Usage(format!("replicas must be ≥ 2, got {n}")));
                }
            }
            Subcommand::Converge | Subcommand::Decorrelate => {
                if schur_like {
                    self.g_coefficients()?;
                } else if model != ModelName::PlanePartition {
                    return Err(invalid("model", "studies support schur, plancherel and plane_partition"));
                }
                if sub == Subcommand::Converge {
                    let scales = self.scales.as_ref().ok_or_else(|| invalid("scales", "required"))?;
                    if scales.is_empty() || scales.iter().any(|s| !(*s > 0.0)) {
                        return Err(invalid("scales", "must be a nonempty list of positive numbers"));
                    }
                    let sorted = if schur_like {
                        scales.windows(2).all(|w| w[0] < w[1])
                    } else {
                        scales.windows(2).all(|w| w[0] > w[1])
                    };
                    if !sorted {
                        return Err(Error::Usage(format!(
                            "scales must be strictly {} for this model",
                            if schur_like { "increasing" } else { "decreasing" }
                        )));
                    }
                    let dim = if schur_like { 1 } else { 2 };
                    if self.position.as_ref().map(|p| p.len()) != Some(dim) {
                        return Err(invalid("position", format!("expected {dim} coordinate(s)")));
                    }
                } else {
                    if schur_like {
                        self.alpha()?;
                    } else {
                        self.qparam()?;
                    }
                    let pairs = self.pairs.as_ref().ok_or_else(|| invalid("pairs", "required"))?;
                    if pairs.is_empty() {
                        return Err(invalid("pairs", "must be nonempty"));
                    }
                }
            }
        }
        Ok(())
    }
}
