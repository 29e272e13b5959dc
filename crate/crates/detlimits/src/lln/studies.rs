use serde::{Deserialize, Serialize};

use crate::combinatorics::{LatticeSite, Pattern, SitePP};
use crate::contour::QuadSettings;
use crate::dpp::{pattern_covariance, pattern_probability};
use crate::error::{Error, Result};
use crate::kernels::{ExtendedSineKernel, PpKernel, SchurKernel, SineKernel};
use crate::specialfn::{GCoefficients, QParam};

/// `⌊x⌉` with ties sent toward −∞.
pub fn round_half_down(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

/// Lattice point `⌊u/ε⌉` of `ℤ` for the Schur model at scale `α = 1/ε`.
pub fn schur_base(u: f64, alpha: f64) -> i64 {
    round_half_down(alpha * u)
}

/// Base point `(t, h)` for the plane-partition model at `(τ, χ)` and scale
/// `r`: each coordinate rounded half toward −∞, then `h` lowered by ½ if the
/// first site of `m` would otherwise land on an inadmissible site.
pub fn pp_base(tau: f64, chi: f64, r: f64, m: &Pattern<SitePP>) -> Result<SitePP> {
    let t = round_half_down(tau / r);
    let mut h2 = round_half_down(2.0 * chi / r);
    let first = m.sites().first().copied().unwrap_or(SitePP::new(0, -1));
    if !first.shift(&SitePP::new(t, h2)).is_admissible() {
        h2 -= 1;
    }
    let base = SitePP::new(t, h2);
    if let Some(s) = m.translate(&base).sites().iter().find(|s| !s.is_admissible()) {
        return Err(Error::Parity(format!("pattern {m} mixes parity classes (site {s})")));
    }
    Ok(base)
}

/// Least-squares slope of `log y` against `log x` over the positive pairs.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    /// `α` (Schur) or `r` (plane partitions).
    pub scale: f64,
    /// `det K_scale` on the translated pattern.
    pub value: f64,
    /// `det` of the limit kernel on the pattern.
    pub limit: f64,
    pub error: f64,
}

/// Errors per scale with the fitted decay diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// `error[k+1]/error[k]`.
    pub ratios: Vec<f64>,
    /// Log-log slope of error against scale.
    pub slope: Option<f64>,
}

impl ConvergenceTable {
    fn from_rows(rows: Vec<ConvergenceRow>) -> Self {
        let ratios = rows.windows(2).map(|w| w[1].error / w[0].error).collect();
        let xs: Vec<f64> = rows.iter().map(|r| r.scale).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.error).collect();
        let slope = loglog_slope(&xs, &ys);
        ConvergenceTable { rows, ratios, slope }
    }
}

/// A point of the limit picture together with the model it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum StudyModel {
    Schur { g: GCoefficients, pattern: Pattern<i64> },
    PlanePartition { pattern: Pattern<SitePP> },
}

/// Gauge-invariant error `|det K_scale(m + ⌊x/scale⌉) − det K_limit(m)|` per scale.
///
/// `position` is `[u]` for the Schur model and `[τ, χ]` for plane
/// partitions. Scales must increase (`α`) or decrease (`r`).
pub fn convergence_study(model: &StudyModel, position: &[f64], scales: &[f64], quad: QuadSettings) -> Result<ConvergenceTable> {
    if scales.is_empty() {
        return Err(Error::Usage("scale list is empty".into()));
    }
    let rows = match model {
        StudyModel::Schur { g, pattern } => {
            let [u] = position else {
                return Err(Error::Usage("the Schur model takes one position u".into()));
            };
            if scales.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Usage("alpha scales must be strictly increasing".into()));
            }
            let limit = pattern_probability(&SineKernel::new(g, *u)?, pattern)?;
            scales
                .iter()
                .map(|&alpha| {
                    let k = SchurKernel::new(g.clone(), alpha, quad)?;
                    let m = pattern.translate(&schur_base(*u, alpha));
                    let value = pattern_probability(&k, &m)?;
                    Ok(ConvergenceRow { scale: alpha, value, limit, error: (value - limit).abs() })
                })
                .collect::<Result<Vec<_>>>()?
        }
        StudyModel::PlanePartition { pattern } => {
            let [tau, chi] = position else {
                return Err(Error::Usage("the plane-partition model takes a position (τ, χ)".into()));
            };
            if scales.windows(2).any(|w| !(w[0] > w[1])) {
                return Err(Error::Usage("r scales must be strictly decreasing".into()));
            }
            let limit = pattern_probability(&ExtendedSineKernel::new(*tau, *chi)?, pattern)?;
            scales
                .iter()
                .map(|&r| {
                    let k = PpKernel::new(QParam::from_r(r)?, quad)?;
                    let m = pattern.translate(&pp_base(*tau, *chi, r, pattern)?);
                    let value = pattern_probability(&k, &m)?;
                    Ok(ConvergenceRow { scale: r, value, limit, error: (value - limit).abs() })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(ConvergenceTable::from_rows(rows))
}

/// One row of a decorrelation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecorrelationRow {
    /// `|u₁ − u₂|` or `|χ₁ − χ₂|` (or `|τ₁ − τ₂|`).
    pub separation: f64,
    pub covariance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecorrelationTable {
    pub scale: f64,
    pub rows: Vec<DecorrelationRow>,
    /// Log-log slope of `|cov|` against separation.
    pub slope: Option<f64>,
}

/// `cov(c_{m+x₁}, c_{m+x₂})` for pairs of macroscopic positions at a fixed scale.
///
/// Each pair is `(p₁, p₂)` with `p = [u]` (Schur) or `p = [τ, χ]` (plane
/// partitions); the separation is the sup-distance between positions.
pub fn decorrelation_study(model: &StudyModel, pairs: &[(Vec<f64>, Vec<f64>)], scale: f64, quad: QuadSettings) -> Result<DecorrelationTable> {
    let sep = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let rows = match model {
        StudyModel::Schur { g, pattern } => {
            let k = SchurKernel::new(g.clone(), scale, quad)?;
            pairs
                .iter()
                .map(|(p1, p2)| {
                    if p1.len() != 1 || p2.len() != 1 {
                        return Err(Error::Usage("Schur positions have one coordinate".into()));
                    }
                    let m1 = pattern.translate(&schur_base(p1[0], scale));
                    let m2 = pattern.translate(&schur_base(p2[0], scale));
                    Ok(DecorrelationRow { separation: sep(p1, p2), covariance: pattern_covariance(&k, &m1, &m2)? })
                })
                .collect::<Result<Vec<_>>>()?
        }
        StudyModel::PlanePartition { pattern } => {
            let k = PpKernel::new(QParam::from_r(scale)?, quad)?;
            pairs
                .iter()
                .map(|(p1, p2)| {
                    if p1.len() != 2 || p2.len() != 2 {
                        return Err(Error::Usage("plane-partition positions are (τ, χ)".into()));
                    }
                    let m1 = pattern.translate(&pp_base(p1[0], p1[1], scale, pattern)?);
                    let m2 = pattern.translate(&pp_base(p2[0], p2[1], scale, pattern)?);
                    Ok(DecorrelationRow { separation: sep(p1, p2), covariance: pattern_covariance(&k, &m1, &m2)? })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let xs: Vec<f64> = rows.iter().map(|r| r.separation).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.covariance.abs()).collect();
    Ok(DecorrelationTable { scale, slope: loglog_slope(&xs, &ys), rows })
}
