use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    plancherel_dim, shur_map, visit_partitions, visit_plane_partitions, Partition, Pattern, PpWindow, SitePP,
};
use crate::dpp::macmahon_vacuum;
use crate::error::{Error, Result};

/// Largest truncation tail accepted by an oracle.
pub const ORACLE_TAIL_LIMIT: f64 = 1e-6;

/// Measures with a brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum OracleModel {
    /// Poissonized Plancherel measure with parameter `θ`.
    Plancherel { theta: f64 },
    /// `M q^{|π|}` on plane partitions.
    PlanePartition { q: f64 },
}

/// A pattern on the lattice of the matching model.
#[derive(Debug, Clone, PartialEq)]
pub enum OraclePattern {
    Integer(Pattern<i64>),
    Plane(Pattern<SitePP>),
}

/// `Σ_{n>N} θ^{2n}/n!`, bounding the Plancherel mass beyond weight `N`.
pub fn plancherel_tail(theta: f64, max_weight: u32) -> f64 {
    let x = theta * theta;
    let mut term = 1.0;
    for n in 1..=max_weight + 1 {
        term *= x / n as f64;
    }
    let mut s = 0.0;
    let mut n = max_weight as f64 + 1.0;
    while term > 1e-300 {
        s += term;
        if term < 1e-18 * s && x < n {
            break;
        }
        n += 1.0;
        term *= x / n;
        if n > 1e6 {
            return f64::INFINITY;
        }
    }
    s
}

/// `Σ_{n>N} pp(n) qⁿ`, bounding the plane-partition mass beyond weight `N`.
pub fn pp_tail(q: f64, max_weight: u32) -> f64 {
    const CAP: usize = 20_000;
    let mut sigma2 = vec![0.0f64; 1];
    let mut pp = vec![1.0f64];
    let mut s = 0.0;
    let mut m = 1usize;
    loop {
        if m > CAP {
            return f64::INFINITY;
        }
        sigma2.push((1..=m).filter(|d| m % d == 0).map(|d| (d * d) as f64).sum());
        // Scaled recurrence for pp(m) qᵐ keeps the terms finite.
        let v: f64 = (1..=m).map(|k| sigma2[k] * q.powi(k as i32) * pp[m - k]).sum::<f64>() / m as f64;
        pp.push(v);
        if m > max_weight as usize {
            s += v;
            if v < 1e-18 * s && m > 2 * max_weight as usize + 10 {
                return s;
            }
            if v == 0.0 {
                return s;
            }
        }
        m += 1;
    }
}

/// Weights of occupation masks on an integer window under the Plancherel
/// measure, summed over every `λ` with `|λ| ≤ N`.
#[derive(Debug, Clone)]
pub struct PlancherelOracle {
    pub theta: f64,
    pub window: (i64, i64),
    pub max_weight: u32,
    pub tail: f64,
    masks: BTreeMap<u64, f64>,
}

impl PlancherelOracle {
    pub fn new(theta: f64, window: (i64, i64), max_weight: u32) -> Result<Self> {
        if !(theta >= 0.0) {
            return Err(Error::Parameter("theta".into(), format!("must be ≥ 0, got {theta}")));
        }
        let (a, b) = window;
        if b < a || b - a >= 64 {
            return Err(Error::Parameter("window".into(), "needs 1 to 64 sites".into()));
        }
        let tail = plancherel_tail(theta, max_weight);
        if tail > ORACLE_TAIL_LIMIT {
            return Err(Error::TailTooLarge { tail, limit: ORACLE_TAIL_LIMIT });
        }
        let x = theta * theta;
        let mut masks: BTreeMap<u64, f64> = BTreeMap::new();
        visit_partitions(max_weight, |parts, n| {
            let lambda = Partition::from_parts_unchecked(parts.to_vec());
            // (θ^n dim/n!)² computed as a running product to avoid overflow.
            let mut c = 1.0f64;
            for k in 1..=n {
                c *= theta / k as f64;
            }
            let w = (-x).exp() * (c * plancherel_dim(&lambda) as f64).powi(2);
            let mask = shur_map(&lambda, window).iter().fold(0u64, |m, &s| m | 1 << (s - a));
            *masks.entry(mask).or_insert(0.0) += w;
        });
        Ok(PlancherelOracle { theta, window, max_weight, tail, masks })
    }

    /// `E[c_m]` truncated at weight `N`.
    pub fn expectation(&self, m: &Pattern<i64>) -> Result<f64> {
        let bits = m.sites().iter().try_fold(0u64, |acc, &s| {
            if s < self.window.0 || s > self.window.1 {
                Err(Error::Coverage(format!("site {s} outside the oracle window")))
            } else {
                Ok(acc | 1 << (s - self.window.0))
            }
        })?;
        Ok(self.masks.iter().filter(|(k, _)| *k & bits == bits).map(|(_, w)| w).sum())
    }
}

/// Counts of plane partitions by occupation mask on a window of `ℤ × ½ℤ`
/// and by weight, for every `π` with `|π| ≤ N`.
#[derive(Debug, Clone)]
pub struct PpOracle {
    pub window: PpWindow,
    pub max_weight: u32,
    sites: Vec<SitePP>,
    counts: BTreeMap<u64, Vec<u64>>,
}

impl PpOracle {
    /// Enumerates once; the table is reusable for any `q`.
    pub fn new(window: PpWindow, max_weight: u32) -> Result<Self> {
        let sites = window.admissible_sites();
        if sites.is_empty() || sites.len() > 64 {
            return Err(Error::Parameter("window".into(), format!("needs 1 to 64 admissible sites, has {}", sites.len())));
        }
        let index: HashMap<SitePP, usize> = sites.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut counts: HashMap<u64, Vec<u64>> = HashMap::new();
        let get = |rows: &[Vec<u32>], i: usize, j: usize| -> u32 {
            rows.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
        };
        visit_plane_partitions(max_weight, |rows, n| {
            let mut mask = 0u64;
            for t in window.t_min..=window.t_max {
                let mut a = 1i64;
                loop {
                    let (i, j) = if t >= 0 { ((a + t) as usize, a as usize) } else { (a as usize, (a - t) as usize) };
                    let h2 = 2 * get(rows, i, j) as i64 - (2 * a + t.abs() - 1);
                    if h2 < window.h2_min {
                        break;
                    }
                    if h2 <= window.h2_max {
                        mask |= 1 << index[&SitePP::new(t, h2)];
                    }
                    a += 1;
                }
            }
            let row = counts.entry(mask).or_insert_with(|| vec![0; max_weight as usize + 1]);
            row[n as usize] += 1;
        });
        Ok(PpOracle { window, max_weight, sites, counts: counts.into_iter().collect() })
    }

    pub fn sites(&self) -> &[SitePP] {
        &self.sites
    }

    /// `(E[c_m], tail)` under `M q^{|π|}`, truncated at weight `N`.
    pub fn expectation(&self, q: f64, m: &Pattern<SitePP>) -> Result<(f64, f64)> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Parameter("q".into(), format!("must lie in (0, 1), got {q}")));
        }
        let tail = pp_tail(q, self.max_weight);
        if tail > ORACLE_TAIL_LIMIT {
            return Err(Error::TailTooLarge { tail, limit: ORACLE_TAIL_LIMIT });
        }
        let mut bits = 0u64;
        for s in m.sites() {
            let i = self
                .sites
                .binary_search(s)
                .map_err(|_| Error::Coverage(format!("site {s} outside the oracle window or inadmissible")))?;
            bits |= 1 << i;
        }
        let powers: Vec<f64> = (0..=self.max_weight as i32).map(|n| q.powi(n)).collect();
        let s: f64 = self
            .counts
            .iter()
            .filter(|(k, _)| *k & bits == bits)
            .map(|(_, c)| c.iter().zip(&powers).rev().map(|(&c, p)| c as f64 * p).sum::<f64>())
            .sum();
        Ok((macmahon_vacuum(q) * s, tail))
    }
}

/// `(E[c_m], tail bound)` from exhaustive enumeration up to `max_weight`.
pub fn oracle_expectation(model: &OracleModel, m: &OraclePattern, max_weight: u32) -> Result<(f64, f64)> {
    match (model, m) {
        (OracleModel::Plancherel { theta }, OraclePattern::Integer(p)) => {
            if p.is_empty() {
                return Ok((1.0, plancherel_tail(*theta, max_weight)));
            }
            let s = p.sites();
            let oracle = PlancherelOracle::new(*theta, (s[0], s[s.len() - 1]), max_weight)?;
            Ok((oracle.expectation(p)?, oracle.tail))
        }
        (OracleModel::PlanePartition { q }, OraclePattern::Plane(p)) => {
            if p.is_empty() {
                return Ok((1.0, pp_tail(*q, max_weight)));
            }
            let s = p.sites();
            let window = PpWindow {
                t_min: s.iter().map(|x| x.t).min().expect("nonempty"),
                t_max: s.iter().map(|x| x.t).max().expect("nonempty"),
                h2_min: s.iter().map(|x| x.h2).min().expect("nonempty"),
                h2_max: s.iter().map(|x| x.h2).max().expect("nonempty"),
            };
            PpOracle::new(window, max_weight)?.expectation(*q, p)
        }
        _ => Err(Error::Parameter("pattern".into(), "lattice does not match the model".into())),
    }
}
