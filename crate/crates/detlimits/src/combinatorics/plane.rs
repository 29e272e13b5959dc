use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::site::SitePP;
use crate::error::{Error, Result};

/// A plane partition stored row-major as ragged rows with zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
    weight: u64,
}

impl PlanePartition {
    /// Validates monotonicity along rows and columns; zeros are trimmed.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|mut r| {
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        for (i, r) in rows.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::Parameter("plane partition".into(), format!("empty row {i} above a nonempty row")));
            }
            if r.contains(&0) || r.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Parameter("plane partition".into(), format!("row {i} is not non-increasing")));
            }
            if i > 0 {
                let up = &rows[i - 1];
                if r.len() > up.len() || r.iter().zip(up).any(|(a, b)| a > b) {
                    return Err(Error::Parameter("plane partition".into(), format!("column violation at row {i}")));
                }
            }
        }
        let weight = rows.iter().flatten().map(|&v| v as u64).sum();
        Ok(PlanePartition { rows, weight })
    }

    pub fn empty() -> Self {
        PlanePartition::default()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `|π|`.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// `π_{i,j}` for 1-based indices, zero outside the support.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.rows.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>, weight: u64) -> Self {
        PlanePartition { rows, weight }
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for PlanePartition {
    type Err = Error;

    /// Semicolon-separated rows of comma-separated entries.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PlanePartition::empty());
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .filter(|v| !v.trim().is_empty())
                    .map(|v| {
                        v.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parameter("plane partition".into(), format!("bad entry `{v}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PlanePartition::new(rows)
    }
}

/// Closed rectangle `[t_min, t_max] × [h2_min/2, h2_max/2]` of `ℤ × ½ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpWindow {
    pub t_min: i64,
    pub t_max: i64,
    pub h2_min: i64,
    pub h2_max: i64,
}

impl PpWindow {
    pub fn contains(&self, s: &SitePP) -> bool {
        s.t >= self.t_min && s.t <= self.t_max && s.h2 >= self.h2_min && s.h2 <= self.h2_max
    }

    /// Admissible sites of the window, sorted.
    pub fn admissible_sites(&self) -> Vec<SitePP> {
        let mut out = Vec::new();
        for t in self.t_min..=self.t_max {
            for h2 in self.h2_min..=self.h2_max {
                let s = SitePP::new(t, h2);
                if s.is_admissible() {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Height `2h` of the particle contributed by the cell on diagonal `t` whose
/// smaller index is `a` (1-based) and whose entry is `v`.
#[inline]
fn diag_h2(v: u32, a: i64, t: i64) -> i64 {
    2 * v as i64 - (2 * a + t.abs() - 1)
}

#[inline]
fn cell_on_diag(a: i64, t: i64) -> (usize, usize) {
    if t >= 0 {
        ((a + t) as usize, a as usize)
    } else {
        (a as usize, (a - t) as usize)
    }
}

/// Sites of `{(i − j, π_{i,j} − (i + j − 1)/2) : i, j ≥ 1}` inside `window`, sorted.
pub fn pp_map(pi: &PlanePartition, window: &PpWindow) -> Vec<SitePP> {
    let mut out = Vec::new();
    for t in window.t_min..=window.t_max {
        // Heights strictly decrease along a diagonal, so stop once below the window.
        let mut a = 1i64;
        loop {
            let (i, j) = cell_on_diag(a, t);
            let h2 = diag_h2(pi.get(i, j), a, t);
            if h2 < window.h2_min {
                break;
            }
            if h2 <= window.h2_max {
                out.push(SitePP::new(t, h2));
            }
            a += 1;
        }
    }
    out.sort_unstable();
    out
}

/// True when `site` belongs to the configuration of `pi`.
pub fn pp_window_contains(pi: &PlanePartition, site: &SitePP) -> bool {
    if !site.is_admissible() {
        return false;
    }
    let mut a = 1i64;
    loop {
        let (i, j) = cell_on_diag(a, site.t);
        let h2 = diag_h2(pi.get(i, j), a, site.t);
        if h2 == site.h2 {
            return true;
        }
        if h2 < site.h2 {
            return false;
        }
        a += 1;
    }
}
