use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A site of `ℤ × ½ℤ`, with the half-integer coordinate stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SitePP {
    pub t: i64,
    /// Twice the height coordinate `h`.
    pub h2: i64,
}

impl SitePP {
    pub const fn new(t: i64, h2: i64) -> Self {
        SitePP { t, h2 }
    }

    /// Builds a site from a real `h`, which must be a multiple of ½.
    pub fn from_half(t: i64, h: f64) -> Result<Self> {
        let h2 = 2.0 * h;
        if (h2 - h2.round()).abs() > 1e-9 {
            return Err(Error::Parity(format!("h = {h} is not a half-integer")));
        }
        Ok(SitePP { t, h2: h2.round() as i64 })
    }

    pub fn h(&self) -> f64 {
        self.h2 as f64 / 2.0
    }

    /// True when `h + (|t| + 1)/2 ∈ ℤ`, i.e. the site can carry a particle.
    pub fn is_admissible(&self) -> bool {
        (self.h2 + self.t.abs() + 1).rem_euclid(2) == 0
    }

    /// The integer `h + (|t| + 1)/2`; meaningful only for admissible sites.
    pub fn level(&self) -> i64 {
        (self.h2 + self.t.abs() + 1).div_euclid(2)
    }
}

impl fmt::Display for SitePP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h2 % 2 == 0 {
            write!(f, "({}:{})", self.t, self.h2 / 2)
        } else {
            write!(f, "({}:{}/2)", self.t, self.h2)
        }
    }
}

impl FromStr for SitePP {
    type Err = Error;

    /// Parses `t:h` where `h` is an integer, a half-integer `k/2`, or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (t, h) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter("site".into(), format!("expected t:h, got `{s}`")))?;
        let t: i64 = t
            .trim()
            .parse()
            .map_err(|_| Error::Parameter("site".into(), format!("bad t in `{s}`")))?;
        let h = h.trim();
        if let Some(num) = h.strip_suffix("/2") {
            let h2: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parameter("site".into(), format!("bad h in `{s}`")))?;
            return Ok(SitePP { t, h2 });
        }
        let hv: f64 = h
            .parse()
            .map_err(|_| Error::Parameter("site".into(), format!("bad h in `{s}`")))?;
        SitePP::from_half(t, hv)
    }
}

/// Sites of a lattice on which patterns live.
pub trait LatticeSite: Copy + Ord + fmt::Debug + fmt::Display + Send + Sync {
    /// Supremum norm of the site's real coordinates.
    fn sup_norm(&self) -> f64;
    /// Coordinate-wise sum.
    fn shift(&self, by: &Self) -> Self;
    /// Coordinate-wise difference `self − other`.
    fn offset_from(&self, other: &Self) -> Self;
}

impl LatticeSite for i64 {
    fn sup_norm(&self) -> f64 {
        self.abs() as f64
    }
    fn shift(&self, by: &Self) -> Self {
        self + by
    }
    fn offset_from(&self, other: &Self) -> Self {
        self - other
    }
}

impl LatticeSite for SitePP {
    fn sup_norm(&self) -> f64 {
        (self.t.abs() as f64).max(self.h().abs())
    }
    fn shift(&self, by: &Self) -> Self {
        SitePP::new(self.t + by.t, self.h2 + by.h2)
    }
    fn offset_from(&self, other: &Self) -> Self {
        SitePP::new(self.t - other.t, self.h2 - other.h2)
    }
}

/// A finite, sorted, duplicate-free set of sites.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern<S> {
    sites: Vec<S>,
}

impl<S: LatticeSite> Pattern<S> {
    /// Sorts the sites; duplicates are rejected.
    pub fn new(mut sites: Vec<S>) -> Result<Self> {
        sites.sort();
        if let Some(w) = sites.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parameter("pattern".into(), format!("duplicate site {}", w[0])));
        }
        Ok(Pattern { sites })
    }

    pub fn empty() -> Self {
        Pattern { sites: Vec::new() }
    }

    pub fn sites(&self) -> &[S] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Supremum norm `m̄`; zero for the empty pattern.
    pub fn norm(&self) -> f64 {
        self.sites.iter().map(|s| s.sup_norm()).fold(0.0, f64::max)
    }

    /// The pattern translated by `by`.
    pub fn translate(&self, by: &S) -> Self {
        Pattern { sites: self.sites.iter().map(|s| s.shift(by)).collect() }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.sites.iter().any(|s| other.sites.binary_search(s).is_ok())
    }

    /// Disjoint union; fails when the patterns share a site.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut all = self.sites.clone();
        all.extend_from_slice(&other.sites);
        Pattern::new(all)
    }
}

impl<S: LatticeSite> fmt::Display for Pattern<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}
