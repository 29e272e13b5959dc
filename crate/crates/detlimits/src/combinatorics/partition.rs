use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition `λ_1 ≥ λ_2 ≥ … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Trailing zeros are dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::Parameter("partition".into(), "zero part before a positive part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parameter("partition".into(), format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `λ_i` for 1-based `i`, zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0) as usize;
        let parts = (1..=w)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parameter("partition".into(), format!("bad part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `{λ_i − i : i ≥ 1} ∩ [a, b]`, ascending.
pub fn shur_map(lambda: &Partition, window: (i64, i64)) -> Vec<i64> {
    let (a, b) = window;
    if a > b {
        return Vec::new();
    }
    let n = lambda.len() as i64;
    let mut out = Vec::new();
    for (i, &p) in lambda.parts().iter().enumerate() {
        let x = p as i64 - (i as i64 + 1);
        if x >= a && x <= b {
            out.push(x);
        }
    }
    // Rows beyond the last part contribute −i for i > n.
    let lo = (n + 1).max(-b);
    let hi = -a;
    for i in lo..=hi {
        out.push(-i);
    }
    out.sort_unstable();
    out
}

/// Number of standard Young tableaux of shape `λ` by the hook-length formula.
///
/// Evaluated through prime exponents, so it is exact whenever the result fits
/// in a `u128` (all shapes with `|λ| ≤ 40`).
pub fn plancherel_dim(lambda: &Partition) -> u128 {
    let n = lambda.weight() as usize;
    if n == 0 {
        return 1;
    }
    let conj = lambda.conjugate();
    // exps[p] accumulates the exponent of p in n! / prod(hooks).
    let mut exps = vec![0i64; n + 1];
    let mut add = |mut k: usize, sign: i64| {
        let mut p = 2;
        while p * p <= k {
            while k % p == 0 {
                exps[p] += sign;
                k /= p;
            }
            p += 1;
        }
        if k > 1 {
            exps[k] += sign;
        }
    };
    for k in 2..=n {
        add(k, 1);
    }
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            add(arm + leg + 1, -1);
        }
    }
    let mut out: u128 = 1;
    for (p, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0, "hook product does not divide n!");
        for _ in 0..e {
            out = out.checked_mul(p as u128).expect("plancherel_dim overflows u128");
        }
    }
    out
}
