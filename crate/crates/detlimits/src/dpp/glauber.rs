use indexmap::IndexSet;
use rand::Rng;

use crate::combinatorics::PlanePartition;
use crate::error::{Error, Result};

type Cell = (usize, usize);

/// Metropolis–Hastings chain on plane partitions with stationary law
/// `M q^{|π|}`.
///
/// A move is drawn uniformly from the `n(π)` legal single-box additions and
/// removals and accepted with probability `min(1, q^{Δ|π|} n(π)/n(π′))`.
#[derive(Debug, Clone)]
pub struct GlauberChain {
    q: f64,
    h: Vec<Vec<u32>>,
    weight: u64,
    addable: IndexSet<Cell>,
    removable: IndexSet<Cell>,
    steps: u64,
    accepted: u64,
}

impl GlauberChain {
    /// Starts from the empty plane partition.
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Parameter("q".into(), format!("must lie in (0, 1), got {q}")));
        }
        let mut addable = IndexSet::new();
        addable.insert((0, 0));
        Ok(GlauberChain { q, h: Vec::new(), weight: 0, addable, removable: IndexSet::new(), steps: 0, accepted: 0 })
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> u32 {
        self.h.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    fn set(&mut self, i: usize, j: usize, v: u32) {
        if self.h.len() <= i {
            self.h.resize(i + 1, Vec::new());
        }
        let row = &mut self.h[i];
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = v;
    }

    fn can_add(&self, i: usize, j: usize) -> bool {
        let v = self.get(i, j) + 1;
        (i == 0 || self.get(i - 1, j) >= v) && (j == 0 || self.get(i, j - 1) >= v)
    }

    fn can_remove(&self, i: usize, j: usize) -> bool {
        let v = self.get(i, j);
        v >= 1 && self.get(i + 1, j) < v && self.get(i, j + 1) < v
    }

    fn refresh(&mut self, i: usize, j: usize) {
        let mut cells = vec![(i, j), (i + 1, j), (i, j + 1)];
        if i > 0 {
            cells.push((i - 1, j));
        }
        if j > 0 {
            cells.push((i, j - 1));
        }
        for c in cells {
            if self.can_add(c.0, c.1) {
                self.addable.insert(c);
            } else {
                self.addable.swap_remove(&c);
            }
            if self.can_remove(c.0, c.1) {
                self.removable.insert(c);
            } else {
                self.removable.swap_remove(&c);
            }
        }
    }

    fn moves(&self) -> usize {
        self.addable.len() + self.removable.len()
    }

    /// One proposal; returns whether it was accepted.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        self.steps += 1;
        let n = self.moves();
        let k = rng.random_range(0..n);
        let (cell, up) = if k < self.addable.len() {
            (self.addable[k], true)
        } else {
            (self.removable[k - self.addable.len()], false)
        };
        let old = self.get(cell.0, cell.1);
        let new = if up { old + 1 } else { old - 1 };
        self.set(cell.0, cell.1, new);
        self.refresh(cell.0, cell.1);
        let n2 = self.moves();
        let ratio = if up { self.q } else { 1.0 / self.q } * n as f64 / n2 as f64;
        if ratio >= 1.0 || rng.random::<f64>() < ratio {
            self.weight = if up { self.weight + 1 } else { self.weight - 1 };
            self.accepted += 1;
            true
        } else {
            self.set(cell.0, cell.1, old);
            self.refresh(cell.0, cell.1);
            false
        }
    }

    /// Runs `steps` proposals and records `|π|` after each one when `trace` is given.
    pub fn run<R: Rng + ?Sized>(&mut self, steps: u64, rng: &mut R, mut trace: Option<&mut Vec<u64>>) {
        for _ in 0..steps {
            self.step(rng);
            if let Some(t) = trace.as_deref_mut() {
                t.push(self.weight);
            }
        }
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.accepted as f64 / self.steps as f64
        }
    }

    pub fn state(&self) -> PlanePartition {
        PlanePartition::new(self.h.clone()).expect("chain preserves monotonicity")
    }
}

/// `E|π| = Σ n² qⁿ/(1 − qⁿ)` under `M q^{|π|}`.
pub fn expected_weight(q: f64) -> f64 {
    let mut s = 0.0;
    let mut qn = q;
    let mut n = 1.0f64;
    loop {
        let term = n * n * qn / (1.0 - qn);
        s += term;
        if term < 1e-16 * s || n > 1e7 {
            return s;
        }
        n += 1.0;
        qn *= q;
    }
}

/// `M(q) = ∏ (1 − qⁿ)ⁿ`, the probability of the empty plane partition.
pub fn macmahon_vacuum(q: f64) -> f64 {
    let mut log = 0.0;
    let mut qn = q;
    let mut n = 1.0f64;
    while qn > 1e-300 {
        let term = n * (-qn).ln_1p();
        log += term;
        if term.abs() < 1e-18 * log.abs() {
            break;
        }
        n += 1.0;
        qn *= q;
    }
    log.exp()
}

/// Burn-in `max(1000, ⌈50 · E|π| · a⌉)` where `a = ⌈E|π|^{1/3}⌉ + 1`
/// estimates the number of active corners.
pub fn default_burn_in(q: f64) -> u64 {
    let e = expected_weight(q);
    let active = e.cbrt().ceil() + 1.0;
    ((50.0 * e * active).ceil() as u64).max(1000)
}

/// Geweke diagnostic comparing the first 10% and last 50% of a trace, with
/// batch-means variances.
pub fn geweke_z(trace: &[f64]) -> f64 {
    let n = trace.len();
    if n < 40 {
        return f64::NAN;
    }
    let a = &trace[..n / 10];
    let b = &trace[n / 2..];
    let stats = |x: &[f64]| -> (f64, f64) {
        let m = x.iter().sum::<f64>() / x.len() as f64;
        let batches = 10.min(x.len());
        let size = x.len() / batches;
        let means: Vec<f64> = (0..batches).map(|k| x[k * size..(k + 1) * size].iter().sum::<f64>() / size as f64).collect();
        let v = means.iter().map(|y| (y - m).powi(2)).sum::<f64>() / (batches - 1) as f64;
        (m, v / batches as f64)
    };
    let (ma, va) = stats(a);
    let (mb, vb) = stats(b);
    if va + vb == 0.0 {
        return if ma == mb { 0.0 } else { f64::INFINITY };
    }
    (ma - mb) / (va + vb).sqrt()
}

/// A plane partition after `steps` proposals from the empty state.
pub fn sample_plane_partition<R: Rng + ?Sized>(q: f64, steps: u64, rng: &mut R) -> Result<PlanePartition> {
    let burn = default_burn_in(q);
    if steps < burn {
        log::warn!("sample_plane_partition: {steps} steps is below the burn-in {burn}");
    }
    let mut chain = GlauberChain::new(q)?;
    chain.run(steps, rng, None);
    Ok(chain.state())
}
