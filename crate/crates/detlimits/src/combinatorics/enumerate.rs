//! Exhaustive enumeration by iterative depth-first search.
//!
//! Every object is grown cell by cell in row-major order, so each one has a
//! unique build path. The search keeps an explicit stack of the values placed,
//! which bounds memory by the maximal weight and avoids recursion.

use super::partition::Partition;
use super::plane::PlanePartition;

/// Depth-first walker over plane partitions of weight at most `max_weight`.
///
/// The walker exposes the current rows by reference; [`PlanePartitionIter`]
/// wraps it into an owning iterator.
struct PlaneWalker {
    max_weight: u32,
    rows: Vec<Vec<u32>>,
    weight: u32,
    /// One entry per placed cell: true when the cell opened a new row.
    opened_row: Vec<bool>,
    started: bool,
    done: bool,
}

impl PlaneWalker {
    fn new(max_weight: u32) -> Self {
        PlaneWalker { max_weight, rows: Vec::new(), weight: 0, opened_row: Vec::new(), started: false, done: false }
    }

    /// Largest value that may be appended to the last row, 0 if none.
    fn append_bound(&self) -> u32 {
        let Some(last) = self.rows.last() else { return 0 };
        let col = last.len();
        let above = if self.rows.len() >= 2 {
            match self.rows[self.rows.len() - 2].get(col) {
                Some(&v) => v,
                None => return 0,
            }
        } else {
            u32::MAX
        };
        let left = *last.last().expect("rows are nonempty");
        left.min(above).min(self.max_weight - self.weight)
    }

    /// Largest value that may open a new row, 0 if none.
    fn new_row_bound(&self) -> u32 {
        let room = self.max_weight - self.weight;
        match self.rows.last() {
            None => room,
            Some(last) => last[0].min(room),
        }
    }

    fn push(&mut self, new_row: bool, v: u32) {
        if new_row {
            self.rows.push(vec![v]);
        } else {
            self.rows.last_mut().expect("append needs a row").push(v);
        }
        self.weight += v;
        self.opened_row.push(new_row);
    }

    fn pop(&mut self) -> (bool, u32) {
        let new_row = self.opened_row.pop().expect("pop on root");
        let v = if new_row {
            self.rows.pop().expect("row")[0]
        } else {
            self.rows.last_mut().expect("row").pop().expect("cell")
        };
        self.weight -= v;
        (new_row, v)
    }

    /// Moves to the next node in preorder; false when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        // First child: smallest append, else smallest new row.
        if self.append_bound() >= 1 {
            self.push(false, 1);
            return true;
        }
        if self.new_row_bound() >= 1 {
            self.push(true, 1);
            return true;
        }
        // Otherwise climb until a next sibling exists.
        while !self.opened_row.is_empty() {
            let (new_row, v) = self.pop();
            if !new_row {
                if v < self.append_bound() {
                    self.push(false, v + 1);
                    return true;
                }
                if self.new_row_bound() >= 1 {
                    self.push(true, 1);
                    return true;
                }
            } else if v < self.new_row_bound() {
                self.push(true, v + 1);
                return true;
            }
        }
        self.done = true;
        false
    }
}

/// Owning iterator over all plane partitions with `|π| ≤ max_weight`.
pub struct PlanePartitionIter {
    walker: PlaneWalker,
}

impl Iterator for PlanePartitionIter {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if self.walker.advance() {
            Some(PlanePartition::from_rows_unchecked(self.walker.rows.clone(), self.walker.weight as u64))
        } else {
            None
        }
    }
}

/// Every plane partition with `|π| ≤ max_weight`, each exactly once.
pub fn enumerate_plane_partitions(max_weight: u32) -> PlanePartitionIter {
    PlanePartitionIter { walker: PlaneWalker::new(max_weight) }
}

/// Calls `visit(rows, weight)` for every plane partition with `|π| ≤ max_weight`
/// without allocating per object.
pub fn visit_plane_partitions<F: FnMut(&[Vec<u32>], u32)>(max_weight: u32, mut visit: F) {
    let mut w = PlaneWalker::new(max_weight);
    while w.advance() {
        visit(&w.rows, w.weight);
    }
}

/// Depth-first walker over partitions of weight at most `max_weight`.
struct PartitionWalker {
    max_weight: u32,
    parts: Vec<u32>,
    weight: u32,
    started: bool,
    done: bool,
}

impl PartitionWalker {
    fn bound(&self) -> u32 {
        let room = self.max_weight - self.weight;
        match self.parts.last() {
            None => room,
            Some(&p) => p.min(room),
        }
    }

    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        if self.bound() >= 1 {
            self.parts.push(1);
            self.weight += 1;
            return true;
        }
        while let Some(v) = self.parts.pop() {
            self.weight -= v;
            if v < self.bound() {
                self.parts.push(v + 1);
                self.weight += v + 1;
                return true;
            }
        }
        self.done = true;
        false
    }
}

/// Owning iterator over all partitions with `|λ| ≤ max_weight`.
pub struct PartitionIter {
    walker: PartitionWalker,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.walker.advance() {
            Some(Partition::from_parts_unchecked(self.walker.parts.clone()))
        } else {
            None
        }
    }
}

/// Every partition with `|λ| ≤ max_weight`, each exactly once.
pub fn enumerate_partitions(max_weight: u32) -> PartitionIter {
    PartitionIter { walker: PartitionWalker { max_weight, parts: Vec::new(), weight: 0, started: false, done: false } }
}

/// Calls `visit(parts, weight)` for every partition with `|λ| ≤ max_weight`;
/// parts are passed largest first.
pub fn visit_partitions<F: FnMut(&[u32], u32)>(max_weight: u32, mut visit: F) {
    let mut w = PartitionWalker { max_weight, parts: Vec::new(), weight: 0, started: false, done: false };
    while w.advance() {
        visit(&w.parts, w.weight);
    }
}

/// `p(0), …, p(n)` from Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<u128> {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2];
            }
            k += 1;
        }
        p[m] = acc;
    }
    p.into_iter().map(|v| v as u128).collect()
}

/// Coefficients of `∏_{n≥1} (1 − q^n)^{−n}` up to `q^n`, via
/// `n·pp(n) = Σ_{k=1}^{n} σ₂(k)·pp(n − k)`.
pub fn plane_partition_counts(n: usize) -> Vec<u128> {
    let sigma2: Vec<u128> = (0..=n)
        .map(|k| if k == 0 { 0 } else { (1..=k).filter(|d| k % d == 0).map(|d| (d * d) as u128).sum() })
        .collect();
    let mut pp = vec![0u128; n + 1];
    pp[0] = 1;
    for m in 1..=n {
        let s: u128 = (1..=m).map(|k| sigma2[k] * pp[m - k]).sum();
        pp[m] = s / m as u128;
    }
    pp
}
