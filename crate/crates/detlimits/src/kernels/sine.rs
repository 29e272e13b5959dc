use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CorrelationKernel, KernelBlock};
use crate::error::{Error, Result};
use crate::specialfn::GCoefficients;

const GRID: usize = 4096;
const GOLDEN_TOL: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-12;

/// Arcs of the unit circle, each stored as `(start, end)` with `start ∈ [−π, π)`
/// and `end ≥ start`; the arc sweeps counterclockwise from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    pub arcs: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn full() -> Self {
        ArcSet { arcs: vec![(-PI, PI)] }
    }

    /// Total angular measure.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|(a, b)| b - a).sum()
    }

    /// Particle density `measure / 2π`.
    pub fn density(&self) -> f64 {
        self.measure() / (2.0 * PI)
    }
}

/// Golden-section search for a local extremum of `f` on `[a, b]`.
fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, maximize: bool) -> (f64, f64) {
    let sgn = if maximize { -1.0 } else { 1.0 };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = sgn * f(c);
    let mut fd = sgn * f(d);
    while (b - a).abs() > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = sgn * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = sgn * f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `zG′` sampled on an equispaced grid of the unit circle, with its global and
/// local extrema. Reused across many values of `u`.
#[derive(Debug, Clone)]
pub struct ZgProfile {
    g: GCoefficients,
    values: Vec<f64>,
    pub u_min: f64,
    pub u_max: f64,
    pub argmin: f64,
    pub argmax: f64,
    /// Values of `zG′` at its local extrema, sorted; the arc structure of
    /// `{zG′ ≥ u}` only changes when `u` crosses one of them.
    pub critical_values: Vec<f64>,
}

fn grid_angle(i: usize) -> f64 {
    -PI + 2.0 * PI * i as f64 / GRID as f64
}

impl ZgProfile {
    pub fn new(g: &GCoefficients) -> Self {
        let values: Vec<f64> = (0..GRID).map(|i| g.zg_prime_angle(grid_angle(i))).collect();
        let f = |p: f64| g.zg_prime_angle(p);
        let step = 2.0 * PI / GRID as f64;
        let mut critical = Vec::new();
        let (mut u_min, mut u_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut argmin, mut argmax) = (0.0, 0.0);
        for i in 0..GRID {
            let prev = values[(i + GRID - 1) % GRID];
            let next = values[(i + 1) % GRID];
            let v = values[i];
            let p = grid_angle(i);
            let is_max = v >= prev && v > next;
            let is_min = v <= prev && v < next;
            if is_max || is_min {
                let (x, fx) = golden(f, p - step, p + step, is_max);
                critical.push(fx);
                if is_max && fx > u_max {
                    u_max = fx;
                    argmax = x;
                }
                if is_min && fx < u_min {
                    u_min = fx;
                    argmin = x;
                }
            }
        }
        if critical.is_empty() {
            // Constant zG′ (only G ≡ 0 among Laurent polynomials).
            let v = values[0];
            u_min = v;
            u_max = v;
            critical.push(v);
        }
        critical.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        critical.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let wrap = |x: f64| if x >= PI { x - 2.0 * PI } else if x < -PI { x + 2.0 * PI } else { x };
        ZgProfile { g: g.clone(), values, u_min, u_max, argmin: wrap(argmin), argmax: wrap(argmax), critical_values: critical }
    }

    fn bisect(&self, u: f64, mut lo: f64, mut hi: f64) -> f64 {
        let f = |p: f64| self.g.zg_prime_angle(p) - u;
        let mut flo = f(lo);
        while hi - lo > ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if (fm > 0.0) == (flo > 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Arcs of `{φ : zG′(e^{iφ}) ≥ u}`.
    ///
    /// For `u ≤ u_min` this is the full circle; for `u ≥ u_max` it is the
    /// zero-measure arc at the maximizer.
    pub fn arcs(&self, u: f64) -> ArcSet {
        let scale = self.u_max.abs().max(self.u_min.abs()).max(1.0);
        if u <= self.u_min + 1e-14 * scale {
            return ArcSet::full();
        }
        if u >= self.u_max - 1e-14 * scale {
            return ArcSet { arcs: vec![(self.argmax, self.argmax)] };
        }
        // Roots of zG′ − u with their direction: true where the function rises.
        let mut roots: Vec<(f64, bool)> = Vec::new();
        let step = 2.0 * PI / GRID as f64;
        for i in 0..GRID {
            let a = self.values[i] - u;
            let b = self.values[(i + 1) % GRID] - u;
            if (a >= 0.0) != (b >= 0.0) {
                let lo = grid_angle(i);
                let r = self.bisect(u, lo, lo + step);
                let d = self.g.zg_prime_angle_deriv(r);
                if d.abs() < 1e-8 {
                    log::warn!("tangency: |d zG′/dφ| = {d:e} at φ = {r}, u = {u}");
                }
                let r = if r >= PI { r - 2.0 * PI } else { r };
                roots.push((r, b >= 0.0));
            }
        }
        roots.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
        let mut arcs = Vec::new();
        let n = roots.len();
        for (i, &(start, rising)) in roots.iter().enumerate() {
            if !rising {
                continue;
            }
            // The arc ends at the next falling root, cyclically.
            let mut j = (i + 1) % n;
            while roots[j].1 {
                j = (j + 1) % n;
                if j == i {
                    break;
                }
            }
            let mut end = roots[j].0;
            if end <= start {
                end += 2.0 * PI;
            }
            arcs.push((start, end));
        }
        if arcs.is_empty() && roots.is_empty() && self.values[0] >= u {
            return ArcSet::full();
        }
        ArcSet { arcs }
    }
}

/// `(u_min, u_max)`: the range of `zG′` on the unit circle.
pub fn u_range(g: &GCoefficients) -> (f64, f64) {
    let p = ZgProfile::new(g);
    (p.u_min, p.u_max)
}

/// Arcs of `{z ∈ T : zG′(z) ≥ u}`; fails for `u` outside `[u_min, u_max]`.
pub fn sine_arcs(g: &GCoefficients, u: f64) -> Result<ArcSet> {
    let p = ZgProfile::new(g);
    let tol = 1e-12 * p.u_max.abs().max(p.u_min.abs()).max(1.0);
    if u < p.u_min - tol || u > p.u_max + tol {
        return Err(Error::Domain(format!("u = {u} outside [{}, {}]", p.u_min, p.u_max)));
    }
    Ok(p.arcs(u))
}

/// `S(x, y) = Σ_k (1/2π) ∫_{arc_k} e^{iθ(y−x)} dθ`; the diagonal is the
/// arc measure over `2π`.
pub fn sine_kernel(arcs: &ArcSet, x: i64, y: i64) -> Complex64 {
    let d = (y - x) as f64;
    if y == x {
        return Complex64::new(arcs.density(), 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &(a, b) in &arcs.arcs {
        acc += Complex64::from_polar(1.0, d * b) - Complex64::from_polar(1.0, d * a);
    }
    acc / Complex64::new(0.0, 2.0 * PI * d)
}

/// The discrete sine kernel of a fixed arc set.
#[derive(Debug, Clone)]
pub struct SineKernel {
    pub arcs: ArcSet,
}

impl SineKernel {
    pub fn new(g: &GCoefficients, u: f64) -> Result<Self> {
        Ok(SineKernel { arcs: sine_arcs(g, u)? })
    }

    pub fn from_arcs(arcs: ArcSet) -> Self {
        SineKernel { arcs }
    }
}

impl CorrelationKernel for SineKernel {
    type Site = i64;

    fn block(&self, rows: &[i64], cols: &[i64]) -> Result<KernelBlock> {
        let values: Vec<Complex64> =
            rows.iter().flat_map(|&x| cols.iter().map(move |&y| (x, y))).map(|(x, y)| sine_kernel(&self.arcs, x, y)).collect();
        let n = values.len();
        Ok(KernelBlock { rows: rows.len(), cols: cols.len(), values, errors: vec![0.0; n], nodes_used: 0 })
    }
}
