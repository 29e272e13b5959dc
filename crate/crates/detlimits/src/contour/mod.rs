//! Quadrature on circles and double contour integrals.
//!
//! Integrands on circles are analytic and periodic, so the N-point trapezoid
//! rule converges geometrically; the error is estimated by comparing N and
//! N/2 nodes. All sums are pairwise and run in a fixed order, so results do
//! not depend on the number of worker threads.

mod gk;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gk::{integrate_gk, integrate_gk_real, GkResult};

/// Default tolerance for `quad.tol`.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default node cap for `quad.max_nodes`.
pub const DEFAULT_MAX_NODES: usize = 65536;

/// Quadrature settings shared by the kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSettings {
    pub tol: f64,
    pub max_nodes: usize,
    /// Contour separation; `None` selects the per-kernel default.
    pub eps: Option<f64>,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings { tol: DEFAULT_TOL, max_nodes: DEFAULT_MAX_NODES, eps: None }
    }
}

impl QuadSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Parameter("quad.tol".into(), "must be positive".into()));
        }
        if self.max_nodes < 8 || !self.max_nodes.is_power_of_two() {
            return Err(Error::Parameter("quad.max_nodes".into(), "must be a power of two ≥ 8".into()));
        }
        if let Some(e) = self.eps {
            if !(e > 0.0) {
                return Err(Error::Parameter("quad.eps".into(), "must be positive".into()));
            }
        }
        Ok(())
    }
}

/// The circle `|z − center| = radius` discretized by `nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleContour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl CircleContour {
    /// `nodes` is rounded up to a power of two and at least 8.
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Parameter("radius".into(), format!("{radius} is not positive")));
        }
        Ok(CircleContour { center, radius, nodes: nodes.max(8).next_power_of_two() })
    }

    /// Circle centered at the origin.
    pub fn origin(radius: f64, nodes: usize) -> Result<Self> {
        CircleContour::new(Complex64::new(0.0, 0.0), radius, nodes)
    }

    /// Node `j` of `n` and its trapezoid weight for `(1/2πi)∮ · dz`.
    #[inline]
    fn node(&self, j: usize, n: usize) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        (self.center + self.radius * e, self.radius * e / n as f64)
    }
}

/// Value of a quadrature with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// `|Q_N − Q_{N/2}|`.
    pub error_estimate: f64,
    pub nodes_used: usize,
}

/// Pairwise (cascade) summation; the association order depends only on the length.
pub fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 32 {
        let mut s = Complex64::new(0.0, 0.0);
        for x in v {
            s += x;
        }
        return s;
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// `(1/2πi)∮ f(z) dz` by the trapezoid rule, doubling the node count from
/// `c.nodes` until successive values differ by less than `tol`.
pub fn integrate_circle<F>(f: F, c: &CircleContour, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    integrate_circle_capped(f, c, tol, DEFAULT_MAX_NODES)
}

/// [`integrate_circle`] with an explicit node cap.
pub fn integrate_circle_capped<F>(f: F, c: &CircleContour, tol: f64, max_nodes: usize) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut n = c.nodes / 2;
    let mut terms: Vec<Complex64> = (0..n)
        .map(|j| {
            let (z, w) = c.node(j, n);
            f(z) * w * n as f64
        })
        .collect();
    let mut prev = pairwise_sum(&terms) / n as f64;
    loop {
        // Refinement adds the odd nodes of the doubled grid.
        let n2 = 2 * n;
        let mut next = Vec::with_capacity(n2);
        for (j, t) in terms.iter().enumerate() {
            next.push(*t);
            let (z, w) = c.node(2 * j + 1, n2);
            next.push(f(z) * w * n2 as f64);
        }
        terms = next;
        n = n2;
        let cur = pairwise_sum(&terms) / n as f64;
        let est = (cur - prev).norm();
        if est < tol {
            return Ok(QuadratureResult { value: cur, error_estimate: est, nodes_used: n });
        }
        if n >= max_nodes {
            return Err(Error::NonConvergence { estimate: est, tol, nodes: n });
        }
        prev = cur;
    }
}

fn check_disjoint(outer: &CircleContour, inner: &CircleContour) -> Result<()> {
    let d = (outer.center - inner.center).norm();
    let gap = (outer.radius - inner.radius).abs();
    if gap < 1e-6 || d >= gap - 1e-12 {
        return Err(Error::Overlap(format!(
            "circles (center {}, r {}) and (center {}, r {}) are not nested with separation ≥ 1e−6",
            outer.center, outer.radius, inner.center, inner.radius
        )));
    }
    Ok(())
}

fn tensor_sum<F>(f: &F, zc: &CircleContour, nz: usize, wc: &CircleContour, nw: usize) -> Vec<Complex64>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    // Row sums over w for each z node, subsampled later for the N/2 estimates.
    let wn: Vec<(Complex64, Complex64)> = (0..nw).map(|k| wc.node(k, nw)).collect();
    (0..nz)
        .into_par_iter()
        .flat_map_iter(|j| {
            let (z, zw) = zc.node(j, nz);
            let row: Vec<Complex64> = wn.iter().map(|&(w, ww)| f(z, w) * zw * ww).collect();
            row.into_iter()
        })
        .collect()
}

fn grid_total(g: &[Complex64], nz: usize, nw: usize, sz: usize, sw: usize) -> Complex64 {
    let rows: Vec<Complex64> = (0..nz)
        .step_by(sz)
        .map(|j| {
            let row = &g[j * nw..(j + 1) * nw];
            let picked: Vec<Complex64> = row.iter().step_by(sw).copied().collect();
            pairwise_sum(&picked) * sw as f64
        })
        .collect();
    pairwise_sum(&rows) * sz as f64
}

/// `(1/2πi)² ∮_outer ∮_inner f(z, w) dw dz` with `z` on `outer` and `w` on `inner`.
///
/// The node count in each variable is doubled independently, always in the
/// variable whose halving changes the result most.
pub fn double_contour<F>(f: F, outer: &CircleContour, inner: &CircleContour, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    double_contour_capped(f, outer, inner, tol, DEFAULT_MAX_NODES)
}

/// [`double_contour`] with an explicit per-variable node cap.
pub fn double_contour_capped<F>(
    f: F,
    outer: &CircleContour,
    inner: &CircleContour,
    tol: f64,
    max_nodes: usize,
) -> Result<QuadratureResult>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    check_disjoint(outer, inner)?;
    let (mut nz, mut nw) = (outer.nodes, inner.nodes);
    loop {
        let g = tensor_sum(&f, outer, nz, inner, nw);
        let full = grid_total(&g, nz, nw, 1, 1);
        let ez = (full - grid_total(&g, nz, nw, 2, 1)).norm();
        let ew = (full - grid_total(&g, nz, nw, 1, 2)).norm();
        // Halving one axis alone can alias onto the full value when the
        // integrand couples z and w (e.g. 1/(z − w)); halving both cannot.
        let ezw = (full - grid_total(&g, nz, nw, 2, 2)).norm();
        let est = ez.max(ew).max(ezw);
        if est < tol {
            return Ok(QuadratureResult { value: full, error_estimate: est, nodes_used: nz.max(nw) });
        }
        if ezw > ez.max(ew) {
            if nz.max(nw) >= max_nodes {
                return Err(Error::NonConvergence { estimate: est, tol, nodes: nz.max(nw) });
            }
            nz *= 2;
            nw *= 2;
        } else if ez >= ew {
            if nz >= max_nodes {
                return Err(Error::NonConvergence { estimate: est, tol, nodes: nz });
            }
            nz *= 2;
        } else {
            if nw >= max_nodes {
                return Err(Error::NonConvergence { estimate: est, tol, nodes: nw });
            }
            nw *= 2;
        }
    }
}

/// Node tables for separable Cauchy-type double integrals
/// `(1/2πi)² ∮_{|z|=r_z} ∮_{|w|=r_w} a(z) b(w) / (z − w) dw dz`
/// over circles centered at the origin with `n` nodes each.
///
/// The integral is `Σ_j a(z_j)·wz_j · Σ_k b(w_k)·ww_k / (z_j − w_k)`, which
/// factors into a matrix-vector product per `b` and a dot product per `a`.
/// Node tables are reused across all kernel entries at fixed parameters.
#[derive(Debug, Clone)]
pub struct CauchyGrid {
    pub n: usize,
    pub z: Vec<Complex64>,
    pub w: Vec<Complex64>,
    /// Trapezoid weights `z_j / n` and `w_k / n`.
    pub wz: Vec<Complex64>,
    pub ww: Vec<Complex64>,
}

impl CauchyGrid {
    pub fn new(rz: f64, rw: f64, n: usize) -> Result<Self> {
        if (rz - rw).abs() < 1e-6 {
            return Err(Error::Overlap(format!("radii {rz} and {rw} closer than 1e−6")));
        }
        let mk = |r: f64| -> (Vec<Complex64>, Vec<Complex64>) {
            (0..n)
                .map(|j| {
                    let p = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
                    (p, p / n as f64)
                })
                .unzip()
        };
        let (z, wz) = mk(rz);
        let (w, ww) = mk(rw);
        Ok(CauchyGrid { n, z, w, wz, ww })
    }

    /// `d_j = Σ_k b_k·ww_k / (z_j − w_k)` for values `b_k = b(w_k)`.
    pub fn contract_w(&self, b: &[Complex64]) -> Vec<Complex64> {
        let bw: Vec<Complex64> = b.iter().zip(&self.ww).map(|(x, y)| x * y).collect();
        self.z
            .par_iter()
            .map(|&zj| {
                let terms: Vec<Complex64> = bw.iter().zip(&self.w).map(|(bk, wk)| bk / (zj - wk)).collect();
                pairwise_sum(&terms)
            })
            .collect()
    }

    /// `Σ_j a_j·wz_j·d_j` for values `a_j = a(z_j)`.
    pub fn contract_z(&self, a: &[Complex64], d: &[Complex64]) -> Complex64 {
        let terms: Vec<Complex64> = a.iter().zip(&self.wz).zip(d).map(|((x, y), z)| x * y * z).collect();
        pairwise_sum(&terms)
    }
}

/// Separable Cauchy double integral `(1/2πi)²∮∮ a(z) b(w)/(z − w) dw dz`
/// with `z` on `zc` and `w` on `wc` (both centered at the origin), doubling
/// the common node count from `max(zc.nodes, wc.nodes)`.
pub fn cauchy_double_contour<FA, FB>(
    a: FA,
    b: FB,
    zc: &CircleContour,
    wc: &CircleContour,
    tol: f64,
    max_nodes: usize,
) -> Result<QuadratureResult>
where
    FA: Fn(Complex64) -> Complex64,
    FB: Fn(Complex64) -> Complex64,
{
    let mut n = zc.nodes.max(wc.nodes);
    let mut prev: Option<Complex64> = None;
    loop {
        let g = CauchyGrid::new(zc.radius, wc.radius, n)?;
        let av: Vec<Complex64> = g.z.iter().map(|&z| a(z)).collect();
        let bv: Vec<Complex64> = g.w.iter().map(|&w| b(w)).collect();
        let val = g.contract_z(&av, &g.contract_w(&bv));
        if let Some(p) = prev {
            let est = (val - p).norm();
            if est < tol {
                return Ok(QuadratureResult { value: val, error_estimate: est, nodes_used: n });
            }
            if n >= max_nodes {
                return Err(Error::NonConvergence { estimate: est, tol, nodes: n });
            }
        }
        prev = Some(val);
        n *= 2;
    }
}
