use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{CorrelationKernel, KernelBlock};
use crate::combinatorics::SitePP;
use crate::contour::{CauchyGrid, QuadSettings};
use crate::error::{Error, Result};
use crate::specialfn::{poch_inner, QParam, POLE_TOL};

const START_NODES: usize = 64;

/// The kernel of the plane-partition process `M q^{|π|}` on `ℤ × ½ℤ`:
///
/// `K(t₁,h₁; t₂,h₂) = (1/2πi)² ∮∮ Φ(t₁,z)/Φ(t₂,w) · z^{−k₁} w^{k₂−1} / (z − w) dw dz`
///
/// with `k = h + (|t|+1)/2`, `|z| = e^{ε} > |w| = e^{−ε}` when `t₁ ≥ t₂` and
/// the radii swapped otherwise. The default separation is `ε = r/4`, half
/// the distance to the nearest singularity of `Φ`.
#[derive(Debug, Clone)]
pub struct PpKernel {
    q: QParam,
    settings: QuadSettings,
}

/// `Φ(t, ·)` on the nodes of one circle for a set of times.
///
/// For `t ≥ 0`, `Φ(t, z) = (q^{1/2}/z; q)_∞ / (q^{1/2+t} z; q)_∞`, and for
/// `t < 0`, `Φ(t, z) = (q^{1/2+|t|}/z; q)_∞ / (q^{1/2} z; q)_∞`. The product at
/// the extreme time is evaluated once; smaller `|t|` follow by multiplying in
/// single factors, so no step divides by a nearly vanishing factor.
fn phi_table(nodes: &[Complex64], q: &QParam, ts: &[i64]) -> Result<BTreeMap<i64, Vec<Complex64>>> {
    let sq = q.q.sqrt();
    let one = Complex64::new(1.0, 0.0);
    let t_max = ts.iter().copied().max().unwrap_or(0).max(0);
    let t_min = ts.iter().copied().min().unwrap_or(0).min(0);
    let mut out: BTreeMap<i64, Vec<Complex64>> = ts.iter().map(|&t| (t, Vec::with_capacity(nodes.len()))).collect();
    let qk = |k: i64| sq * q.q.powi(k as i32);
    for &z in nodes {
        let pole = |t: i64| Error::Pole(format!("Φ({t}, {z}) has a pole"));
        let num0 = poch_inner(sq / z, q.q, None)?;
        if t_max > 0 || out.contains_key(&0) {
            let mut d = poch_inner(qk(t_max) * z, q.q, Some(POLE_TOL)).map_err(|_| pole(t_max))?;
            for t in (0..=t_max).rev() {
                if t < t_max {
                    let f = one - qk(t) * z;
                    if f.norm() < POLE_TOL {
                        return Err(pole(t));
                    }
                    d *= f;
                }
                if let Some(v) = out.get_mut(&t) {
                    v.push(num0 / d);
                }
            }
        }
        if t_min < 0 {
            let den0 = poch_inner(sq * z, q.q, Some(POLE_TOL)).map_err(|_| pole(t_min))?;
            let mut n = poch_inner(qk(-t_min) / z, q.q, None)?;
            for t in t_min..0 {
                if t > t_min {
                    n *= one - qk(-t) / z;
                }
                if let Some(v) = out.get_mut(&t) {
                    v.push(n / den0);
                }
            }
        }
    }
    Ok(out)
}

impl PpKernel {
    pub fn new(q: QParam, settings: QuadSettings) -> Result<Self> {
        settings.validate()?;
        Ok(PpKernel { q, settings })
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    fn default_eps(&self) -> f64 {
        let cap = 0.25 * self.q.r;
        match self.settings.eps {
            Some(e) if e < 0.5 * self.q.r => e,
            Some(e) => {
                log::warn!("quad.eps = {e} reaches the poles of Φ at r/2 = {}; using r/4", 0.5 * self.q.r);
                cap
            }
            None => cap,
        }
    }

    /// Log-radius about which both circles are centred.
    ///
    /// On `|z| = e^{τ/2}` the integrand has nearly constant modulus, which
    /// avoids cancellation away from `τ = 0`. The centre stays at least `r/2`
    /// inside the annulus where `Φ(t₁, z)` and `1/Φ(t₂, w)` are analytic,
    /// `−r(max(−t, 0) + 1/2) < log|·| < r(max(t, 0) + 1/2)`; 0 is always admissible.
    fn center(&self, rows: &[SitePP], cols: &[SitePP]) -> f64 {
        let r = self.q.r;
        let t_min = rows.iter().chain(cols).map(|s| s.t).min().unwrap_or(0);
        let t_max = rows.iter().chain(cols).map(|s| s.t).max().unwrap_or(0);
        let upper = r * (t_min.max(0) as f64 + 0.5) - 0.5 * r;
        let lower = -r * ((-t_max).max(0) as f64 + 0.5) + 0.5 * r;
        (0.25 * r * (t_min + t_max) as f64).clamp(lower.min(0.0), upper.max(0.0))
    }

    fn block_at(&self, rows: &[SitePP], cols: &[SitePP], eps: f64, n: usize) -> Result<Vec<Complex64>> {
        let s0 = self.center(rows, cols);
        // Grid `out_in` puts z outside (t₁ ≥ t₂); `in_out` puts z inside.
        let out_in = CauchyGrid::new((s0 + eps).exp(), (s0 - eps).exp(), n)?;
        let in_out = CauchyGrid::new((s0 - eps).exp(), (s0 + eps).exp(), n)?;
        let mut ts: Vec<i64> = rows.iter().chain(cols).map(|s| s.t).collect();
        ts.sort_unstable();
        ts.dedup();
        let phi_out = phi_table(&out_in.z, &self.q, &ts)?;
        let phi_in = phi_table(&out_in.w, &self.q, &ts)?;
        // Column contractions, one per grid orientation.
        let col_d = |grid: &CauchyGrid, phi: &BTreeMap<i64, Vec<Complex64>>, s: &SitePP| -> Vec<Complex64> {
            let k = s.level();
            let ph = &phi[&s.t];
            let b: Vec<Complex64> = grid.w.iter().zip(ph).map(|(&w, &p)| w.powi((k - 1) as i32) / p).collect();
            grid.contract_w(&b)
        };
        let d_in: Vec<Vec<Complex64>> = cols.iter().map(|s| col_d(&out_in, &phi_in, s)).collect();
        let d_out: Vec<Vec<Complex64>> = cols.iter().map(|s| col_d(&in_out, &phi_out, s)).collect();
        let mut out = Vec::with_capacity(rows.len() * cols.len());
        for r in rows {
            let k = r.level();
            let a_out: Vec<Complex64> =
                out_in.z.iter().zip(&phi_out[&r.t]).map(|(&z, &p)| p * z.powi(-k as i32)).collect();
            let a_in: Vec<Complex64> =
                in_out.z.iter().zip(&phi_in[&r.t]).map(|(&z, &p)| p * z.powi(-k as i32)).collect();
            for (j, c) in cols.iter().enumerate() {
                out.push(if r.t >= c.t { out_in.contract_z(&a_out, &d_in[j]) } else { in_out.contract_z(&a_in, &d_out[j]) });
            }
        }
        Ok(out)
    }

    fn block_with_eps(&self, rows: &[SitePP], cols: &[SitePP], eps: f64) -> Result<KernelBlock> {
        let mut n = START_NODES;
        let mut prev = self.block_at(rows, cols, eps, n / 2)?;
        loop {
            let cur = self.block_at(rows, cols, eps, n)?;
            let errors: Vec<f64> = cur.iter().zip(&prev).map(|(a, b)| (a - b).norm()).collect();
            let worst = errors.iter().copied().fold(0.0, f64::max);
            if worst < self.settings.tol {
                return Ok(KernelBlock { rows: rows.len(), cols: cols.len(), values: cur, errors, nodes_used: n });
            }
            if n >= self.settings.max_nodes {
                return Err(Error::NonConvergence { estimate: worst, tol: self.settings.tol, nodes: n });
            }
            prev = cur;
            n *= 2;
        }
    }
}

impl CorrelationKernel for PpKernel {
    type Site = SitePP;

    fn block(&self, rows: &[SitePP], cols: &[SitePP]) -> Result<KernelBlock> {
        if let Some(s) = rows.iter().chain(cols).find(|s| !s.is_admissible()) {
            return Err(Error::Parity(format!("site {s} violates h + (|t|+1)/2 ∈ ℤ")));
        }
        if rows.is_empty() || cols.is_empty() {
            return Ok(KernelBlock { rows: rows.len(), cols: cols.len(), values: vec![], errors: vec![], nodes_used: 0 });
        }
        let eps = self.default_eps();
        match self.block_with_eps(rows, cols, eps) {
            Err(Error::Pole(msg)) => {
                log::warn!("{msg}; retrying with ε/2");
                self.block_with_eps(rows, cols, 0.5 * eps)
            }
            other => other,
        }
    }
}

/// `K_q(s₁, s₂)` with default quadrature settings.
pub fn pp_kernel(q: &QParam, s1: SitePP, s2: SitePP) -> Result<f64> {
    let v = PpKernel::new(*q, QuadSettings::default())?.entry(s1, s2)?;
    Ok(v.re)
}
