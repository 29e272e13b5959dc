use num_complex::Complex64;

use super::sine::u_range;
use super::{CorrelationKernel, KernelBlock};
use crate::contour::{CauchyGrid, QuadSettings};
use crate::error::{Error, Result};
use crate::specialfn::GCoefficients;

/// Bound on `log` of the integrand's dynamic range on the contours.
const KAPPA: f64 = 8.0;
const START_NODES: usize = 64;

/// The kernel of the symmetric Schur measure with symbol `αG` on `ℤ`:
///
/// `K(x, y) = (1/2πi)² ∮_{|z|=e^s} ∮_{|w|=e^{−s}} e^{α(G(z)−G(w))} z^{−x−1} w^{y} / (z − w) dw dz`,
///
/// for the configuration `{λ_i − i}`. For `G ≡ 0` it is `1{x = y ≤ −1}`.
#[derive(Debug, Clone)]
pub struct SchurKernel {
    g: GCoefficients,
    alpha: f64,
    u_max: f64,
    settings: QuadSettings,
}

impl SchurKernel {
    pub fn new(g: GCoefficients, alpha: f64, settings: QuadSettings) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Parameter("alpha".into(), format!("{alpha} is not positive")));
        }
        settings.validate()?;
        let (_, u_max) = u_range(&g);
        Ok(SchurKernel { g, alpha, u_max, settings })
    }

    pub fn g(&self) -> &GCoefficients {
        &self.g
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Contour offset `s`: the configured separation, shrunk so that
    /// `|z^{−x}e^{αG(z)}|` and `|w^{y+1}e^{−αG(w)}|` stay below `e^{KAPPA}`.
    fn separation(&self, x_min: i64, y_min: i64) -> f64 {
        let eps = self.settings.eps.unwrap_or(0.05 * self.g.radius_margin.min(1.0));
        let top = self.alpha * self.u_max.max(0.0);
        let grow = (top - x_min as f64).max(0.0) + (top - y_min as f64 - 1.0).max(0.0) + 1.0;
        eps.min(KAPPA / grow).min(self.g.radius_margin)
    }

    fn block_at(&self, rows: &[i64], cols: &[i64], s: f64, n: usize) -> Result<Vec<Complex64>> {
        let grid = CauchyGrid::new(s.exp(), (-s).exp(), n)?;
        let ag = self.g.scaled(self.alpha);
        let two_pi = 2.0 * std::f64::consts::PI;
        // log z_j = s + iθ_j on the grid, so powers go through the exponent.
        let log_z: Vec<Complex64> = (0..n).map(|j| Complex64::new(s, two_pi * j as f64 / n as f64)).collect();
        let log_w: Vec<Complex64> = (0..n).map(|j| Complex64::new(-s, two_pi * j as f64 / n as f64)).collect();
        let gz: Vec<Complex64> = grid.z.iter().map(|&z| ag.eval_unchecked(z)).collect();
        let gw: Vec<Complex64> = grid.w.iter().map(|&w| ag.eval_unchecked(w)).collect();
        let ds: Vec<Vec<Complex64>> = cols
            .iter()
            .map(|&y| {
                let b: Vec<Complex64> = (0..n).map(|k| (-gw[k] + y as f64 * log_w[k]).exp()).collect();
                grid.contract_w(&b)
            })
            .collect();
        let mut out = Vec::with_capacity(rows.len() * cols.len());
        for &x in rows {
            let a: Vec<Complex64> = (0..n).map(|j| (gz[j] - (x + 1) as f64 * log_z[j]).exp()).collect();
            for d in &ds {
                out.push(grid.contract_z(&a, d));
            }
        }
        Ok(out)
    }
}

impl CorrelationKernel for SchurKernel {
    type Site = i64;

    fn block(&self, rows: &[i64], cols: &[i64]) -> Result<KernelBlock> {
        if rows.is_empty() || cols.is_empty() {
            return Ok(KernelBlock { rows: rows.len(), cols: cols.len(), values: vec![], errors: vec![], nodes_used: 0 });
        }
        let s = self.separation(*rows.iter().min().unwrap(), *cols.iter().min().unwrap());
        let mut n = START_NODES;
        let mut prev = self.block_at(rows, cols, s, n / 2)?;
        loop {
            let cur = self.block_at(rows, cols, s, n)?;
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

/// `K_α(x, y)` for the symbol `G` with default quadrature settings.
pub fn schur_kernel(g: &GCoefficients, alpha: f64, x: i64, y: i64) -> Result<Complex64> {
    SchurKernel::new(g.clone(), alpha, QuadSettings::default())?.entry(x, y)
}
