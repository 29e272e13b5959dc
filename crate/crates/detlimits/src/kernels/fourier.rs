use std::collections::HashMap;

use num_complex::Complex64;

use crate::contour::{integrate_circle, CircleContour};
use crate::error::Result;
use crate::specialfn::GCoefficients;

/// `K_F(x, y) = Σ_{n=0}^{cutoff} F̂(x − n)·conj(F̂(y − n))` for
/// `F(z) = exp(αG(1/z))`: the projection onto `span{F(z) zⁿ : n ≥ 0}`.
///
/// Fourier coefficients are contour integrals over the unit circle. The
/// result equals `K_α(−x − 1, −y − 1)` for the Schur kernel on `{λ_i − i}`.
pub fn fourier_projection_kernel(g: &GCoefficients, alpha: f64, x: i64, y: i64, cutoff: usize) -> Result<Complex64> {
    let ag = g.scaled(alpha);
    let unit = CircleContour::origin(1.0, 64)?;
    let mut cache: HashMap<i64, Complex64> = HashMap::new();
    let mut coef = |k: i64| -> Result<Complex64> {
        if let Some(v) = cache.get(&k) {
            return Ok(*v);
        }
        // F̂(k) = (1/2πi)∮ F(z) z^{−k−1} dz.
        let r = integrate_circle(|z| (ag.eval_unchecked(z.inv()) - (k + 1) as f64 * z.ln()).exp(), &unit, 1e-14)?;
        cache.insert(k, r.value);
        Ok(r.value)
    };
    let mut terms = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff as i64 {
        terms.push(coef(x - n)? * coef(y - n)?.conj());
    }
    let tail = terms.last().map(|t| t.norm()).unwrap_or(0.0);
    if tail > 1e-12 {
        log::warn!("fourier_projection_kernel: last term {tail:e} exceeds 1e−12; raise the cutoff");
    }
    Ok(crate::contour::pairwise_sum(&terms))
}
