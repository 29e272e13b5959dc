use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|2cosh(τ/2) − e^{−χ}| < 2`: the liquid region.
pub fn region_a_contains(tau: f64, chi: f64) -> bool {
    (2.0 * (0.5 * tau).cosh() - (-chi).exp()).abs() < 2.0
}

/// The open χ-interval of the liquid region at fixed τ:
/// `(−2 log(2 cosh(τ/4)), −2 log(2 |sinh(τ/4)|))`, unbounded above at τ = 0.
pub fn chi_bounds(tau: f64) -> (f64, f64) {
    let lo = -2.0 * (2.0 * (0.25 * tau).cosh()).ln();
    let s = (0.25 * tau).sinh().abs();
    let hi = if s == 0.0 { f64::INFINITY } else { -2.0 * (2.0 * s).ln() };
    (lo, hi)
}

/// The intersection `z(τ, χ)` of the circles `|z| = e^{−τ/2}` and
/// `|z − 1| = e^{−τ/4−χ/2}` in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointPP {
    pub z: Complex64,
    pub tau: f64,
    pub chi: f64,
}

impl CriticalPointPP {
    /// `arg z ∈ (0, π)`.
    pub fn phi(&self) -> f64 {
        self.z.arg()
    }
}

/// Roots of `e^{−τ}ζ² − (1 + e^{−τ} − e^{−τ/2−χ})ζ + 1`, i.e. of
/// `(1 − 1/ζ)(1 − e^{−τ}ζ) = e^{−τ/2−χ}`, upper root first.
///
/// The roots have modulus `e^{τ/2}`; the critical point is `e^{−τ}` times
/// the upper root.
pub fn critical_quadratic_roots(tau: f64, chi: f64) -> (Complex64, Complex64) {
    let a = (-tau).exp();
    let b = -(1.0 + a - (-0.5 * tau - chi).exp());
    let disc = Complex64::new(b * b - 4.0 * a, 0.0).sqrt();
    let r1 = (-b + disc) / (2.0 * a);
    let r2 = (-b - disc) / (2.0 * a);
    if r1.im >= r2.im {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// `z(τ, χ)` by intersecting the two circles; fails outside the liquid region.
pub fn critical_point_pp(tau: f64, chi: f64) -> Result<CriticalPointPP> {
    if !region_a_contains(tau, chi) {
        return Err(Error::Region { tau, chi });
    }
    let a2 = (-tau).exp();
    let b2 = (-0.5 * tau - chi).exp();
    let x = 0.5 * (1.0 + a2 - b2);
    let y2 = a2 - x * x;
    if y2 < 1e-10 {
        log::warn!("critical point near the boundary of the liquid region: Im² z = {y2:e}");
    }
    Ok(CriticalPointPP { z: Complex64::new(x, y2.max(0.0).sqrt()), tau, chi })
}
