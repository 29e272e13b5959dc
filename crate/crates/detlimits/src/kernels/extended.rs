use std::f64::consts::PI;

use num_complex::Complex64;

use super::geometry::{critical_point_pp, CriticalPointPP};
use super::{CorrelationKernel, KernelBlock};
use crate::combinatorics::SitePP;
use crate::contour::integrate_gk;
use crate::error::{Error, Result};

fn arc_integral(cp: &CriticalPointPP, dt: i64, e: i64) -> Result<Complex64> {
    let rho = cp.z.norm();
    let phi = cp.phi();
    let re = rho.powi(e as i32);
    // dw/w = i dθ on |w| = ρ, so (1/2πi)∫ g dw/w = (1/2π)∫ g dθ.
    let f = |th: f64| {
        let w = Complex64::from_polar(rho, th);
        (Complex64::new(1.0, 0.0) - w).powi(dt as i32) * Complex64::from_polar(re, e as f64 * th) / (2.0 * PI)
    };
    let abs_tol = 1e-15 * re.max(1.0);
    if dt >= 0 {
        // Through the positive real axis: θ from −φ to φ.
        Ok(integrate_gk(f, -phi, phi, &[0.0], abs_tol, 1e-14, 2000)?.value)
    } else {
        // Through the negative real axis: θ from 2π − φ down to φ.
        Ok(-integrate_gk(f, phi - 2.0 * PI, -phi, &[-PI], abs_tol, 1e-14, 2000)?.value)
    }
}

/// `(1/2πi) ∫_{z̄}^{z} (1 − w)^{Δt} w^{−Δh−Δt/2} dw/w` along the circle
/// `|w| = |z(τ, χ)|`, crossing the positive real axis for `Δt ≥ 0` and the
/// negative one for `Δt < 0`. `dh2` is `2Δh`; `Δh − Δt/2` must be an integer.
pub fn extended_sine_kernel(tau: f64, chi: f64, dt: i64, dh2: i64) -> Result<Complex64> {
    if (dh2 - dt).rem_euclid(2) != 0 {
        return Err(Error::Parity(format!("Δh − Δt/2 = ({dh2} − {dt})/2 is not an integer")));
    }
    let cp = critical_point_pp(tau, chi)?;
    arc_integral(&cp, dt, -(dh2 + dt) / 2)
}

/// The extended sine kernel at a fixed point of the liquid region.
///
/// Entry `(s₁, s₂)` is the kernel at `(Δt, Δh) = (t₂ − t₁, h₂ − h₁)`. For
/// `τ < 0` the time axis is reflected, which maps the process at `(τ, χ)`
/// onto the one at `(−τ, χ)`.
#[derive(Debug, Clone)]
pub struct ExtendedSineKernel {
    cp: CriticalPointPP,
    reflect: bool,
}

impl ExtendedSineKernel {
    pub fn new(tau: f64, chi: f64) -> Result<Self> {
        let cp = critical_point_pp(tau.abs(), chi)?;
        Ok(ExtendedSineKernel { cp, reflect: tau < 0.0 })
    }

    pub fn critical_point(&self) -> &CriticalPointPP {
        &self.cp
    }

    fn value(&self, a: &SitePP, b: &SitePP) -> Result<Complex64> {
        let mut dt = b.t - a.t;
        let dh2 = b.h2 - a.h2;
        if self.reflect {
            dt = -dt;
        }
        if (dh2 - dt).rem_euclid(2) != 0 {
            return Err(Error::Parity(format!("sites {a} and {b} have incompatible parity")));
        }
        arc_integral(&self.cp, dt, -(dh2 + dt) / 2)
    }
}

impl CorrelationKernel for ExtendedSineKernel {
    type Site = SitePP;

    fn block(&self, rows: &[SitePP], cols: &[SitePP]) -> Result<KernelBlock> {
        let mut values = Vec::with_capacity(rows.len() * cols.len());
        for a in rows {
            for b in cols {
                values.push(self.value(a, b)?);
            }
        }
        let n = values.len();
        Ok(KernelBlock { rows: rows.len(), cols: cols.len(), values, errors: vec![0.0; n], nodes_used: 0 })
    }
}
