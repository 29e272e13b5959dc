//! Scalar special functions: the symbol `G`, q-Pochhammer products, `Φ`,
//! the dilogarithm and the steepest-descent action functions.

mod dilog;
mod pochhammer;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dilog::dilog1m;
pub(crate) use dilog::li2_upper;
pub use pochhammer::{phi, q_pochhammer};
pub(crate) use pochhammer::{poch_inner, POLE_TOL};

/// Coefficients `c_k = ρ(p_k)/k` of
/// `G(z) = Σ_k c_k z^k − Σ_k conj(c_k) z^{−k}`.
///
/// `G` is trusted on the annulus `|log|z|| ≤ radius_margin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GCoefficients {
    pub c: Vec<Complex64>,
    pub radius_margin: f64,
}

impl GCoefficients {
    pub fn new(c: Vec<Complex64>, radius_margin: f64) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Parameter("g.coeffs".into(), "at least one coefficient is required".into()));
        }
        if !(radius_margin > 0.0) {
            return Err(Error::Parameter("g.radius_margin".into(), "must be positive".into()));
        }
        if c.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Parameter("g.coeffs".into(), "coefficients must be finite".into()));
        }
        Ok(GCoefficients { c, radius_margin })
    }

    /// `G(z) = θ(z − 1/z)`, the poissonized Plancherel symbol.
    pub fn plancherel(theta: f64) -> Self {
        GCoefficients { c: vec![Complex64::new(theta, 0.0)], radius_margin: 1.0 }
    }

    /// Coefficients of `α·G`.
    pub fn scaled(&self, alpha: f64) -> Self {
        GCoefficients { c: self.c.iter().map(|v| v * alpha).collect(), radius_margin: self.radius_margin }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// `Some(|c_1|)` when only the first coefficient is nonzero; the measure
    /// is then poissonized Plancherel with that parameter.
    pub fn plancherel_theta(&self) -> Option<f64> {
        if self.c.iter().skip(1).all(|v| v.norm() == 0.0) && self.c[0].norm() > 0.0 {
            Some(self.c[0].norm())
        } else {
            None
        }
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.norm() == 0.0)
    }

    /// `zG′(e^{iφ}) = 2 Re Σ k c_k e^{ikφ}`.
    pub fn zg_prime_angle(&self, phi: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.c.iter().enumerate() {
            let k = (k + 1) as f64;
            acc += k * (c * Complex64::from_polar(1.0, k * phi)).re;
        }
        2.0 * acc
    }

    /// `d/dφ zG′(e^{iφ}) = −2 Im Σ k² c_k e^{ikφ}`.
    pub fn zg_prime_angle_deriv(&self, phi: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.c.iter().enumerate() {
            let k = (k + 1) as f64;
            acc += k * k * (c * Complex64::from_polar(1.0, k * phi)).im;
        }
        -2.0 * acc
    }

    /// `G` without the annulus check.
    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let zi = z.inv();
        let mut pos = Complex64::new(0.0, 0.0);
        let mut neg = Complex64::new(0.0, 0.0);
        for c in self.c.iter().rev() {
            pos = (pos + c) * z;
            neg = (neg + c.conj()) * zi;
        }
        pos - neg
    }
}

/// Strictly inside `(0, 1)` with `q = e^{−r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QParam {
    pub q: f64,
    pub r: f64,
}

impl QParam {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Parameter("q".into(), format!("{q} is not in (0, 1)")));
        }
        Ok(QParam { q, r: -q.ln() })
    }

    pub fn from_r(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Parameter("r".into(), format!("{r} is not positive")));
        }
        Ok(QParam { q: (-r).exp(), r })
    }
}

/// `G(z) = Σ c_k z^k − Σ conj(c_k) z^{−k}`.
///
/// Fails outside the trusted annulus `|log|z|| ≤ radius_margin` and at 0.
pub fn g_eval(g: &GCoefficients, z: Complex64) -> Result<Complex64> {
    let m = z.norm();
    if m == 0.0 || m.ln().abs() > g.radius_margin * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("|z| = {m} outside the trusted annulus of G")));
    }
    Ok(g.eval_unchecked(z))
}

/// `zG′(z)` on the unit circle, which is real there.
pub fn zg_prime(g: &GCoefficients, z: Complex64) -> Result<f64> {
    if (z.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("zG′ requires |z| = 1, got |z| = {}", z.norm())));
    }
    let zi = z.inv();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut zik = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in g.c.iter().enumerate() {
        zk *= z;
        zik *= zi;
        let k = (k + 1) as f64;
        acc += k * (c * zk + c.conj() * zik);
    }
    Ok(acc.re)
}

fn check_log_cut(z: Complex64) -> Result<()> {
    if z.re <= 0.0 && z.im.abs() < 1e-12 {
        return Err(Error::Cut(format!("{z} lies on (−∞, 0]")));
    }
    Ok(())
}

/// `S_u(z) = G(z) − u·log z` with the principal logarithm.
pub fn action_schur(g: &GCoefficients, u: f64, z: Complex64) -> Result<Complex64> {
    check_log_cut(z)?;
    Ok(g_eval(g, z)? - u * z.ln())
}

/// `S(z; τ, χ) = −(τ/2 + χ)·log z − Li₂(1/z) + Li₂(e^{−τ} z)`.
///
/// On the real axis the value is continued from the upper half-plane in `z`,
/// so real `z` on a dilogarithm cut is allowed; only `(−∞, 0]` is an error.
pub fn action_pp(z: Complex64, tau: f64, chi: f64) -> Result<Complex64> {
    check_log_cut(z)?;
    // For Im z ↓ 0 the argument 1/z approaches the real axis from below.
    let inv = li2_upper(z.inv().conj()).conj();
    Ok(-(0.5 * tau + chi) * z.ln() - inv + li2_upper((-tau).exp() * z))
}
