use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2n}/(2n+1)!` for n = 1..11: coefficients of `u^{2n+1}` in the
/// Bernoulli expansion of `Li₂(1 − e^{−u})`.
const BERNOULLI_ODD: [f64; 11] = [
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.064761645144225526e-11,
    8.921691020456452555e-13,
    -1.993929586072107569e-14,
    4.518980029619918192e-16,
    -1.035651761218124702e-17,
    2.395218621026186746e-19,
];

/// `Li₂(1 − e^{−u}) = u − u²/4 + Σ B_{2n} u^{2n+1}/(2n+1)!`, valid for |u| < 2π.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(0.0, 0.0);
    for &b in BERNOULLI_ODD.iter().rev() {
        acc = acc * u2 + b;
    }
    u - 0.25 * u2 + u * u2 * acc
}

/// Principal branch of `Li₂(w) = Σ wⁿ/n²`, cut along `(1, ∞)`.
///
/// Points on the cut itself follow the sign of `Im w`, including signed zero.
pub(crate) fn li2(w: Complex64) -> Complex64 {
    if w == Complex64::new(0.0, 0.0) {
        return w;
    }
    if w == Complex64::new(1.0, 0.0) {
        return Complex64::new(PI2_6, 0.0);
    }
    let nz = w.norm_sqr();
    if nz < 1e-32 {
        return w;
    }
    let one = Complex64::new(1.0, 0.0);
    if w.re <= 0.5 {
        if nz > 1.0 {
            // Li₂(w) = −Li₂(1/w) − π²/6 − ½ log²(−w)
            let l = (-w).ln();
            -bernoulli_series(-(one - one / w).ln()) - 0.5 * l * l - PI2_6
        } else {
            bernoulli_series(-(one - w).ln())
        }
    } else if nz <= 2.0 * w.re {
        // |1 − w| ≤ 1: Li₂(w) = −Li₂(1 − w) + π²/6 − log(w)·log(1 − w)
        let lw = w.ln();
        -bernoulli_series(-lw) + PI2_6 - lw * (one - w).ln()
    } else {
        let l = (-w).ln();
        -bernoulli_series(-(one - one / w).ln()) - 0.5 * l * l - PI2_6
    }
}

/// `Li₂` continued from the upper half-plane onto the real cut `(1, ∞)`.
pub(crate) fn li2_upper(w: Complex64) -> Complex64 {
    if w.re > 1.0 && w.im.abs() < 1e-12 {
        let x = w.re;
        let lx = x.ln();
        let re = 2.0 * PI2_6 - 0.5 * lx * lx - li2(Complex64::new(1.0 / x, 0.0)).re;
        return Complex64::new(re, PI * lx);
    }
    li2(w)
}

/// `dilog(1 − z) = Σ_{n≥1} zⁿ/n² = Li₂(z)`, analytically continued.
///
/// Fails when `z` lies within 1e−12 of the cut `(1, ∞)`.
pub fn dilog1m(z: Complex64) -> Result<Complex64> {
    if z.re > 1.0 && z.im.abs() < 1e-12 {
        return Err(Error::Cut(format!("dilog1m({z}) lies on the cut (1, ∞)")));
    }
    Ok(li2(z))
}
