use num_complex::Complex64;

use super::QParam;
use crate::error::{Error, Result};

/// Truncation threshold on `|x|·q^k`.
const TRUNC: f64 = 1e-18;
/// Minimal admissible distance of a denominator factor from zero.
pub(crate) const POLE_TOL: f64 = 1e-9;

/// `(x; q)_∞ = ∏_{k≥0} (1 − x q^k)`.
///
/// The product stops once `|x|q^k < 1e−18` and the remaining factors are
/// replaced by `exp(−x q^K / (1 − q))`.
pub fn q_pochhammer(x: Complex64, q: f64) -> Complex64 {
    poch_inner(x, q, None).expect("no pole check requested")
}

/// Product with a check that no factor comes within `tol` of zero.
pub(crate) fn poch_inner(x: Complex64, q: f64, tol: Option<f64>) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if x.norm() == 0.0 {
        return Ok(one);
    }
    if q == 0.0 {
        let f = one - x;
        if let Some(t) = tol {
            if f.norm() < t {
                return Err(Error::Pole(format!("factor 1 − {x} vanishes")));
            }
        }
        return Ok(f);
    }
    let mut acc = one;
    let mut term = x;
    while term.norm() >= TRUNC {
        let f = one - term;
        if let Some(t) = tol {
            if f.norm() < t {
                return Err(Error::Pole(format!("factor 1 − {term} vanishes")));
            }
        }
        acc *= f;
        term *= q;
    }
    Ok(acc * (-term / (1.0 - q)).exp())
}

/// `Φ(t, z)`: `(q^{1/2}/z; q)_∞ / (q^{1/2+t} z; q)_∞` for `t ≥ 0` and
/// `(q^{1/2−t}/z; q)_∞ / (q^{1/2} z; q)_∞` for `t < 0`.
///
/// Fails when a denominator factor is within 1e−9 of zero.
pub fn phi(t: i64, z: Complex64, q: &QParam) -> Result<Complex64> {
    let sq = q.q.sqrt();
    let (num_x, den_x) = if t >= 0 {
        (sq / z, z * sq * q.q.powi(t as i32))
    } else {
        (sq * q.q.powi((-t) as i32) / z, z * sq)
    };
    let den = poch_inner(den_x, q.q, Some(POLE_TOL))?;
    let num = poch_inner(num_x, q.q, None)?;
    Ok(num / den)
}
