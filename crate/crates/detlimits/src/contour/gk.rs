//! Globally adaptive Gauss–Kronrod (7/15) quadrature on real intervals.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral, error estimate and number of subintervals used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        rk += s * WGK[j];
        if j % 2 == 1 {
            rg += s * WG[j / 2];
        }
    }
    let val = rk * h;
    let err = ((rk - rg) * h).norm();
    (val, err)
}

/// `∫_a^b f` to `max(abs_tol, rel_tol·|I|)`, bisecting the worst interval.
///
/// `points` are interior breakpoints that always start a subinterval.
pub fn integrate_gk<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<GkResult> {
    let mut cuts: Vec<f64> = vec![a];
    let mut inner: Vec<f64> = points.iter().copied().filter(|&p| p > a && p < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);
    let mut ivs: Vec<(f64, f64, Complex64, f64)> = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (v, e) = gk15(&mut f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let total: Complex64 = ivs.iter().map(|iv| iv.2).sum();
        let err: f64 = ivs.iter().map(|iv| iv.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(GkResult { value: total, error: err, intervals: ivs.len() });
        }
        if ivs.len() >= max_intervals {
            return Err(Error::NonConvergence { estimate: err, tol: abs_tol.max(rel_tol * total.norm()), nodes: 15 * ivs.len() });
        }
        // Worst interval; ties resolved by position for determinism.
        let (idx, _) = ivs.iter().enumerate().fold((0usize, -1.0f64), |acc, (i, iv)| if iv.3 > acc.1 { (i, iv.3) } else { acc });
        let (lo, hi, _, _) = ivs[idx];
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return Err(Error::NonConvergence { estimate: err, tol: abs_tol, nodes: 15 * ivs.len() });
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        ivs[idx] = (lo, mid, v1, e1);
        ivs.insert(idx + 1, (mid, hi, v2, e2));
    }
}

/// Real-valued wrapper around [`integrate_gk`]; returns `(value, error)`.
pub fn integrate_gk_real<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<(f64, f64)> {
    let r = integrate_gk(|x| Complex64::new(f(x), 0.0), a, b, points, abs_tol, rel_tol, max_intervals)?;
    Ok((r.value.re, r.error))
}
