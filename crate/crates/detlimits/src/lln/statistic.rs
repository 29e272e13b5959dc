use crate::combinatorics::{Pattern, SitePP};
use crate::dpp::WindowConfig;
use crate::error::{Error, Result};
use crate::kernels::{region_a_contains, ZgProfile};
use crate::specialfn::GCoefficients;

use super::{pairwise_sum_real, TestFunction};

/// Integer range `[⌈α·lo⌉, ⌊α·hi⌋]` of `x` with `x/α ∈ [lo, hi]`.
pub(crate) fn lattice_range(lo: f64, hi: f64, alpha: f64) -> (i64, i64) {
    ((alpha * lo).ceil() as i64, (alpha * hi).floor() as i64)
}

/// The `x` range summed in the Schur statistic: `[αu_min, αu_max] ∩ α·supp f`.
pub fn schur_sum_range(f: &TestFunction, alpha: f64, u_range: (f64, f64)) -> (i64, i64) {
    let (a, b) = f.support_box()[0];
    lattice_range(a.max(u_range.0), b.min(u_range.1), alpha)
}

/// Smallest integer window on which [`empirical_statistic_schur`] reads the configuration.
pub fn schur_window(f: &TestFunction, m: &Pattern<i64>, alpha: f64, u_range: (f64, f64)) -> (i64, i64) {
    let (lo, hi) = schur_sum_range(f, alpha, u_range);
    let (mlo, mhi) = match (m.sites().first(), m.sites().last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0, 0),
    };
    (lo + mlo, hi + mhi)
}

fn check_dim(f: &TestFunction, d: usize) -> Result<()> {
    f.validate()?;
    if f.dim() != d {
        return Err(Error::Parameter("f".into(), format!("expected a function of {d} variable(s), got {}", f.dim())));
    }
    Ok(())
}

/// `Σ(f, m, α) = (1/α) Σ_{x ∈ [αu_min, αu_max] ∩ ℤ} f(x/α) c_{m+x}`.
pub fn empirical_statistic_schur(
    config: &WindowConfig<i64>,
    f: &TestFunction,
    m: &Pattern<i64>,
    alpha: f64,
    g: &GCoefficients,
) -> Result<f64> {
    let p = ZgProfile::new(g);
    empirical_statistic_schur_with_range(config, f, m, alpha, (p.u_min, p.u_max))
}

/// [`empirical_statistic_schur`] with a precomputed `(u_min, u_max)`.
pub fn empirical_statistic_schur_with_range(
    config: &WindowConfig<i64>,
    f: &TestFunction,
    m: &Pattern<i64>,
    alpha: f64,
    u_range: (f64, f64),
) -> Result<f64> {
    check_dim(f, 1)?;
    if !(alpha > 0.0) {
        return Err(Error::Parameter("alpha".into(), format!("must be positive, got {alpha}")));
    }
    let (lo, hi) = schur_sum_range(f, alpha, u_range);
    let mut terms = Vec::new();
    for x in lo..=hi {
        let fx = f.eval(x as f64 / alpha);
        if fx == 0.0 {
            continue;
        }
        if config.contains_pattern(&m.translate(&x))? {
            terms.push(fx);
        }
    }
    Ok(pairwise_sum_real(&terms) / alpha)
}

/// Sites `(t, h2)` of `ℤ × ½ℤ` with `(rt, rh)` in `A ∩ supp f`, row by row.
pub(crate) fn pp_sum_sites(f: &TestFunction, r: f64) -> Vec<SitePP> {
    let b = f.support_box();
    let (t_lo, t_hi) = lattice_range(b[0].0, b[0].1, 1.0 / r);
    let (h_lo, h_hi) = lattice_range(b[1].0, b[1].1, 2.0 / r);
    let mut out = Vec::new();
    for t in t_lo..=t_hi {
        for h2 in h_lo..=h_hi {
            if region_a_contains(r * t as f64, 0.5 * r * h2 as f64) {
                out.push(SitePP::new(t, h2));
            }
        }
    }
    out
}

/// Smallest rectangle of `ℤ × ½ℤ` read by [`empirical_statistic_pp`], as
/// `(t_min, t_max, h2_min, h2_max)`.
pub fn pp_window_bounds(f: &TestFunction, m: &Pattern<SitePP>, r: f64) -> (i64, i64, i64, i64) {
    let b = f.support_box();
    let (t_lo, t_hi) = lattice_range(b[0].0, b[0].1, 1.0 / r);
    let (h_lo, h_hi) = lattice_range(b[1].0, b[1].1, 2.0 / r);
    let s = m.sites();
    let tmin = s.iter().map(|x| x.t).min().unwrap_or(0);
    let tmax = s.iter().map(|x| x.t).max().unwrap_or(0);
    let hmin = s.iter().map(|x| x.h2).min().unwrap_or(0);
    let hmax = s.iter().map(|x| x.h2).max().unwrap_or(0);
    (t_lo + tmin, t_hi + tmax, h_lo + hmin, h_hi + hmax)
}

/// `Σ(f, m, r) = r² Σ_{(t,h) ∈ A_r} f(rt, rh) c_{(t,h)+m}` over `ℤ × ½ℤ`.
///
/// Translates with an inadmissible site are never occupied and contribute 0.
pub fn empirical_statistic_pp(config: &WindowConfig<SitePP>, f: &TestFunction, m: &Pattern<SitePP>, r: f64) -> Result<f64> {
    check_dim(f, 2)?;
    if !(r > 0.0) {
        return Err(Error::Parameter("r".into(), format!("must be positive, got {r}")));
    }
    let mut terms = Vec::new();
    for base in pp_sum_sites(f, r) {
        let fx = f.eval2(r * base.t as f64, r * base.h());
        if fx == 0.0 {
            continue;
        }
        let shifted = m.translate(&base);
        if shifted.sites().iter().any(|s| !s.is_admissible()) {
            continue;
        }
        if config.contains_pattern(&shifted)? {
            terms.push(fx);
        }
    }
    Ok(r * r * pairwise_sum_real(&terms))
}
