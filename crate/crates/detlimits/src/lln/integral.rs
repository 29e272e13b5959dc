use std::cell::Cell;

use crate::combinatorics::{Pattern, SitePP};
use crate::contour::integrate_gk_real;
use crate::dpp::pattern_probability;
use crate::error::{Error, Result};
use crate::kernels::{chi_bounds, region_a_contains, ExtendedSineKernel, SineKernel, ZgProfile};
use crate::specialfn::GCoefficients;

use super::TestFunction;

const MAX_INTERVALS: usize = 4000;

/// `I(f, m) = ∫_{u_min}^{u_max} f(u)·det[S(u)(m_i, m_j)] du`.
///
/// Breakpoints are placed at the critical values of `zG′`, where the number
/// of arcs changes. Returns `(value, error estimate)`.
pub fn limit_integral_schur(f: &TestFunction, m: &Pattern<i64>, g: &GCoefficients, tol: f64) -> Result<(f64, f64)> {
    f.validate()?;
    if f.dim() != 1 {
        return Err(Error::Parameter("f".into(), "expected a function of one variable".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter("tol".into(), format!("must be positive, got {tol}")));
    }
    let profile = ZgProfile::new(g);
    let (s0, s1) = f.support_box()[0];
    let (a, b) = (s0.max(profile.u_min), s1.min(profile.u_max));
    if !(a < b) {
        return Ok((0.0, 0.0));
    }
    let mut failure = None;
    let integrand = |u: f64| -> f64 {
        let fu = f.eval(u);
        if fu == 0.0 {
            return 0.0;
        }
        if m.is_empty() {
            return fu;
        }
        match pattern_probability(&SineKernel::from_arcs(profile.arcs(u)), m) {
            Ok(p) => fu * p,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let mut points = profile.critical_values.clone();
    if let TestFunction::Tabulated { grid, .. } = f {
        points.extend(grid.iter().copied());
    }
    let r = integrate_gk_real(integrand, a, b, &points, tol, 0.0, MAX_INTERVALS)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r)
}

/// `I(f, m) = ∫∫_A f(τ, χ)·det[K_{τ,χ}(m_i, m_j)] dτ dχ` by nested adaptive
/// Gauss–Kronrod: χ over the liquid interval at each τ, then τ.
///
/// The error estimate adds the outer estimate to the τ-length times the
/// largest inner estimate.
pub fn limit_integral_pp(f: &TestFunction, m: &Pattern<SitePP>, tol: f64) -> Result<(f64, f64)> {
    f.validate()?;
    if f.dim() != 2 {
        return Err(Error::Parameter("f".into(), "expected a function of two variables".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter("tol".into(), format!("must be positive, got {tol}")));
    }
    if let Some(s) = m.sites().iter().find(|s| !s.is_admissible()) {
        return Err(Error::Parity(format!("site {s} violates h + (|t|+1)/2 ∈ ℤ")));
    }
    let bx = f.support_box();
    let (ta, tb) = bx[0];
    let (ca, cb) = bx[1];
    let len = tb - ta;
    let inner_tol = 0.5 * tol / len.max(1.0);
    let worst_inner = Cell::new(0.0f64);
    let mut failure: Option<Error> = None;
    let outer = |tau: f64| -> f64 {
        let (lo, hi) = chi_bounds(tau);
        let (lo, hi) = (lo.max(ca), hi.min(cb));
        if !(lo < hi) {
            return 0.0;
        }
        let mut inner_fail = None;
        let inner = |chi: f64| -> f64 {
            let fv = f.eval2(tau, chi);
            if fv == 0.0 || !region_a_contains(tau, chi) {
                return 0.0;
            }
            if m.is_empty() {
                return fv;
            }
            match ExtendedSineKernel::new(tau, chi).and_then(|k| pattern_probability(&k, m)) {
                Ok(p) => fv * p,
                Err(e) => {
                    inner_fail.get_or_insert(e);
                    0.0
                }
            }
        };
        match integrate_gk_real(inner, lo, hi, &[], inner_tol, 0.0, MAX_INTERVALS) {
            Ok((v, e)) => {
                worst_inner.set(worst_inner.get().max(e));
                if let Some(e) = inner_fail {
                    failure.get_or_insert(e);
                }
                v
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let (v, e) = integrate_gk_real(outer, ta, tb, &[0.0], 0.5 * tol, 0.0, MAX_INTERVALS)?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok((v, e + len * worst_inner.get()))
}
