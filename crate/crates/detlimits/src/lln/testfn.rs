use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A continuous, compactly supported test function of one or two variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TestFunction {
    /// `exp(−1/(1 − ρ²))` for `ρ = |x − center|/width < 1`, else 0.
    ///
    /// The dimension is the length of `center`.
    Bump { center: Vec<f64>, width: f64 },
    /// `Σ coeffs[k]·uᵏ` on `[support.0, support.1]`, 0 elsewhere.
    Polynomial { coeffs: Vec<f64>, support: (f64, f64) },
    /// Piecewise-linear interpolation of `values` on the increasing `grid`,
    /// 0 outside `[grid[0], grid[n−1]]`.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

impl TestFunction {
    /// One-dimensional bump.
    pub fn bump(center: f64, width: f64) -> Self {
        TestFunction::Bump { center: vec![center], width }
    }

    /// Two-dimensional radial bump.
    pub fn bump2(center: (f64, f64), width: f64) -> Self {
        TestFunction::Bump { center: vec![center.0, center.1], width }
    }

    /// The indicator-like constant `c` on `[a, b]`.
    pub fn constant(c: f64, a: f64, b: f64) -> Self {
        TestFunction::Polynomial { coeffs: vec![c], support: (a, b) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Parameter("f".into(), msg.into()));
        match self {
            TestFunction::Bump { center, width } => {
                if center.is_empty() || center.len() > 2 {
                    return bad("bump center must have 1 or 2 coordinates");
                }
                if !(*width > 0.0) || !width.is_finite() || center.iter().any(|c| !c.is_finite()) {
                    return bad("bump width must be positive and the center finite");
                }
            }
            TestFunction::Polynomial { coeffs, support } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return bad("polynomial needs finite coefficients");
                }
                if !(support.0 < support.1) || !support.0.is_finite() || !support.1.is_finite() {
                    return bad("polynomial support must be a finite interval");
                }
            }
            TestFunction::Tabulated { grid, values } => {
                if grid.len() < 2 || grid.len() != values.len() {
                    return bad("tabulated grid and values need equal length ≥ 2");
                }
                if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().chain(values).any(|v| !v.is_finite()) {
                    return bad("tabulated grid must be finite and strictly increasing");
                }
            }
        }
        Ok(())
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        match self {
            TestFunction::Bump { center, .. } => center.len(),
            _ => 1,
        }
    }

    /// Bounding box of the support, one interval per variable.
    pub fn support_box(&self) -> Vec<(f64, f64)> {
        match self {
            TestFunction::Bump { center, width } => center.iter().map(|c| (c - width, c + width)).collect(),
            TestFunction::Polynomial { support, .. } => vec![*support],
            TestFunction::Tabulated { grid, .. } => vec![(grid[0], grid[grid.len() - 1])],
        }
    }

    fn bump_profile(rho2: f64) -> f64 {
        if rho2 >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - rho2)).exp()
        }
    }

    /// `f(u)`; two-variable functions are rejected.
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            TestFunction::Bump { center, width } => {
                assert_eq!(center.len(), 1, "eval on a two-variable test function");
                let d = (u - center[0]) / width;
                Self::bump_profile(d * d)
            }
            TestFunction::Polynomial { coeffs, support } => {
                if u < support.0 || u > support.1 {
                    0.0
                } else {
                    coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
                }
            }
            TestFunction::Tabulated { grid, values } => {
                let n = grid.len();
                if u < grid[0] || u > grid[n - 1] {
                    return 0.0;
                }
                let k = grid.partition_point(|&g| g <= u).clamp(1, n - 1);
                let (x0, x1) = (grid[k - 1], grid[k]);
                let s = (u - x0) / (x1 - x0);
                values[k - 1] * (1.0 - s) + values[k] * s
            }
        }
    }

    /// `f(x, y)`; one-variable functions are rejected.
    pub fn eval2(&self, x: f64, y: f64) -> f64 {
        match self {
            TestFunction::Bump { center, width } if center.len() == 2 => {
                let (dx, dy) = ((x - center[0]) / width, (y - center[1]) / width);
                Self::bump_profile(dx * dx + dy * dy)
            }
            _ => panic!("eval2 on a one-variable test function"),
        }
    }

    /// Grid estimate of the modulus of continuity `sup_{|x−y| ≤ h} |f(x) − f(y)|`
    /// of a one-variable function.
    pub fn modulus_of_continuity(&self, h: f64) -> f64 {
        let (a, b) = self.support_box()[0];
        let (a, b) = (a - h, b + h);
        let n = 20_000;
        let dx = (b - a) / n as f64;
        let sub = ((h / dx).ceil() as usize).max(1);
        let step = h / sub as f64;
        let mut w: f64 = 0.0;
        for i in 0..=n {
            let x = a + i as f64 * dx;
            let fx = self.eval(x);
            for k in 1..=sub {
                w = w.max((self.eval(x + k as f64 * step) - fx).abs());
            }
        }
        w
    }
}
