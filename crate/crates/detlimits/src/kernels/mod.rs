//! Correlation kernels and the limit geometry behind them.
//!
//! Four kernels are provided:
//!
//! | kernel | sites | construction |
//! |--------|-------|--------------|
//! | [`SchurKernel`] | `ℤ` | double contour integral of `e^{α(G(z)−G(w))}` |
//! | [`SineKernel`] | `ℤ` | arcs of `{zG′ ≥ u}` on the unit circle |
//! | [`PpKernel`] | `ℤ × ½ℤ` | double contour integral of `Φ(t₁,z)/Φ(t₂,w)` |
//! | [`ExtendedSineKernel`] | `ℤ × ½ℤ` | arc integral between `z̄(τ,χ)` and `z(τ,χ)` |
//!
//! All of them implement [`CorrelationKernel`], which evaluates rectangular
//! blocks so node tables are shared across entries.

mod extended;
mod fourier;
mod geometry;
mod pp;
mod schur;
mod sine;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::LatticeSite;
use crate::contour::QuadSettings;
use crate::error::Result;
use crate::specialfn::GCoefficients;

pub use extended::{extended_sine_kernel, ExtendedSineKernel};
pub use fourier::fourier_projection_kernel;
pub use geometry::{chi_bounds, critical_point_pp, critical_quadratic_roots, region_a_contains, CriticalPointPP};
pub use pp::{pp_kernel, PpKernel};
pub use schur::{schur_kernel, SchurKernel};
pub use sine::{sine_arcs, sine_kernel, u_range, ArcSet, SineKernel, ZgProfile};

/// A rectangular block `[K(r_i, c_j)]` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBlock {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<Complex64>,
    /// Per-entry quadrature error estimate; zero for closed forms.
    pub errors: Vec<f64>,
    pub nodes_used: usize,
}

impl KernelBlock {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.cols + j]
    }

    pub fn error(&self, i: usize, j: usize) -> f64 {
        self.errors[i * self.cols + j]
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().copied().fold(0.0, f64::max)
    }
}

/// A correlation kernel on a lattice.
pub trait CorrelationKernel: Sync {
    type Site: LatticeSite;

    /// `[K(r, c)]` for `r ∈ rows`, `c ∈ cols`.
    fn block(&self, rows: &[Self::Site], cols: &[Self::Site]) -> Result<KernelBlock>;

    /// Square matrix on `sites`, row-major.
    fn matrix(&self, sites: &[Self::Site]) -> Result<Vec<Complex64>> {
        Ok(self.block(sites, sites)?.values)
    }

    fn entry(&self, a: Self::Site, b: Self::Site) -> Result<Complex64> {
        Ok(self.block(&[a], &[b])?.values[0])
    }
}

/// Serializable description of a kernel and its quadrature settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum KernelSpec {
    Schur { g: GCoefficients, alpha: f64, quad: QuadSettings },
    Sine { g: GCoefficients, u: f64 },
    Pp { q: f64, quad: QuadSettings },
    ExtendedSine { tau: f64, chi: f64 },
}

/// A kernel built from a [`KernelSpec`], split by lattice.
pub enum BuiltKernel {
    Integer(Box<dyn CorrelationKernel<Site = i64>>),
    Plane(Box<dyn CorrelationKernel<Site = crate::combinatorics::SitePP>>),
}

impl KernelSpec {
    /// Validates parameters and constructs the kernel.
    pub fn build(&self) -> Result<BuiltKernel> {
        Ok(match self {
            KernelSpec::Schur { g, alpha, quad } => BuiltKernel::Integer(Box::new(SchurKernel::new(g.clone(), *alpha, *quad)?)),
            KernelSpec::Sine { g, u } => BuiltKernel::Integer(Box::new(SineKernel::new(g, *u)?)),
            KernelSpec::Pp { q, quad } => {
                BuiltKernel::Plane(Box::new(PpKernel::new(crate::specialfn::QParam::from_q(*q)?, *quad)?))
            }
            KernelSpec::ExtendedSine { tau, chi } => BuiltKernel::Plane(Box::new(ExtendedSineKernel::new(*tau, *chi)?)),
        })
    }
}
