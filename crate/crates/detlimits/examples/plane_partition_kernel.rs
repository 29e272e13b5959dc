//! Plane-partition kernel near the diagonal and its extended sine limit.
//!
//! Run with `cargo run --release --example plane_partition_kernel`.

use detlimits::combinatorics::SitePP;
use detlimits::contour::QuadSettings;
use detlimits::kernels::{critical_point_pp, extended_sine_kernel, CorrelationKernel, PpKernel};
use detlimits::specialfn::QParam;

fn main() -> detlimits::Result<()> {
    let (tau, chi) = (0.0, 0.0);
    let cp = critical_point_pp(tau, chi)?;
    println!("critical point z = {:.6}, φ = {:.6}", cp.z, cp.phi());
    let offsets = [(0i64, 0i64), (0, 2), (1, 1), (-1, 1)];
    let base = SitePP::new(0, -1);
    let sites: Vec<SitePP> = offsets.iter().map(|&(dt, dh2)| SitePP::new(base.t + dt, base.h2 + dh2)).collect();
    for r in [0.08f64, 0.04, 0.02] {
        // One block per scale shares the quadrature nodes across entries.
        let b = PpKernel::new(QParam::from_r(r)?, QuadSettings::default())?.block(&sites, &sites)?;
        let mut line = format!("r = {r:<5}");
        for (j, &(dt, dh2)) in offsets.iter().enumerate() {
            // Gauge-invariant product against the limit.
            let kk = b.get(0, j) * b.get(j, 0);
            let ll = extended_sine_kernel(tau, chi, dt, dh2)? * extended_sine_kernel(tau, chi, -dt, -dh2)?;
            line.push_str(&format!("  Δ=({dt},{dh2}): {:.5} vs {:.5}", kk.re, ll.re));
        }
        println!("{line}");
    }
    Ok(())
}
