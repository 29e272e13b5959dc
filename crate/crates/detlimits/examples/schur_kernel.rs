//! Correlation kernel of a Schur measure and its discrete sine limit.
//!
//! Run with `cargo run --release --example schur_kernel`.

use detlimits::contour::QuadSettings;
use detlimits::kernels::{CorrelationKernel, SchurKernel, SineKernel};
use detlimits::specialfn::GCoefficients;

fn main() -> detlimits::Result<()> {
    let g = GCoefficients::plancherel(1.0);
    let u = 0.5;
    let sine = SineKernel::new(&g, u)?;
    let offsets: Vec<i64> = (0..4).collect();
    let limit = sine.block(&offsets, &offsets)?;
    println!("sine kernel at u = {u}: density {:.6}", limit.get(0, 0).re);
    for alpha in [10.0f64, 40.0, 160.0] {
        let k = SchurKernel::new(g.clone(), alpha, QuadSettings::default())?;
        let base = (alpha * u - 0.5).ceil() as i64;
        let sites: Vec<i64> = offsets.iter().map(|x| base + x).collect();
        let b = k.block(&sites, &sites)?;
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                // K(x,y)K(y,x) is unchanged by the conjugation gauge.
                let d = (b.get(i, j) * b.get(j, i) - limit.get(i, j) * limit.get(j, i)).norm();
                worst = worst.max(d);
            }
        }
        println!("α = {alpha:<5} K(x,x) = {:.6}  max |KK − K_sine K_sine| = {worst:.2e}  quad error ≤ {:.1e}", b.get(0, 0).re, b.max_error());
    }
    Ok(())
}
