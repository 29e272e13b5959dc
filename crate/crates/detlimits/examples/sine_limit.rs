//! Arcs of the discrete sine kernel and the limit density profile.
//!
//! Run with `cargo run --example sine_limit`.

use detlimits::kernels::{sine_arcs, u_range};
use detlimits::specialfn::GCoefficients;
use num_complex::Complex64;

fn main() -> detlimits::Result<()> {
    let g = GCoefficients::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.25)], 1.0)?;
    let (lo, hi) = u_range(&g);
    println!("u range [{lo:.6}, {hi:.6}]");
    for k in 0..=8 {
        let u = lo + (hi - lo) * k as f64 / 8.0;
        let arcs = sine_arcs(&g, u)?;
        let spans: Vec<String> = arcs.arcs.iter().map(|(a, b)| format!("[{a:.3}, {b:.3}]")).collect();
        println!("u = {u:>8.4}  density {:.6}  arcs {}", arcs.density(), spans.join(" "));
    }
    Ok(())
}
