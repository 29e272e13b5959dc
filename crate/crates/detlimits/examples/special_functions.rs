//! q-Pochhammer symbol, dilogarithm and the two action functions.
//!
//! Run with `cargo run --example special_functions`.

use detlimits::specialfn::{action_pp, action_schur, dilog1m, q_pochhammer, GCoefficients};
use num_complex::Complex64;

fn main() -> detlimits::Result<()> {
    let z = Complex64::new(0.4, 0.3);
    // −log|(z; q)_∞| − Re Li₂(z)/r stays bounded as q = e^{−r} → 1.
    for r in [0.1f64, 0.05, 0.025, 0.0125] {
        let q = (-r).exp();
        let lhs = -q_pochhammer(z, q).norm().ln();
        let rhs = dilog1m(z)?.re / r;
        println!("r = {r:<7} −log|(z;q)∞| = {lhs:.6}  Re Li₂(z)/r = {rhs:.6}  gap = {:.4}", lhs - rhs);
    }

    let g = GCoefficients::plancherel(1.0);
    let s = action_schur(&g, 0.5, Complex64::from_polar(1.0, 1.0))?;
    println!("S_u on the unit circle: {s:.3e} (real part vanishes)");

    let (tau, chi) = (1.0f64, 0.3f64);
    let s = action_pp(Complex64::from_polar((tau / 2.0).exp(), 2.0), tau, chi)?;
    println!("Re S on |z| = e^(τ/2): {:.12}, −(τ/2)(τ/2 + χ) = {:.12}", s.re, -(tau / 2.0) * (tau / 2.0 + chi));
    Ok(())
}
