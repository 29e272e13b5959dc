//! Exact samples: Plancherel partitions by RSK and window configurations
//! of a general Schur measure.
//!
//! Run with `cargo run --release --example sampling`.

use detlimits::combinatorics::shur_map;
use detlimits::contour::QuadSettings;
use detlimits::dpp::{sample_plancherel, RngSeed, WindowSampler};
use detlimits::kernels::SchurKernel;
use detlimits::specialfn::GCoefficients;
use num_complex::Complex64;

fn main() -> detlimits::Result<()> {
    let seed = RngSeed::new(42, 0);
    let mut rng = seed.rng();
    for _ in 0..3 {
        let l = sample_plancherel(6.0, &mut rng)?;
        let bits: String = shur_map(&l, (-8, 8)).iter().fold(vec!['.'; 17], |mut v, &x| {
            v[(x + 8) as usize] = '●';
            v
        }).into_iter().collect();
        println!("|λ| = {:>3}  λ₁ = {:>2}  window −8..8: {bits}", l.weight(), l.part(1));
    }

    let g = GCoefficients::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)], 1.0)?;
    let k = SchurKernel::new(g, 4.0, QuadSettings::default())?;
    let sampler = WindowSampler::new(&k, (-3..=3).collect())?;
    let mut rng = seed.with_stream(1).rng();
    for _ in 0..5 {
        println!("general symbol, window −3..3: {}", sampler.sample(&mut rng)?.bit_string());
    }
    Ok(())
}
