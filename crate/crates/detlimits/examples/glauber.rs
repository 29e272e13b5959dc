//! Metropolis dynamics for q^{|π|}-weighted plane partitions.
//!
//! Run with `cargo run --release --example glauber`.

use detlimits::dpp::{default_burn_in, expected_weight, geweke_z, macmahon_vacuum, GlauberChain, RngSeed};

fn main() -> detlimits::Result<()> {
    let q = 0.6;
    let mut chain = GlauberChain::new(q)?;
    let mut rng = RngSeed::new(9, 0).rng();
    let burn = default_burn_in(q);
    let mut trace = Vec::new();
    chain.run(burn, &mut rng, Some(&mut trace));
    println!("burn-in {burn} steps, acceptance {:.3}, Geweke z = {:.2}", chain.acceptance_rate(), geweke_z(&trace.iter().map(|&w| w as f64).collect::<Vec<_>>()));
    let mut vac = 0u64;
    let mut total = 0u64;
    let n = 200_000;
    for _ in 0..n {
        chain.step(&mut rng);
        total += chain.weight();
        vac += (chain.weight() == 0) as u64;
    }
    println!("mean |π| {:.3} (exact {:.3}), P(∅) {:.4} (exact {:.4})", total as f64 / n as f64, expected_weight(q), vac as f64 / n as f64, macmahon_vacuum(q));
    println!("final state: {}", chain.state());
    Ok(())
}
