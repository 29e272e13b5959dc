//! Kernel-level convergence to the local limits.
//!
//! Run with `cargo run --release --example convergence`.

use detlimits::combinatorics::{Pattern, SitePP};
use detlimits::contour::QuadSettings;
use detlimits::lln::{convergence_study, StudyModel};
use detlimits::specialfn::GCoefficients;

fn main() -> detlimits::Result<()> {
    let quad = QuadSettings::default();
    let schur = StudyModel::Schur { g: GCoefficients::plancherel(1.0), pattern: Pattern::new(vec![0, 1])? };
    let t = convergence_study(&schur, &[0.7], &[25.0, 50.0, 100.0, 200.0], quad)?;
    for r in &t.rows {
        println!("Schur α = {:<5} det = {:.8}  limit = {:.8}  error = {:.2e}", r.scale, r.value, r.limit, r.error);
    }
    let pp = StudyModel::PlanePartition { pattern: Pattern::new(vec![SitePP::new(0, -1)])? };
    let t = convergence_study(&pp, &[0.2, -0.3], &[0.08, 0.04, 0.02], quad)?;
    for r in &t.rows {
        println!("PP r = {:<5} det = {:.8}  limit = {:.8}  error = {:.2e}", r.scale, r.value, r.limit, r.error);
    }
    println!("PP log-log slope {:.3}", t.slope.unwrap_or(f64::NAN));
    Ok(())
}
