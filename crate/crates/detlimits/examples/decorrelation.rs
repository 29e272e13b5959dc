//! Covariance of pattern indicators at two macroscopic positions.
//!
//! Run with `cargo run --release --example decorrelation`.

use detlimits::combinatorics::Pattern;
use detlimits::contour::QuadSettings;
use detlimits::lln::{decorrelation_study, StudyModel};
use detlimits::specialfn::GCoefficients;

fn main() -> detlimits::Result<()> {
    let model = StudyModel::Schur { g: GCoefficients::plancherel(1.0), pattern: Pattern::new(vec![0])? };
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = [0.02, 0.05, 0.1, 0.2, 0.4].iter().map(|d| (vec![-0.5], vec![-0.5 + d])).collect();
    for alpha in [50.0, 100.0] {
        let t = decorrelation_study(&model, &pairs, alpha, QuadSettings::default())?;
        for r in &t.rows {
            println!("α = {alpha:<5} |u₁ − u₂| = {:<5} cov = {:+.3e}", r.separation, r.covariance);
        }
        println!("α = {alpha:<5} log-log slope {:.3}", t.slope.unwrap_or(f64::NAN));
    }
    Ok(())
}
