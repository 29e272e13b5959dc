//! Law of large numbers for pattern counts under the Plancherel measure.
//!
//! Run with `cargo run --release --example lln`.

use detlimits::combinatorics::Pattern;
use detlimits::dpp::RngSeed;
use detlimits::lln::{run_lln_experiment, LlnSpec, TestFunction};
use detlimits::specialfn::GCoefficients;

fn main() -> detlimits::Result<()> {
    for alpha in [15.0, 30.0, 60.0] {
        let spec = LlnSpec::Schur {
            g: GCoefficients::plancherel(1.0),
            alpha,
            f: TestFunction::bump(0.0, 1.0),
            pattern: Pattern::new(vec![0, 1])?,
        };
        let r = run_lln_experiment(&spec, 200, RngSeed::new(1, 0))?;
        println!(
            "α = {alpha:<4} mean Σ = {:.5} ± {:.5}  I = {:.5}  var = {:.2e}",
            r.mean, r.stderr, r.i_value, r.variance
        );
    }
    Ok(())
}
