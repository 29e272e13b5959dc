//! Kernel determinants against brute-force enumeration.
//!
//! Run with `cargo run --release --example oracle`.

use detlimits::combinatorics::{Pattern, PpWindow, SitePP};
use detlimits::contour::QuadSettings;
use detlimits::dpp::{pattern_probability, PlancherelOracle, PpOracle};
use detlimits::kernels::{PpKernel, SchurKernel};
use detlimits::specialfn::{GCoefficients, QParam};

fn main() -> detlimits::Result<()> {
    let theta = 0.8;
    let oracle = PlancherelOracle::new(theta, (-3, 2), 24)?;
    let k = SchurKernel::new(GCoefficients::plancherel(1.0), theta, QuadSettings::default())?;
    for m in [vec![-1], vec![0], vec![-2, 0], vec![-3, -1, 1]] {
        let p = Pattern::new(m)?;
        println!("Plancherel θ={theta} {p}: det {:.12}  enumeration {:.12}", pattern_probability(&k, &p)?, oracle.expectation(&p)?);
    }
    let q = 0.2;
    let window = PpWindow { t_min: -1, t_max: 1, h2_min: -3, h2_max: 3 };
    let oracle = PpOracle::new(window, 20)?;
    let k = PpKernel::new(QParam::from_q(q)?, QuadSettings::default())?;
    for m in [vec![SitePP::new(0, -1)], vec![SitePP::new(-1, 0), SitePP::new(1, 0)], vec![SitePP::new(0, 1)]] {
        let p = Pattern::new(m)?;
        let (v, tail) = oracle.expectation(q, &p)?;
        println!("plane partitions q={q} {p}: det {:.12}  enumeration {v:.12} (tail {tail:.1e})", pattern_probability(&k, &p)?);
    }
    Ok(())
}
