use std::f64::consts::PI;

use detlimits::specialfn::{action_pp, action_schur, dilog1m, g_eval, phi, q_pochhammer, zg_prime, GCoefficients, QParam};
use detlimits::Error;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn direct_pochhammer(x: Complex64, q: f64, terms: usize) -> Complex64 {
    (0..terms).fold(c(1.0, 0.0), |acc, k| acc * (1.0 - x * q.powi(k as i32)))
}

/// `Li₂(z) = −∫₀¹ log(1 − z s)/s ds` by composite Gauss–Legendre on a graded mesh.
fn li2_quadrature(z: Complex64) -> Complex64 {
    let nodes = [
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let g = |s: f64| {
        if s == 0.0 {
            -z
        } else {
            (1.0 - z * s).ln() / s
        }
    };
    let panels = 4000;
    let mut acc = c(0.0, 0.0);
    for p in 0..panels {
        // Panels cluster toward s = 1 where log(1 − z s) may be steep.
        let a = 1.0 - (1.0 - p as f64 / panels as f64).powi(2);
        let b = 1.0 - (1.0 - (p + 1) as f64 / panels as f64).powi(2);
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in nodes {
            acc += g(m + h * x) * w * h;
        }
    }
    -acc
}

fn sample_gs() -> Vec<GCoefficients> {
    vec![
        GCoefficients::plancherel(1.0),
        GCoefficients::new(vec![c(0.0, 0.0), c(0.5, 0.0)], 1.0).unwrap(),
        GCoefficients::new(vec![c(0.7, 0.2), c(-0.1, 0.3), c(0.05, 0.0)], 0.5).unwrap(),
    ]
}

#[test]
fn g_eval_examples() {
    let g = GCoefficients::plancherel(1.0);
    assert!((g_eval(&g, c(0.0, 1.0)).unwrap() - c(0.0, 2.0)).norm() < 1e-15);
    assert!(g_eval(&g, c(1.0, 0.0)).unwrap().norm() < 1e-15);
    for k in 0..32 {
        let p = 2.0 * PI * k as f64 / 32.0;
        let v = g_eval(&g, Complex64::from_polar(1.0, p)).unwrap();
        assert!((v - c(0.0, 2.0 * p.sin())).norm() < 1e-14);
    }
    assert!(matches!(g_eval(&g, c(10.0, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn g_is_imaginary_on_the_circle() {
    for g in sample_gs() {
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0);
            assert!(g_eval(&g, z).unwrap().re.abs() < 1e-14);
        }
    }
}

#[test]
fn zg_prime_examples() {
    let g = GCoefficients::plancherel(1.0);
    assert!((zg_prime(&g, c(1.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
    assert!(zg_prime(&g, c(0.0, 1.0)).unwrap().abs() < 1e-15);
    let g2 = GCoefficients::new(vec![c(0.0, 0.0), c(0.5, 0.0)], 1.0).unwrap();
    assert!((zg_prime(&g2, c(1.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
    assert!(matches!(zg_prime(&g, c(1.1, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn zg_prime_matches_finite_difference() {
    for g in sample_gs() {
        for k in 0..16 {
            let z = Complex64::from_polar(1.0, 0.3 + k as f64 * 0.37);
            let h = 1e-6;
            let d = (g_eval(&g, z * (1.0 + h)).unwrap() - g_eval(&g, z * (1.0 - h)).unwrap()) / (2.0 * h);
            assert!((zg_prime(&g, z).unwrap() - d.re).abs() < 1e-8);
        }
    }
}

#[test]
fn pochhammer_examples() {
    assert_eq!(q_pochhammer(c(0.0, 0.0), 0.3), c(1.0, 0.0));
    assert!((q_pochhammer(c(0.4, 0.2), 0.0) - c(0.6, -0.2)).norm() < 1e-16);
    let v = q_pochhammer(c(0.5, 0.0), 0.5);
    let d = direct_pochhammer(c(0.5, 0.0), 0.5, 60);
    assert!((v - d).norm() < 1e-14 * d.norm());
}

#[test]
fn pochhammer_functional_equation() {
    for &q in &[0.1, 0.5, 0.9] {
        for k in 0..24 {
            let x = Complex64::from_polar(0.2 + 3.8 * k as f64 / 23.0, 0.7 * k as f64);
            let lhs = q_pochhammer(x, q);
            let rhs = (1.0 - x) * q_pochhammer(x * q, q);
            assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1e-300), "q={q}, x={x}");
        }
    }
}

#[test]
fn phi_examples() {
    let q = QParam::from_q(0.25).unwrap();
    assert!((phi(0, c(1.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-15);
    assert!((phi(0, c(-1.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-15);
    let z = c(2.0, 0.0);
    let sq = q.q.sqrt();
    let expect = direct_pochhammer(sq / z, q.q, 60) / direct_pochhammer(sq * q.q * z, q.q, 60);
    assert!((phi(1, z, &q).unwrap() - expect).norm() < 1e-13);
    let z = c(3.0, 0.5);
    let expect_neg = direct_pochhammer(sq * q.q.powi(2) / z, q.q, 60) / direct_pochhammer(sq * z, q.q, 60);
    assert!((phi(-2, z, &q).unwrap() - expect_neg).norm() < 1e-13);
}

#[test]
fn phi_pole_is_reported() {
    let q = QParam::from_q(0.25).unwrap();
    // (q^{1/2}·z; q)_∞ vanishes at z = q^{−1/2}.
    assert!(matches!(phi(-1, c(2.0, 0.0), &q), Err(Error::Pole(_))));
}

#[test]
fn qparam_validation() {
    assert!(QParam::from_q(1.5).is_err());
    assert!(QParam::from_q(0.0).is_err());
    assert!(QParam::from_r(-0.1).is_err());
    let q = QParam::from_r(0.2).unwrap();
    assert!((q.q - (-0.2f64).exp()).abs() < 1e-16);
}

#[test]
fn dilog_examples() {
    assert!(dilog1m(c(0.0, 0.0)).unwrap().norm() < 1e-16);
    assert!((dilog1m(c(1.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-13);
    // Alternating Σ(−1)ⁿ/n² summed in pairs with a midpoint tail estimate.
    let mut s = 0.0;
    for n in 1..=1_000_000u64 {
        let t = 1.0 / (n as f64 * n as f64);
        s += if n % 2 == 1 { -t } else { t };
    }
    s -= 0.5 / (1_000_001f64 * 1_000_001f64);
    assert!((dilog1m(c(-1.0, 0.0)).unwrap().re - s).abs() < 1e-12);
    assert!((dilog1m(c(-1.0, 0.0)).unwrap().re + PI * PI / 12.0).abs() < 1e-13);
}

#[test]
fn dilog_matches_path_integral() {
    let pts = [
        c(0.3, 0.1),
        c(-0.7, 0.4),
        c(0.9, -0.3),
        c(1.5, 0.8),
        c(-3.0, 0.5),
        c(0.2, 2.5),
        c(5.0, -4.0),
        c(0.5, 0.86),
        c(-0.4, -1.1),
    ];
    for z in pts {
        let a = dilog1m(z).unwrap();
        let b = li2_quadrature(z);
        assert!((a - b).norm() < 1e-11 * b.norm().max(1.0), "z={z}: {a} vs {b}");
    }
}

#[test]
fn dilog_cut_is_reported() {
    assert!(matches!(dilog1m(c(2.0, 0.0)), Err(Error::Cut(_))));
}

#[test]
fn pochhammer_dilog_estimate_stays_bounded() {
    for z in [c(0.5, 0.0), c(0.3, 0.4), c(-0.6, 0.2)] {
        let mut prev: Option<f64> = None;
        for r in [0.1, 0.05, 0.025] {
            let q = (-(r as f64)).exp();
            // Factor-wise logarithm; the principal log of the product may wrap by 2πi.
            let log_poch: Complex64 = (0..20000).map(|k| (1.0 - z * q.powi(k)).ln()).sum();
            assert!((log_poch.exp() - q_pochhammer(z, q)).norm() < 1e-10 * q_pochhammer(z, q).norm());
            let d = (-log_poch - dilog1m(z).unwrap() / r).norm();
            assert!(d < 2.0, "z={z}, r={r}: {d}");
            if let Some(p) = prev {
                assert!(d <= p * 1.05 + 1e-3, "z={z}, r={r}: {d} grew from {p}");
            }
            prev = Some(d);
        }
    }
}

#[test]
fn action_schur_is_imaginary_on_the_circle() {
    for g in sample_gs() {
        for u in [-1.0, 0.0, 0.4, 1.3] {
            for k in 0..256 {
                let p = -PI + 2.0 * PI * (k as f64 + 0.5) / 256.0;
                let s = action_schur(&g, u, Complex64::from_polar(1.0, p)).unwrap();
                assert!(s.re.abs() < 1e-12);
            }
        }
    }
    let g = GCoefficients::plancherel(1.0);
    let z = Complex64::from_polar(1.0, 0.8);
    assert!((action_schur(&g, 0.0, z).unwrap() - c(0.0, 2.0 * 0.8f64.sin())).norm() < 1e-14);
    assert!(action_schur(&g, 1.0, Complex64::from_polar(1.0, PI / 4.0)).unwrap().re.abs() < 1e-12);
    assert!(matches!(action_schur(&g, 1.0, c(-1.0, 0.0)), Err(Error::Cut(_))));
}

#[test]
fn action_pp_real_part_is_constant_on_the_circle() {
    let z = Complex64::from_polar(1.0, PI / 3.0);
    assert!(action_pp(z, 0.0, 0.0).unwrap().re.abs() < 1e-10);
    for k in 0..20 {
        let z = Complex64::from_polar(0.5f64.exp(), -PI + 2.0 * PI * (k as f64 + 0.5) / 20.0);
        assert!((action_pp(z, 1.0, 0.0).unwrap().re + 0.25).abs() < 1e-10);
    }
    for (tau, chi) in [(0.5, 0.0), (1.0, 0.3), (2.0, -0.5)] {
        let target = -(tau / 2.0) * (tau / 2.0 + chi);
        for k in 0..256 {
            let p = -PI + 2.0 * PI * (k as f64 + 0.5) / 256.0;
            let z = Complex64::from_polar((tau / 2.0f64).exp(), p);
            let s = action_pp(z, tau, chi).unwrap();
            assert!((s.re - target).abs() < 1e-10, "(τ,χ)=({tau},{chi}) φ={p}: {}", s.re);
        }
    }
}

#[test]
fn action_pp_matches_series_composition() {
    // At z = 2, τ = χ = 0: −dilog(1 − 1/2) + dilog(1 − 2), with dilog(1 − x) = Li₂(x).
    let li2_half = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
    let li2_two = c(PI * PI / 4.0, 0.0);
    let s = action_pp(c(2.0, 0.0), 0.0, 0.0).unwrap();
    // Re Li₂(2) = π²/4 on either side of the cut.
    assert!((s.re - (-li2_half + li2_two.re)).abs() < 1e-12);
    let off = action_pp(c(2.0, 1e-9), 0.0, 0.0).unwrap();
    assert!((s - off).norm() < 1e-6);
    assert!(matches!(action_pp(c(-1.0, 0.0), 0.0, 0.0), Err(Error::Cut(_))));
}
