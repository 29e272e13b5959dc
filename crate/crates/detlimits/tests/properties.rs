use detlimits::combinatorics::{pp_map, shur_map, Partition, Pattern, PlanePartition, PpWindow, SitePP};
use detlimits::contour::QuadSettings;
use detlimits::dpp::{pattern_probability, GlauberChain, RngSeed};
use detlimits::kernels::{CorrelationKernel, PpKernel, SchurKernel};
use detlimits::lln::round_half_down;
use detlimits::specialfn::{action_schur, q_pochhammer, GCoefficients, QParam};
use num_complex::Complex64;
use proptest::prelude::*;
use rustfft::FftPlanner;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..9, 0..8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// Random 4×4 plane partition: each entry is capped by its upper and left neighbours.
fn plane_partition() -> impl Strategy<Value = PlanePartition> {
    prop::collection::vec(prop::collection::vec(0u32..7, 4), 4).prop_map(|raw| {
        let mut m = vec![vec![0u32; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut v = raw[i][j];
                if i > 0 {
                    v = v.min(m[i - 1][j]);
                }
                if j > 0 {
                    v = v.min(m[i][j - 1]);
                }
                m[i][j] = v;
            }
        }
        PlanePartition::new(m).unwrap()
    })
}

fn symbol() -> impl Strategy<Value = GCoefficients> {
    prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), 1..3).prop_map(|c| {
        let mut c: Vec<Complex64> = c.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        // Keep the first coefficient away from zero so that the measure is not degenerate.
        c[0] += Complex64::new(0.3, 0.0);
        GCoefficients::new(c, 1.0).unwrap()
    })
}

/// Laurent coefficients of `f` on the unit circle by FFT; index `k` lives at `k mod n`.
fn laurent(f: impl Fn(Complex64) -> Complex64, n: usize) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..n).map(|j| f(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|v| v / n as f64).collect()
}

fn coeff(c: &[Complex64], k: i64) -> Complex64 {
    c[k.rem_euclid(c.len() as i64) as usize]
}

fn eval_g(g: &GCoefficients, z: Complex64) -> Complex64 {
    g.c.iter().enumerate().map(|(k, c)| {
        let zk = z.powi(k as i32 + 1);
        c * zk - c.conj() / zk
    }).sum()
}

proptest! {
    #[test]
    fn schur_points_strictly_decrease_and_carry_the_weight(l in partition()) {
        let n = l.weight() as i64;
        let w = (-(l.len() as i64) - n - 3, n + 1);
        let pts = shur_map(&l, w);
        prop_assert!(pts.windows(2).all(|p| p[0] < p[1]));
        let vac = shur_map(&Partition::empty(), w);
        prop_assert_eq!(pts.len(), vac.len());
        prop_assert_eq!(pts.iter().sum::<i64>() - vac.iter().sum::<i64>(), n);
        let c = l.conjugate();
        prop_assert_eq!(c.weight(), l.weight());
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn plane_partition_sites_are_admissible_and_carry_the_weight(pi in plane_partition()) {
        let window = PpWindow { t_min: -5, t_max: 5, h2_min: -40, h2_max: 40 };
        let pts = pp_map(&pi, &window);
        let vac = pp_map(&PlanePartition::empty(), &window);
        prop_assert!(pts.iter().all(|s| s.is_admissible()));
        prop_assert!(pts.windows(2).all(|p| p[0] < p[1]));
        prop_assert_eq!(pts.len(), vac.len());
        let sum = |v: &[SitePP]| v.iter().map(|s| s.h2).sum::<i64>();
        prop_assert_eq!(sum(&pts) - sum(&vac), 2 * pi.weight() as i64);
        for s in &vac {
            prop_assert_eq!((s.h2 + s.t.abs() + 1).rem_euclid(2), 0);
            prop_assert!(s.h2 < -s.t.abs());
        }
    }

    #[test]
    fn pattern_normal_form(v in prop::collection::vec(-20i64..20, 1..8), shift in -10i64..10) {
        let mut dedup = v.clone();
        dedup.sort_unstable();
        dedup.dedup();
        match Pattern::new(v.clone()) {
            Ok(p) => {
                prop_assert_eq!(dedup.len(), v.len());
                prop_assert_eq!(p.sites(), &dedup[..]);
                prop_assert_eq!(p.norm(), dedup.iter().map(|x| x.abs()).max().unwrap() as f64);
                prop_assert_eq!(p.translate(&shift).translate(&-shift), p);
            }
            Err(_) => prop_assert!(dedup.len() < v.len()),
        }
    }

    #[test]
    fn pochhammer_functional_equation(re in -4.0f64..4.0, im in -4.0f64..4.0, qi in 0usize..3) {
        let x = Complex64::new(re, im);
        prop_assume!(x.norm() <= 4.0);
        let q = [0.1, 0.5, 0.9][qi];
        let lhs = q_pochhammer(x, q);
        let rhs = (1.0 - x) * q_pochhammer(x * q, q);
        let scale = lhs.norm().max((1.0 - x).norm() * q_pochhammer(x * q, q).norm());
        prop_assert!((lhs - rhs).norm() <= 1e-13 * scale, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn schur_action_is_imaginary_on_the_circle(g in symbol(), u in -1.0f64..1.0, th in -3.1f64..3.1) {
        let s = action_schur(&g, u, Complex64::from_polar(1.0, th)).unwrap();
        prop_assert!(s.re.abs() < 1e-13);
    }

    #[test]
    fn round_half_down_is_a_nearest_integer(x in -1e6f64..1e6) {
        let r = round_half_down(x) as f64;
        prop_assert!(x - 0.5 <= r && r < x + 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schur_kernel_matches_fft_series(g in symbol(), alpha in 0.5f64..4.0, x in -4i64..5, y in -4i64..5) {
        // K(x, y) = Σ_{n ≥ 0} [z^{x+n+1}] e^{αG} · [w^{−y−n−1}] e^{−αG}.
        let n = 512;
        let up = laurent(|z| (alpha * eval_g(&g, z)).exp(), n);
        let down = laurent(|z| (-alpha * eval_g(&g, z)).exp(), n);
        let series: Complex64 = (0..200).map(|k| coeff(&up, x + k + 1) * coeff(&down, -y - k - 1)).sum();
        let k = SchurKernel::new(g, alpha, QuadSettings::default()).unwrap();
        let v = k.entry(x, y).unwrap();
        prop_assert!((v - series).norm() < 1e-9, "{} vs {}", v, series);
    }

    #[test]
    fn schur_kernel_is_hermitian_with_bounded_diagonal(g in symbol(), alpha in 0.5f64..8.0, a in -6i64..2) {
        let k = SchurKernel::new(g, alpha, QuadSettings::default()).unwrap();
        let sites: Vec<i64> = (a..a + 5).collect();
        let m = k.block(&sites, &sites).unwrap();
        for i in 0..5 {
            let d = m.get(i, i);
            prop_assert!(d.re >= -1e-8 && d.re <= 1.0 + 1e-8 && d.im.abs() < 1e-9);
            for j in 0..5 {
                prop_assert!((m.get(i, j) - m.get(j, i).conj()).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn pattern_probability_decreases_under_inclusion(theta in 0.2f64..3.0, bits in 1u32..128, extra in 0u32..128) {
        let k = SchurKernel::new(GCoefficients::plancherel(1.0), theta, QuadSettings::default()).unwrap();
        let sites = |mask: u32| -> Vec<i64> { (0..7).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 - 4).collect() };
        let small = Pattern::new(sites(bits)).unwrap();
        let large = Pattern::new(sites(bits | extra)).unwrap();
        let ps = pattern_probability(&k, &small).unwrap();
        let pl = pattern_probability(&k, &large).unwrap();
        prop_assert!(pl <= ps + 1e-9);
        prop_assert!(pl >= -1e-9);
    }

    #[test]
    fn pp_kernel_diagonal_is_a_probability(q in 0.05f64..0.6, t in -3i64..4, k in 0i64..4) {
        let site = SitePP::new(t, -t.abs() - 1 + 2 * (k - 1));
        let kern = PpKernel::new(QParam::from_q(q).unwrap(), QuadSettings::default()).unwrap();
        let d = kern.entry(site, site).unwrap();
        prop_assert!(d.re >= -1e-8 && d.re <= 1.0 + 1e-8 && d.im.abs() < 1e-8);
    }

    #[test]
    fn glauber_moves_change_the_weight_by_at_most_one(q in 0.05f64..0.6, seed in 0u64..1000) {
        let mut rng = RngSeed::new(seed, 0).rng();
        let mut chain = GlauberChain::new(q).unwrap();
        let mut w = chain.weight();
        for _ in 0..2000 {
            chain.step(&mut rng);
            let nw = chain.weight();
            prop_assert!(nw.abs_diff(w) <= 1);
            w = nw;
        }
        prop_assert_eq!(chain.state().weight(), w);
    }
}
