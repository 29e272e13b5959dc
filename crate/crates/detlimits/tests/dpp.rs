use std::collections::HashMap;

use detlimits::combinatorics::{shur_map, Pattern, PlanePartition, PpWindow, SitePP};
use detlimits::contour::QuadSettings;
use detlimits::dpp::{
    default_burn_in, det, expected_weight, geweke_z, macmahon_vacuum, oracle_expectation, pattern_covariance,
    pattern_probability, plancherel_tail, pp_tail, sample_plancherel, sample_window, submatrix, GlauberChain, OracleModel,
    OraclePattern, PlancherelOracle, RngSeed, WindowConfig, WindowSampler,
};
use detlimits::kernels::{CorrelationKernel, PpKernel, SchurKernel};
use detlimits::specialfn::{GCoefficients, QParam};
use detlimits::Error;
use num_complex::Complex64;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn plancherel(theta: f64) -> SchurKernel {
    SchurKernel::new(GCoefficients::plancherel(1.0), theta, QuadSettings::default()).unwrap()
}

fn pat(v: &[i64]) -> Pattern<i64> {
    Pattern::new(v.to_vec()).unwrap()
}

/// Pearson statistic with bins of expected count below 5 pooled; returns the p-value.
fn chi_square_p(observed: &[u64], probs: &[f64], total: u64) -> f64 {
    let mut stat = 0.0;
    let mut bins = 0usize;
    let (mut pool_o, mut pool_e) = (0.0, 0.0);
    for (o, p) in observed.iter().zip(probs) {
        let e = p * total as f64;
        if e < 5.0 {
            pool_o += *o as f64;
            pool_e += e;
        } else {
            stat += (*o as f64 - e).powi(2) / e;
            bins += 1;
        }
    }
    if pool_e > 0.0 {
        stat += (pool_o - pool_e).powi(2) / pool_e.max(1e-300);
        bins += 1;
    }
    1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn determinant_and_submatrix() {
    let a: Vec<Complex64> = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    assert!((det(&a, 3) - 18.0).norm() < 1e-13);
    assert_eq!(det(&[], 0), Complex64::new(1.0, 0.0));
    let s = submatrix(&a, 3, &[0, 2]);
    assert!((det(&s, 2) - 8.0).norm() < 1e-14);
    let sing: Vec<Complex64> = [1.0, 2.0, 2.0, 4.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    assert!(det(&sing, 2).norm() < 1e-14);
}

#[test]
fn pattern_probability_basics() {
    let k = plancherel(0.3);
    assert_eq!(pattern_probability(&k, &Pattern::empty()).unwrap(), 1.0);
    let single = pattern_probability(&k, &pat(&[-1])).unwrap();
    assert!((single - k.entry(-1, -1).unwrap().re).abs() < 1e-15);
}

#[test]
fn plancherel_pattern_probability_matches_oracle() {
    let k = plancherel(0.3);
    let oracle = PlancherelOracle::new(0.3, (-4, 2), 12).unwrap();
    for m in [vec![-1, -2], vec![0], vec![-3, 1], vec![-4, -1, 0]] {
        let v = pattern_probability(&k, &pat(&m)).unwrap();
        assert!((v - oracle.expectation(&pat(&m)).unwrap()).abs() < 1e-6, "{m:?}");
    }
}

#[test]
fn covariance_examples() {
    let k = plancherel(0.3);
    let oracle = PlancherelOracle::new(0.3, (-4, 2), 12).unwrap();
    let (a, b) = (pat(&[-1]), pat(&[-3]));
    let cov = pattern_covariance(&k, &a, &b).unwrap();
    let o = oracle.expectation(&pat(&[-3, -1])).unwrap() - oracle.expectation(&a).unwrap() * oracle.expectation(&b).unwrap();
    assert!((cov - o).abs() < 1e-6);
    let kxy = k.entry(-1, -3).unwrap();
    let kyx = k.entry(-3, -1).unwrap();
    assert!((cov + (kxy * kyx).re).abs() < 1e-12);
    assert!(matches!(pattern_covariance(&k, &pat(&[0, 1]), &pat(&[1])), Err(Error::Overlap(_))));
}

#[test]
fn probability_is_monotone_under_inclusion() {
    let k = plancherel(1.5);
    let sites = [-3i64, -1, 0, 2];
    for mask in 1u32..16 {
        let m: Vec<i64> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| sites[i]).collect();
        let pm = pattern_probability(&k, &pat(&m)).unwrap();
        for extra in 0..4 {
            if mask >> extra & 1 == 0 {
                let mut big = m.clone();
                big.push(sites[extra]);
                let pb = pattern_probability(&k, &pat(&big)).unwrap();
                assert!(pb <= pm + 1e-9);
            }
        }
    }
}

#[test]
fn oracle_examples() {
    let model = OracleModel::Plancherel { theta: 0.3 };
    let (v, tail) = oracle_expectation(&model, &OraclePattern::Integer(Pattern::empty()), 12).unwrap();
    assert_eq!(v, 1.0);
    assert!(tail < 1e-15);
    assert!(plancherel_tail(0.3, 12) < 1e-15);
    assert!(pp_tail(0.2, 31) < 1e-15);
    assert!(pp_tail(0.2, 30) < 1e-14);
    assert!(matches!(PlancherelOracle::new(3.0, (-2, 2), 5), Err(Error::TailTooLarge { .. })));
}

#[test]
fn plancherel_oracle_total_mass() {
    // Summing the occupation law over every mask of a window recovers 1.
    let oracle = PlancherelOracle::new(0.8, (-2, 1), 20).unwrap();
    let p0 = oracle.expectation(&Pattern::empty()).unwrap();
    assert!((p0 - 1.0).abs() < 1e-12);
}

#[test]
fn pp_oracle_matches_kernel_on_small_window() {
    let q = 0.2;
    let k = PpKernel::new(QParam::from_q(q).unwrap(), QuadSettings::default()).unwrap();
    let model = OracleModel::PlanePartition { q };
    for m in [
        vec![SitePP::new(0, -1)],
        vec![SitePP::new(0, -1), SitePP::new(0, -3)],
        vec![SitePP::new(-1, 0), SitePP::new(1, 0)],
    ] {
        let p = Pattern::new(m).unwrap();
        let (o, tail) = oracle_expectation(&model, &OraclePattern::Plane(p.clone()), 24).unwrap();
        assert!(tail < 1e-11);
        assert!((pattern_probability(&k, &p).unwrap() - o).abs() < 1e-9);
    }
}

#[test]
fn window_config_queries() {
    let c = WindowConfig::from_points(vec![-2, -1, 0, 1], &[-1, 1]);
    assert_eq!(c.bit_string(), "0101");
    assert_eq!(c.points(), vec![-1, 1]);
    assert_eq!(c.get(&0), Some(false));
    assert_eq!(c.get(&5), None);
    assert!(c.contains_pattern(&pat(&[-1, 1])).unwrap());
    assert!(!c.contains_pattern(&pat(&[0])).unwrap());
    assert!(matches!(c.contains_pattern(&pat(&[7])), Err(Error::Coverage(_))));
}

#[test]
fn rng_streams_are_deterministic_and_distinct() {
    use rand::Rng;
    let a: Vec<u64> = (0..4).map(|_| 0).scan(RngSeed::new(9, 0).rng(), |r, _| Some(r.random())).collect();
    let b: Vec<u64> = (0..4).map(|_| 0).scan(RngSeed::new(9, 0).rng(), |r, _| Some(r.random())).collect();
    let c: Vec<u64> = (0..4).map(|_| 0).scan(RngSeed::new(9, 1).rng(), |r, _| Some(r.random())).collect();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn single_site_window_is_bernoulli() {
    let k = plancherel(0.7);
    let p = k.entry(0, 0).unwrap().re;
    let sampler = WindowSampler::new(&k, vec![0]).unwrap();
    let mut rng = RngSeed::new(1, 0).rng();
    let n = 100_000;
    let hits = (0..n).filter(|_| sampler.sample(&mut rng).unwrap().get(&0) == Some(true)).count();
    let sd = (p * (1.0 - p) / n as f64).sqrt();
    assert!((hits as f64 / n as f64 - p).abs() < 4.0 * sd);
}

#[test]
fn zero_symbol_samples_the_vacuum() {
    let g = GCoefficients::new(vec![Complex64::new(0.0, 0.0)], 1.0).unwrap();
    let k = SchurKernel::new(g, 1.0, QuadSettings::default()).unwrap();
    for s in 0..20 {
        let c = sample_window(&k, (-3..=3).collect(), &RngSeed::new(s, 0)).unwrap();
        assert_eq!(c.points(), vec![-3, -2, -1]);
    }
}

#[test]
fn exact_window_law_matches_inclusion_exclusion() {
    let k = plancherel(0.3);
    let window: Vec<i64> = vec![-2, -1, 0, 1];
    let sampler = WindowSampler::new(&k, window.clone()).unwrap();
    let probs = sampler.exact_probabilities().unwrap().to_vec();
    assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    // P(exactly S) = Σ_{T ⊇ S} (−1)^{|T∖S|} P(T ⊂ X).
    for s in 0u32..16 {
        let mut acc = 0.0;
        for t in 0u32..16 {
            if t & s == s {
                let m: Vec<i64> = (0..4).filter(|i| t >> i & 1 == 1).map(|i| window[i]).collect();
                let sign = if (t ^ s).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * pattern_probability(&k, &pat(&m)).unwrap();
            }
        }
        assert!((probs[s as usize] - acc).abs() < 1e-12, "mask {s:04b}");
    }
}

fn window_chi_square<K: CorrelationKernel>(k: &K, window: Vec<K::Site>, samples: u64, seed: u64) -> f64 {
    let sampler = WindowSampler::new(k, window.clone()).unwrap();
    let probs = sampler.exact_probabilities().unwrap().to_vec();
    let mut counts = vec![0u64; probs.len()];
    let mut rng = RngSeed::new(seed, 0).rng();
    for _ in 0..samples {
        let c = sampler.sample(&mut rng).unwrap();
        let mask = window.iter().enumerate().fold(0usize, |m, (i, s)| if c.get(s) == Some(true) { m | 1 << i } else { m });
        counts[mask] += 1;
    }
    chi_square_p(&counts, &probs, samples)
}

#[test]
fn schur_window_sampler_passes_chi_square() {
    let p = window_chi_square(&plancherel(0.3), vec![-4, -2, -1, 1], 100_000, 20240601);
    assert!(p > 1e-3, "p = {p}");
    let p = window_chi_square(&plancherel(2.0), vec![-1, 0, 1, 2], 100_000, 7);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn pp_window_sampler_passes_chi_square() {
    let k = PpKernel::new(QParam::from_q(0.4).unwrap(), QuadSettings::default()).unwrap();
    let window = vec![SitePP::new(-1, 0), SitePP::new(0, -1), SitePP::new(0, 1), SitePP::new(1, 0)];
    let p = window_chi_square(&k, window, 100_000, 11);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn every_subset_pattern_frequency_matches() {
    let k = plancherel(1.0);
    let window: Vec<i64> = vec![-2, -1, 0, 1];
    let sampler = WindowSampler::new(&k, window.clone()).unwrap();
    let mut rng = RngSeed::new(3, 0).rng();
    let n = 100_000u64;
    let configs: Vec<WindowConfig<i64>> = (0..n).map(|_| sampler.sample(&mut rng).unwrap()).collect();
    for mask in 1u32..16 {
        let m = pat(&(0..4).filter(|i| mask >> i & 1 == 1).map(|i| window[i]).collect::<Vec<_>>());
        let p = pattern_probability(&k, &m).unwrap();
        let hits = configs.iter().filter(|c| c.contains_pattern(&m).unwrap()).count() as f64;
        let sd = (p * (1.0 - p) / n as f64).sqrt().max(1e-12);
        assert!((hits / n as f64 - p).abs() < 4.5 * sd, "m = {m}");
    }
}

#[test]
fn plancherel_sampler_statistics() {
    let theta = 0.3f64;
    let n = 1_000_000u64;
    let mut rng = RngSeed::new(20240601, 0).rng();
    let mut size_counts = [0u64; 4];
    let mut minus_one = 0u64;
    for _ in 0..n {
        let l = sample_plancherel(theta, &mut rng).unwrap();
        if (l.weight() as usize) < 4 {
            size_counts[l.weight() as usize] += 1;
        }
        if shur_map(&l, (-1, -1)) == vec![-1] {
            minus_one += 1;
        }
    }
    let x = theta * theta;
    let mut fact = 1.0;
    for (k, &c) in size_counts.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let p = (-x).exp() * x.powi(k as i32) / fact;
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        let tol = (3.0 * sd).max(3.0 / n as f64);
        assert!((c as f64 / n as f64 - p).abs() < tol, "P(|λ|={k})");
    }
    let p = plancherel(theta).entry(-1, -1).unwrap().re;
    let sd = (p * (1.0 - p) / n as f64).sqrt();
    assert!((minus_one as f64 / n as f64 - p).abs() < 3.0 * sd);
}

#[test]
fn plancherel_sampler_at_zero_is_empty() {
    let mut rng = RngSeed::new(1, 0).rng();
    assert!(sample_plancherel(0.0, &mut rng).unwrap().is_empty());
    assert!(sample_plancherel(-1.0, &mut rng).is_err());
}

#[test]
fn glauber_moves_change_weight_by_at_most_one() {
    let mut chain = GlauberChain::new(0.5).unwrap();
    let mut rng = RngSeed::new(2, 0).rng();
    let mut trace = Vec::new();
    chain.run(50_000, &mut rng, Some(&mut trace));
    assert!(trace.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1));
    assert_eq!(chain.state().weight(), chain.weight());
    assert!(chain.acceptance_rate() > 0.0 && chain.acceptance_rate() < 1.0);
}

#[test]
fn glauber_chain_is_reversible_on_small_states() {
    let q = 0.3;
    let mut chain = GlauberChain::new(q).unwrap();
    let mut rng = RngSeed::new(5, 0).rng();
    chain.run(default_burn_in(q), &mut rng, None);
    let mut visits: HashMap<String, u64> = HashMap::new();
    let mut flows: HashMap<(String, String), u64> = HashMap::new();
    let mut prev = chain.state().to_string();
    let steps = 2_000_000u64;
    for _ in 0..steps {
        chain.step(&mut rng);
        let cur = chain.state().to_string();
        *visits.entry(cur.clone()).or_default() += 1;
        if cur != prev {
            *flows.entry((prev.clone(), cur.clone())).or_default() += 1;
        }
        prev = cur;
    }
    // Stationary ratios P(π)/P(∅) = q^{|π|} on the three weight-two states.
    let empty = visits[""] as f64;
    for s in ["2", "1,1", "1;1"] {
        let pi: PlanePartition = s.parse().unwrap();
        let ratio = visits[&pi.to_string()] as f64 / empty;
        let expect = q.powi(pi.weight() as i32);
        assert!((ratio - expect).abs() < 0.05 * expect, "{s}: {ratio} vs {expect}");
    }
    // Detailed balance: flows a→b and b→a agree within Poisson noise.
    for a in ["", "1", "2", "1,1", "1;1"] {
        for b in ["", "1", "2", "1,1", "1;1"] {
            let ab = *flows.get(&(a.to_string(), b.to_string())).unwrap_or(&0) as f64;
            let ba = *flows.get(&(b.to_string(), a.to_string())).unwrap_or(&0) as f64;
            if ab + ba > 0.0 {
                assert!((ab - ba).abs() < 4.0 * (ab + ba).sqrt() + 1.0, "{a} ↔ {b}: {ab} vs {ba}");
            }
        }
    }
}

#[test]
fn glauber_vacuum_probability_matches_macmahon() {
    let q = 0.2;
    let m = macmahon_vacuum(q);
    let mut chain = GlauberChain::new(q).unwrap();
    let mut rng = RngSeed::new(20240601, 0).rng();
    chain.run(default_burn_in(q), &mut rng, None);
    // Batch means absorb the autocorrelation of the indicator.
    let (batches, size) = (200usize, 5_000usize);
    let means: Vec<f64> = (0..batches)
        .map(|_| {
            let mut hits = 0usize;
            for _ in 0..size {
                chain.step(&mut rng);
                hits += (chain.weight() == 0) as usize;
            }
            hits as f64 / size as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    let se = (var / batches as f64).sqrt();
    assert!((mean - m).abs() < 3.0 * se, "{mean} vs {m} (se {se})");
}

#[test]
fn glauber_one_point_function_matches_kernel() {
    let q = 0.2;
    let k = PpKernel::new(QParam::from_q(q).unwrap(), QuadSettings::default()).unwrap();
    let site = SitePP::new(0, -1);
    let p = k.entry(site, site).unwrap().re;
    let mut chain = GlauberChain::new(q).unwrap();
    let mut rng = RngSeed::new(77, 0).rng();
    chain.run(default_burn_in(q), &mut rng, None);
    let window = PpWindow { t_min: 0, t_max: 0, h2_min: -1, h2_max: -1 };
    let (batches, size) = (200usize, 5_000usize);
    let means: Vec<f64> = (0..batches)
        .map(|_| {
            let mut hits = 0usize;
            for _ in 0..size {
                chain.step(&mut rng);
                hits += !detlimits::combinatorics::pp_map(&chain.state(), &window).is_empty() as usize;
            }
            hits as f64 / size as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    let se = (var / batches as f64).sqrt();
    assert!((mean - p).abs() < 3.0 * se, "{mean} vs {p} (se {se})");
}

#[test]
fn glauber_helpers() {
    // E|π| = Σ n² qⁿ/(1 − qⁿ) against a direct truncated sum.
    let q = 0.3f64;
    let direct: f64 = (1..200).map(|n| (n * n) as f64 * q.powi(n) / (1.0 - q.powi(n))).sum();
    assert!((expected_weight(q) - direct).abs() < 1e-12);
    let direct_m: f64 = (1..200).map(|n| (1.0 - q.powi(n)).powi(n)).product();
    assert!((macmahon_vacuum(q) - direct_m).abs() < 1e-14);
    assert!(default_burn_in(0.01) >= 1000);
    assert!(geweke_z(&[1.0; 10]).is_nan());
    let flat: Vec<f64> = (0..1000).map(|i| (i % 7) as f64).collect();
    assert!(geweke_z(&flat).abs() < 3.0);
    let drift: Vec<f64> = (0..1000).map(|i| i as f64).collect();
    assert!(geweke_z(&drift).abs() > 10.0);
    assert!(GlauberChain::new(1.0).is_err());
}
