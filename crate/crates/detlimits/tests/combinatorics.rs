use std::collections::HashMap;

use detlimits::combinatorics::{
    enumerate_partitions, enumerate_plane_partitions, partition_counts, plancherel_dim, plane_partition_counts, pp_map,
    rsk_shape, shur_map, Partition, Pattern, PlanePartition, PpWindow, SitePP,
};

/// `p(n)` by the recursion on the largest part.
fn partitions_oracle(n: usize) -> Vec<u64> {
    // table[k][m]: partitions of m with parts ≤ k.
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for k in 1..=n {
        for m in 1..=n {
            table[k][m] = table[k - 1][m] + if m >= k { table[k][m - k] } else { 0 };
        }
    }
    (0..=n).map(|m| table[n][m]).collect()
}

/// Coefficients of `∏(1 − qⁿ)^{−n}` by repeated multiplication with `1/(1 − qⁿ)`.
fn macmahon_oracle(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for _ in 0..k {
            for m in k..=n {
                c[m] += c[m - k];
            }
        }
    }
    c
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn figure_two() -> PlanePartition {
    "4,3,2,1,1;3,2,1;1".parse().unwrap()
}

#[test]
fn shur_map_of_young_diagram() {
    let l: Partition = "4,2,2,1".parse().unwrap();
    assert_eq!(shur_map(&l, (-8, 8)), vec![-8, -7, -6, -5, -3, -1, 0, 3]);
}

#[test]
fn shur_map_of_empty_partition() {
    assert_eq!(shur_map(&Partition::empty(), (-3, 3)), vec![-3, -2, -1]);
    assert_eq!(shur_map(&Partition::new(vec![1]).unwrap(), (0, 0)), vec![0]);
    assert!(shur_map(&Partition::empty(), (3, 2)).is_empty());
}

#[test]
fn shur_points_strictly_decrease() {
    for l in enumerate_partitions(8) {
        let pts: Vec<i64> = (1..=l.len() as i64 + 3).map(|i| l.part(i as usize) as i64 - i).collect();
        assert!(pts.windows(2).all(|w| w[0] > w[1]), "{l}");
    }
}

#[test]
fn pp_map_of_figure_two() {
    let pi = figure_two();
    let w = PpWindow { t_min: -5, t_max: 5, h2_min: -12, h2_max: 12 };
    let sites = pp_map(&pi, &w);
    assert!(sites.contains(&SitePP::new(0, 7)));
    assert!(sites.contains(&SitePP::new(-4, -3)));
}

#[test]
fn pp_map_of_empty_plane_partition_is_the_frozen_tail() {
    let w = PpWindow { t_min: -3, t_max: 3, h2_min: -9, h2_max: 5 };
    let sites = pp_map(&PlanePartition::empty(), &w);
    assert!(sites.contains(&SitePP::new(0, -1)));
    assert!(!sites.contains(&SitePP::new(0, 1)));
    let mut expect = Vec::new();
    for t in -3i64..=3 {
        // (t, −|t|/2 − k − 1/2) for k ≥ 0.
        let mut h2 = -t.abs() - 1;
        while h2 >= -9 {
            expect.push(SitePP::new(t, h2));
            h2 -= 2;
        }
    }
    expect.sort();
    assert_eq!(sites, expect);
}

#[test]
fn partition_enumeration_counts() {
    let oracle = partitions_oracle(10);
    let mut counts = vec![0u64; 11];
    for l in enumerate_partitions(10) {
        counts[l.weight() as usize] += 1;
    }
    assert_eq!(counts, oracle);
    assert_eq!(counts[10], 42);
    assert_eq!(enumerate_partitions(4).count(), 12);
    assert_eq!(enumerate_partitions(0).collect::<Vec<_>>(), vec![Partition::empty()]);
    let euler: Vec<u64> = partition_counts(10).into_iter().map(|v| v as u64).collect();
    assert_eq!(euler, oracle);
}

#[test]
fn partition_enumeration_has_no_duplicates() {
    let all: Vec<Partition> = enumerate_partitions(9).collect();
    let mut seen = std::collections::HashSet::new();
    for l in &all {
        assert!(seen.insert(l.clone()), "duplicate {l}");
    }
}

#[test]
fn plane_partition_counts_match_macmahon() {
    let oracle = macmahon_oracle(12);
    let mut counts = vec![0u64; 13];
    for pi in enumerate_plane_partitions(12) {
        counts[pi.weight() as usize] += 1;
    }
    assert_eq!(counts, oracle);
    assert_eq!(counts[2], 3);
    assert_eq!(counts[6], 48);
    let rec: Vec<u64> = plane_partition_counts(12).into_iter().map(|v| v as u64).collect();
    assert_eq!(rec, oracle);
    let small: Vec<PlanePartition> = enumerate_plane_partitions(1).collect();
    assert_eq!(small.len(), 2);
    assert!(small.contains(&PlanePartition::empty()));
    assert!(small.contains(&"1".parse().unwrap()));
}

#[test]
fn plane_partitions_are_valid() {
    assert!(PlanePartition::new(vec![vec![1, 2]]).is_err());
    assert!(PlanePartition::new(vec![vec![1], vec![2]]).is_err());
    for pi in enumerate_plane_partitions(7) {
        let rows = pi.rows();
        for (i, row) in rows.iter().enumerate() {
            assert!(row.windows(2).all(|w| w[0] >= w[1]));
            if i + 1 < rows.len() {
                for (j, v) in rows[i + 1].iter().enumerate() {
                    assert!(*v <= row.get(j).copied().unwrap_or(0));
                }
            }
        }
    }
}

#[test]
fn hook_length_dimensions() {
    assert_eq!(plancherel_dim(&"1".parse().unwrap()), 1);
    assert_eq!(plancherel_dim(&"2,1".parse().unwrap()), 2);
    assert_eq!(plancherel_dim(&"3,2".parse().unwrap()), 5);
    for n in 0..=8u32 {
        let total: u128 = enumerate_partitions(n).filter(|l| l.weight() == n as u64).map(|l| plancherel_dim(&l).pow(2)).sum();
        let fact: u128 = (1..=n as u128).product();
        assert_eq!(total, fact, "n = {n}");
    }
}

#[test]
fn rsk_examples() {
    assert_eq!(rsk_shape::<i64>(&[]), Partition::empty());
    assert_eq!(rsk_shape(&[1, 2, 3, 4, 5]), "5".parse().unwrap());
    assert_eq!(rsk_shape(&[3, 1, 2]), "2,1".parse().unwrap());
    assert_eq!(rsk_shape(&[5, 4, 3, 2, 1]), "1,1,1,1,1".parse().unwrap());
}

#[test]
fn rsk_pushes_uniform_permutations_to_plancherel() {
    for n in 1..=5 {
        let mut counts: HashMap<Partition, u128> = HashMap::new();
        let perms = all_permutations(n);
        for p in &perms {
            let shape = rsk_shape(p);
            assert_eq!(shape.weight(), n as u64);
            *counts.entry(shape).or_default() += 1;
        }
        for (shape, c) in counts {
            assert_eq!(c, plancherel_dim(&shape).pow(2), "shape {shape}");
        }
    }
}

#[test]
fn rsk_first_row_is_longest_increasing_subsequence() {
    for p in all_permutations(6) {
        let mut lis = vec![1usize; p.len()];
        for i in 0..p.len() {
            for j in 0..i {
                if p[j] < p[i] {
                    lis[i] = lis[i].max(lis[j] + 1);
                }
            }
        }
        assert_eq!(rsk_shape(&p).part(1) as usize, *lis.iter().max().unwrap());
    }
}

#[test]
fn text_round_trips() {
    let l: Partition = "4,2,2,1".parse().unwrap();
    assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    let pi = figure_two();
    assert_eq!(pi.to_string().parse::<PlanePartition>().unwrap(), pi);
    assert_eq!("0:-1/2".parse::<SitePP>().unwrap(), SitePP::new(0, -1));
    assert_eq!("1:0.5".parse::<SitePP>().unwrap(), SitePP::new(1, 1));
    assert!("4,5".parse::<Partition>().is_err());
}

#[test]
fn pattern_norm_and_duplicates() {
    assert!(Pattern::new(vec![1i64, 1]).is_err());
    let m = Pattern::new(vec![3i64, -5, 0]).unwrap();
    assert_eq!(m.sites(), &[-5, 0, 3]);
    assert_eq!(m.norm(), 5.0);
    let p = Pattern::new(vec![SitePP::new(-1, 3), SitePP::new(2, -1)]).unwrap();
    assert_eq!(p.norm(), 2.0);
    assert_eq!(Pattern::<i64>::empty().norm(), 0.0);
}
