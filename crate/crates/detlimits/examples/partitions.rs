//! Partitions and plane partitions as point configurations.
//!
//! Run with `cargo run --example partitions`.

use detlimits::combinatorics::{
    partition_counts, plane_partition_counts, pp_map, rsk_shape, shur_map, Partition, PlanePartition, PpWindow,
};

fn main() -> detlimits::Result<()> {
    let lambda: Partition = "4,2,2,1".parse()?;
    println!("λ = {lambda}, |λ| = {}, λ' = {}", lambda.weight(), lambda.conjugate());
    println!("{{λ_i − i}} ∩ [−8, 4] = {:?}", shur_map(&lambda, (-8, 4)));

    let word = [3, 1, 4, 1, 5, 9, 2, 6];
    println!("RSK shape of {word:?}: {}", rsk_shape(&word));

    let pi: PlanePartition = "4,3,2,1,1;3,2,1;1".parse()?;
    let window = PpWindow { t_min: -2, t_max: 2, h2_min: -6, h2_max: 8 };
    let sites: Vec<String> = pp_map(&pi, &window).iter().map(|s| s.to_string()).collect();
    println!("π = {pi}, |π| = {}", pi.weight());
    println!("sites of π in the window: {}", sites.join(" "));

    println!("p(n), n ≤ 10:  {:?}", partition_counts(10));
    println!("pp(n), n ≤ 10: {:?}", plane_partition_counts(10));
    Ok(())
}
