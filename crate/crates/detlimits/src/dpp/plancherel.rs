use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::combinatorics::{rsk_shape, Partition};
use crate::error::{Error, Result};

/// Poissonized Plancherel measure `e^{−θ²} θ^{2|λ|} (dim λ / |λ|!)²`.
///
/// `n ~ Poisson(θ²)`, then the RSK shape of a uniform permutation of `n`.
pub fn sample_plancherel<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> Result<Partition> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Parameter("theta".into(), format!("must be finite and ≥ 0, got {theta}")));
    }
    if theta == 0.0 {
        return Ok(Partition::empty());
    }
    let pois = Poisson::new(theta * theta).map_err(|e| Error::Parameter("theta".into(), e.to_string()))?;
    let n = pois.sample(rng) as u32;
    let mut perm: Vec<u32> = (0..n).collect();
    perm.shuffle(rng);
    Ok(rsk_shape(&perm))
}
