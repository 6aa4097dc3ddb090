use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spacetime::SpacetimePoint;

pub const DEFAULT_SEED: u64 = 42;

/// `n` points with `|t| ≤ radius` and `|r| ≤ radius`, uniform in each.
pub fn sample_points(n: usize, radius: f64, seed: u64) -> Vec<SpacetimePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let t = rng.gen_range(-radius..=radius);
            loop {
                let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-radius..=radius));
                if v.iter().map(|c| c * c).sum::<f64>() <= radius * radius {
                    break SpacetimePoint::at_time(t, v);
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = sample_points(200, 2.0, 7);
        assert_eq!(a, sample_points(200, 2.0, 7));
        assert_ne!(a, sample_points(200, 2.0, 8));
        assert!(a.iter().all(|p| p.t.abs() <= 2.0 && p.r2() <= 4.0));
    }
}
