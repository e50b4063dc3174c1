//! Shared fixtures for the benchmarks.

use chipfire::exact::Int;
use chipfire::{sampling, ConfigS, IntMatrix, Pairing, RatMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn det4_pairing() -> Pairing {
    let l = IntMatrix::from_i64s(&[&[2, -1, 1], &[-1, 2, -1], &[1, -1, 2]]);
    let m = RatMatrix::from_i64s(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
    Pairing::new(l, m).unwrap()
}

/// A member of the zero class sitting `height` witness translations above
/// the origin, so stabilization has real work to do.
pub fn tall_config(p: &Pairing, height: i64) -> ConfigS {
    let lu = p.l().mul_vec(&p.witness().u).unwrap();
    ConfigS::new(lu.iter().map(|e| e * Int::from(height)).collect())
}

/// A seeded random pairing of the given dimension with |det L| in
/// [det_min, det_max].
pub fn seeded_pairing(seed: u64, n: usize, det_min: u64, det_max: u64) -> Pairing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampling::random_pairing(&mut rng, n, 3, det_min, det_max)
}
