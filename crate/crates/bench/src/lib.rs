//! Fixed inputs shared by the benchmarks.

use contour_core::grassmann::Arrangement;
use contour_core::presets::{random_generic_arrangement, random_matrix};
use contour_core::RationalMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

pub fn matrices(r: usize, n: usize, count: usize) -> Vec<RationalMatrix> {
    let mut rng = rng();
    (0..count).map(|_| random_matrix(r, n, &mut rng)).collect()
}

pub fn arrangement(r: usize, n: usize) -> Arrangement {
    random_generic_arrangement(r, n, &mut rng())
}
