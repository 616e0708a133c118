//! Fixed workloads shared by the benchmarks in `benches/`.

use tilegeo::gg::{generate_sized, normalize, GeoInstance};
use tilegeo::reduce::reduce;
use tilegeo::Board;

/// A normalized instance with exactly `vertices` vertices.
pub fn instance(vertices: usize, seed: u64) -> GeoInstance {
    normalize(&generate_sized(vertices, seed).expect("generator succeeds")).expect("generated instances normalize")
}

/// The reduced board of [`instance`].
pub fn reduced_board(vertices: usize, seed: u64) -> Board {
    reduce(&instance(vertices, seed))
        .expect("generated instances reduce")
        .board
}
