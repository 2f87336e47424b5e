use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identity of the generator behind [`generate_workload`], recorded in
/// benchmark metadata.
pub const WORKLOAD_GENERATOR: &str = "rand_chacha::ChaCha8Rng::seed_from_u64, stream 0";

/// Bytes per MB in every size and throughput figure (binary megabyte).
pub const MIB: u64 = 1 << 20;

/// Pseudorandom benchmark input; `data` is a pure function of
/// `(size_bytes, seed)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Workload {
    pub size_bytes: u64,
    pub seed: u64,
    pub data: Vec<u8>,
}

impl std::fmt::Debug for Workload {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workload")
            .field("size_bytes", &self.size_bytes)
            .field("seed", &self.seed)
            .finish_non_exhaustive()
    }
}

pub fn generate_workload(size_bytes: u64, seed: u64) -> Workload {
    assert!(size_bytes > 0, "workload size must be positive");
    let mut data = vec![0u8; size_bytes as usize];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut data);
    Workload {
        size_bytes,
        seed,
        data,
    }
}
