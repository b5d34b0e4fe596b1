//! Deterministic seed derivation for independent random streams.
//!
//! Monte Carlo shards, annealing restarts and per-grid-point generators all
//! derive their seed as `derive_seed(master, index)`, so results are
//! reproducible and independent of execution order.

/// SplitMix64-style mix of a master seed and a stream index.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
