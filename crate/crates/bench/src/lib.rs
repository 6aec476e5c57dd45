//! Shared corpus builders for the benchmark targets.

use jones_core::generators::{gen_halin, gen_random_based, gen_wheel};
use jones_core::PlanarEmbeddedGraph;

/// A deterministic mixed corpus keyed by size class.
pub fn corpus(size: usize) -> Vec<PlanarEmbeddedGraph> {
    let mut out = Vec::new();
    out.push(gen_wheel(size.max(3)));
    for seed in 0..4 {
        out.push(gen_halin(1 + size / 6, seed));
        out.push(gen_random_based(size.max(3), seed).expect("generation succeeds"));
    }
    out
}
