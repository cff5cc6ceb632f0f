//! Shared fixtures for the integration suites: the corpus of named graphs
//! and a small deterministic RNG for reproducible random sweeps.
#![allow(dead_code)] // each test target links its own copy and uses a subset

use equipart::families::{generate_family, Family};
use equipart::{Graph, VertexSet};

pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("petersen", generate_family(Family::Petersen, &[]).unwrap()),
        ("hypercube:3", generate_family(Family::Hypercube, &[3]).unwrap()),
        ("hypercube:4", generate_family(Family::Hypercube, &[4]).unwrap()),
        ("hamming:2:3", generate_family(Family::Hamming, &[2, 3]).unwrap()),
        ("complete_bipartite:3:3", generate_family(Family::CompleteBipartite, &[3, 3]).unwrap()),
    ]
}

/// All nonempty proper subsets of an n-vertex graph, as bit masks.
pub fn proper_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n < 32);
    let full = (1u32 << n) - 1;
    (1..full).map(move |mask| set_from_mask(n, mask))
}

pub fn set_from_mask(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// splitmix64: tiny deterministic generator, good enough for test sampling.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform nonempty proper subset of {0, …, n−1}.
    pub fn proper_subset(&mut self, n: usize) -> VertexSet {
        let full = (1u64 << n) - 1;
        loop {
            let mask = self.next_u64() & full;
            if mask != 0 && mask != full {
                return set_from_mask(n, mask as u32);
            }
        }
    }
}
