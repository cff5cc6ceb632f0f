//! Randomized invariants: counting identities, spectral moment identities,
//! shift-test/verifier agreement, and format round trips.

mod common;

use common::{corpus, set_from_mask};
use equipart::equitable::{
    predicted_class_size, quotient_beta, quotient_from_spectral_data,
    quotient_second_eigenvalue, verify_two_coloring,
};
use equipart::graph::Graph;
use equipart::io::{emit_graph6, parse_graph6};
use equipart::search::scan_two_colorings;
use equipart::spectral::{eigen_decompose, eigenfunction_shift_test, indicator_expansion};
use equipart::{Rat, Spectrum, VertexSet};
use proptest::prelude::*;
use std::sync::OnceLock;

fn spectra() -> &'static Vec<(&'static str, Graph, Spectrum)> {
    static CACHE: OnceLock<Vec<(&'static str, Graph, Spectrum)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        corpus()
            .into_iter()
            .map(|(name, g)| {
                let spec = eigen_decompose(&g).unwrap();
                (name, g, spec)
            })
            .collect()
    })
}

/// (graph index, subset-of-that-graph) pairs; both the subset and its mask
/// stay nonempty and proper.
fn graph_and_subset() -> impl Strategy<Value = (usize, VertexSet)> {
    (0usize..corpus().len(), any::<u32>()).prop_map(|(gi, seed)| {
        let n = spectra()[gi].1.n();
        let full = (1u32 << n) - 1;
        let mask = match seed & full {
            0 => 1,
            m if m == full => full - 1,
            m => m,
        };
        (gi, set_from_mask(n, mask))
    })
}

fn graph_and_two_subsets() -> impl Strategy<Value = (usize, VertexSet, VertexSet)> {
    (0usize..corpus().len(), any::<u32>(), any::<u32>()).prop_map(|(gi, s1, s2)| {
        let n = spectra()[gi].1.n();
        let full = (1u32 << n) - 1;
        let clamp = |seed: u32| match seed & full {
            0 => 1,
            m if m == full => full - 1,
            m => m,
        };
        (gi, set_from_mask(n, clamp(s1)), set_from_mask(n, clamp(s2)))
    })
}

proptest! {
    #[test]
    fn edge_count_symmetry_and_row_sums((gi, a, b) in graph_and_two_subsets()) {
        let g = &spectra()[gi].1;
        let r = g.is_regular().unwrap();
        let e_ab = g.edge_count_between(&a, &b);
        prop_assert_eq!(e_ab, g.edge_count_between(&b, &a));
        prop_assert_eq!(g.edge_count_between(&a, &a) % 2, 0);
        prop_assert_eq!(
            e_ab + g.edge_count_between(&a, &b.complement()),
            r * a.size()
        );
    }

    #[test]
    fn sigma_matches_edge_counts((gi, s) in graph_and_subset()) {
        let g = &spectra()[gi].1;
        let size = Rat::from(s.size() as i64);
        prop_assert_eq!(
            g.sigma(&s).unwrap() * size,
            Rat::from(g.edge_count_between(&s, &s) as i64)
        );
        let d2 = g.distance2_graph();
        prop_assert_eq!(
            g.sigma2(&s).unwrap() * size,
            Rat::from(d2.edge_count_between(&s, &s) as i64)
        );
    }

    #[test]
    fn indicator_moment_identities((gi, s) in graph_and_subset()) {
        let (_, g, spec) = &spectra()[gi];
        let exp = indicator_expansion(g, &s, spec).unwrap();
        let n = g.n() as f64;
        let r = g.is_regular().unwrap() as f64;
        let size = s.size() as f64;
        let sigma = g.sigma(&s).unwrap();
        let sigma_f = *sigma.numer() as f64 / *sigma.denom() as f64;
        // (I): ‖1_S‖² splits as |S|²/n on the principal axis plus m0
        prop_assert!((exp.m0 - (size - size * size / n)).abs() < 1e-8);
        // (II): (M·1_S, 1_S) splits as r|S|²/n plus m1
        prop_assert!((r * size * size / n + exp.m1 - sigma_f * size).abs() < 1e-8);
        prop_assert!(exp.coefficients.iter().all(|&(_, alpha_sq)| alpha_sq >= -1e-12));
        prop_assert!(exp.m0 <= size + 1e-9);
    }

    #[test]
    fn second_moment_identity((gi, s) in graph_and_subset()) {
        let (_, g, spec) = &spectra()[gi];
        let params = g.detect_amply_regular().unwrap();
        let exp = indicator_expansion(g, &s, spec).unwrap();
        let n = g.n() as f64;
        let r = g.is_regular().unwrap() as i64;
        let size = s.size() as f64;
        // (M²·1_S, 1_S) two ways: walk counting and the spectral split
        let walks: i64 = (0..g.n())
            .map(|v| {
                let k = g.neighbors(v).intersection_len(s.members()) as i64;
                k * k
            })
            .sum();
        prop_assert!(((r * r) as f64 * size * size / n + exp.m2 - walks as f64).abs() < 1e-7);
        // and exactly, through the amply-regular polynomial
        let rat_size = Rat::from(s.size() as i64);
        let lhs = Rat::from(walks);
        let rhs = (g.sigma2(&s).unwrap() - params.p1 * g.sigma(&s).unwrap() - params.p0)
            * rat_size
            / params.p2;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_test_agrees_with_verifier((gi, s) in graph_and_subset()) {
        let (_, g, spec) = &spectra()[gi];
        let shifted = eigenfunction_shift_test(g, &s, spec).unwrap();
        let verified = verify_two_coloring(g, &s).unwrap();
        prop_assert_eq!(shifted.is_some(), verified.is_some());
        if let (Some(lambda), Some(q)) = (shifted, verified) {
            let expected = quotient_second_eigenvalue(&q) as f64;
            prop_assert!((lambda - expected).abs() < 1e-6);
        }
    }

    #[test]
    fn graph6_round_trip_random(n in 2usize..=20, seed in any::<u64>()) {
        let mut rng = common::SplitMix64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.next_u64() % 2 == 0 {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        let text = emit_graph6(&g).unwrap();
        prop_assert_eq!(&parse_graph6(&text).unwrap(), &g);
        // canonical strings are a fixed point of parse∘emit
        prop_assert_eq!(emit_graph6(&parse_graph6(&text).unwrap()).unwrap(), text);
    }
}

#[test]
fn amply_polynomial_reproduces_distance_two_adjacency() {
    for (name, g) in corpus() {
        let params = g.detect_amply_regular().unwrap();
        let d2 = g.distance2_graph();
        for u in 0..g.n() {
            for v in 0..g.n() {
                let common = g.neighbors(u).intersection_len(g.neighbors(v)) as i64;
                let m = i64::from(g.has_edge(u, v));
                let delta = i64::from(u == v);
                let lhs = params.p2 * Rat::from(common)
                    + params.p1 * Rat::from(m)
                    + params.p0 * Rat::from(delta);
                assert_eq!(lhs, Rat::from(i64::from(d2.has_edge(u, v))), "{name} ({u},{v})");
            }
        }
        assert_eq!(-params.p0 / params.p2, Rat::from(params.r as i64), "{name}");
    }
}

#[test]
fn verified_colorings_satisfy_structural_identities() {
    for (name, g, spec) in spectra() {
        let n = g.n();
        let r = g.is_regular().unwrap() as i64;
        let params = g.detect_amply_regular().unwrap();
        for (s, q) in scan_two_colorings(g) {
            let (sa, sb) = (s.size() as i64, (n - s.size()) as i64);
            assert_eq!(q.b * sa, q.c * sb, "{name}: b|S| = c|V∖S|");
            let lambda = quotient_second_eigenvalue(&q);
            assert!(spec.contains(lambda as f64, 1e-6), "{name}: λ={lambda} in spectrum");
            let sq = quotient_from_spectral_data(r, lambda as f64, s.size(), n - s.size())
                .unwrap();
            assert!(sq.exact, "{name}");
            assert_eq!(sq.q, q, "{name}: spectral-data round trip");
            assert_eq!(
                predicted_class_size(&params, &q, n).unwrap(),
                Rat::from(sa),
                "{name}: size formula"
            );
            assert_eq!(g.sigma2(&s).unwrap(), quotient_beta(&params, &q), "{name}: β");
            // complement verifies with transposed roles
            assert_eq!(
                verify_two_coloring(g, &s.complement()).unwrap(),
                Some(q.transposed_roles()),
                "{name}"
            );
        }
    }
}

#[test]
fn singleton_eppc_bound_is_the_hamming_bound() {
    for (name, g, _) in spectra() {
        let params = g.detect_amply_regular().unwrap();
        let single = VertexSet::from_indices(g.n(), [0]);
        let report =
            equipart::bounds::eppc_size_bound(&params, &g.clone(), &single, Rat::from(0))
                .unwrap();
        assert_eq!(
            report.value.exact().unwrap(),
            Rat::new(g.n() as i64, params.r as i64 + 1),
            "{name}: a=0, β=0 reduces to n/(r+1)"
        );
    }
}
