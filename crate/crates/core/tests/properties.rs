//! Property tests over the generated corpus: embedding invariants under
//! mutation, recognition laws, format round-trips, and determinism.

use std::collections::BTreeMap;

use proptest::prelude::*;

use jones_core::embedding::{PlanarEmbeddedGraph, VertexId};
use jones_core::format::{parse_graph, serialize_graph};
use jones_core::generators::{generate, Family, GenSpec};
use jones_core::recognition::{find_base_faces, is_based_planar, is_halin, AdjacencyMode};
use jones_core::solver::{solve, verify_certificate};

fn family_strategy() -> impl Strategy<Value = GenSpec> {
    prop_oneof![
        (1usize..=6, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::Halin,
            n,
            seed
        }),
        (3usize..=12, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::Wheel,
            n,
            seed
        }),
        (2usize..=12, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::Fan,
            n,
            seed
        }),
        (3usize..=16, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::Outerplanar,
            n,
            seed
        }),
        (3usize..=16, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::RandomBased,
            n,
            seed
        }),
        (4usize..=14, any::<u64>()).prop_map(|(n, seed)| GenSpec {
            family: Family::RandomBasedMin3,
            n,
            seed
        }),
    ]
}

fn relabel(g: &PlanarEmbeddedGraph, offset: u32, stride: u32) -> PlanarEmbeddedGraph {
    // Injective id map keeping determinism: v -> offset + stride * v.
    let map = |v: VertexId| VertexId(offset + stride * v.0);
    let rotation: BTreeMap<VertexId, Vec<VertexId>> = g
        .vertices()
        .map(|v| (map(v), g.rotation(v).unwrap().iter().map(|&w| map(w)).collect()))
        .collect();
    let anchor = g.outer_anchor().map(|(u, v)| (map(u), map(v)));
    PlanarEmbeddedGraph::from_rotations(rotation, anchor).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_graphs_validate_and_trace(spec in family_strategy()) {
        let g = generate(&spec).unwrap();
        g.validate().unwrap();
        let faces = g.trace_faces().unwrap();
        let total: usize = faces.iter().map(|f| f.len()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn serialize_parse_round_trip(spec in family_strategy()) {
        let g = generate(&spec).unwrap();
        let text = serialize_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(serialize_graph(&parsed), text);
    }

    #[test]
    fn vertex_sharing_base_faces_superset(spec in family_strategy()) {
        let g = generate(&spec).unwrap();
        let faces = g.trace_faces().unwrap();
        let edge = find_base_faces(&faces, AdjacencyMode::EdgeSharing);
        let vertex = find_base_faces(&faces, AdjacencyMode::VertexSharing);
        for id in edge {
            prop_assert!(vertex.contains(&id));
        }
    }

    #[test]
    fn recognition_invariant_under_relabeling(
        spec in family_strategy(),
        offset in 0u32..100,
        stride in 1u32..5,
    ) {
        let g = generate(&spec).unwrap();
        let h = relabel(&g, offset, stride);
        prop_assert_eq!(
            is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap(),
            is_based_planar(&h, AdjacencyMode::EdgeSharing).unwrap()
        );
        prop_assert_eq!(
            is_halin(&g).unwrap().is_some(),
            is_halin(&h).unwrap().is_some()
        );
    }

    #[test]
    fn halin_implies_based_planar(internal in 1usize..=6, seed in any::<u64>()) {
        let g = jones_core::generators::gen_halin(internal, seed);
        prop_assert!(is_halin(&g).unwrap().is_some());
        prop_assert!(is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap());
    }

    #[test]
    fn deletion_preserves_invariants(spec in family_strategy(), picks in proptest::collection::vec(any::<u32>(), 1..6)) {
        let mut g = generate(&spec).unwrap();
        for pick in picks {
            if g.vertex_count() == 0 {
                break;
            }
            let verts: Vec<VertexId> = g.vertices().collect();
            let v = verts[(pick as usize) % verts.len()];
            g = g.delete_vertex(v).unwrap();
            g.validate().unwrap();
        }
    }

    #[test]
    fn smoothing_then_resubdividing_is_identity(n in 4usize..=12, seed in any::<u64>()) {
        // A bare cycle always has smoothable vertices.
        let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let m = n as u32;
        for i in 0..m {
            rot.insert(VertexId(i), vec![VertexId((i + m - 1) % m), VertexId((i + 1) % m)]);
        }
        let g = PlanarEmbeddedGraph::new(rot, (VertexId(0), VertexId(1))).unwrap();
        let u = VertexId((seed % n as u64) as u32);
        let (smoothed, (a, b)) = g.smooth_degree2(u).unwrap();
        // Re-subdivide the created edge at the same rotation slots.
        let mut rot: BTreeMap<VertexId, Vec<VertexId>> = smoothed
            .vertices()
            .map(|v| (v, smoothed.rotation(v).unwrap().to_vec()))
            .collect();
        for (end, other) in [(a, b), (b, a)] {
            let r = rot.get_mut(&end).unwrap();
            let pos = r.iter().position(|&w| w == other).unwrap();
            r[pos] = u;
        }
        rot.insert(u, vec![a, b]);
        let restored = PlanarEmbeddedGraph::from_rotations(rot, g.outer_anchor()).unwrap();
        for v in g.vertices() {
            prop_assert_eq!(g.rotation(v).unwrap(), restored.rotation(v).unwrap());
        }
    }

    #[test]
    fn solve_certificates_verify(spec in family_strategy()) {
        let g = generate(&spec).unwrap();
        let cert = solve(&g).unwrap();
        prop_assert!(verify_certificate(&g, &cert).is_valid());
        prop_assert!(cert.fvs.len() <= 2 * cert.packing.len());
        prop_assert!(cert.trace.len() <= g.vertex_count());
    }
}
