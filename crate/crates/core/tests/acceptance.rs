//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers. Run with `cargo test --test acceptance -- --nocapture`
//! to see the report.

use std::collections::BTreeSet;
use std::time::Instant;

use jones_core::embedding::PlanarEmbeddedGraph;
use jones_core::format::{parse_graph, serialize_graph};
use jones_core::generators::{
    gen_fan, gen_halin, gen_outerplanar, gen_prism, gen_random_based, gen_random_based_min3,
    gen_wheel,
};
use jones_core::oracle::{oracle_cp, oracle_fp, oracle_fvs, OracleConfig};
use jones_core::recognition::{is_based_planar, AdjacencyMode};
use jones_core::solver::{solve, verify_certificate, Certificate};
use jones_core::triangles::{all_good_triangles, claim1_find_good_triangle, find_good_triangle};
use jones_core::VertexId;

/// Validates the embedding kernel on a corpus graph (criterion 7 piggybacks
/// on every other criterion's corpus).
fn kernel_check(g: &PlanarEmbeddedGraph) {
    g.validate().expect("corpus graph validates");
    let faces = g.trace_faces().expect("corpus graph traces");
    let total: usize = faces.iter().map(|f| f.len()).sum();
    assert_eq!(total, 2 * g.edge_count(), "directed-edge coverage");
    let text = serialize_graph(g);
    let reparsed = parse_graph(&text).expect("round trip parses");
    assert_eq!(serialize_graph(&reparsed), text, "round trip byte-stable");
}

fn outer_vertices(g: &PlanarEmbeddedGraph) -> Vec<VertexId> {
    let faces = g.trace_faces().unwrap();
    let outer = PlanarEmbeddedGraph::outer_face_id(&faces).unwrap();
    faces[outer].vertex_set.iter().copied().collect()
}

fn solve_and_verify(g: &PlanarEmbeddedGraph) -> Certificate {
    let cert = match solve(g) {
        Ok(cert) => cert,
        Err(e) => panic!("solve failed: {e}\ninput:\n{}", serialize_graph(g)),
    };
    let verdict = verify_certificate(g, &cert);
    assert!(
        verdict.is_valid(),
        "verification failed: {:?}\ninput:\n{}",
        verdict.violations(),
        serialize_graph(g)
    );
    assert!(cert.fvs.len() <= 2 * cert.packing.len());
    cert
}

/// Halin corpus with 4 <= n <= 40, at least `want` graphs.
fn halin_corpus(want: usize) -> Vec<PlanarEmbeddedGraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < want {
        for internal in 1..=9 {
            let g = gen_halin(internal, seed);
            if (4..=40).contains(&g.vertex_count()) {
                out.push(g);
            }
        }
        seed += 1;
    }
    out.truncate(want);
    out
}

/// Mixed small corpus with n <= 14 for oracle work.
fn small_corpus(want: usize) -> Vec<PlanarEmbeddedGraph> {
    let mut out: Vec<PlanarEmbeddedGraph> = Vec::new();
    for rim in 3..=12 {
        out.push(gen_wheel(rim));
    }
    for n in 2..=12 {
        out.push(gen_fan(n));
    }
    out.push(gen_prism(3));
    let mut seed = 0u64;
    while out.len() < want {
        for n in 3..=14 {
            out.push(gen_outerplanar(n, seed));
            out.push(gen_random_based(n, seed).expect("generation succeeds"));
            if n >= 6 {
                if let Ok(g) = gen_random_based_min3(n - 2, seed) {
                    if g.vertex_count() <= 14 {
                        out.push(g);
                    }
                }
            }
        }
        for internal in 1..=3 {
            let g = gen_halin(internal, seed);
            if g.vertex_count() <= 14 {
                out.push(g);
            }
        }
        seed += 1;
    }
    out.truncate(want);
    assert!(out.iter().all(|g| g.vertex_count() <= 14));
    out
}

#[test]
fn criterion_1_theorem_end_to_end() {
    let start = Instant::now();
    let halin = halin_corpus(500);
    let mut random = Vec::new();
    let mut seed = 1_000u64;
    while random.len() < 500 {
        for n in 3..=40 {
            random.push(gen_random_based(n, seed).expect("generation succeeds"));
        }
        seed += 1;
    }
    random.truncate(500);

    let mut solved = 0usize;
    for g in halin.iter().chain(random.iter()) {
        kernel_check(g);
        let cert = solve_and_verify(g);
        assert!(!cert.packing.is_empty(), "every corpus graph has a cycle");
        solved += 1;
    }
    let elapsed = start.elapsed();
    assert!(solved >= 1000);
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 took {elapsed:?}, budget 60s"
    );
    println!(
        "PASS criterion 1: {} certificates solved+verified in {:.2?} (500 Halin, 500 random based planar)",
        solved, elapsed
    );
}

#[test]
fn criterion_2_oracle_sandwich() {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let corpus = small_corpus(200);
    let mut checked = 0usize;
    for g in &corpus {
        kernel_check(g);
        let cert = solve_and_verify(g);
        let (fvs_exact, _) = oracle_fvs(g, &cfg).unwrap_or_else(|e| {
            panic!("oracle_fvs failed: {e}\n{}", serialize_graph(g))
        });
        let (cp_exact, _) = oracle_cp(g, true, &cfg).unwrap_or_else(|e| {
            panic!("oracle_cp failed: {e}\n{}", serialize_graph(g))
        });
        let dump = || serialize_graph(g);
        assert!(
            fvs_exact <= cert.fvs.len(),
            "solver fvs below exact minimum\n{}",
            dump()
        );
        assert!(
            cert.fvs.len() <= 2 * cert.packing.len(),
            "certificate bound violated\n{}",
            dump()
        );
        assert!(
            cert.packing.len() <= cp_exact,
            "solver packing exceeds exact maximum\n{}",
            dump()
        );
        assert!(
            fvs_exact <= 2 * cp_exact,
            "conjecture violated on instance\n{}",
            dump()
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(checked >= 200);
    assert!(
        elapsed.as_secs() < 300,
        "criterion 2 took {elapsed:?}, budget 5min"
    );
    println!(
        "PASS criterion 2: oracle sandwich fvs* <= |F| <= 2|C| <= 2cp* held on {} graphs (n <= 14) in {:.2?}",
        checked, elapsed
    );
}

#[test]
fn criterion_3_triangle_lemma_property() {
    let mut corpus: Vec<PlanarEmbeddedGraph> = Vec::new();
    let mut seed = 0u64;
    while corpus.len() < 300 {
        for internal in 1..=5 {
            corpus.push(gen_halin(internal, 2_000 + seed * 31 + internal as u64));
        }
        for n in [6usize, 8, 10, 12] {
            if let Ok(g) = gen_random_based_min3(n, 3_000 + seed * 17 + n as u64) {
                corpus.push(g);
            }
        }
        seed += 1;
    }
    corpus.truncate(300);

    let mut queries = 0usize;
    for g in &corpus {
        kernel_check(g);
        assert!(g.vertices().all(|v| g.degree(v).unwrap() >= 3));
        assert!(is_based_planar(g, AdjacencyMode::EdgeSharing).unwrap());
        let faces = g.trace_faces().unwrap();
        let outer = faces[PlanarEmbeddedGraph::outer_face_id(&faces).unwrap()].clone();
        for &u in outer.vertex_set.iter() {
            let t = find_good_triangle(g, Some(u)).unwrap_or_else(|e| {
                panic!("lemma property failed for u={u}: {e}")
            });
            assert!(!t.contains(u));
            assert!(t.check(g, &outer), "good triangle invariants");
            queries += 1;
        }
    }
    println!(
        "PASS criterion 3: good triangle found for every outer vertex ({} queries over {} min-degree-3 graphs)",
        queries,
        corpus.len()
    );
}

#[test]
fn criterion_4_constructive_cross_check() {
    // Interior trees with >= 2 internal vertices: the longest path has
    // distinct penultimate vertices, so two disjoint good triangles exist.
    let mut corpus: Vec<PlanarEmbeddedGraph> = Vec::new();
    let mut seed = 0u64;
    while corpus.len() < 100 {
        for internal in 2..=6 {
            corpus.push(gen_halin(internal, 4_000 + seed * 13 + internal as u64));
        }
        seed += 1;
    }
    corpus.truncate(100);

    for g in &corpus {
        kernel_check(g);
        let all = all_good_triangles(g).unwrap();
        let t = claim1_find_good_triangle(g, None)
            .unwrap_or_else(|e| panic!("constructive search failed: {e}\n{}", serialize_graph(g)));
        assert!(all.contains(&t), "constructive result must be in the scan");
        for u in outer_vertices(g) {
            let t = claim1_find_good_triangle(g, Some(u)).unwrap_or_else(|e| {
                panic!("constructive search failed for u={u}: {e}\n{}", serialize_graph(g))
            });
            assert!(!t.contains(u));
            assert!(all.contains(&t));
        }
        let disjoint_pair = all
            .iter()
            .enumerate()
            .any(|(i, a)| all.iter().skip(i + 1).any(|b| a.is_disjoint(b)));
        assert!(
            disjoint_pair,
            "expected two vertex-disjoint good triangles\n{}",
            serialize_graph(g)
        );
    }
    println!(
        "PASS criterion 4: constructive search agrees with the exhaustive scan on {} Halin graphs; each has two disjoint good triangles",
        corpus.len()
    );
}

#[test]
fn criterion_5_wheel_tightness() {
    let cfg = OracleConfig::default();
    for rim in 3..=12 {
        let g = gen_wheel(rim);
        kernel_check(&g);
        let cert = solve_and_verify(&g);
        assert_eq!(cert.fvs.len(), 2, "wheel W{rim} fvs");
        assert_eq!(cert.packing.len(), 1, "wheel W{rim} packing");
        let (fvs_exact, _) = oracle_fvs(&g, &cfg).unwrap();
        let (cp_exact, _) = oracle_cp(&g, true, &cfg).unwrap();
        assert_eq!(fvs_exact, 2, "wheel W{rim} exact fvs");
        assert_eq!(cp_exact, 1, "wheel W{rim} exact cp");
    }
    println!("PASS criterion 5: wheels W3..W12 are tight: |F| = 2 = 2 * |C| = 2 * cp");
}

#[test]
fn criterion_6_face_packing_probe() {
    let cfg = OracleConfig::default();
    let corpus = small_corpus(200);
    let mut flag_true = 0usize;
    let mut flag_false = Vec::new();
    for g in &corpus {
        let cert = solve_and_verify(g);
        if cert.face_packing_flag {
            flag_true += 1;
            let (fp_exact, _) = oracle_fp(g, true, &cfg).unwrap();
            assert!(
                cert.fvs.len() <= 2 * fp_exact,
                "face-packing bound violated\n{}",
                serialize_graph(g)
            );
        } else {
            flag_false.push(serialize_graph(g));
        }
    }
    println!(
        "PASS criterion 6: face packing flag true on {}/{} instances; |F| <= 2fp* on all of them; {} flag-false instances surfaced",
        flag_true,
        corpus.len(),
        flag_false.len()
    );
    for dump in &flag_false {
        println!("flag-false instance:\n{dump}");
    }
}

#[test]
fn criterion_7_golden_corpus_byte_stable() {
    // The embedding kernel checks run inside every other criterion via
    // kernel_check; this test pins the golden files byte-for-byte.
    for name in ["k4", "w5", "q3", "prism3", "halin_3_7", "random_12_5"] {
        let path = format!("{}/tests/golden/{name}.graph", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let g = parse_graph(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        assert_eq!(
            serialize_graph(&g),
            text,
            "golden file {name} is not canonical"
        );
        let verts: BTreeSet<VertexId> = g.vertices().collect();
        assert!(!verts.is_empty());
    }
    println!("PASS criterion 7: parser/serializer round-trip byte-stable on the golden corpus");
}
