//! Recognition of based planar graphs (a face adjacent to every other face)
//! and Halin graphs (a plane tree whose leaves are joined by a cycle).

use std::collections::BTreeSet;

use crate::embedding::{Edge, EmbeddingError, Face, PlanarEmbeddedGraph, VertexId};

/// What "two faces are adjacent" means. Polyhedral convention is sharing an
/// edge; vertex sharing is the looser variant, exposed for experimentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum AdjacencyMode {
    #[default]
    EdgeSharing,
    VertexSharing,
}

/// True iff the two faces share an edge (or a vertex, under `VertexSharing`).
pub fn faces_adjacent(f1: &Face, f2: &Face, mode: AdjacencyMode) -> bool {
    match mode {
        AdjacencyMode::EdgeSharing => f1.edge_set.intersection(&f2.edge_set).next().is_some(),
        AdjacencyMode::VertexSharing => {
            f1.vertex_set.intersection(&f2.vertex_set).next().is_some()
        }
    }
}

/// Ids of all faces adjacent to every other face. Empty means the graph is
/// not based planar under `mode`, regardless of anchoring.
pub fn find_base_faces(faces: &[Face], mode: AdjacencyMode) -> Vec<usize> {
    faces
        .iter()
        .filter(|f| {
            faces
                .iter()
                .filter(|g| g.id != f.id)
                .all(|g| faces_adjacent(f, g, mode))
        })
        .map(|f| f.id)
        .collect()
}

/// True iff the designated outer face is adjacent to every other face.
pub fn is_based_planar(
    g: &PlanarEmbeddedGraph,
    mode: AdjacencyMode,
) -> Result<bool, EmbeddingError> {
    let faces = g.trace_faces()?;
    let Some(outer) = PlanarEmbeddedGraph::outer_face_id(&faces) else {
        // Edgeless graph: one invisible face, nothing to be adjacent to.
        return Ok(true);
    };
    Ok(find_base_faces(&faces, mode).contains(&outer))
}

/// Evidence that a graph is Halin: the leaf cycle and the tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalinWitness {
    pub cycle: Vec<VertexId>,
    pub tree_edges: BTreeSet<Edge>,
}

/// Tests whether some face boundary is a cycle whose removal leaves a spanning
/// tree with that cycle as its leaf set and all internal degrees >= 3.
///
/// Graphs with fewer than four vertices are rejected (the tree would be a
/// single edge or less).
pub fn is_halin(g: &PlanarEmbeddedGraph) -> Result<Option<HalinWitness>, EmbeddingError> {
    if g.vertex_count() < 4 {
        return Ok(None);
    }
    let faces = g.trace_faces()?;
    let all_edges = g.edges();
    for face in &faces {
        let Some(cycle) = face.as_simple_cycle() else {
            continue;
        };
        let tree_edges: BTreeSet<Edge> = all_edges.difference(&face.edge_set).copied().collect();
        if tree_edges.len() != g.vertex_count() - 1 {
            continue;
        }
        if !spans_as_tree(g, &tree_edges) {
            continue;
        }
        let cycle_set: BTreeSet<VertexId> = cycle.iter().copied().collect();
        let mut ok = true;
        for v in g.vertices() {
            let d = tree_edges.iter().filter(|e| e.contains(v)).count();
            let leaf = cycle_set.contains(&v);
            // Leaves are exactly the cycle vertices; internal degrees >= 3.
            if leaf && d != 1 || !leaf && d < 3 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(HalinWitness {
                cycle,
                tree_edges,
            }));
        }
    }
    Ok(None)
}

fn spans_as_tree(g: &PlanarEmbeddedGraph, tree_edges: &BTreeSet<Edge>) -> bool {
    // n-1 edges already checked; connectivity over all vertices suffices.
    let Some(start) = g.vertices().next() else {
        return false;
    };
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(v) = stack.pop() {
        for e in tree_edges.iter().filter(|e| e.contains(v)) {
            let w = if e.0 == v { e.1 } else { e.0 };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == g.vertex_count()
}
