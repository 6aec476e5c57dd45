//! Good-triangle search: the exhaustive scan used in production and the
//! constructive longest-path method used as a cross-check.
//!
//! A good triangle is a triangle `xyz` with `d(x) = d(y) = 3` and `x`, `y` on
//! the outer face; "for a vertex u" additionally means none of `x`, `y`, `z`
//! is `u`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::embedding::{Edge, EmbeddingError, Face, PlanarEmbeddedGraph, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GoodTriangle {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
}

impl GoodTriangle {
    pub fn vertices(&self) -> [VertexId; 3] {
        [self.x, self.y, self.z]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.x == v || self.y == v || self.z == v
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        [
            Edge::new(self.x, self.y),
            Edge::new(self.y, self.z),
            Edge::new(self.x, self.z),
        ]
        .into_iter()
        .collect()
    }

    pub fn is_disjoint(&self, other: &GoodTriangle) -> bool {
        !other.vertices().iter().any(|&v| self.contains(v))
    }

    /// Re-checks the defining conditions against `g` and its outer face.
    pub fn check(&self, g: &PlanarEmbeddedGraph, outer: &Face) -> bool {
        let [x, y, z] = self.vertices();
        x != y
            && y != z
            && x != z
            && g.has_edge(x, y)
            && g.has_edge(y, z)
            && g.has_edge(x, z)
            && g.degree(x) == Ok(3)
            && g.degree(y) == Ok(3)
            && outer.vertex_set.contains(&x)
            && outer.vertex_set.contains(&y)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    /// Signals a precondition violation (not based planar, or minimum degree
    /// below 3) or a bug; carries the graph for triage.
    #[error("no good triangle (avoid: {avoid:?}); graph dump:\n{dump}")]
    NoGoodTriangle {
        avoid: Option<VertexId>,
        dump: String,
    },
    #[error("interior forest has {0} components, not a single tree")]
    MultipleComponents(usize),
    #[error("outer vertex {0} has degree {1}, expected exactly 3")]
    NotAllOuterDegreeThree(VertexId, usize),
    #[error("vertex {0} has degree {1}, below 3")]
    MinDegreeBelowThree(VertexId, usize),
    #[error("interior subgraph contains a cycle")]
    InteriorNotForest,
    #[error("no consecutive leaf pair at either end of the longest path")]
    ConstructionFailed,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn outer_face(g: &PlanarEmbeddedGraph) -> Result<Face, TriangleError> {
    let faces = g.trace_faces()?;
    let id = PlanarEmbeddedGraph::outer_face_id(&faces).ok_or_else(|| {
        TriangleError::Embedding(EmbeddingError::EmbeddingInconsistent(
            "graph has no outer face".into(),
        ))
    })?;
    Ok(faces[id].clone())
}

/// Every good triangle, canonically labeled and in lexicographic `(x, y, z)`
/// order. For a triangle where all three vertices qualify as the degree-3
/// outer pair, `x, y` is the smallest qualifying pair.
pub fn all_good_triangles(g: &PlanarEmbeddedGraph) -> Result<Vec<GoodTriangle>, TriangleError> {
    let outer = outer_face(g)?;
    let qualifies = |v: VertexId| g.degree(v) == Ok(3) && outer.vertex_set.contains(&v);
    let mut out = Vec::new();
    let verts: Vec<VertexId> = g.vertices().collect();
    for &a in &verts {
        for &b in verts.iter().filter(|&&b| b > a && g.has_edge(a, b)) {
            for &c in verts.iter().filter(|&&c| c > b) {
                if !(g.has_edge(a, c) && g.has_edge(b, c)) {
                    continue;
                }
                let pair = [(a, b, c), (a, c, b), (b, c, a)]
                    .into_iter()
                    .find(|&(x, y, _)| qualifies(x) && qualifies(y));
                if let Some((x, y, z)) = pair {
                    out.push(GoodTriangle { x, y, z });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Smallest good triangle avoiding `avoid` (exhaustive scan). Per the
/// triangle-existence lemma this cannot fail on a based planar graph with
/// minimum degree 3 and `avoid` on the outer face; a failure dumps the graph.
pub fn find_good_triangle(
    g: &PlanarEmbeddedGraph,
    avoid: Option<VertexId>,
) -> Result<GoodTriangle, TriangleError> {
    all_good_triangles(g)?
        .into_iter()
        .find(|t| avoid.map(|u| !t.contains(u)).unwrap_or(true))
        .ok_or_else(|| TriangleError::NoGoodTriangle {
            avoid,
            dump: crate::format::serialize_graph(g),
        })
}

/// Constructive search from the degree-3 case: strip the outer cycle, take a
/// longest path in the remaining tree, and read the triangle off a penultimate
/// vertex and two of its leaf neighbors that are consecutive on the outer
/// face. The far end of the path is used when the near end's triangle would
/// contain `avoid`.
///
/// Preconditions: all degrees >= 3, outer degrees exactly 3, and the interior
/// must be one tree — multi-component interiors are left to the exhaustive
/// scan.
pub fn claim1_find_good_triangle(
    g: &PlanarEmbeddedGraph,
    avoid: Option<VertexId>,
) -> Result<GoodTriangle, TriangleError> {
    let outer = outer_face(g)?;
    for v in g.vertices() {
        let d = g.degree(v)?;
        if d < 3 {
            return Err(TriangleError::MinDegreeBelowThree(v, d));
        }
        if outer.vertex_set.contains(&v) && d != 3 {
            return Err(TriangleError::NotAllOuterDegreeThree(v, d));
        }
    }

    // Interior adjacency: all edges except the outer boundary.
    let mut tree: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut tree_edge_count = 0usize;
    for v in g.vertices() {
        let nbrs: Vec<VertexId> = g
            .rotation(v)?
            .iter()
            .copied()
            .filter(|&w| !outer.edge_set.contains(&Edge::new(v, w)))
            .collect();
        tree_edge_count += nbrs.len();
        tree.insert(v, nbrs);
    }
    tree_edge_count /= 2;
    for nbrs in tree.values_mut() {
        nbrs.sort_unstable();
    }
    let comps = interior_components(&tree);
    if comps != 1 {
        return Err(TriangleError::MultipleComponents(comps));
    }
    if tree_edge_count != tree.len() - 1 {
        return Err(TriangleError::InteriorNotForest);
    }

    let start = *tree.keys().next().expect("nonempty graph");
    let e1 = farthest(&tree, start).0;
    let (_, path) = farthest(&tree, e1);

    let is_leaf = |v: VertexId| tree[&v].len() == 1;
    let triangle_at = |p: VertexId| -> Option<GoodTriangle> {
        if Some(p) == avoid {
            return None;
        }
        let leaves: Vec<VertexId> = tree[&p].iter().copied().filter(|&l| is_leaf(l)).collect();
        let mut best: Option<(VertexId, VertexId)> = None;
        for (i, &l1) in leaves.iter().enumerate() {
            for &l2 in &leaves[i + 1..] {
                if !outer.edge_set.contains(&Edge::new(l1, l2)) {
                    continue;
                }
                if avoid == Some(l1) || avoid == Some(l2) {
                    continue;
                }
                let cand = (l1.min(l2), l1.max(l2));
                if best.map(|b| cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(x, y)| GoodTriangle { x, y, z: p })
    };

    // Penultimate vertices at the two ends of the longest path.
    let near = path.len().checked_sub(2).map(|i| path[i]);
    let far = path.get(1).copied();
    for p in [near, far].into_iter().flatten() {
        if let Some(t) = triangle_at(p) {
            debug_assert!(t.check(g, &outer));
            return Ok(t);
        }
    }
    Err(TriangleError::ConstructionFailed)
}

fn interior_components(adj: &BTreeMap<VertexId, Vec<VertexId>>) -> usize {
    let mut unvisited: BTreeSet<VertexId> = adj.keys().copied().collect();
    let mut count = 0;
    while let Some(&start) = unvisited.iter().next() {
        count += 1;
        let mut stack = vec![start];
        unvisited.remove(&start);
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if unvisited.remove(&w) {
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// BFS farthest vertex (smallest id on ties) and the path to it.
fn farthest(
    adj: &BTreeMap<VertexId, Vec<VertexId>>,
    start: VertexId,
) -> (VertexId, Vec<VertexId>) {
    let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    dist.insert(start, 0);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[&v] {
                if !dist.contains_key(&w) {
                    dist.insert(w, dist[&v] + 1);
                    parent.insert(w, v);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let (&end, _) = dist
        .iter()
        .max_by_key(|&(&v, &d)| (d, std::cmp::Reverse(v)))
        .expect("nonempty");
    let mut path = vec![end];
    let mut cur = end;
    while let Some(&p) = parent.get(&cur) {
        path.push(p);
        cur = p;
    }
    path.reverse();
    (end, path)
}
