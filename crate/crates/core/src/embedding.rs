//! Planar graphs as rotation systems: face tracing and the embedding-preserving
//! mutations (vertex deletion, degree-2 smoothing) the reduction loop relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier. Ids are never reused within one solver run.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge in canonical (min, max) order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Directed edge (dart) `u -> v`.
pub type Dart = (VertexId, VertexId);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("embedding inconsistent: {0}")]
    EmbeddingInconsistent(String),
    #[error("outer anchor {0}->{1} is not an edge of the graph")]
    AnchorMissing(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} has degree {1}, expected 2")]
    NotDegreeTwo(VertexId, usize),
    #[error("smoothing {0} would create a second {1}-{2} edge")]
    WouldCreateMultiEdge(VertexId, VertexId, VertexId),
}

/// A traced face: a closed walk of directed edges plus derived sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Closed boundary walk, starting at the lexicographically smallest dart.
    pub boundary: Vec<Dart>,
    pub vertex_set: BTreeSet<VertexId>,
    pub edge_set: BTreeSet<Edge>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// The boundary as a simple cycle of vertices, if every vertex appears
    /// exactly once in the walk.
    pub fn as_simple_cycle(&self) -> Option<Vec<VertexId>> {
        let verts: Vec<VertexId> = self.boundary.iter().map(|&(u, _)| u).collect();
        if verts.len() >= 3 && verts.iter().collect::<BTreeSet<_>>().len() == verts.len() {
            Some(verts)
        } else {
            None
        }
    }
}

/// A simple planar graph with a combinatorial embedding: clockwise rotation of
/// neighbors per vertex and a directed anchor edge designating the outer face.
///
/// Values are immutable in spirit: every mutation returns a fresh graph so the
/// solver can keep pre-step graphs for certificate lifting.
///
/// The anchor is `None` only for edgeless graphs, where no face can be traced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbeddedGraph {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    outer_anchor: Option<Dart>,
}

impl PlanarEmbeddedGraph {
    /// Builds a graph from per-vertex rotations and an anchor, running the full
    /// invariant validator.
    pub fn from_rotations(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer_anchor: Option<Dart>,
    ) -> Result<Self, EmbeddingError> {
        let g = PlanarEmbeddedGraph {
            rotation,
            outer_anchor,
        };
        g.validate()?;
        Ok(g)
    }

    /// Convenience constructor for tests and generators: vertices are the map
    /// keys, anchor is mandatory.
    pub fn new(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        anchor: Dart,
    ) -> Result<Self, EmbeddingError> {
        Self::from_rotations(rotation, Some(anchor))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    pub fn outer_anchor(&self) -> Option<Dart> {
        self.outer_anchor
    }

    /// Returns a copy anchored at `dart`, which must be a directed edge of the
    /// graph. The face traced from `dart` becomes the outer face.
    pub fn with_outer_anchor(&self, dart: Dart) -> Result<Self, EmbeddingError> {
        if !self.has_edge(dart.0, dart.1) {
            return Err(EmbeddingError::AnchorMissing(dart.0, dart.1));
        }
        let mut g = self.clone();
        g.outer_anchor = Some(dart);
        Ok(g)
    }

    /// Clockwise neighbor order around `v`.
    pub fn rotation(&self, v: VertexId) -> Result<&[VertexId], EmbeddingError> {
        self.rotation
            .get(&v)
            .map(|r| r.as_slice())
            .ok_or(EmbeddingError::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, EmbeddingError> {
        Ok(self.rotation(v)?.len())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rotation
            .get(&u)
            .map(|r| r.contains(&v))
            .unwrap_or(false)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for (&u, nbrs) in &self.rotation {
            for &v in nbrs {
                out.insert(Edge::new(u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.values().map(|r| r.len()).sum::<usize>() / 2
    }

    /// All darts in ascending order.
    pub fn darts(&self) -> Vec<Dart> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for (&u, nbrs) in &self.rotation {
            for &v in nbrs {
                out.push((u, v));
            }
        }
        out.sort_unstable();
        out
    }

    /// The dart following `u -> v` in face order: arrive at `v` from `u`,
    /// leave via the neighbor after `u` in rotation(v).
    pub fn next_dart(&self, (u, v): Dart) -> Result<Dart, EmbeddingError> {
        let rot = self.rotation(v)?;
        let pos = rot
            .iter()
            .position(|&w| w == u)
            .ok_or_else(|| EmbeddingError::EmbeddingInconsistent(format!("no edge {u}->{v}")))?;
        Ok((v, rot[(pos + 1) % rot.len()]))
    }

    /// Full invariant check: simplicity, rotation symmetry, anchor presence,
    /// and Euler's formula per connected component (genus 0).
    pub fn validate(&self) -> Result<(), EmbeddingError> {
        for (&u, nbrs) in &self.rotation {
            let mut seen = BTreeSet::new();
            for &v in nbrs {
                if v == u {
                    return Err(EmbeddingError::EmbeddingInconsistent(format!(
                        "self-loop at {u}"
                    )));
                }
                if !seen.insert(v) {
                    return Err(EmbeddingError::EmbeddingInconsistent(format!(
                        "repeated neighbor {v} in rotation of {u}"
                    )));
                }
                match self.rotation.get(&v) {
                    Some(r) if r.contains(&u) => {}
                    Some(_) => {
                        return Err(EmbeddingError::EmbeddingInconsistent(format!(
                            "asymmetric edge {u}->{v}"
                        )))
                    }
                    None => {
                        return Err(EmbeddingError::EmbeddingInconsistent(format!(
                            "rotation of {u} references unknown vertex {v}"
                        )))
                    }
                }
            }
        }
        match self.outer_anchor {
            Some((u, v)) => {
                if !self.has_edge(u, v) {
                    return Err(EmbeddingError::AnchorMissing(u, v));
                }
            }
            None => {
                if self.edge_count() > 0 {
                    return Err(EmbeddingError::EmbeddingInconsistent(
                        "graph has edges but no outer anchor".into(),
                    ));
                }
            }
        }
        self.check_euler()
    }

    fn check_euler(&self) -> Result<(), EmbeddingError> {
        let comps = self.components();
        let faces = self.trace_face_walks();
        // Assign each face to the component of its first vertex.
        let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut faces_per_comp = vec![0usize; comps.len()];
        for walk in &faces {
            let v = walk[0].0;
            faces_per_comp[comp_of[&v]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let vs = c.len() as i64;
            let es = c
                .iter()
                .map(|v| self.rotation[v].len() as i64)
                .sum::<i64>()
                / 2;
            if es == 0 {
                continue; // isolated vertex, no traceable face
            }
            let fs = faces_per_comp[i] as i64;
            if vs - es + fs != 2 {
                return Err(EmbeddingError::EmbeddingInconsistent(format!(
                    "Euler check failed on component of {}: V={vs} E={es} F={fs}",
                    c.iter().next().unwrap()
                )));
            }
        }
        Ok(())
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut unvisited: BTreeSet<VertexId> = self.rotation.keys().copied().collect();
        let mut comps = Vec::new();
        while let Some(&start) = unvisited.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            unvisited.remove(&start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.rotation[&v] {
                    if unvisited.remove(&w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Raw face walks (orbits of `next_dart`), each starting at its smallest
    /// dart, ordered by that dart.
    fn trace_face_walks(&self) -> Vec<Vec<Dart>> {
        let darts = self.darts();
        let mut visited: BTreeSet<Dart> = BTreeSet::new();
        let mut walks = Vec::new();
        for &start in &darts {
            if visited.contains(&start) {
                continue;
            }
            let mut walk = vec![start];
            visited.insert(start);
            let mut cur = self.next_dart(start).expect("validated rotation");
            while cur != start {
                visited.insert(cur);
                walk.push(cur);
                cur = self.next_dart(cur).expect("validated rotation");
            }
            walks.push(walk);
        }
        walks
    }

    /// Traces all faces of the embedding. Every dart lies on exactly one face
    /// boundary; the face containing the anchor is flagged as outer.
    pub fn trace_faces(&self) -> Result<Vec<Face>, EmbeddingError> {
        self.validate()?;
        let anchor = self.outer_anchor;
        let walks = self.trace_face_walks();
        let mut faces: Vec<Face> = walks
            .into_iter()
            .enumerate()
            .map(|(id, boundary)| {
                let vertex_set = boundary.iter().map(|&(u, _)| u).collect();
                let edge_set = boundary.iter().map(|&(u, v)| Edge::new(u, v)).collect();
                let is_outer = anchor.map(|a| boundary.contains(&a)).unwrap_or(false);
                Face {
                    id,
                    boundary,
                    vertex_set,
                    edge_set,
                    is_outer,
                }
            })
            .collect();
        if anchor.is_some() {
            let n_outer = faces.iter().filter(|f| f.is_outer).count();
            if n_outer != 1 {
                return Err(EmbeddingError::EmbeddingInconsistent(format!(
                    "anchor lies on {n_outer} faces"
                )));
            }
        }
        faces.sort_by_key(|f| f.boundary[0]);
        for (i, f) in faces.iter_mut().enumerate() {
            f.id = i;
        }
        Ok(faces)
    }

    /// The face flagged as outer, plus the rest.
    pub fn outer_face_id(faces: &[Face]) -> Option<usize> {
        faces.iter().position(|f| f.is_outer)
    }

    /// Deletes `v`, splicing it out of every neighbor rotation. If the anchor
    /// used `v`, a provisional anchor (smallest remaining dart) is installed;
    /// callers that care about the outer face re-anchor via the solver's
    /// rebase.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Self, EmbeddingError> {
        if !self.contains_vertex(v) {
            return Err(EmbeddingError::UnknownVertex(v));
        }
        let mut rotation = self.rotation.clone();
        rotation.remove(&v);
        for nbrs in rotation.values_mut() {
            nbrs.retain(|&w| w != v);
        }
        let mut anchor = self.outer_anchor;
        if let Some((a, b)) = anchor {
            if a == v || b == v {
                anchor = rotation
                    .iter()
                    .flat_map(|(&u, nbrs)| nbrs.iter().map(move |&w| (u, w)))
                    .min();
            }
        }
        let g = PlanarEmbeddedGraph {
            rotation,
            outer_anchor: anchor,
        };
        debug_assert!(g.validate().is_ok(), "delete_vertex broke invariants");
        Ok(g)
    }

    /// Suppresses a degree-2 vertex `u` with non-adjacent neighbors `a`, `b`:
    /// removes `u` and joins `a`, `b` by an edge occupying `u`'s former
    /// rotation slots. Returns the new graph and the created edge `(a, b)`.
    pub fn smooth_degree2(&self, u: VertexId) -> Result<(Self, (VertexId, VertexId)), EmbeddingError> {
        let rot = self.rotation(u)?;
        if rot.len() != 2 {
            return Err(EmbeddingError::NotDegreeTwo(u, rot.len()));
        }
        let (a, b) = (rot[0], rot[1]);
        if self.has_edge(a, b) {
            return Err(EmbeddingError::WouldCreateMultiEdge(u, a, b));
        }
        let mut rotation = self.rotation.clone();
        rotation.remove(&u);
        let ra = rotation.get_mut(&a).expect("neighbor exists");
        let pa = ra.iter().position(|&w| w == u).expect("symmetry");
        ra[pa] = b;
        let rb = rotation.get_mut(&b).expect("neighbor exists");
        let pb = rb.iter().position(|&w| w == u).expect("symmetry");
        rb[pb] = a;
        let mut anchor = self.outer_anchor;
        if let Some((x, y)) = anchor {
            // The created edge lies on the same face walks the removed pair did.
            if y == u {
                anchor = Some((x, if x == a { b } else { a }));
            } else if x == u {
                anchor = Some((if y == a { b } else { a }, y));
            }
        }
        let g = PlanarEmbeddedGraph {
            rotation,
            outer_anchor: anchor,
        };
        debug_assert!(g.validate().is_ok(), "smooth_degree2 broke invariants");
        Ok((g, (a, b)))
    }

    /// Restriction of the graph to `keep`, which must be a union of connected
    /// components (so rotations survive untouched). The anchor is kept when
    /// both endpoints survive, dropped otherwise.
    pub fn restrict_to(&self, keep: &BTreeSet<VertexId>) -> Self {
        let rotation: BTreeMap<VertexId, Vec<VertexId>> = self
            .rotation
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.clone()))
            .collect();
        let anchor = self
            .outer_anchor
            .filter(|(a, b)| keep.contains(a) && keep.contains(b));
        PlanarEmbeddedGraph {
            rotation,
            outer_anchor: anchor,
        }
    }
}
