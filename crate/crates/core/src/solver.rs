//! The certifying reduction loop: repeatedly applies one of four moves (drop
//! a low-degree vertex, harvest a triangle at a degree-2 vertex, smooth a
//! degree-2 vertex, harvest a good triangle), accumulating a feedback vertex
//! set F and a vertex-disjoint cycle packing C with |F| <= 2|C|. Packed
//! cycles are lifted back to the original graph through smoothing provenance,
//! and the final certificate is re-verified before it is returned.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::embedding::{Edge, EmbeddingError, Face, PlanarEmbeddedGraph, VertexId};
use crate::recognition::{find_base_faces, is_based_planar, AdjacencyMode};
use crate::triangles::{all_good_triangles, TriangleError};

/// One reduction move, as recorded in the certificate trace.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReductionKind {
    /// Delete a vertex of degree <= 1.
    DropLowDegree { u: VertexId },
    /// Triangle `xyz` with `d(x) = 2`: pack the triangle, delete `y`, `z`.
    TriangleDeg2 { x: VertexId, y: VertexId, z: VertexId },
    /// Degree-2 vertex not in a triangle: suppress it, joining its neighbors.
    Smooth {
        u: VertexId,
        a: VertexId,
        b: VertexId,
        created_edge: Edge,
    },
    /// Good triangle `xyz`: pack it, delete `y`, `z`.
    GoodTriangleStep { x: VertexId, y: VertexId, z: VertexId },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReductionStep {
    pub index: usize,
    pub kind: ReductionKind,
}

/// The artifact's primary output: a feedback vertex set and a cycle packing
/// of the original graph, with the trace that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub fvs: BTreeSet<VertexId>,
    pub packing: Vec<Vec<VertexId>>,
    pub trace: Vec<ReductionStep>,
    /// True iff every packed cycle bounds a face of the original graph.
    pub face_packing_flag: bool,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("input is not based planar with the outer face as base face")]
    NotBasedPlanar,
    #[error("no step: graph is empty")]
    NoStep,
    #[error("invariant violation: {message}\n{dump}")]
    InvariantViolation { message: String, dump: String },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl From<TriangleError> for SolveError {
    fn from(e: TriangleError) -> Self {
        match e {
            TriangleError::Embedding(e) => SolveError::Embedding(e),
            other => SolveError::InvariantViolation {
                message: other.to_string(),
                dump: String::new(),
            },
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("no base face")]
pub struct NoBaseFace;

/// The packing exclusion rule for the outer face: a cycle is rejected iff its
/// edge set equals the outer face's and no other face shares that edge set.
/// (When a component is a bare cycle, inner and outer boundaries coincide and
/// the cycle counts as the inner face.)
pub fn cycle_excluded_as_outer(
    faces: &[Face],
    outer_id: usize,
    cycle_edges: &BTreeSet<Edge>,
) -> bool {
    let outer = &faces[outer_id];
    if *cycle_edges != outer.edge_set {
        return false;
    }
    !faces
        .iter()
        .any(|f| f.id != outer_id && f.edge_set == outer.edge_set)
}

pub fn cycle_edge_set(cycle: &[VertexId]) -> BTreeSet<Edge> {
    (0..cycle.len())
        .map(|i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect()
}

/// Picks the first applicable reduction in case order, lexicographic within a
/// case. `skip` filters triangle candidates (both triangle cases); the solver
/// uses it to keep the outer face out of the packing.
fn choose_step(
    g: &PlanarEmbeddedGraph,
    skip: &dyn Fn(&[VertexId; 3]) -> bool,
) -> Result<Option<ReductionKind>, SolveError> {
    if g.vertex_count() == 0 {
        return Ok(None);
    }
    if let Some(u) = g.vertices().find(|&u| g.degree(u).unwrap() <= 1) {
        return Ok(Some(ReductionKind::DropLowDegree { u }));
    }
    let deg2: Vec<VertexId> = g
        .vertices()
        .filter(|&u| g.degree(u).unwrap() == 2)
        .collect();
    for &x in &deg2 {
        let rot = g.rotation(x)?;
        let (a, b) = (rot[0], rot[1]);
        if g.has_edge(a, b) {
            let (y, z) = (a.min(b), a.max(b));
            if !skip(&[x, y, z]) {
                return Ok(Some(ReductionKind::TriangleDeg2 { x, y, z }));
            }
        }
    }
    for &u in &deg2 {
        let rot = g.rotation(u)?;
        let (a, b) = (rot[0], rot[1]);
        if !g.has_edge(a, b) {
            return Ok(Some(ReductionKind::Smooth {
                u,
                a,
                b,
                created_edge: Edge::new(a, b),
            }));
        }
    }
    for t in all_good_triangles(g)? {
        if !skip(&t.vertices()) {
            return Ok(Some(ReductionKind::GoodTriangleStep {
                x: t.x,
                y: t.y,
                z: t.z,
            }));
        }
    }
    Ok(None)
}

/// Classifies the next reduction for a standalone graph. Triangle candidates
/// whose edge set coincides with the graph's own outer face are skipped
/// unless a twin inner face makes the choice legal.
pub fn step_classify(g: &PlanarEmbeddedGraph) -> Result<ReductionStep, SolveError> {
    g.validate()?;
    let faces = g.trace_faces()?;
    let outer = PlanarEmbeddedGraph::outer_face_id(&faces);
    let skip = |t: &[VertexId; 3]| match outer {
        Some(oid) => {
            let edges = cycle_edge_set(t);
            cycle_excluded_as_outer(&faces, oid, &edges)
        }
        None => false,
    };
    match choose_step(g, &skip)? {
        Some(kind) => Ok(ReductionStep { index: 0, kind }),
        None if g.vertex_count() == 0 => Err(SolveError::NoStep),
        None => Err(SolveError::InvariantViolation {
            message: "no applicable reduction step".into(),
            dump: crate::format::serialize_graph(g),
        }),
    }
}

/// Re-anchors a mutated graph: among faces adjacent to every other face,
/// prefer one containing a surviving previously-outer edge, smallest boundary
/// dart breaking ties. Edgeless graphs keep no anchor.
pub fn rebase(
    g: &PlanarEmbeddedGraph,
    previous_outer_edges: &BTreeSet<Edge>,
) -> Result<PlanarEmbeddedGraph, NoBaseFace> {
    rebase_with_mode(g, previous_outer_edges, AdjacencyMode::EdgeSharing)
}

pub fn rebase_with_mode(
    g: &PlanarEmbeddedGraph,
    previous_outer_edges: &BTreeSet<Edge>,
    mode: AdjacencyMode,
) -> Result<PlanarEmbeddedGraph, NoBaseFace> {
    if g.edge_count() == 0 {
        return Ok(g.clone());
    }
    let probe = match g.outer_anchor() {
        Some(_) => g.clone(),
        None => {
            let dart = *g.darts().first().expect("edges exist");
            g.with_outer_anchor(dart).expect("dart exists")
        }
    };
    let faces = probe.trace_faces().map_err(|_| NoBaseFace)?;
    let base = find_base_faces(&faces, mode);
    if base.is_empty() {
        return Err(NoBaseFace);
    }
    let preferred: Vec<usize> = base
        .iter()
        .copied()
        .filter(|&id| {
            faces[id]
                .edge_set
                .intersection(previous_outer_edges)
                .next()
                .is_some()
        })
        .collect();
    let pool = if preferred.is_empty() { base } else { preferred };
    let best = pool
        .into_iter()
        .min_by_key(|&id| faces[id].boundary[0])
        .expect("nonempty pool");
    Ok(probe
        .with_outer_anchor(faces[best].boundary[0])
        .expect("boundary dart exists"))
}

struct SolverCtx {
    /// created edge -> the smoothed vertex it replaced.
    provenance: BTreeMap<Edge, VertexId>,
    fvs: BTreeSet<VertexId>,
    packing: Vec<Vec<VertexId>>,
    trace: Vec<ReductionStep>,
}

impl SolverCtx {
    /// Appends the original-graph path from `p` to `q` (excluding `p`).
    fn expand_edge(&self, p: VertexId, q: VertexId, out: &mut Vec<VertexId>) {
        if let Some(&mid) = self.provenance.get(&Edge::new(p, q)) {
            self.expand_edge(p, mid, out);
            self.expand_edge(mid, q, out);
        } else {
            out.push(q);
        }
    }

    /// Lifts a current-graph triangle to a cycle of the original graph by
    /// expanding every created edge recursively.
    fn lift_triangle(&self, t: &[VertexId; 3]) -> Vec<VertexId> {
        let mut out = vec![t[0]];
        self.expand_edge(t[0], t[1], &mut out);
        self.expand_edge(t[1], t[2], &mut out);
        self.expand_edge(t[2], t[0], &mut out);
        out.pop();
        out
    }

    fn violation(&self, message: &str, g: &PlanarEmbeddedGraph) -> SolveError {
        SolveError::InvariantViolation {
            message: message.into(),
            dump: format!(
                "{}trace:\n{}",
                crate::format::serialize_graph(g),
                crate::format::serialize_trace(&self.trace)
            ),
        }
    }
}

/// Runs the reduction to exhaustion and returns a verified certificate.
///
/// The input must be based planar (edge-sharing) with the outer face as base
/// face; disconnected inputs are accepted when every component has a base
/// face. After every mutation the affected component is re-anchored and its
/// base face re-verified rather than trusted.
pub fn solve(g: &PlanarEmbeddedGraph) -> Result<Certificate, SolveError> {
    solve_with_mode(g, AdjacencyMode::EdgeSharing)
}

pub fn solve_with_mode(
    g: &PlanarEmbeddedGraph,
    mode: AdjacencyMode,
) -> Result<Certificate, SolveError> {
    g.validate()?;
    let original = g.clone();
    let original_faces = original.trace_faces()?;
    let orig_outer = PlanarEmbeddedGraph::outer_face_id(&original_faces);
    let outer_edges: BTreeSet<Edge> = orig_outer
        .map(|i| original_faces[i].edge_set.clone())
        .unwrap_or_default();

    let mut worklist: Vec<(PlanarEmbeddedGraph, BTreeSet<Edge>)> = Vec::new();
    for comp in original.components() {
        let sub = original.restrict_to(&comp);
        let remnants: BTreeSet<Edge> = outer_edges
            .iter()
            .filter(|e| comp.contains(&e.0))
            .copied()
            .collect();
        let sub = if sub.outer_anchor().is_some() {
            if !is_based_planar(&sub, mode)? {
                return Err(SolveError::NotBasedPlanar);
            }
            sub
        } else {
            rebase_with_mode(&sub, &remnants, mode).map_err(|_| SolveError::NotBasedPlanar)?
        };
        worklist.push((sub, remnants));
    }

    let mut ctx = SolverCtx {
        provenance: BTreeMap::new(),
        fvs: BTreeSet::new(),
        packing: Vec::new(),
        trace: Vec::new(),
    };

    while !worklist.is_empty() {
        worklist.sort_by_key(|(g, _)| g.vertices().next());
        let (mut cur, mut remnants) = worklist.remove(0);
        loop {
            if cur.vertex_count() == 0 {
                break;
            }
            let kind = {
                let skip = |t: &[VertexId; 3]| match orig_outer {
                    Some(oid) => {
                        let lifted = ctx.lift_triangle(t);
                        cycle_excluded_as_outer(&original_faces, oid, &cycle_edge_set(&lifted))
                    }
                    None => false,
                };
                match choose_step(&cur, &skip)? {
                    Some(kind) => kind,
                    None => return Err(ctx.violation("no applicable reduction step", &cur)),
                }
            };
            let next = match kind {
                ReductionKind::DropLowDegree { u } => cur.delete_vertex(u)?,
                ReductionKind::TriangleDeg2 { x, y, z }
                | ReductionKind::GoodTriangleStep { x, y, z } => {
                    ctx.fvs.insert(y);
                    ctx.fvs.insert(z);
                    ctx.packing.push(ctx.lift_triangle(&[x, y, z]));
                    cur.delete_vertex(y)?.delete_vertex(z)?
                }
                ReductionKind::Smooth {
                    u, a, b, created_edge,
                } => {
                    let (g2, created) = cur.smooth_degree2(u)?;
                    debug_assert_eq!(Edge::new(created.0, created.1), created_edge);
                    ctx.provenance.insert(created_edge, u);
                    let e1 = Edge::new(a, u);
                    let e2 = Edge::new(u, b);
                    if remnants.remove(&e1) | remnants.remove(&e2) {
                        remnants.insert(created_edge);
                    }
                    g2
                }
            };
            ctx.trace.push(ReductionStep {
                index: ctx.trace.len(),
                kind,
            });
            let alive = next.edges();
            remnants.retain(|e| alive.contains(e));

            let mut pieces: Vec<(PlanarEmbeddedGraph, BTreeSet<Edge>)> = Vec::new();
            for comp in next.components() {
                let sub = next.restrict_to(&comp);
                let rem: BTreeSet<Edge> = remnants
                    .iter()
                    .filter(|e| comp.contains(&e.0))
                    .copied()
                    .collect();
                let sub = match rebase_with_mode(&sub, &rem, mode) {
                    Ok(sub) => sub,
                    Err(NoBaseFace) => {
                        return Err(ctx.violation("no base face after reduction", &sub))
                    }
                };
                pieces.push((sub, rem));
            }
            if pieces.len() == 1 {
                let piece = pieces.pop().unwrap();
                cur = piece.0;
                remnants = piece.1;
            } else {
                worklist.extend(pieces);
                break;
            }
        }
    }

    let face_packing_flag = ctx.packing.iter().all(|cycle| {
        let ce = cycle_edge_set(cycle);
        original_faces.iter().any(|f| f.edge_set == ce)
    });
    let cert = Certificate {
        fvs: ctx.fvs,
        packing: ctx.packing,
        trace: ctx.trace,
        face_packing_flag,
    };
    match verify_certificate(&original, &cert) {
        Verdict::Valid => Ok(cert),
        Verdict::Invalid(vs) => {
            let message = format!(
                "final certificate check failed: {}",
                vs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            Err(SolveError::InvariantViolation {
                message,
                dump: format!(
                    "{}trace:\n{}",
                    crate::format::serialize_graph(&original),
                    crate::format::serialize_trace(&cert.trace)
                ),
            })
        }
    }
}

/// A certificate defect found by the verifier. Violations are data, not
/// errors: the verifier never trusts, and never panics on, its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidGraph(String),
    UnknownFvsVertex(VertexId),
    ResidualCyclic,
    NotACycle { index: usize, reason: String },
    NotDisjoint { v: VertexId, first: usize, second: usize },
    OuterFacePacked { index: usize },
    BoundViolated { fvs: usize, packing: usize },
    FaceFlagIncorrect { stated: bool, actual: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidGraph(m) => write!(f, "graph invalid: {m}"),
            Violation::UnknownFvsVertex(v) => write!(f, "fvs vertex {v} not in graph"),
            Violation::ResidualCyclic => write!(f, "residual cyclic: graph minus fvs has a cycle"),
            Violation::NotACycle { index, reason } => {
                write!(f, "packing[{index}] is not a cycle of the graph: {reason}")
            }
            Violation::NotDisjoint { v, first, second } => {
                write!(f, "not disjoint: vertex {v} in packing[{first}] and packing[{second}]")
            }
            Violation::OuterFacePacked { index } => {
                write!(f, "packing[{index}] equals the outer face boundary")
            }
            Violation::BoundViolated { fvs, packing } => {
                write!(f, "bound violated: {fvs} > 2*{packing}")
            }
            Violation::FaceFlagIncorrect { stated, actual } => {
                write!(f, "face packing flag incorrect: stated {stated}, actual {actual}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Valid => &[],
            Verdict::Invalid(vs) => vs,
        }
    }
}

struct DisjointSets {
    parent: BTreeMap<VertexId, VertexId>,
}

impl DisjointSets {
    fn new(verts: impl Iterator<Item = VertexId>) -> Self {
        DisjointSets {
            parent: verts.map(|v| (v, v)).collect(),
        }
    }

    fn find(&mut self, v: VertexId) -> VertexId {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let root = self.find(p);
        self.parent.insert(v, root);
        root
    }

    /// Returns false if both endpoints were already connected.
    fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}

/// Independently re-checks every certificate invariant against the original
/// graph: residual acyclicity, cycle membership and disjointness, outer-face
/// exclusion, the 2:1 bound, and the face-packing flag.
pub fn verify_certificate(g: &PlanarEmbeddedGraph, cert: &Certificate) -> Verdict {
    let mut vs: Vec<Violation> = Vec::new();
    let faces = match g.trace_faces() {
        Ok(f) => f,
        Err(e) => return Verdict::Invalid(vec![Violation::InvalidGraph(e.to_string())]),
    };
    let outer_id = PlanarEmbeddedGraph::outer_face_id(&faces);

    for &v in &cert.fvs {
        if !g.contains_vertex(v) {
            vs.push(Violation::UnknownFvsVertex(v));
        }
    }

    // Residual acyclicity via union-find over surviving edges.
    let mut dsu = DisjointSets::new(g.vertices().filter(|v| !cert.fvs.contains(v)));
    let mut cyclic = false;
    for e in g.edges() {
        if cert.fvs.contains(&e.0) || cert.fvs.contains(&e.1) {
            continue;
        }
        if !dsu.union(e.0, e.1) {
            cyclic = true;
            break;
        }
    }
    if cyclic {
        vs.push(Violation::ResidualCyclic);
    }

    let mut first_use: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, cycle) in cert.packing.iter().enumerate() {
        let mut reason = None;
        if cycle.len() < 3 {
            reason = Some("fewer than 3 vertices".to_string());
        } else if cycle.iter().collect::<BTreeSet<_>>().len() != cycle.len() {
            reason = Some("repeated vertex".to_string());
        } else if let Some(&v) = cycle.iter().find(|&&v| !g.contains_vertex(v)) {
            reason = Some(format!("vertex {v} not in graph"));
        } else if let Some(k) = (0..cycle.len())
            .find(|&k| !g.has_edge(cycle[k], cycle[(k + 1) % cycle.len()]))
        {
            reason = Some(format!(
                "missing edge {}-{}",
                cycle[k],
                cycle[(k + 1) % cycle.len()]
            ));
        }
        if let Some(reason) = reason {
            vs.push(Violation::NotACycle { index: i, reason });
            continue;
        }
        for &v in cycle {
            match first_use.get(&v) {
                Some(&j) => vs.push(Violation::NotDisjoint {
                    v,
                    first: j,
                    second: i,
                }),
                None => {
                    first_use.insert(v, i);
                }
            }
        }
        if let Some(oid) = outer_id {
            if cycle_excluded_as_outer(&faces, oid, &cycle_edge_set(cycle)) {
                vs.push(Violation::OuterFacePacked { index: i });
            }
        }
    }

    if cert.fvs.len() > 2 * cert.packing.len() {
        vs.push(Violation::BoundViolated {
            fvs: cert.fvs.len(),
            packing: cert.packing.len(),
        });
    }

    let actual_flag = cert.packing.iter().all(|cycle| {
        let ce = cycle_edge_set(cycle);
        faces.iter().any(|f| f.edge_set == ce)
    });
    if actual_flag != cert.face_packing_flag {
        vs.push(Violation::FaceFlagIncorrect {
            stated: cert.face_packing_flag,
            actual: actual_flag,
        });
    }

    if vs.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_halin, gen_prism, gen_random_based, gen_wheel};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn c5() -> PlanarEmbeddedGraph {
        let mut rot = BTreeMap::new();
        for i in 0..5u32 {
            rot.insert(v(i), vec![v((i + 4) % 5), v((i + 1) % 5)]);
        }
        PlanarEmbeddedGraph::new(rot, (v(0), v(1))).unwrap()
    }

    #[test]
    fn classify_c5_smooths_smallest() {
        let step = step_classify(&c5()).unwrap();
        assert!(matches!(
            step.kind,
            ReductionKind::Smooth { u, .. } if u == v(0)
        ));
    }

    #[test]
    fn classify_k3_harvests_triangle() {
        let k3 = crate::embedding::tests::k3();
        let step = step_classify(&k3).unwrap();
        assert_eq!(
            step.kind,
            ReductionKind::TriangleDeg2 { x: v(0), y: v(1), z: v(2) }
        );
    }

    #[test]
    fn classify_w5_picks_good_triangle() {
        let step = step_classify(&gen_wheel(5)).unwrap();
        assert_eq!(
            step.kind,
            ReductionKind::GoodTriangleStep { x: v(0), y: v(1), z: v(5) }
        );
    }

    #[test]
    fn classify_empty_is_no_step() {
        let g = PlanarEmbeddedGraph::from_rotations(BTreeMap::new(), None).unwrap();
        assert!(matches!(step_classify(&g), Err(SolveError::NoStep)));
    }

    #[test]
    fn solve_k3() {
        let k3 = crate::embedding::tests::k3();
        let cert = solve(&k3).unwrap();
        assert_eq!(cert.fvs, [v(1), v(2)].into_iter().collect());
        assert_eq!(cert.packing, vec![vec![v(0), v(1), v(2)]]);
        assert!(verify_certificate(&k3, &cert).is_valid());
    }

    #[test]
    fn solve_w5_is_tight() {
        let w5 = gen_wheel(5);
        let cert = solve(&w5).unwrap();
        assert_eq!(cert.fvs.len(), 2);
        assert!(cert.fvs.contains(&v(5)), "hub is deleted");
        assert_eq!(cert.packing.len(), 1);
        assert_eq!(cert.packing[0].len(), 3);
        assert!(verify_certificate(&w5, &cert).is_valid());
    }

    #[test]
    fn solve_k4_avoids_outer_triangle() {
        let k4 = gen_wheel(3);
        let cert = solve(&k4).unwrap();
        assert_eq!(cert.fvs.len(), 2);
        assert_eq!(cert.packing.len(), 1);
        // The packed triangle contains the hub, never the pure rim.
        assert!(cert.packing[0].contains(&v(3)));
        assert!(verify_certificate(&k4, &cert).is_valid());
    }

    #[test]
    fn solve_c5_packs_the_cycle_itself() {
        let g = c5();
        let cert = solve(&g).unwrap();
        assert_eq!(cert.packing.len(), 1);
        assert_eq!(cert.packing[0].len(), 5, "smoothed edges are lifted back");
        assert!(verify_certificate(&g, &cert).is_valid());
    }

    #[test]
    fn solve_prism_on_square_packs_two_triangles() {
        let g = gen_prism(3);
        let cert = solve(&g).unwrap();
        assert_eq!(cert.packing.len(), 2);
        assert_eq!(cert.fvs.len(), 4);
        assert!(verify_certificate(&g, &cert).is_valid());
    }

    #[test]
    fn solve_rejects_cube() {
        let q3 = gen_prism(4);
        assert!(matches!(solve(&q3), Err(SolveError::NotBasedPlanar)));
    }

    #[test]
    fn solve_disconnected_components_union() {
        // Two disjoint K4s: ids 0..4 and 10..14.
        let k4a = gen_wheel(3);
        let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for u in k4a.vertices() {
            rot.insert(u, k4a.rotation(u).unwrap().to_vec());
            rot.insert(
                VertexId(u.0 + 10),
                k4a.rotation(u)
                    .unwrap()
                    .iter()
                    .map(|w| VertexId(w.0 + 10))
                    .collect(),
            );
        }
        let g = PlanarEmbeddedGraph::new(rot, (v(0), v(1))).unwrap();
        let cert = solve(&g).unwrap();
        assert_eq!(cert.packing.len(), 2);
        assert_eq!(cert.fvs.len(), 4);
        assert!(verify_certificate(&g, &cert).is_valid());
    }

    #[test]
    fn verify_rejects_tampering() {
        let k4 = gen_wheel(3);
        let cert = solve(&k4).unwrap();

        let mut no_fvs = cert.clone();
        no_fvs.fvs.clear();
        let verdict = verify_certificate(&k4, &no_fvs);
        assert!(verdict
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::ResidualCyclic)));

        let mut fat = cert.clone();
        fat.fvs = k4.vertices().take(3).collect(); // 3 > 2 * 1
        assert!(verify_certificate(&k4, &fat)
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::BoundViolated { .. })));

        let mut dup = cert.clone();
        dup.packing.push(dup.packing[0].clone());
        assert!(verify_certificate(&k4, &dup)
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::NotDisjoint { .. })));

        let mut outer = cert.clone();
        outer.packing[0] = vec![v(0), v(1), v(2)]; // the rim = outer face
        assert!(verify_certificate(&k4, &outer)
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::OuterFacePacked { .. })));

        let mut flag = cert.clone();
        flag.face_packing_flag = !flag.face_packing_flag;
        assert!(verify_certificate(&k4, &flag)
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::FaceFlagIncorrect { .. })));
    }

    #[test]
    fn rebase_examples() {
        // W5 minus hub and one rim vertex: a path, one face, trivially based.
        let w5 = gen_wheel(5);
        let path = w5.delete_vertex(v(5)).unwrap().delete_vertex(v(1)).unwrap();
        let rebased = rebase(&path, &BTreeSet::new()).unwrap();
        assert!(is_based_planar(&rebased, AdjacencyMode::EdgeSharing).unwrap());

        // K4 minus two vertices: a single edge.
        let k4 = gen_wheel(3);
        let e = k4.delete_vertex(v(2)).unwrap().delete_vertex(v(3)).unwrap();
        let rebased = rebase(&e, &BTreeSet::new()).unwrap();
        assert_eq!(rebased.trace_faces().unwrap().len(), 1);
    }

    #[test]
    fn rebase_prefers_surviving_outer_edges() {
        let g = gen_halin(2, 5);
        let faces = g.trace_faces().unwrap();
        let outer = faces[PlanarEmbeddedGraph::outer_face_id(&faces).unwrap()].clone();
        let rebased = rebase(&g, &outer.edge_set).unwrap();
        let faces2 = rebased.trace_faces().unwrap();
        let outer2 = &faces2[PlanarEmbeddedGraph::outer_face_id(&faces2).unwrap()];
        assert_eq!(outer2.edge_set, outer.edge_set);
    }

    #[test]
    fn solve_is_deterministic() {
        for seed in 0..5 {
            let g = gen_random_based(12, seed).unwrap();
            let a = solve(&g).unwrap();
            let b = solve(&g).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn termination_step_budget() {
        for seed in 0..5 {
            let g = gen_random_based(15, seed).unwrap();
            let cert = solve(&g).unwrap();
            assert!(cert.trace.len() <= g.vertex_count());
        }
    }
}
