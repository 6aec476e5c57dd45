//! Seedable construction of test corpora: Halin graphs, wheels, fans,
//! outerplanar graphs, randomized based planar graphs, and prisms.
//!
//! Every generator emits a validated rotation system with an anchor whose
//! face satisfies the family's defining property. Identical `(family, n,
//! seed)` inputs produce byte-identical graphs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedding::{Dart, Edge, Face, PlanarEmbeddedGraph, VertexId};
use crate::recognition::{is_based_planar, is_halin, AdjacencyMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

/// Graph family selector for the corpus generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Halin,
    Wheel,
    Fan,
    Outerplanar,
    RandomBased,
    /// Random based planar graph repaired to minimum degree 3.
    RandomBasedMin3,
    /// Circular ladder; hamiltonian, based planar only for n = 3. Experimental.
    Prism,
}

/// A reproducible generation request: same spec, same bytes out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenSpec {
    pub family: Family,
    /// Size parameter; meaning depends on the family (see `generate`).
    pub n: usize,
    pub seed: u64,
}

/// Dispatches a `GenSpec` to the family generator. `n` is the internal node
/// count for Halin, the rim/path/cycle size otherwise.
pub fn generate(spec: &GenSpec) -> Result<PlanarEmbeddedGraph, GenError> {
    Ok(match spec.family {
        Family::Halin => gen_halin(spec.n, spec.seed),
        Family::Wheel => gen_wheel(spec.n),
        Family::Fan => gen_fan(spec.n),
        Family::Outerplanar => gen_outerplanar(spec.n, spec.seed),
        Family::RandomBased => gen_random_based(spec.n, spec.seed)?,
        Family::RandomBasedMin3 => gen_random_based_min3(spec.n, spec.seed)?,
        Family::Prism => gen_prism(spec.n),
    })
}

fn vid(i: usize) -> VertexId {
    VertexId(i as u32)
}

/// Wheel with `rim >= 3` rim vertices `0..rim` and hub `rim`, anchored on the
/// rim face. `rim = 3` is K4.
pub fn gen_wheel(rim: usize) -> PlanarEmbeddedGraph {
    assert!(rim >= 3, "wheel needs at least 3 rim vertices");
    let hub = vid(rim);
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 0..rim {
        let prev = vid((i + rim - 1) % rim);
        let next = vid((i + 1) % rim);
        rotation.insert(vid(i), vec![hub, prev, next]);
    }
    rotation.insert(hub, (0..rim).map(vid).collect());
    let g = PlanarEmbeddedGraph::new(rotation, (vid(0), vid(1))).expect("wheel is planar");
    debug_assert!(outer_is_cycle_of_len(&g, rim));
    g
}

/// Fan: path `0..n` plus an apex `n` joined to every path vertex, anchored on
/// the enclosing (n+1)-cycle. `n = 2` is K3.
pub fn gen_fan(n: usize) -> PlanarEmbeddedGraph {
    assert!(n >= 2, "fan needs at least 2 path vertices");
    let apex = vid(n);
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 0..n {
        let mut rot = vec![apex];
        if i > 0 {
            rot.push(vid(i - 1));
        }
        if i + 1 < n {
            rot.push(vid(i + 1));
        }
        rotation.insert(vid(i), rot);
    }
    rotation.insert(apex, (0..n).map(vid).collect());
    let g = PlanarEmbeddedGraph::new(rotation, (vid(0), vid(1))).expect("fan is planar");
    debug_assert!(outer_is_cycle_of_len(&g, n + 1));
    g
}

/// Circular ladder CL_n: inner cycle `0..n`, outer cycle `n..2n`, rungs
/// `i — n+i`, anchored on the rung face containing `0-1`. Hamiltonian for all
/// n; based planar only for n = 3 (larger prisms have a face disjoint from
/// every anchoring choice).
pub fn gen_prism(n: usize) -> PlanarEmbeddedGraph {
    assert!(n >= 3, "prism needs cycles of length at least 3");
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 0..n {
        let a_prev = vid((i + n - 1) % n);
        let a_next = vid((i + 1) % n);
        rotation.insert(vid(i), vec![vid(n + i), a_next, a_prev]);
        let b_prev = vid(n + (i + n - 1) % n);
        let b_next = vid(n + (i + 1) % n);
        rotation.insert(vid(n + i), vec![vid(i), b_prev, b_next]);
    }
    let g = PlanarEmbeddedGraph::new(rotation, (vid(0), vid(1))).expect("prism is planar");
    debug_assert_eq!(g.trace_faces().unwrap().len(), n + 2);
    g
}

fn outer_is_cycle_of_len(g: &PlanarEmbeddedGraph, len: usize) -> bool {
    let faces = g.trace_faces().unwrap();
    let outer = &faces[PlanarEmbeddedGraph::outer_face_id(&faces).unwrap()];
    outer.len() == len && outer.as_simple_cycle().is_some()
}

/// Random Halin graph: a plane tree with `internal_nodes >= 1` internal
/// vertices of degree >= 3 whose leaves are joined into a cycle in traversal
/// order. Internal vertices get ids `0..internal_nodes`, leaves follow.
pub fn gen_halin(internal_nodes: usize, seed: u64) -> PlanarEmbeddedGraph {
    assert!(internal_nodes >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = internal_nodes;

    // Random recursive tree on the internal vertices.
    let mut tree_nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); k];
    for i in 1..k {
        let p = rng.gen_range(0..i);
        tree_nbrs[p].push(vid(i));
        tree_nbrs[i].push(vid(p));
    }

    // Attach leaves: enough to reach degree 3, plus a few extra.
    let mut next_id = k;
    for i in 0..k {
        let need = 3usize.saturating_sub(tree_nbrs[i].len());
        let extra = rng.gen_range(0..=2);
        for _ in 0..need + extra {
            tree_nbrs[i].push(vid(next_id));
            next_id += 1;
        }
    }

    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (i, nbrs) in tree_nbrs.iter_mut().enumerate() {
        nbrs.shuffle(&mut rng);
        rotation.insert(vid(i), nbrs.clone());
    }
    for (&v, nbrs) in rotation.clone().iter() {
        for &w in nbrs {
            rotation.entry(w).or_insert_with(|| vec![v]);
        }
    }

    // Trace the tree's single face to read off the leaf order.
    let anchor = (vid(0), rotation[&vid(0)][0]);
    let tree = PlanarEmbeddedGraph::new(rotation.clone(), anchor).expect("tree is planar");
    let faces = tree.trace_faces().unwrap();
    assert_eq!(faces.len(), 1);
    let leaves: Vec<VertexId> = faces[0]
        .boundary
        .iter()
        .map(|&(u, _)| u)
        .filter(|&u| tree.degree(u).unwrap() == 1)
        .collect();
    let m = leaves.len();
    assert!(m >= 3);

    // Join consecutive leaves; rotation at a leaf is [parent, prev, next].
    for (idx, &l) in leaves.iter().enumerate() {
        let prev = leaves[(idx + m - 1) % m];
        let next = leaves[(idx + 1) % m];
        let rot = rotation.get_mut(&l).unwrap();
        rot.push(prev);
        rot.push(next);
    }
    let g = PlanarEmbeddedGraph::new(rotation, (leaves[0], leaves[1])).expect("halin is planar");

    // The anchored face must be exactly the leaf cycle.
    let faces = g.trace_faces().unwrap();
    let outer = &faces[PlanarEmbeddedGraph::outer_face_id(&faces).unwrap()];
    assert_eq!(outer.len(), m, "anchored face is the leaf cycle");
    assert!(is_halin(&g).unwrap().is_some());
    assert!(is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap());
    g
}

/// Random outerplanar graph: cycle `0..n` plus a random subset of the chords
/// of a serpentine triangulation, anchored on the full cycle. Serpentine
/// triangles all touch the boundary, so every inner face shares an edge with
/// the outer face.
pub fn gen_outerplanar(n: usize, seed: u64) -> PlanarEmbeddedGraph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chords: Vec<(usize, usize)> = Vec::new();
    let (mut lo, mut hi) = (0usize, n - 1);
    while hi - lo >= 2 {
        if rng.gen_bool(0.5) {
            if hi - (lo + 1) >= 2 {
                chords.push((lo + 1, hi));
            }
            lo += 1;
        } else {
            if (hi - 1) - lo >= 2 {
                chords.push((lo, hi - 1));
            }
            hi -= 1;
        }
    }
    chords.retain(|_| rng.gen_bool(0.75));

    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        nbrs[i].push((i + 1) % n);
        nbrs[i].push((i + n - 1) % n);
    }
    for &(a, b) in &chords {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (i, list) in nbrs.iter_mut().enumerate() {
        // Convex-position rotation: sort by circular distance from i.
        list.sort_by_key(|&j| (j + n - i) % n);
        rotation.insert(vid(i), list.iter().map(|&j| vid(j)).collect());
    }
    let g = PlanarEmbeddedGraph::new(rotation, (vid(0), vid(1))).expect("outerplanar");
    debug_assert!(outer_is_cycle_of_len(&g, n));
    assert!(is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap());
    g
}

const GEN_ATTEMPTS: usize = 32;

/// Random based planar graph on exactly `n >= 3` vertices: a start cycle
/// (the outer face) grown by base-face-preserving moves — chords inside inner
/// faces and new vertices joined to >= 3 boundary vertices. Each emitted graph
/// is re-verified; an unlucky random walk is retried with fresh randomness.
pub fn gen_random_based(n: usize, seed: u64) -> Result<PlanarEmbeddedGraph, GenError> {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GEN_ATTEMPTS {
        if let Some(g) = try_random_based(n, &mut rng) {
            assert!(is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap());
            return Ok(g);
        }
    }
    Err(GenError::GenerationFailed(GEN_ATTEMPTS))
}

/// `gen_random_based` followed by chord/vertex repairs until minimum degree 3.
/// Repairs may add a handful of vertices beyond `n`.
pub fn gen_random_based_min3(n: usize, seed: u64) -> Result<PlanarEmbeddedGraph, GenError> {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GEN_ATTEMPTS {
        let Some(g) = try_random_based(n, &mut rng) else {
            continue;
        };
        if let Some(g) = repair_min_degree3(g) {
            assert!(is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap());
            assert!(g.vertices().all(|v| g.degree(v).unwrap() >= 3));
            return Ok(g);
        }
    }
    Err(GenError::GenerationFailed(GEN_ATTEMPTS))
}

/// A corner of a face walk: occurrence of `vertex` with its neighbors along
/// the walk. A chord or spoke drawn into the face at this corner is spliced
/// into rotation(vertex) directly after `arrival`.
#[derive(Clone, Copy, Debug)]
struct Corner {
    vertex: VertexId,
    arrival: VertexId,
}

fn corners(face: &Face) -> Vec<Corner> {
    let len = face.boundary.len();
    (0..len)
        .map(|k| Corner {
            vertex: face.boundary[k].0,
            arrival: face.boundary[(k + len - 1) % len].0,
        })
        .collect()
}

fn insert_after(rot: &mut Vec<VertexId>, after: VertexId, new: VertexId) {
    let pos = rot
        .iter()
        .position(|&w| w == after)
        .expect("corner arrival neighbor present");
    rot.insert(pos + 1, new);
}

/// Splices a chord between corners `i` and `j` of `face` into the rotations.
fn apply_chord(
    rotation: &mut BTreeMap<VertexId, Vec<VertexId>>,
    face: &Face,
    i: usize,
    j: usize,
) {
    let cs = corners(face);
    let (u, w) = (cs[i], cs[j]);
    insert_after(rotation.get_mut(&u.vertex).unwrap(), u.arrival, w.vertex);
    insert_after(rotation.get_mut(&w.vertex).unwrap(), w.arrival, u.vertex);
}

/// Splices a new vertex joined to the given corners (ascending walk
/// positions) into the rotations.
fn apply_vertex_insert(
    rotation: &mut BTreeMap<VertexId, Vec<VertexId>>,
    face: &Face,
    positions: &[usize],
    new: VertexId,
) {
    let cs = corners(face);
    for &k in positions {
        let c = cs[k];
        insert_after(rotation.get_mut(&c.vertex).unwrap(), c.arrival, new);
    }
    let spokes: Vec<VertexId> = positions.iter().rev().map(|&k| cs[k].vertex).collect();
    rotation.insert(new, spokes);
}

/// Walk positions whose departing edge lies on the outer face, restricted to
/// positions with pairwise distinct vertices.
fn outer_edge_positions(face: &Face, outer: &Face) -> Vec<usize> {
    let mut seen = std::collections::BTreeSet::new();
    (0..face.boundary.len())
        .filter(|&k| {
            let (u, v) = face.boundary[k];
            outer.edge_set.contains(&Edge::new(u, v)) && seen.insert(u)
        })
        .collect()
}

fn rebuild(
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    anchor: Dart,
) -> PlanarEmbeddedGraph {
    PlanarEmbeddedGraph::new(rotation, anchor).expect("move preserved the embedding")
}

fn try_random_based(n: usize, rng: &mut ChaCha8Rng) -> Option<PlanarEmbeddedGraph> {
    // Start cycle large enough that the vertex-insert budget stays feasible:
    // each insert consumes up to two outer-edge slots of the face it splits,
    // and an insert needs three slots, so c - 2(inserts - 1) >= 3 must hold.
    let c_min = (2 * n + 1).div_ceil(3).clamp(3, n);
    let c = rng.gen_range(c_min..=n);
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 0..c {
        rotation.insert(vid(i), vec![vid((i + c - 1) % c), vid((i + 1) % c)]);
    }
    let anchor = (vid(0), vid(1));
    let mut g = rebuild(rotation, anchor);

    // Vertex inserts first, then chords; chords never unlock inserts.
    for next in c..n {
        g = insert_vertex_move(g, vid(next), rng)?;
    }
    let chord_budget = rng.gen_range(0..=n);
    for _ in 0..chord_budget {
        if let Some(h) = chord_move(&g, rng) {
            g = h;
        }
    }
    Some(g)
}

/// One vertex-insert move: pick an inner face with at least three distinct
/// outer-edge corners and join a new vertex to a random subset of them. Every
/// resulting sub-face starts with one of the chosen outer edges, so the base
/// face property survives.
fn insert_vertex_move(
    g: PlanarEmbeddedGraph,
    new: VertexId,
    rng: &mut ChaCha8Rng,
) -> Option<PlanarEmbeddedGraph> {
    let faces = g.trace_faces().unwrap();
    let outer_id = PlanarEmbeddedGraph::outer_face_id(&faces)?;
    let outer = faces[outer_id].clone();
    let mut eligible: Vec<(usize, Vec<usize>)> = faces
        .iter()
        .filter(|f| f.id != outer_id)
        .map(|f| (f.id, outer_edge_positions(f, &outer)))
        .filter(|(_, ps)| ps.len() >= 3)
        .collect();
    if eligible.is_empty() {
        return None;
    }
    let (fid, positions) = eligible.remove(rng.gen_range(0..eligible.len()));
    let t = rng.gen_range(3..=positions.len().min(5));
    let mut chosen = positions;
    // Random t-subset, keeping ascending walk order.
    while chosen.len() > t {
        chosen.remove(rng.gen_range(0..chosen.len()));
    }
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, g.rotation(v).unwrap().to_vec())).collect();
    apply_vertex_insert(&mut rotation, &faces[fid], &chosen, new);
    let h = rebuild(rotation, g.outer_anchor().unwrap());
    debug_assert!(is_based_planar(&h, AdjacencyMode::EdgeSharing).unwrap());
    Some(h)
}

/// One chord move: pick an inner face and a corner pair such that both walk
/// segments between them contain an outer edge, keeping both halves adjacent
/// to the outer face.
fn chord_move(g: &PlanarEmbeddedGraph, rng: &mut ChaCha8Rng) -> Option<PlanarEmbeddedGraph> {
    let faces = g.trace_faces().unwrap();
    let outer_id = PlanarEmbeddedGraph::outer_face_id(&faces)?;
    let outer = faces[outer_id].clone();
    let inner: Vec<&Face> = faces.iter().filter(|f| f.id != outer_id).collect();
    if inner.is_empty() {
        return None;
    }
    let f = inner[rng.gen_range(0..inner.len())];
    let cs = corners(f);
    let len = cs.len();
    let outer_pos: Vec<usize> = (0..len)
        .filter(|&k| {
            let (u, v) = f.boundary[k];
            outer.edge_set.contains(&Edge::new(u, v))
        })
        .collect();
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let (u, w) = (cs[i].vertex, cs[j].vertex);
            if u == w || g.has_edge(u, w) {
                continue;
            }
            let seg1 = outer_pos.iter().any(|&p| p >= i && p < j);
            let seg2 = outer_pos.iter().any(|&p| p < i || p >= j);
            if seg1 && seg2 {
                candidates.push((i, j));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    let (i, j) = candidates[rng.gen_range(0..candidates.len())];
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, g.rotation(v).unwrap().to_vec())).collect();
    apply_chord(&mut rotation, f, i, j);
    let h = rebuild(rotation, g.outer_anchor().unwrap());
    debug_assert!(is_based_planar(&h, AdjacencyMode::EdgeSharing).unwrap());
    Some(h)
}

/// Raises every degree-2 vertex to degree 3 by drawing a chord from it into
/// its inner face (any partner keeps both halves based: the vertex's own two
/// outer edges land one per half). Returns `None` when a vertex gets stuck,
/// e.g. its inner face is a triangle.
fn repair_min_degree3(mut g: PlanarEmbeddedGraph) -> Option<PlanarEmbeddedGraph> {
    loop {
        let Some(v) = g.vertices().find(|&u| g.degree(u).unwrap() < 3) else {
            return Some(g);
        };
        if g.degree(v).unwrap() < 2 {
            return None;
        }
        let faces = g.trace_faces().unwrap();
        let outer_id = PlanarEmbeddedGraph::outer_face_id(&faces)?;
        let f = faces
            .iter()
            .find(|f| f.id != outer_id && f.vertex_set.contains(&v))?;
        let cs = corners(f);
        let vi = cs.iter().position(|c| c.vertex == v)?;
        let len = cs.len();
        let ok = |j: usize| {
            let w = cs[j].vertex;
            w != v && !g.has_edge(v, w)
        };
        // A chord segment of length 2 turns its lone middle vertex's corner
        // into a triangle; if that vertex still has degree 2 it can never be
        // repaired afterwards. Prefer partners avoiding that, then distance.
        let strands = |j: usize| {
            let d1 = (j + len - vi) % len;
            let d2 = len - d1;
            let lone = |start: usize, d: usize| {
                d == 2 && g.degree(cs[(start + 1) % len].vertex).unwrap() == 2
            };
            lone(vi, d1) || lone(j, d2)
        };
        let dist = |j: usize| {
            let d = (j + len - vi) % len;
            d.min(len - d)
        };
        let j = (0..len)
            .filter(|&j| ok(j) && !strands(j))
            .max_by_key(|&j| dist(j))
            .or_else(|| (0..len).filter(|&j| ok(j)).max_by_key(|&j| dist(j)))?;
        let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
            g.vertices().map(|u| (u, g.rotation(u).unwrap().to_vec())).collect();
        let (a, b) = (vi.min(j), vi.max(j));
        apply_chord(&mut rotation, f, a, b);
        g = rebuild(rotation, g.outer_anchor().unwrap());
        if !is_based_planar(&g, AdjacencyMode::EdgeSharing).unwrap() {
            return None;
        }
    }
}
