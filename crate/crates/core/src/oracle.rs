//! Exponential-time exact computations of minimum feedback vertex set,
//! maximum cycle packing, and maximum face packing on small graphs. These are
//! the ground truth every property test measures the solver against.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::embedding::{PlanarEmbeddedGraph, VertexId};
use crate::solver::{cycle_edge_set, cycle_excluded_as_outer};

pub const DEFAULT_VERTEX_LIMIT: usize = 16;
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub vertex_limit: usize,
    pub cycle_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            vertex_limit: DEFAULT_VERTEX_LIMIT,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }
}

impl OracleConfig {
    /// Default limits, with the vertex cap overridable through the
    /// `JONES_ORACLE_LIMIT` environment variable.
    pub fn from_env() -> Self {
        let mut cfg = OracleConfig::default();
        if let Some(limit) = std::env::var("JONES_ORACLE_LIMIT")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
        {
            cfg.vertex_limit = limit;
        }
        cfg
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, oracle limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("more than {cap} simple cycles")]
    TooManyCycles { cap: usize },
}

type Adj = BTreeMap<VertexId, BTreeSet<VertexId>>;

fn adjacency(g: &PlanarEmbeddedGraph) -> Adj {
    g.vertices()
        .map(|v| (v, g.rotation(v).unwrap().iter().copied().collect()))
        .collect()
}

/// Shortest cycle in `adj`, if any: for every edge, the shortest path between
/// its endpoints avoiding that edge closes the smallest cycle through it.
fn find_short_cycle(adj: &Adj) -> Option<Vec<VertexId>> {
    let mut best: Option<Vec<VertexId>> = None;
    for (&u, nbrs) in adj {
        for &v in nbrs.iter().filter(|&&v| v > u) {
            if let Some(path) = shortest_path_avoiding(adj, u, v) {
                let better = best.as_ref().map(|b| path.len() < b.len()).unwrap_or(true);
                if better {
                    best = Some(path);
                }
            }
        }
    }
    best
}

/// BFS path from `u` to `v` that does not use the edge `u-v` directly.
fn shortest_path_avoiding(adj: &Adj, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut frontier = vec![u];
    parent.insert(u, u);
    while !frontier.is_empty() && !parent.contains_key(&v) {
        let mut next = Vec::new();
        for &x in &frontier {
            for &w in &adj[&x] {
                if x == u && w == v {
                    continue;
                }
                if !parent.contains_key(&w) {
                    parent.insert(w, x);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    if !parent.contains_key(&v) {
        return None;
    }
    let mut path = vec![v];
    let mut cur = v;
    while cur != u {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

fn without(adj: &Adj, v: VertexId) -> Adj {
    let mut out = adj.clone();
    out.remove(&v);
    for nbrs in out.values_mut() {
        nbrs.remove(&v);
    }
    out
}

fn fvs_search(adj: &Adj, k: usize) -> Option<BTreeSet<VertexId>> {
    let Some(cycle) = find_short_cycle(adj) else {
        return Some(BTreeSet::new());
    };
    if k == 0 {
        return None;
    }
    let mut branch: Vec<VertexId> = cycle;
    branch.sort_unstable();
    for v in branch {
        if let Some(mut s) = fvs_search(&without(adj, v), k - 1) {
            s.insert(v);
            return Some(s);
        }
    }
    None
}

fn check_limit(g: &PlanarEmbeddedGraph, config: &OracleConfig) -> Result<(), OracleError> {
    if g.vertex_count() > config.vertex_limit {
        return Err(OracleError::TooLarge {
            vertices: g.vertex_count(),
            limit: config.vertex_limit,
        });
    }
    Ok(())
}

/// Minimum feedback vertex set by increasing-size search, branching on the
/// vertices of a shortest cycle.
pub fn oracle_fvs(
    g: &PlanarEmbeddedGraph,
    config: &OracleConfig,
) -> Result<(usize, BTreeSet<VertexId>), OracleError> {
    check_limit(g, config)?;
    let adj = adjacency(g);
    for k in 0..=g.vertex_count() {
        if let Some(witness) = fvs_search(&adj, k) {
            return Ok((k, witness));
        }
    }
    unreachable!("deleting every vertex leaves a forest");
}

/// All simple cycles, canonically oriented (smallest vertex first, smaller
/// second vertex), in deterministic order. Errors out beyond `cycle_cap`.
pub fn enumerate_cycles(
    g: &PlanarEmbeddedGraph,
    cap: usize,
) -> Result<Vec<Vec<VertexId>>, OracleError> {
    let adj = adjacency(g);
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    let mut path: Vec<VertexId> = Vec::new();
    let mut on_path: BTreeSet<VertexId> = BTreeSet::new();

    fn dfs(
        adj: &Adj,
        s: VertexId,
        path: &mut Vec<VertexId>,
        on_path: &mut BTreeSet<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
        cap: usize,
    ) -> Result<(), OracleError> {
        let v = *path.last().unwrap();
        for &w in &adj[&v] {
            if w == s && path.len() >= 3 {
                if path[1] < *path.last().unwrap() {
                    if out.len() == cap {
                        return Err(OracleError::TooManyCycles { cap });
                    }
                    out.push(path.clone());
                }
            } else if w > s && !on_path.contains(&w) {
                path.push(w);
                on_path.insert(w);
                dfs(adj, s, path, on_path, out, cap)?;
                on_path.remove(&w);
                path.pop();
            }
        }
        Ok(())
    }

    for s in adj.keys().copied().collect::<Vec<_>>() {
        path.push(s);
        on_path.insert(s);
        dfs(&adj, s, &mut path, &mut on_path, &mut out, cap)?;
        on_path.remove(&s);
        path.pop();
    }
    Ok(out)
}

/// Branch-and-bound maximum set packing over vertex masks. Returns indices of
/// one maximum packing, deterministically.
fn max_set_packing(sets: &[u64]) -> (usize, Vec<usize>) {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (sets[i].count_ones(), sets[i]));
    let sorted: Vec<u64> = order.iter().map(|&i| sets[i]).collect();

    let mut best: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn rec(sets: &[u64], from: usize, used: u64, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        let compatible: Vec<usize> = (from..sets.len())
            .filter(|&j| sets[j] & used == 0)
            .collect();
        if chosen.len() + compatible.len() <= best.len() {
            return;
        }
        for j in compatible {
            chosen.push(j);
            rec(sets, j + 1, used | sets[j], chosen, best);
            chosen.pop();
        }
    }

    rec(&sorted, 0, 0, &mut chosen, &mut best);
    let mut picked: Vec<usize> = best.into_iter().map(|j| order[j]).collect();
    picked.sort_unstable();
    (picked.len(), picked)
}

fn vertex_masks(g: &PlanarEmbeddedGraph, cycles: &[Vec<VertexId>]) -> Vec<u64> {
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    cycles
        .iter()
        .map(|c| c.iter().fold(0u64, |m, v| m | 1 << index[v]))
        .collect()
}

/// Maximum number of pairwise vertex-disjoint simple cycles, with a witness.
/// With `exclude_outer`, cycles coinciding with the outer face boundary are
/// dropped unless a twin inner face legitimizes them.
pub fn oracle_cp(
    g: &PlanarEmbeddedGraph,
    exclude_outer: bool,
    config: &OracleConfig,
) -> Result<(usize, Vec<Vec<VertexId>>), OracleError> {
    check_limit(g, config)?;
    let mut cycles = enumerate_cycles(g, config.cycle_cap)?;
    if exclude_outer {
        let faces = g.trace_faces().expect("validated graph");
        if let Some(oid) = PlanarEmbeddedGraph::outer_face_id(&faces) {
            cycles.retain(|c| !cycle_excluded_as_outer(&faces, oid, &cycle_edge_set(c)));
        }
    }
    let masks = vertex_masks(g, &cycles);
    let (size, picked) = max_set_packing(&masks);
    Ok((size, picked.into_iter().map(|i| cycles[i].clone()).collect()))
}

/// Maximum number of pairwise vertex-disjoint faces whose boundaries are
/// simple cycles, with a witness.
pub fn oracle_fp(
    g: &PlanarEmbeddedGraph,
    exclude_outer: bool,
    config: &OracleConfig,
) -> Result<(usize, Vec<Vec<VertexId>>), OracleError> {
    check_limit(g, config)?;
    let faces = g.trace_faces().expect("validated graph");
    let outer = PlanarEmbeddedGraph::outer_face_id(&faces);
    let face_cycles: Vec<Vec<VertexId>> = faces
        .iter()
        .filter(|f| !(exclude_outer && Some(f.id) == outer))
        .filter_map(|f| f.as_simple_cycle())
        .collect();
    let masks = vertex_masks(g, &face_cycles);
    let (size, picked) = max_set_packing(&masks);
    Ok((
        size,
        picked.into_iter().map(|i| face_cycles[i].clone()).collect(),
    ))
}

/// Aggregate of all three oracles. Graphs over the vertex limit come back
/// with `n_limit_hit` set instead of an error, for harness-style callers.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub fvs_min: Option<(usize, BTreeSet<VertexId>)>,
    pub cp_max: Option<(usize, Vec<Vec<VertexId>>)>,
    pub fp_max: Option<(usize, Vec<Vec<VertexId>>)>,
    pub n_limit_hit: bool,
}

pub fn oracle_all(
    g: &PlanarEmbeddedGraph,
    exclude_outer: bool,
    config: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    if g.vertex_count() > config.vertex_limit {
        return Ok(OracleResult {
            fvs_min: None,
            cp_max: None,
            fp_max: None,
            n_limit_hit: true,
        });
    }
    Ok(OracleResult {
        fvs_min: Some(oracle_fvs(g, config)?),
        cp_max: Some(oracle_cp(g, exclude_outer, config)?),
        fp_max: Some(oracle_fp(g, exclude_outer, config)?),
        n_limit_hit: false,
    })
}
