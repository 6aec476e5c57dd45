//! Line-oriented text formats for graphs and certificates.
//!
//! Both formats are meant to be read and re-verified by third parties, so
//! serialization is canonical: vertices ascending, rotations starting at the
//! smallest neighbor, cycles rotated to a fixed representative. One
//! canonicalization pass makes `serialize(parse(x))` idempotent.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::embedding::{Edge, PlanarEmbeddedGraph, VertexId};
use crate::solver::{Certificate, ReductionKind, ReductionStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Canonical graph serialization:
///
/// ```text
/// n m
/// v: n1 n2 ... nk    (clockwise rotation, smallest neighbor first)
/// outer: u v         (omitted for edgeless graphs)
/// ```
pub fn serialize_graph(g: &PlanarEmbeddedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for v in g.vertices() {
        let rot = g.rotation(v).unwrap();
        out.push_str(&format!("{v}:"));
        if let Some(start) = rot.iter().enumerate().min_by_key(|&(_, w)| w).map(|(i, _)| i) {
            for k in 0..rot.len() {
                out.push_str(&format!(" {}", rot[(start + k) % rot.len()]));
            }
        }
        out.push('\n');
    }
    if let Some((u, v)) = g.outer_anchor() {
        out.push_str(&format!("outer: {u} {v}\n"));
    }
    out
}

fn parse_u32(line_no: usize, line: &str, tok: &str) -> Result<u32, ParseError> {
    tok.parse::<u32>().map_err(|_| {
        let column = line.find(tok).map(|c| c + 1).unwrap_or(1);
        ParseError::new(line_no, column, format!("expected integer, found {tok:?}"))
    })
}

/// Parses the graph format. Structural and semantic problems are reported
/// with the offending line; embedding-level failures (asymmetry, Euler) are
/// attributed to the vertex line or the header.
pub fn parse_graph(text: &str) -> Result<PlanarEmbeddedGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut vertex_line: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut anchor: Option<(VertexId, VertexId)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        // `#` begins a comment anywhere on a line.
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            let mut toks = line.split_whitespace();
            let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
                return Err(ParseError::new(line_no, 1, "expected header `n m`"));
            };
            let n = parse_u32(line_no, raw, a)? as usize;
            let m = parse_u32(line_no, raw, b)? as usize;
            header = Some((n, m, line_no));
            continue;
        }
        if let Some(rest) = line.strip_prefix("outer:") {
            if anchor.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate outer line"));
            }
            let mut toks = rest.split_whitespace();
            let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
                return Err(ParseError::new(line_no, 1, "expected `outer: u v`"));
            };
            anchor = Some((
                VertexId(parse_u32(line_no, raw, a)?),
                VertexId(parse_u32(line_no, raw, b)?),
            ));
            continue;
        }
        let Some((head, rest)) = line.split_once(':') else {
            return Err(ParseError::new(
                line_no,
                1,
                "expected `v: neighbors...` or `outer: u v`",
            ));
        };
        let v = VertexId(parse_u32(line_no, raw, head.trim())?);
        if rotation.contains_key(&v) {
            return Err(ParseError::new(line_no, 1, format!("duplicate vertex {v}")));
        }
        let mut nbrs = Vec::new();
        let mut seen = BTreeSet::new();
        for tok in rest.split_whitespace() {
            let w = VertexId(parse_u32(line_no, raw, tok)?);
            if w == v {
                return Err(ParseError::new(line_no, 1, format!("self-loop at {v}")));
            }
            if !seen.insert(w) {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("repeated neighbor {w} in rotation of {v}"),
                ));
            }
            nbrs.push(w);
        }
        vertex_line.insert(v, line_no);
        rotation.insert(v, nbrs);
    }

    let Some((n, m, header_line)) = header else {
        return Err(ParseError::new(1, 1, "empty graph file"));
    };
    if rotation.len() != n {
        return Err(ParseError::new(
            header_line,
            1,
            format!("header declares {n} vertices, found {}", rotation.len()),
        ));
    }
    // Symmetry with line attribution before the global validator runs.
    for (&v, nbrs) in &rotation {
        for &w in nbrs {
            let ok = rotation.get(&w).map(|r| r.contains(&v)).unwrap_or(false);
            if !ok {
                return Err(ParseError::new(
                    vertex_line[&v],
                    1,
                    format!("edge {v}->{w} has no mirror in rotation of {w}"),
                ));
            }
        }
    }
    let edges = rotation.values().map(|r| r.len()).sum::<usize>() / 2;
    if edges != m {
        return Err(ParseError::new(
            header_line,
            1,
            format!("header declares {m} edges, found {edges}"),
        ));
    }
    if edges > 0 && anchor.is_none() {
        return Err(ParseError::new(header_line, 1, "missing outer line"));
    }
    PlanarEmbeddedGraph::from_rotations(rotation, anchor)
        .map_err(|e| ParseError::new(header_line, 1, e.to_string()))
}

/// Rotates a cycle to start at its smallest vertex, walking in the direction
/// whose second vertex is smaller. Reversal keeps a cycle a cycle.
pub fn canonical_cycle(cycle: &[VertexId]) -> Vec<VertexId> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let fwd: Vec<VertexId> = (0..n).map(|k| cycle[(start + k) % n]).collect();
    let bwd: Vec<VertexId> = (0..n).map(|k| cycle[(start + n - k) % n]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

fn ids(list: &[VertexId]) -> String {
    let strs: Vec<String> = list.iter().map(|v| v.to_string()).collect();
    format!("[{}]", strs.join(", "))
}

fn step_line(step: &ReductionStep) -> String {
    match &step.kind {
        ReductionKind::DropLowDegree { u } => format!("{} drop {u}", step.index),
        ReductionKind::TriangleDeg2 { x, y, z } => {
            format!("{} triangle_deg2 {x} {y} {z}", step.index)
        }
        ReductionKind::Smooth { u, a, b, .. } => format!("{} smooth {u} {a} {b}", step.index),
        ReductionKind::GoodTriangleStep { x, y, z } => {
            format!("{} good_triangle {x} {y} {z}", step.index)
        }
    }
}

/// Trace serialization, shared by certificates and failure dumps.
pub fn serialize_trace(trace: &[ReductionStep]) -> String {
    trace.iter().map(|s| step_line(s) + "\n").collect()
}

/// Certificate serialization:
///
/// ```text
/// fvs: [1, 5]
/// packing: [[0, 1, 5]]
/// bound: 2 <= 2*1
/// face_packing: true
/// trace:
/// 0 good_triangle 0 1 5
/// ```
pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    let fvs: Vec<VertexId> = cert.fvs.iter().copied().collect();
    out.push_str(&format!("fvs: {}\n", ids(&fvs)));
    let cycles: Vec<String> = cert
        .packing
        .iter()
        .map(|c| ids(&canonical_cycle(c)))
        .collect();
    out.push_str(&format!("packing: [{}]\n", cycles.join(", ")));
    out.push_str(&format!(
        "bound: {} <= 2*{}\n",
        cert.fvs.len(),
        cert.packing.len()
    ));
    out.push_str(&format!("face_packing: {}\n", cert.face_packing_flag));
    out.push_str("trace:\n");
    out.push_str(&serialize_trace(&cert.trace));
    out
}

/// A parsed certificate plus the bound sizes the file claims; the claim is
/// cross-checked by the verifier, not the parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCertificate {
    pub cert: Certificate,
    pub stated_fvs_size: usize,
    pub stated_packing_size: usize,
}

fn parse_id_list(line_no: usize, s: &str) -> Result<Vec<VertexId>, ParseError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(line_no, 1, "expected [..] list"))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map(VertexId)
                .map_err(|_| ParseError::new(line_no, 1, format!("bad id {tok:?}")))
        })
        .collect()
}

fn parse_nested_lists(line_no: usize, s: &str) -> Result<Vec<Vec<VertexId>>, ParseError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(line_no, 1, "expected [[..], ..] list"))?;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                if depth == 0 {
                    return Err(ParseError::new(line_no, 1, "unbalanced brackets"));
                }
                depth -= 1;
                cur.push(ch);
                if depth == 0 {
                    out.push(parse_id_list(line_no, &cur)?);
                    cur.clear();
                }
            }
            ',' | ' ' if depth == 0 => {}
            _ if depth > 0 => cur.push(ch),
            _ => return Err(ParseError::new(line_no, 1, format!("unexpected {ch:?}"))),
        }
    }
    if depth != 0 {
        return Err(ParseError::new(line_no, 1, "unbalanced brackets"));
    }
    Ok(out)
}

fn parse_step(line_no: usize, line: &str) -> Result<ReductionStep, ParseError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let bad = |msg: &str| ParseError::new(line_no, 1, msg.to_string());
    if toks.len() < 2 {
        return Err(bad("expected `<index> <step> args...`"));
    }
    let index = toks[0]
        .parse::<usize>()
        .map_err(|_| bad("bad step index"))?;
    let arg = |i: usize| -> Result<VertexId, ParseError> {
        toks.get(i)
            .and_then(|t| t.parse::<u32>().ok())
            .map(VertexId)
            .ok_or_else(|| bad("bad step argument"))
    };
    let kind = match toks[1] {
        "drop" => ReductionKind::DropLowDegree { u: arg(2)? },
        "triangle_deg2" => ReductionKind::TriangleDeg2 {
            x: arg(2)?,
            y: arg(3)?,
            z: arg(4)?,
        },
        "smooth" => {
            let (u, a, b) = (arg(2)?, arg(3)?, arg(4)?);
            ReductionKind::Smooth {
                u,
                a,
                b,
                created_edge: Edge::new(a, b),
            }
        }
        "good_triangle" => ReductionKind::GoodTriangleStep {
            x: arg(2)?,
            y: arg(3)?,
            z: arg(4)?,
        },
        other => return Err(bad(&format!("unknown step {other:?}"))),
    };
    Ok(ReductionStep { index, kind })
}

/// Parses the certificate format; see `serialize_certificate` for the grammar.
pub fn parse_certificate(text: &str) -> Result<ParsedCertificate, ParseError> {
    let mut fvs: Option<BTreeSet<VertexId>> = None;
    let mut packing: Option<Vec<Vec<VertexId>>> = None;
    let mut bound: Option<(usize, usize)> = None;
    let mut face_packing: Option<bool> = None;
    let mut trace: Vec<ReductionStep> = Vec::new();
    let mut in_trace = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if in_trace {
            trace.push(parse_step(line_no, line)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("fvs:") {
            fvs = Some(parse_id_list(line_no, rest)?.into_iter().collect());
        } else if let Some(rest) = line.strip_prefix("packing:") {
            packing = Some(parse_nested_lists(line_no, rest)?);
        } else if let Some(rest) = line.strip_prefix("bound:") {
            let rest = rest.trim();
            let parts: Vec<&str> = rest.split("<=").collect();
            let err = || ParseError::new(line_no, 1, "expected `bound: a <= 2*b`");
            if parts.len() != 2 {
                return Err(err());
            }
            let a = parts[0].trim().parse::<usize>().map_err(|_| err())?;
            let b = parts[1]
                .trim()
                .strip_prefix("2*")
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(err)?;
            bound = Some((a, b));
        } else if let Some(rest) = line.strip_prefix("face_packing:") {
            face_packing = Some(match rest.trim() {
                "true" => true,
                "false" => false,
                other => {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("expected true|false, found {other:?}"),
                    ))
                }
            });
        } else if line == "trace:" {
            in_trace = true;
        } else {
            return Err(ParseError::new(line_no, 1, format!("unexpected line {line:?}")));
        }
    }

    let missing = |what: &str| ParseError::new(1, 1, format!("missing {what} line"));
    let (stated_fvs_size, stated_packing_size) = bound.ok_or_else(|| missing("bound"))?;
    Ok(ParsedCertificate {
        cert: Certificate {
            fvs: fvs.ok_or_else(|| missing("fvs"))?,
            packing: packing.ok_or_else(|| missing("packing"))?,
            trace,
            face_packing_flag: face_packing.ok_or_else(|| missing("face_packing"))?,
        },
        stated_fvs_size,
        stated_packing_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random_based, gen_wheel};

    #[test]
    fn graph_round_trip_is_canonical() {
        let g = gen_wheel(5);
        let text = serialize_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(serialize_graph(&parsed), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_graph("3 3\n0: 1 2\n1: 2 x\n2: 0 1\nouter: 0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains('x'));

        // Asymmetry is reported at the line declaring the unmirrored edge.
        let err = parse_graph("2 1\n0: 1\n1:\nouter: 0 1\n").unwrap_err();
        assert_eq!(err.line, 2);

        let err = parse_graph("3 3\n0: 1 2\n1: 0\n2: 0\nouter: 0 1\n").unwrap_err();
        assert_eq!(err.line, 1); // header edge count wrong
    }

    #[test]
    fn parse_accepts_comments_and_blanks() {
        let text = "# a triangle\n\n3 3\n0: 1 2\n1: 2 0\n2: 0 1\n\nouter: 0 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn certificate_round_trip() {
        let g = gen_random_based(9, 3).unwrap();
        let cert = crate::solver::solve(&g).unwrap();
        let text = serialize_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed.cert.fvs, cert.fvs);
        assert_eq!(parsed.stated_fvs_size, cert.fvs.len());
        assert_eq!(parsed.cert.face_packing_flag, cert.face_packing_flag);
        assert_eq!(parsed.cert.trace.len(), cert.trace.len());
        assert_eq!(serialize_certificate(&parsed.cert), text);
    }

    #[test]
    fn canonical_cycle_examples() {
        let c = |v: &[u32]| v.iter().map(|&i| VertexId(i)).collect::<Vec<_>>();
        assert_eq!(canonical_cycle(&c(&[3, 1, 2])), c(&[1, 2, 3]));
        assert_eq!(canonical_cycle(&c(&[3, 2, 1])), c(&[1, 2, 3]));
        // Rotation and direction are canonicalized; cyclic order is kept.
        assert_eq!(canonical_cycle(&c(&[2, 0, 1, 4])), c(&[0, 1, 4, 2]));
    }
}
