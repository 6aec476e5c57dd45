//! Certifying algorithms for based planar graphs: every accepted input
//! yields a feedback vertex set F and a vertex-disjoint cycle packing C with
//! |F| <= 2|C|, checkable by an independent verifier. A based planar graph is
//! a plane graph whose outer face shares an edge with every other face; Halin
//! graphs are the motivating special case.
//!
//! The crate is organized around the pipeline:
//!
//! - [`embedding`]: rotation-system graphs, face tracing, mutations;
//! - [`recognition`]: based planar and Halin recognition;
//! - [`triangles`]: good-triangle search (exhaustive and constructive);
//! - [`solver`]: the reduction loop, certificates, and the verifier;
//! - [`oracle`]: exact fvs/cp/fp on small graphs for cross-checking;
//! - [`generators`]: seedable corpora;
//! - [`format`]: text formats for graphs and certificates.

pub mod embedding;
pub mod format;
pub mod generators;
pub mod oracle;
pub mod recognition;
pub mod solver;
pub mod triangles;

pub use embedding::{Dart, Edge, EmbeddingError, Face, PlanarEmbeddedGraph, VertexId};
pub use recognition::{
    faces_adjacent, find_base_faces, is_based_planar, is_halin, AdjacencyMode, HalinWitness,
};
pub use solver::{
    rebase, solve, solve_with_mode, step_classify, verify_certificate, Certificate, ReductionKind,
    ReductionStep, SolveError, Verdict, Violation,
};
pub use triangles::{
    all_good_triangles, claim1_find_good_triangle, find_good_triangle, GoodTriangle, TriangleError,
};
