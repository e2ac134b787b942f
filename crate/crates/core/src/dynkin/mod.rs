//! Dual graphs of (-2)-curves, affine Dynkin subdiagrams and Vinberg's
//! finite-index criterion.

mod graph;
mod label;
mod parabolic;

use thiserror::Error;

pub use graph::{
    are_isomorphic, automorphism_count, build_e10_graph, build_petersen, build_type_vii_graph, cycle_graph,
    find_isomorphism, line_graph, path_graph, DualGraph, GraphFile, GRAPH_NAMES,
};
pub use label::AffineLabel;
pub use parabolic::{
    connected_parabolics, enumerate_parabolics, isotropic_class, kodaira_assignments, kodaira_candidates,
    maximal_parabolics, multiple_fiber_test, multiple_fiber_witness, recognize_connected_parabolic, type_census,
    vinberg_check, ParabolicComponent, ParabolicSubdiagram, VinbergReport, FIBER_CATALOGUE, FULL_RANK,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("edge {0}-{1} has multiplicity {2} >= 3")]
    TripleEdge(String, String, u8),
    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),
    #[error("vertex set {{{0}}} is not parabolic")]
    NotParabolic(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown built-in graph `{0}`")]
    UnknownBuiltin(String),
    #[error("graph has {0} vertices; enumeration supports at most 64")]
    TooLarge(usize),
    #[error("malformed graph file: {0}")]
    Format(String),
}
