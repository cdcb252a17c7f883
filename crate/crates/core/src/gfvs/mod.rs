//! Group Feedback Vertex Set at desk scale: group oracles, consistency
//! checking, the double-path separation oracle, an exhaustive half-integral
//! relaxation and two-way branching on top of it.

pub mod branch;
pub mod double_path;
pub mod graph;
pub mod group;
pub mod relax;

use thiserror::Error;

pub use branch::{reduce_fvs, solve_gfvs, GfvsSolution};
pub use double_path::{is_hitting, shortest_double_path, DoublePathWitness, LexWeight};
pub use graph::{check_consistent, merge_assigned, Inconsistency, LabelledGraph, Merged, Step};
pub use group::{AnyElem, AnyGroup, Cyclic, GroupOracle, PermGroup, Z2Pow};
pub use relax::{relax_gfvs, relax_gfvs_observed, GfvsRelaxation, RELAX_FREE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfvsError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} assigned two different labels")]
    ContradictoryAssignment(usize),
    #[error("vertex {0} is both assigned and deleted")]
    AssignedAndDeleted(usize),
    #[error("root {0} is not a vertex")]
    RootMissing(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },
    #[error("{0} free vertices exceed the exhaustive relaxation limit")]
    TooLarge(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
