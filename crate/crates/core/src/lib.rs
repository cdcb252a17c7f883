//! Minimisation of sums of basic k-submodular relaxations by max-flow and
//! extreme minimum cuts, and LP-branching FPT algorithms built on them:
//! Vertex Cover above LP, Almost 2-SAT, edge Unique Label Cover, edge
//! Multiway Cut and Group Feedback Vertex Set.

pub mod cli;
pub mod flow;
pub mod generate;
pub mod gfvs;
pub mod network;
pub mod reductions;
pub mod solver;
pub mod vcsp;
pub mod verify;

pub use network::{assemble, KSubNetwork};
pub use solver::{minimize, solve_fpt, FptSolution, Relaxation, RelaxationResult};
pub use vcsp::{
    Constraint, ConstraintKind, DomainValue, HalfAssignment, HalfCost, Permutation, UnaryTable,
    VcspInstance,
};
