//! Relaxation minimisation through max-flow and extreme cuts, and the
//! persistence-driven branching driver built on top of it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::flow::{extreme_min_cut, max_flow, FlowError};
use crate::network::{assemble_with_extra, assignment_of_cut, NetworkError};
use crate::vcsp::{Constraint, HalfAssignment, HalfCost, VcspError, VcspInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Vcsp(#[from] VcspError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Extreme minimum of the relaxed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxationResult {
    pub cost: HalfCost,
    pub assignment: HalfAssignment,
    /// Augmenting paths used by the max-flow.
    pub augmentations: usize,
    /// Max-flow value (the cut capacity without the unary shift constant).
    pub flow_value: HalfCost,
}

/// Outcome of [`minimize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relaxation {
    Optimal(RelaxationResult),
    /// Some crisp constraint or fix cannot be honoured.
    Infeasible,
}

impl Relaxation {
    pub fn optimal(self) -> Option<RelaxationResult> {
        match self {
            Relaxation::Optimal(r) => Some(r),
            Relaxation::Infeasible => None,
        }
    }
}

/// Partial assignment `variable -> 1..=k`.
pub type Fixes = Vec<Option<u32>>;

fn pins(inst: &VcspInstance, fixed: &[Option<u32>]) -> Result<Vec<Constraint>, SolveError> {
    let mut out = Vec::new();
    for (v, d) in fixed.iter().enumerate() {
        if let Some(d) = d {
            let pin = Constraint::pin(inst.k(), v, *d)?;
            out.push(pin);
        }
    }
    Ok(out)
}

/// Minimises the relaxation with `fixed` enforced as crisp hard constants and
/// returns an extreme minimum solution.
pub fn minimize(inst: &VcspInstance, fixed: &[Option<u32>]) -> Result<Relaxation, SolveError> {
    minimize_within(inst, fixed, HalfCost::ZERO)
}

/// [`minimize`] with crisp weights sized for `budget`.
pub fn minimize_within(
    inst: &VcspInstance,
    fixed: &[Option<u32>],
    budget: HalfCost,
) -> Result<Relaxation, SolveError> {
    if fixed.len() != inst.n() {
        return Err(SolveError::Invariant(format!("{} fixes for {} variables", fixed.len(), inst.n())));
    }
    let pins = pins(inst, fixed)?;
    // Pins are crisp, so they leave the crisp weight unchanged.
    let w = inst.crisp_weight(budget);
    let net = assemble_with_extra(inst, &pins, w)?;
    let flow = max_flow(&net);
    let total = flow.value + net.offset();
    if total.0 >= w {
        return Ok(Relaxation::Infeasible);
    }
    let cut = extreme_min_cut(&net, &flow)?;
    let assignment = assignment_of_cut(inst.k(), &cut)?;
    let pinned = pins.iter().all(|p| p.base_halves(&[assignment.get(p.scope()[0])]) == 0);
    match inst.soft_cost(&assignment).filter(|_| pinned) {
        Some(c) if c == total => {}
        other => {
            return Err(SolveError::Invariant(format!(
                "cut value {total:?} does not match assignment cost {other:?}"
            )))
        }
    }
    Ok(Relaxation::Optimal(RelaxationResult {
        cost: total,
        assignment,
        augmentations: flow.augmentations,
        flow_value: flow.value,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptSolution {
    pub assignment: HalfAssignment,
    pub cost: HalfCost,
    /// Relaxation calls made by the search.
    pub nodes: usize,
    /// Relaxed optimum of the root.
    pub relaxed: HalfCost,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FptStats {
    pub nodes: usize,
    pub relaxed: Option<HalfCost>,
    /// Augmenting paths over all feasible relaxations.
    pub augmentations: usize,
    /// Sum of the optima of those relaxations.
    pub relaxed_total: HalfCost,
}

/// State of one search node.
#[derive(Debug, Clone)]
pub struct BranchState {
    pub fixed: Fixes,
    pub relaxation: RelaxationResult,
    pub depth: usize,
}

/// Exact integral minimum if it costs at most `budget`, else `None`.
///
/// Each node solves the relaxation under its fixes, adopts every integral
/// coordinate of the extreme optimum, and branches over all values of the
/// lowest-index relaxed variable. Nodes are expanded cheapest-relaxation
/// first, so only nodes whose relaxation lies strictly below the optimum are
/// expanded.
pub fn solve_fpt(inst: &VcspInstance, budget: HalfCost) -> Result<Option<FptSolution>, SolveError> {
    let mut stats = FptStats::default();
    let sol = solve_fpt_with_stats(inst, budget, &mut stats)?;
    Ok(sol)
}

pub fn solve_fpt_with_stats(
    inst: &VcspInstance,
    budget: HalfCost,
    stats: &mut FptStats,
) -> Result<Option<FptSolution>, SolveError> {
    let k = inst.k();
    let root_fixes: Fixes = vec![None; inst.n()];
    stats.nodes += 1;
    let root = match minimize_within(inst, &root_fixes, budget)? {
        Relaxation::Optimal(r) => r,
        Relaxation::Infeasible => return Ok(None),
    };
    stats.augmentations += root.augmentations;
    stats.relaxed_total += root.cost;
    stats.relaxed = Some(root.cost);
    if root.cost > budget {
        return Ok(None);
    }

    let mut frontier = Frontier::default();
    frontier.offer(BranchState { fixed: root_fixes, relaxation: root, depth: 0 });

    while let Some(mut state) = frontier.pop_below_incumbent() {
        let parent_cost = state.relaxation.cost;
        // Persistence: every integral coordinate of the extreme optimum can
        // be kept. The optimum stays extreme under the added fixes.
        for (v, d) in state.relaxation.assignment.values().iter().enumerate() {
            if !d.is_relaxed() {
                state.fixed[v] = Some(d.get());
            }
        }
        let var = state
            .relaxation
            .assignment
            .values()
            .iter()
            .position(|d| d.is_relaxed())
            .expect("frontier only holds non-integral nodes");
        for d in 1..=k {
            let mut fixed = state.fixed.clone();
            fixed[var] = Some(d);
            stats.nodes += 1;
            let child = match minimize_within(inst, &fixed, budget)? {
                Relaxation::Optimal(r) => r,
                Relaxation::Infeasible => continue,
            };
            stats.augmentations += child.augmentations;
            stats.relaxed_total += child.cost;
            if child.cost <= parent_cost {
                return Err(SolveError::Invariant(format!(
                    "fixing variable {var} to {d} did not raise the relaxation ({:?} -> {:?})",
                    parent_cost, child.cost
                )));
            }
            if child.cost > budget {
                continue;
            }
            frontier.offer(BranchState { fixed, relaxation: child, depth: state.depth + 1 });
        }
    }
    Ok(frontier.best.map(|(cost, assignment)| FptSolution {
        assignment,
        cost,
        nodes: stats.nodes,
        relaxed: stats.relaxed.unwrap_or_default(),
    }))
}

/// Open nodes ordered by relaxed cost, plus the best integral leaf so far.
#[derive(Default)]
struct Frontier {
    heap: BinaryHeap<Reverse<(HalfCost, usize)>>,
    states: Vec<Option<BranchState>>,
    best: Option<(HalfCost, HalfAssignment)>,
}

impl Frontier {
    fn offer(&mut self, state: BranchState) {
        let r = &state.relaxation;
        if r.assignment.is_integral() {
            if self.best.as_ref().is_none_or(|(c, _)| r.cost < *c) {
                self.best = Some((r.cost, r.assignment.clone()));
            }
        } else {
            self.heap.push(Reverse((r.cost, self.states.len())));
            self.states.push(Some(state));
        }
    }

    fn pop_below_incumbent(&mut self) -> Option<BranchState> {
        let Reverse((cost, id)) = self.heap.pop()?;
        if self.best.as_ref().is_some_and(|(c, _)| cost >= *c) {
            self.heap.clear();
            return None;
        }
        self.states[id].take()
    }
}
