//! Half-integral relaxation of GFVS with assignments, by exhaustive search
//! over weights in `{0, ½, 1}` checked with the separation oracle.

use super::double_path::{is_hitting, shortest_paths};
use super::graph::{merge_assigned, LabelledGraph, Merged};
use super::group::GroupOracle;
use super::GfvsError;
use crate::vcsp::HalfCost;

/// Most free vertices the exhaustive relaxation accepts.
pub const RELAX_FREE_LIMIT: usize = 15;

/// Optimal double-path-hitting weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfvsRelaxation<E> {
    pub cost: HalfCost,
    /// Half-units per original vertex; deleted vertices read 2 and
    /// assigned vertices 0, neither counted in `cost`.
    pub z: Vec<u8>,
    /// `ψ(v)` for vertices reached from the root through weight-0 vertices
    /// only (assigned vertices carry their assignment).
    pub anchored: Vec<Option<E>>,
}

pub fn relax_gfvs<G: GroupOracle>(
    g: &LabelledGraph<G>,
    assignments: &[(usize, G::Elem)],
    deleted: &[usize],
) -> Result<Option<GfvsRelaxation<G::Elem>>, GfvsError> {
    relax_gfvs_observed(g, assignments, deleted, |_, _, _| {})
}

/// [`relax_gfvs`] reporting every oracle query `(merged graph, z, verdict)`.
///
/// Weight vectors are tried by increasing cost, then by increasing number
/// of nonzero entries, then lexicographically; the first hitting one is
/// returned, so it has a maximal set of zeros among minimisers.
pub fn relax_gfvs_observed<G: GroupOracle>(
    g: &LabelledGraph<G>,
    assignments: &[(usize, G::Elem)],
    deleted: &[usize],
    mut observe: impl FnMut(&Merged<G>, &[u8], bool),
) -> Result<Option<GfvsRelaxation<G::Elem>>, GfvsError> {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in deleted {
        if v >= n {
            return Err(GfvsError::VertexOutOfRange { vertex: v, n });
        }
        gone[v] = true;
    }
    if let Some((v, _)) = assignments.iter().find(|(v, _)| gone[*v]) {
        return Err(GfvsError::AssignedAndDeleted(*v));
    }
    let merged = merge_assigned(&g.without(&gone), assignments)?;
    if merged.conflict {
        return Ok(None);
    }
    let t = merged.root;
    // Only vertices reachable from the root can lie on a double path.
    let reach = shortest_paths(&merged.graph, t, &vec![0; n + 1])?;
    let free: Vec<usize> = (0..n)
        .filter(|&v| !gone[v] && !merged.assigned[v] && reach.dist[v].is_some())
        .collect();
    if free.len() > RELAX_FREE_LIMIT {
        return Err(GfvsError::TooLarge(free.len()));
    }

    let mut z = vec![0u8; n + 1];
    let mut found = None;
    'outer: for cost in 0..=2 * free.len() {
        for nonzero in cost.div_ceil(2)..=cost.min(free.len()) {
            let mut hit = false;
            let mut err = None;
            enumerate(&free, 0, cost, nonzero, &mut z, &mut |z| {
                match is_hitting(&merged.graph, t, z) {
                    Ok(v) => {
                        observe(&merged, z, v);
                        hit = v;
                    }
                    Err(e) => {
                        err = Some(e);
                        return true;
                    }
                }
                hit
            });
            if let Some(e) = err {
                return Err(e);
            }
            if hit {
                found = Some(cost);
                break 'outer;
            }
        }
    }
    let cost = found.expect("all-ones weights are hitting");

    let sp = shortest_paths(&merged.graph, t, &z)?;
    let mut anchored: Vec<Option<G::Elem>> = vec![None; n];
    for (v, e) in assignments {
        anchored[*v] = Some(e.clone());
    }
    for &v in &free {
        if sp.dist[v].as_ref().is_some_and(|d| d.halves == 0) {
            anchored[v] = sp.psi[v].clone();
        }
    }
    let mut out = z[..n].to_vec();
    for v in (0..n).filter(|&v| gone[v]) {
        out[v] = 2;
    }
    Ok(Some(GfvsRelaxation { cost: HalfCost(cost as u64), z: out, anchored }))
}

/// Visits, in lexicographic order, every assignment of `{0, 1, 2}` to
/// `free[i..]` with the given sum and number of nonzero entries. Stops when
/// `visit` returns `true`.
fn enumerate(
    free: &[usize],
    i: usize,
    sum: usize,
    nonzero: usize,
    z: &mut [u8],
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    let left = free.len() - i;
    if nonzero > left || sum < nonzero || sum > 2 * nonzero {
        return false;
    }
    if i == free.len() {
        return visit(z);
    }
    let v = free[i];
    for val in 0..=2u8 {
        let (s, nz) = match val {
            0 => (sum, nonzero),
            _ if nonzero == 0 || sum < val as usize => break,
            _ => (sum - val as usize, nonzero - 1),
        };
        z[v] = val;
        if enumerate(free, i + 1, s, nz, z, visit) {
            return true;
        }
    }
    z[v] = 0;
    false
}
