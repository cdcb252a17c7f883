//! Two-way branching for Group Feedback Vertex Set on top of the
//! half-integral relaxation, and the reduction from Feedback Vertex Set.

use super::graph::{check_consistent, LabelledGraph};
use super::group::{GroupOracle, Z2Pow};
use super::relax::{relax_gfvs, GfvsRelaxation};
use super::GfvsError;
use crate::reductions::Graph;
use crate::vcsp::HalfCost;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfvsSolution<E> {
    /// Sorted deletion set.
    pub deleted: Vec<usize>,
    /// Consistent labelling of the remaining graph (`None` on deleted
    /// vertices).
    pub labels: Vec<Option<E>>,
    /// Nodes of the branching tree.
    pub nodes: usize,
    /// Relaxations solved, including the ones used to evaluate children.
    pub relaxations: usize,
}

type Assignments<E> = Vec<(usize, E)>;

struct Search<'a, G: GroupOracle> {
    g: &'a LabelledGraph<G>,
    k: usize,
    best: Option<Vec<usize>>,
    nodes: usize,
    relaxations: usize,
}

impl<G: GroupOracle> Search<'_, G> {
    /// Budget still worth exploring: below the best solution found so far.
    fn budget(&self) -> i64 {
        match &self.best {
            Some(b) => (self.k as i64).min(b.len() as i64 - 1),
            None => self.k as i64,
        }
    }

    /// Twice the budget left after paying for deletions and the relaxation.
    fn measure(&self, deleted: usize, r: &GfvsRelaxation<G::Elem>) -> i64 {
        2 * self.budget() - 2 * deleted as i64 - r.cost.0 as i64
    }

    fn relax(
        &mut self,
        a: &Assignments<G::Elem>,
        x: &[usize],
    ) -> Result<Option<GfvsRelaxation<G::Elem>>, GfvsError> {
        self.relaxations += 1;
        relax_gfvs(self.g, a, x)
    }

    fn explore(
        &mut self,
        mut a: Assignments<G::Elem>,
        mut x: Vec<usize>,
        mut r: GfvsRelaxation<G::Elem>,
    ) -> Result<(), GfvsError> {
        self.nodes += 1;
        let n = self.g.n();
        loop {
            let m = self.measure(x.len(), &r);
            if m < 0 {
                return Ok(());
            }
            let mut assigned = vec![false; n];
            a.iter().for_each(|(v, _)| assigned[*v] = true);
            let mut deleted = vec![false; n];
            x.iter().for_each(|&v| deleted[v] = true);

            // Integral part of the optimum is persistent.
            for v in 0..n {
                if assigned[v] || deleted[v] {
                    continue;
                }
                if r.z[v] == 2 {
                    x.push(v);
                    deleted[v] = true;
                    r.cost = r.cost.saturating_sub(HalfCost(2));
                } else if r.z[v] == 0 {
                    if let Some(label) = &r.anchored[v] {
                        a.push((v, label.clone()));
                        assigned[v] = true;
                    }
                }
            }

            let split = if let Some(v) = (0..n).find(|&v| !assigned[v] && !deleted[v] && r.z[v] == 1) {
                let label = r.anchored[v].clone().ok_or_else(|| {
                    GfvsError::Invariant(format!("half-deleted vertex {v} is not adjacent to the assigned part"))
                })?;
                (v, label)
            } else if let Some(v) = (0..n).find(|&v| !assigned[v] && !deleted[v]) {
                // A component untouched by assignments: either consistent,
                // or branch on its lowest vertex taking the identity.
                let comp = self.component(v, &deleted);
                let mut inside = vec![false; n];
                comp.iter().for_each(|&u| inside[u] = true);
                let sub = self.g.without(&inside.iter().map(|b| !b).collect::<Vec<_>>());
                match check_consistent(&sub, &[(v, self.g.group.identity())])? {
                    Ok(labels) => {
                        a.extend(comp.iter().map(|&u| (u, labels[u].clone())));
                        match self.relax(&a, &x)? {
                            Some(next) => {
                                r = next;
                                continue;
                            }
                            None => return Ok(()),
                        }
                    }
                    Err(_) => (v, self.g.group.identity()),
                }
            } else {
                // Everything assigned or deleted: a solution within budget.
                x.sort_unstable();
                self.best = Some(x);
                return Ok(());
            };

            let (v, label) = split;
            let mut a_assign = a.clone();
            a_assign.push((v, label));
            let mut x_delete = x.clone();
            x_delete.push(v);
            let r_assign = self.relax(&a_assign, &x)?;
            let r_delete = self.relax(&a, &x_delete)?;
            let m_assign = r_assign.as_ref().map(|c| self.measure(x.len(), c));
            let m_delete = r_delete.as_ref().map(|c| self.measure(x_delete.len(), c));
            // A child that keeps the measure contains an optimum of this
            // node: follow it without branching.
            if m_assign == Some(m) {
                a = a_assign;
                r = r_assign.expect("measured");
                continue;
            }
            if m_delete == Some(m) {
                x = x_delete;
                r = r_delete.expect("measured");
                continue;
            }
            if let Some(c) = r_assign {
                self.explore(a_assign, x.clone(), c)?;
            }
            if let Some(c) = r_delete {
                // The budget may have shrunk while exploring the first child.
                if self.measure(x_delete.len(), &c) >= 0 {
                    self.explore(a, x_delete, c)?;
                }
            }
            return Ok(());
        }
    }

    fn component(&self, v: usize, deleted: &[bool]) -> Vec<usize> {
        let inc = self.g.incidence();
        let mut seen = vec![false; self.g.n()];
        seen[v] = true;
        let mut stack = vec![v];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &e in &inc[u] {
                let w = self.g.step(e, u).to;
                if !deleted[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }
}

/// Minimum deletion set of size at most `k` leaving a consistently
/// labellable graph, or `None`.
pub fn solve_gfvs<G: GroupOracle>(
    g: &LabelledGraph<G>,
    k: usize,
) -> Result<Option<GfvsSolution<G::Elem>>, GfvsError> {
    let mut s = Search { g, k, best: None, nodes: 0, relaxations: 0 };
    if let Some(root) = s.relax(&Vec::new(), &[])? {
        s.explore(Vec::new(), Vec::new(), root)?;
    }
    let Some(deleted) = s.best else { return Ok(None) };
    let mut gone = vec![false; g.n()];
    deleted.iter().for_each(|&v| gone[v] = true);
    let labels = match check_consistent(&g.without(&gone), &[])? {
        Ok(l) => l,
        Err(_) => return Err(GfvsError::Invariant("returned deletion set leaves a non-null cycle".into())),
    };
    let labels = labels.into_iter().zip(&gone).map(|(l, &d)| (!d).then_some(l)).collect();
    Ok(Some(GfvsSolution { deleted, labels, nodes: s.nodes, relaxations: s.relaxations }))
}

/// Feedback Vertex Set as GFVS over `Z_2^m`: edge `i` carries the `i`-th
/// generator, so every cycle is non-null.
pub fn reduce_fvs(g: &Graph) -> LabelledGraph<Z2Pow> {
    let group = Z2Pow { m: g.edges.len() };
    let mut out = LabelledGraph::new(group, g.n);
    for (i, &(u, v, _)) in g.edges.iter().enumerate() {
        out.add_edge(u, v, group.generator(i)).expect("graph indices in range");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::group::Cyclic;
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges)
    }

    #[test]
    fn non_null_triangle_needs_one_deletion() {
        let mut g = LabelledGraph::new(Cyclic::new(2), 3);
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            g.add_edge(u, v, 1).unwrap();
        }
        let sol = solve_gfvs(&g, 1).unwrap().unwrap();
        assert_eq!(sol.deleted.len(), 1);
        assert!(sol.nodes <= 8);
        assert_eq!(solve_gfvs(&g, 0).unwrap(), None);
    }

    #[test]
    fn consistent_graph_needs_nothing() {
        let mut g = LabelledGraph::new(Cyclic::new(3), 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        let sol = solve_gfvs(&g, 0).unwrap().unwrap();
        assert!(sol.deleted.is_empty());
        let l = &sol.labels;
        assert_eq!(g.group.multiply(l[0].as_ref().unwrap(), &1), *l[1].as_ref().unwrap());
    }

    #[test]
    fn fvs_examples() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(solve_gfvs(&reduce_fvs(&tri), 3).unwrap().unwrap().deleted.len(), 1);
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(solve_gfvs(&reduce_fvs(&tree), 4).unwrap().unwrap().deleted.len(), 0);
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(solve_gfvs(&reduce_fvs(&two), 6).unwrap().unwrap().deleted.len(), 2);
    }

    #[test]
    fn petersen_fvs_is_three() {
        let g = reduce_fvs(&petersen());
        let sol = solve_gfvs(&g, 3).unwrap().unwrap();
        assert_eq!(sol.deleted.len(), 3);
        assert!(sol.nodes <= 1 << 7, "nodes {}", sol.nodes);
        assert_eq!(solve_gfvs(&g, 2).unwrap(), None);
    }
}
