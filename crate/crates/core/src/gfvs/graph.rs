//! Group-labelled graphs, consistency checking and contraction of assigned
//! vertices into a single root.

use std::collections::VecDeque;

use super::group::GroupOracle;
use super::GfvsError;

/// One traversal of an edge: `label = λ(from, to)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<E> {
    pub from: usize,
    pub to: usize,
    pub edge: usize,
    pub label: E,
}

/// Undirected multigraph with a group element on every edge. The edge
/// `(u, v, g)` has `λ(u, v) = g` and `λ(v, u) = g⁻¹`. Self-loops and
/// parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph<G: GroupOracle> {
    pub group: G,
    n: usize,
    edges: Vec<(usize, usize, G::Elem)>,
}

impl<G: GroupOracle> LabelledGraph<G> {
    pub fn new(group: G, n: usize) -> Self {
        LabelledGraph { group, n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: G::Elem) -> Result<(), GfvsError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GfvsError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.edges.push((u, v, label));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, G::Elem)] {
        &self.edges
    }

    /// `λ` of edge `e` traversed starting at `from`.
    pub fn step(&self, e: usize, from: usize) -> Step<G::Elem> {
        let (u, v, ref g) = self.edges[e];
        if from == u {
            Step { from: u, to: v, edge: e, label: g.clone() }
        } else {
            debug_assert_eq!(from, v);
            Step { from: v, to: u, edge: e, label: self.group.invert(g) }
        }
    }

    /// Incident edges per vertex; a self-loop is listed once.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, &(u, v, _)) in self.edges.iter().enumerate() {
            inc[u].push(e);
            if v != u {
                inc[v].push(e);
            }
        }
        inc
    }

    /// Same vertex set, edges touching `deleted` removed.
    pub fn without(&self, deleted: &[bool]) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|(u, v, _)| !deleted[*u] && !deleted[*v])
            .cloned()
            .collect();
        LabelledGraph { group: self.group.clone(), n: self.n, edges }
    }

    /// Label of a walk given as steps.
    pub fn walk_label(&self, steps: &[Step<G::Elem>]) -> G::Elem {
        self.group.product(steps.iter().map(|s| &s.label))
    }
}

/// Why no consistent labelling exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inconsistency<E> {
    /// Closed walk with non-identity label (a simple cycle, possibly a
    /// self-loop or a pair of parallel edges).
    Cycle(Vec<Step<E>>),
    /// Walk between assigned vertices `a` and `b` with
    /// `φ(a) · λ(walk) ≠ φ(b)`.
    AssignedPath(Vec<Step<E>>),
}

/// Breadth-first label propagation. Components with assigned vertices are
/// grown from all of them at once, other components from their lowest
/// vertex with the identity. Returns `φ` with `φ(u) λ(u, v) = φ(v)` on every
/// edge, or a witness.
pub fn check_consistent<G: GroupOracle>(
    g: &LabelledGraph<G>,
    assignments: &[(usize, G::Elem)],
) -> Result<Result<Vec<G::Elem>, Inconsistency<G::Elem>>, GfvsError> {
    let grp = &g.group;
    let inc = g.incidence();
    let mut label: Vec<Option<G::Elem>> = vec![None; g.n];
    // Tree edge into each vertex, its root and depth.
    let mut parent: Vec<Option<usize>> = vec![None; g.n];
    let mut root = vec![usize::MAX; g.n];
    let mut depth = vec![0usize; g.n];
    let mut queue = VecDeque::new();
    for (v, a) in assignments {
        if *v >= g.n {
            return Err(GfvsError::VertexOutOfRange { vertex: *v, n: g.n });
        }
        match &label[*v] {
            Some(b) if !grp.equal(a, b) => return Err(GfvsError::ContradictoryAssignment(*v)),
            Some(_) => {}
            None => {
                label[*v] = Some(a.clone());
                root[*v] = *v;
                queue.push_back(*v);
            }
        }
    }
    let mut start = 0;
    loop {
        while let Some(u) = queue.pop_front() {
            let lu = label[u].clone().expect("queued vertices are labelled");
            for &e in &inc[u] {
                let s = g.step(e, u);
                let want = grp.multiply(&lu, &s.label);
                match &label[s.to] {
                    None => {
                        label[s.to] = Some(want);
                        parent[s.to] = Some(e);
                        root[s.to] = root[u];
                        depth[s.to] = depth[u] + 1;
                        queue.push_back(s.to);
                    }
                    Some(have) if !grp.equal(have, &want) => {
                        return Ok(Err(witness(g, &parent, &root, &depth, s)));
                    }
                    Some(_) => {}
                }
            }
        }
        while start < g.n && label[start].is_some() {
            start += 1;
        }
        if start == g.n {
            break;
        }
        label[start] = Some(grp.identity());
        root[start] = start;
        queue.push_back(start);
    }
    Ok(Ok(label.into_iter().map(|l| l.expect("every vertex labelled")).collect()))
}

/// Tree path from the root down to `v`.
fn path_from_root<G: GroupOracle>(
    g: &LabelledGraph<G>,
    parent: &[Option<usize>],
    mut v: usize,
) -> Vec<Step<G::Elem>> {
    let mut rev = Vec::new();
    while let Some(e) = parent[v] {
        let (a, b, _) = g.edges[e];
        let from = if a == v { b } else { a };
        rev.push(g.step(e, from));
        v = from;
    }
    rev.reverse();
    rev
}

fn witness<G: GroupOracle>(
    g: &LabelledGraph<G>,
    parent: &[Option<usize>],
    root: &[usize],
    depth: &[usize],
    closing: Step<G::Elem>,
) -> Inconsistency<G::Elem> {
    let (a, b) = (closing.from, closing.to);
    let reverse = |steps: Vec<Step<G::Elem>>| -> Vec<Step<G::Elem>> {
        steps.into_iter().rev().map(|s| g.step(s.edge, s.to)).collect()
    };
    if root[a] != root[b] {
        let mut walk = path_from_root(g, parent, a);
        walk.push(closing);
        walk.extend(reverse(path_from_root(g, parent, b)));
        return Inconsistency::AssignedPath(walk);
    }
    // Climb to the lowest common ancestor.
    let (mut x, mut y) = (a, b);
    let mut up_a = Vec::new();
    let mut up_b = Vec::new();
    while x != y {
        if depth[x] >= depth[y] {
            let e = parent[x].expect("not the root");
            let s = g.step(e, x);
            x = s.to;
            up_a.push(s);
        } else {
            let e = parent[y].expect("not the root");
            let s = g.step(e, y);
            y = s.to;
            up_b.push(s);
        }
    }
    // lca -> a, a -> b, b -> lca
    let mut cycle = reverse(up_a);
    cycle.push(closing);
    cycle.extend(up_b);
    Inconsistency::Cycle(cycle)
}

/// Graph with every assigned vertex contracted into a fresh root `t = n`
/// that carries the identity. Assigned vertices stay as isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged<G: GroupOracle> {
    pub graph: LabelledGraph<G>,
    pub root: usize,
    /// Some edge between two assigned vertices disagrees with their labels.
    pub conflict: bool,
    pub assigned: Vec<bool>,
}

/// Contracts the assigned vertices: an edge `(u, v)` with `u` assigned
/// `φ(u)` becomes `(t, v)` with label `φ(u) λ(u, v)`. Edges between two
/// assigned vertices become self-loops at `t`; identity loops are dropped.
pub fn merge_assigned<G: GroupOracle>(
    g: &LabelledGraph<G>,
    assignments: &[(usize, G::Elem)],
) -> Result<Merged<G>, GfvsError> {
    let grp = &g.group;
    let mut phi: Vec<Option<G::Elem>> = vec![None; g.n];
    for (v, a) in assignments {
        if *v >= g.n {
            return Err(GfvsError::VertexOutOfRange { vertex: *v, n: g.n });
        }
        match &phi[*v] {
            Some(b) if !grp.equal(a, b) => return Err(GfvsError::ContradictoryAssignment(*v)),
            _ => phi[*v] = Some(a.clone()),
        }
    }
    let t = g.n;
    let mut out = LabelledGraph::new(grp.clone(), g.n + 1);
    let mut conflict = false;
    for (u, v, lam) in &g.edges {
        let (u, v) = (*u, *v);
        match (&phi[u], &phi[v]) {
            (None, None) => out.edges.push((u, v, lam.clone())),
            (Some(pu), None) => out.edges.push((t, v, grp.multiply(pu, lam))),
            (None, Some(pv)) => out.edges.push((u, t, grp.multiply(lam, &grp.invert(pv)))),
            (Some(pu), Some(pv)) => {
                let loop_label = grp.multiply(&grp.multiply(pu, lam), &grp.invert(pv));
                if !grp.is_identity(&loop_label) {
                    conflict = true;
                    out.edges.push((t, t, loop_label));
                }
            }
        }
    }
    let assigned = phi.iter().map(Option::is_some).collect();
    Ok(Merged { graph: out, root: t, conflict, assigned })
}
