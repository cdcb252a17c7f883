//! Maximum flow by shortest augmenting paths, residual graphs, strongly
//! connected components, and extreme minimum cut extraction.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

use crate::network::{Cut, KSubNetwork, SINK, SOURCE};
use crate::vcsp::HalfCost;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("flow is not maximum: the sink is reachable in the residual graph")]
    NotMaximum,
    #[error("flow vector does not match the network")]
    Mismatch,
}

/// Per-edge flow (indexed like [`KSubNetwork::edges`]) and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub edge_flow: Vec<u64>,
    pub value: HalfCost,
    pub augmentations: usize,
}

impl Flow {
    pub fn zero(net: &KSubNetwork) -> Self {
        Flow { edge_flow: vec![0; net.edges().len()], value: HalfCost::ZERO, augmentations: 0 }
    }

    /// Capacity bounds and conservation at every vertex except s and t.
    pub fn is_feasible(&self, net: &KSubNetwork) -> bool {
        if self.edge_flow.len() != net.edges().len() {
            return false;
        }
        let mut balance = vec![0i128; net.vertex_count()];
        for (e, &f) in net.edges().iter().zip(&self.edge_flow) {
            if f > e.cap.0 {
                return false;
            }
            balance[e.from] -= i128::from(f);
            balance[e.to] += i128::from(f);
        }
        let m = i128::from(self.value.0);
        balance[SOURCE] == -m
            && balance[SINK] == m
            && balance.iter().enumerate().all(|(v, &b)| v == SOURCE || v == SINK || b == 0)
    }
}

/// Arcs grouped by tail so that scanning a vertex reads contiguous memory.
/// Every network edge contributes a forward arc and a reverse arc; `pair`
/// links them and `forward[e]` locates edge `e`'s forward arc.
struct ArcGraph {
    head: Vec<u32>,
    residual: Vec<u64>,
    pair: Vec<u32>,
    offsets: Vec<usize>,
    forward: Vec<u32>,
}

impl ArcGraph {
    fn new(net: &KSubNetwork) -> Self {
        let nv = net.vertex_count();
        let m = net.edges().len();
        let mut offsets = vec![0usize; nv + 1];
        for e in net.edges() {
            offsets[e.from + 1] += 1;
            offsets[e.to + 1] += 1;
        }
        for v in 0..nv {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut head = vec![0u32; 2 * m];
        let mut residual = vec![0u64; 2 * m];
        let mut pair = vec![0u32; 2 * m];
        let mut forward = vec![0u32; m];
        for (i, e) in net.edges().iter().enumerate() {
            let (a, b) = (fill[e.from], fill[e.to]);
            fill[e.from] += 1;
            fill[e.to] += 1;
            head[a] = e.to as u32;
            residual[a] = e.cap.0;
            head[b] = e.from as u32;
            pair[a] = b as u32;
            pair[b] = a as u32;
            forward[i] = a as u32;
        }
        ArcGraph { head, residual, pair, offsets, forward }
    }

    fn tail(&self, a: usize) -> usize {
        self.head[self.pair[a] as usize] as usize
    }
}

/// Maximum s-t flow by shortest augmenting paths. Paths of equal length are
/// found together: one breadth-first pass builds the level graph, then
/// depth-first search augments along it until it is blocked. Every
/// augmenting path pushes at least one half-unit.
pub fn max_flow(net: &KSubNetwork) -> Flow {
    let nv = net.vertex_count();
    let mut g = ArcGraph::new(net);
    let mut value = 0u64;
    let mut augmentations = 0usize;
    let mut level = vec![u32::MAX; nv];
    let mut next_arc = vec![0usize; nv];
    let mut queue = VecDeque::new();
    let mut path: Vec<usize> = Vec::new();
    loop {
        level.iter_mut().for_each(|l| *l = u32::MAX);
        level[SOURCE] = 0;
        queue.clear();
        queue.push_back(SOURCE);
        while let Some(u) = queue.pop_front() {
            if level[u] >= level[SINK] {
                break;
            }
            for a in g.offsets[u]..g.offsets[u + 1] {
                let w = g.head[a] as usize;
                if g.residual[a] > 0 && level[w] == u32::MAX {
                    level[w] = level[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if level[SINK] == u32::MAX {
            break;
        }
        next_arc.copy_from_slice(&g.offsets[..nv]);
        // Blocking flow: advance along admissible arcs, retreat on dead ends.
        path.clear();
        let mut u = SOURCE;
        loop {
            if u == SINK {
                let bottleneck = path.iter().map(|&a| g.residual[a]).min().expect("non-empty path");
                for &a in &path {
                    g.residual[a] -= bottleneck;
                    g.residual[g.pair[a] as usize] += bottleneck;
                }
                value += bottleneck;
                augmentations += 1;
                // Resume from the tail of the first saturated arc.
                let cut = path.iter().position(|&a| g.residual[a] == 0).expect("bottleneck arc");
                path.truncate(cut);
                u = path.last().map_or(SOURCE, |&a| g.head[a] as usize);
                continue;
            }
            let end = g.offsets[u + 1];
            while next_arc[u] < end {
                let a = next_arc[u];
                let w = g.head[a] as usize;
                if g.residual[a] > 0 && level[w] == level[u] + 1 {
                    break;
                }
                next_arc[u] += 1;
            }
            if next_arc[u] < end {
                let a = next_arc[u];
                path.push(a);
                u = g.head[a] as usize;
                continue;
            }
            // Dead end: no admissible arc left at `u`.
            level[u] = u32::MAX;
            match path.pop() {
                Some(a) => {
                    u = g.tail(a);
                    next_arc[u] += 1;
                }
                None => break,
            }
        }
    }
    let edge_flow = g.forward.iter().map(|&a| g.residual[g.pair[a as usize] as usize]).collect();
    Flow { edge_flow, value: HalfCost(value), augmentations }
}

/// Directed graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Digraph {
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, _) in edges {
            offsets[u + 1] += 1;
        }
        for v in 0..vertex_count {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; edges.len()];
        for &(u, w) in edges {
            targets[fill[u]] = w;
            fill[u] += 1;
        }
        Digraph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.successors(u).contains(&w)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.successors(u).iter().map(move |&w| (u, w)))
    }

    /// Vertices reachable from `start`.
    pub fn reachable(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &w in self.successors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Residual graph: `(u, v)` present iff `f(u,v) < c(u,v)` or `f(v,u) > 0`.
pub type ResidualGraph = Digraph;

pub fn residual(net: &KSubNetwork, flow: &Flow) -> Result<ResidualGraph, FlowError> {
    if flow.edge_flow.len() != net.edges().len() {
        return Err(FlowError::Mismatch);
    }
    let mut arcs = Vec::with_capacity(2 * net.edges().len());
    for (e, &f) in net.edges().iter().zip(&flow.edge_flow) {
        if f < e.cap.0 {
            arcs.push((e.from, e.to));
        }
        if f > 0 {
            arcs.push((e.to, e.from));
        }
    }
    Ok(Digraph::from_edges(net.vertex_count(), &arcs))
}

/// Strongly connected components (iterative Tarjan). Components come out
/// in reverse topological order: every edge leaving a component points to a
/// component listed earlier.
pub fn scc(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let mut out = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Extreme minimum cut of a k-submodular network from a maximum flow.
///
/// Starts from the residual-reachable set of `s` and absorbs strongly
/// connected components whose residual out-edges all land in the current
/// cut, as long as the cut stays normalised. Ready components are taken in
/// increasing order of their smallest vertex id. Each component is tested
/// at most once.
pub fn extreme_min_cut(net: &KSubNetwork, flow: &Flow) -> Result<Cut, FlowError> {
    let k = net.k() as usize;
    let g = residual(net, flow)?;
    let nv = g.vertex_count();
    let reach = g.reachable(SOURCE);
    if reach[SINK] {
        return Err(FlowError::NotMaximum);
    }
    let comps = scc(&g);
    let mut comp_of = vec![0usize; nv];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut in_cut = reach;
    // Count of value-group members per variable already in the cut.
    let mut group_count = vec![0u32; net.variables()];
    for v in 2..nv {
        if in_cut[v] {
            group_count[(v - 2) / k] += 1;
        }
    }
    // Residual edges from each component to vertices outside the cut.
    let mut pending = vec![0usize; comps.len()];
    let mut reversed = Vec::with_capacity(g.edge_count());
    for (u, w) in g.edges() {
        reversed.push((w, u));
        if comp_of[u] != comp_of[w] && !in_cut[w] {
            pending[comp_of[u]] += 1;
        }
    }
    let preds = Digraph::from_edges(nv, &reversed);
    let sink_comp = comp_of[SINK];
    let mut checked = vec![false; comps.len()];
    let mut ready = BinaryHeap::new();
    for (c, members) in comps.iter().enumerate() {
        if in_cut[members[0]] {
            checked[c] = true;
        } else if pending[c] == 0 && c != sink_comp {
            ready.push(Reverse((members[0], c)));
        }
    }
    while let Some(Reverse((_, c))) = ready.pop() {
        if checked[c] {
            continue;
        }
        checked[c] = true;
        let members = &comps[c];
        let mut vars: Vec<usize> = members.iter().map(|&v| (v - 2) / k).collect();
        vars.sort_unstable();
        let repeats = vars.windows(2).any(|w| w[0] == w[1]);
        if repeats || vars.iter().any(|&var| group_count[var] > 0) {
            continue;
        }
        for &v in members {
            in_cut[v] = true;
            group_count[(v - 2) / k] += 1;
        }
        for &v in members {
            for &u in preds.successors(v) {
                let cu = comp_of[u];
                if cu != c && !in_cut[u] {
                    pending[cu] -= 1;
                    if pending[cu] == 0 && !checked[cu] && cu != sink_comp {
                        ready.push(Reverse((comps[cu][0], cu)));
                    }
                }
            }
        }
    }
    Cut::new(in_cut).map_err(|_| FlowError::NotMaximum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{assemble, vertex_of, Edge, GadgetFragment};
    use crate::vcsp::{Constraint, Permutation, VcspInstance};

    fn raw_network(n_vars: usize, k: u32, edges: &[(usize, usize, u64)]) -> KSubNetwork {
        let frag = GadgetFragment {
            edges: edges.iter().map(|&(from, to, c)| Edge { from, to, cap: HalfCost(c) }).collect(),
            shift: HalfCost::ZERO,
        };
        KSubNetwork::from_fragments(k, n_vars, [frag])
    }

    #[test]
    fn flow_on_empty_network() {
        let net = KSubNetwork::empty(2, 3);
        let f = max_flow(&net);
        assert_eq!(f.value, HalfCost(0));
        assert_eq!(f.augmentations, 0);
    }

    #[test]
    fn two_variable_example() {
        let mut inst = VcspInstance::new(2, 2).unwrap();
        inst.push(Constraint::pin(2, 0, 1).unwrap()).unwrap();
        inst.push(Constraint::pin(2, 1, 2).unwrap()).unwrap();
        inst.push(Constraint::permutation(0, 1, Permutation::identity(2), 1).unwrap()).unwrap();
        let net = assemble(&inst).unwrap();
        let f = max_flow(&net);
        assert!(f.is_feasible(&net));
        assert_eq!(f.value + net.offset(), HalfCost(2));
        let cut = extreme_min_cut(&net, &f).unwrap();
        let phi = crate::network::assignment_of_cut(2, &cut).unwrap();
        assert_eq!(phi.raw(), vec![1, 2]);
    }

    #[test]
    fn residual_of_zero_flow_is_the_network() {
        let net = raw_network(1, 2, &[(0, 2, 3), (2, 1, 1), (3, 1, 2)]);
        let g = residual(&net, &Flow::zero(&net)).unwrap();
        let mut edges: Vec<_> = g.edges().collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 2), (2, 1), (3, 1)]);
    }

    #[test]
    fn residual_of_saturated_path() {
        let net = raw_network(1, 1, &[(0, 2, 1), (2, 1, 1)]);
        let f = max_flow(&net);
        assert_eq!(f.value, HalfCost(1));
        let g = residual(&net, &f).unwrap();
        let mut edges: Vec<_> = g.edges().collect();
        edges.sort();
        assert_eq!(edges, vec![(1, 2), (2, 0)]);
        assert!(!g.reachable(SOURCE)[SINK]);
    }

    #[test]
    fn scc_shapes() {
        let dag = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(scc(&dag).len(), 3);
        let cyc = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(scc(&cyc), vec![vec![0, 1, 2]]);
        let two = Digraph::from_edges(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]);
        let comps = scc(&two);
        assert_eq!(comps, vec![vec![2, 3], vec![0, 1]]);
    }

    #[test]
    fn extreme_cut_of_empty_network_prefers_lowest_value() {
        let net = KSubNetwork::empty(2, 1);
        let f = max_flow(&net);
        let cut = extreme_min_cut(&net, &f).unwrap();
        assert_eq!(cut.members(), vec![SOURCE, vertex_of(2, 0, 1)]);
    }

    #[test]
    fn extreme_cut_all_relaxed_when_nothing_qualifies() {
        // Crisp cycle u = v, v = w, w = swap(u): no integral point satisfies
        // it, and any partial assignment breaks a crisp edge by half.
        let mut inst = VcspInstance::new(2, 3).unwrap();
        let id = Permutation::identity(2);
        let swap = Permutation::new(vec![2, 1]).unwrap();
        for (x, y, p) in [(0, 1, id.clone()), (1, 2, id), (2, 0, swap)] {
            inst.push(Constraint::permutation(x, y, p, 1).unwrap().into_crisp()).unwrap();
        }
        let net = assemble(&inst).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, HalfCost(0));
        let cut = extreme_min_cut(&net, &f).unwrap();
        assert_eq!(cut.members(), vec![SOURCE]);
    }

    #[test]
    fn not_maximum_detected() {
        let net = raw_network(1, 1, &[(0, 2, 1), (2, 1, 1)]);
        assert_eq!(extreme_min_cut(&net, &Flow::zero(&net)), Err(FlowError::NotMaximum));
    }
}
