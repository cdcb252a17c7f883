//! Separation oracle for the double path system: shortest paths from the
//! root under lexicographically perturbed weights.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::ops::Add;

use num_bigint::BigUint;

use super::graph::{LabelledGraph, Step};
use super::group::GroupOracle;
use super::GfvsError;

/// Half-units first, then a perturbation that makes shortest paths unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LexWeight {
    pub halves: u64,
    pub perturbation: BigUint,
}

impl LexWeight {
    pub fn new(halves: u64, perturbation: BigUint) -> Self {
        LexWeight { halves, perturbation }
    }
}

impl Ord for LexWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.halves
            .cmp(&other.halves)
            .then_with(|| self.perturbation.cmp(&other.perturbation))
    }
}

impl PartialOrd for LexWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LexWeight {
    type Output = LexWeight;
    fn add(self, rhs: &LexWeight) -> LexWeight {
        LexWeight { halves: self.halves + rhs.halves, perturbation: &self.perturbation + &rhs.perturbation }
    }
}

/// Two walks from the root to a common endpoint with different labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePathWitness<E> {
    pub path_a: Vec<Step<E>>,
    pub path_b: Vec<Step<E>>,
    pub endpoint: usize,
    /// Internal vertices of both walks (with multiplicity) plus the endpoint.
    pub length: LexWeight,
}

/// Perturbation bits: `2^v` for vertex `v`, `2^(n + e)` for edge `e`. The
/// edge bits separate parallel edges.
struct Perturb {
    n: usize,
}

impl Perturb {
    fn vertex(&self, v: usize) -> BigUint {
        BigUint::from(1u32) << v
    }

    fn edge(&self, e: usize) -> BigUint {
        BigUint::from(1u32) << (self.n + e)
    }
}

/// Length of a double path as defined by its two walks.
pub fn double_path_length<E>(
    z: &[u8],
    root: usize,
    n_edges_offset: usize,
    path_a: &[Step<E>],
    path_b: &[Step<E>],
    endpoint: usize,
) -> LexWeight {
    let p = Perturb { n: n_edges_offset };
    let mut w = LexWeight::default();
    for path in [path_a, path_b] {
        for s in path {
            w.perturbation += p.edge(s.edge);
            if s.from != root {
                w.halves += u64::from(z[s.from]);
                w.perturbation += p.vertex(s.from);
            }
        }
    }
    if endpoint != root {
        w.halves += u64::from(z[endpoint]);
        w.perturbation += p.vertex(endpoint);
    }
    w
}

/// Shortest-path tree from the root.
pub struct ShortestPaths<E> {
    /// Internal weight of the shortest walk to each vertex, `None` when
    /// unreachable.
    pub dist: Vec<Option<LexWeight>>,
    /// Label `ψ(v)` of that walk.
    pub psi: Vec<Option<E>>,
    pub parent: Vec<Option<usize>>,
}

/// Dijkstra under [`LexWeight`]. Walking from `a` to `b` costs `z(a)` unless
/// `a` is the root.
pub fn shortest_paths<G: GroupOracle>(
    g: &LabelledGraph<G>,
    root: usize,
    z: &[u8],
) -> Result<ShortestPaths<G::Elem>, GfvsError> {
    let n = g.n();
    if root >= n {
        return Err(GfvsError::RootMissing(root));
    }
    if z.len() != n {
        return Err(GfvsError::WeightLength { expected: n, got: z.len() });
    }
    let p = Perturb { n };
    let inc = g.incidence();
    let mut dist: Vec<Option<LexWeight>> = vec![None; n];
    let mut psi: Vec<Option<G::Elem>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    dist[root] = Some(LexWeight::default());
    psi[root] = Some(g.group.identity());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((LexWeight::default(), root)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let mut out = d.clone();
        if u != root {
            out.halves += u64::from(z[u]);
            out.perturbation += p.vertex(u);
        }
        for &e in &inc[u] {
            let s = g.step(e, u);
            if s.to == root || done[s.to] {
                continue;
            }
            let mut cand = out.clone();
            cand.perturbation += p.edge(e);
            let better = match &dist[s.to] {
                None => true,
                Some(cur) => match cand.cmp(cur) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        return Err(GfvsError::Invariant("tie between distinct shortest walks".into()))
                    }
                },
            };
            if better {
                psi[s.to] = Some(g.group.multiply(psi[u].as_ref().expect("settled"), &s.label));
                parent[s.to] = Some(e);
                dist[s.to] = Some(cand.clone());
                heap.push(Reverse((cand, s.to)));
            }
        }
    }
    Ok(ShortestPaths { dist, psi, parent })
}

fn tree_path<G: GroupOracle>(
    g: &LabelledGraph<G>,
    sp: &ShortestPaths<G::Elem>,
    mut v: usize,
) -> Vec<Step<G::Elem>> {
    let mut rev = Vec::new();
    while let Some(e) = sp.parent[v] {
        let (a, b, _) = g.edges()[e];
        let from = if a == v { b } else { a };
        rev.push(g.step(e, from));
        v = from;
    }
    rev.reverse();
    rev
}

/// Shortest double path of halves-length below one unit, if any.
///
/// An edge `(a, b)` with `ψ(a) λ(a, b) ≠ ψ(b)` and
/// `d(a) + z(a) + d(b) + z(b) < 1` closes a non-null cycle through the
/// lowest common ancestor `u` of `a` and `b` in the shortest-path tree. The
/// witness walks to `u` and then both ways around that cycle.
pub fn shortest_double_path<G: GroupOracle>(
    g: &LabelledGraph<G>,
    root: usize,
    z: &[u8],
) -> Result<Option<DoublePathWitness<G::Elem>>, GfvsError> {
    let sp = shortest_paths(g, root, z)?;
    let zr = |v: usize| if v == root { 0 } else { u64::from(z[v]) };
    let mut best: Option<DoublePathWitness<G::Elem>> = None;
    for (e, (a, b, lam)) in g.edges().iter().enumerate() {
        let (a, b) = (*a, *b);
        let (Some(da), Some(db)) = (&sp.dist[a], &sp.dist[b]) else { continue };
        if da.halves + zr(a) + db.halves + zr(b) >= 2 {
            continue;
        }
        let pa = sp.psi[a].as_ref().expect("reachable");
        let pb = sp.psi[b].as_ref().expect("reachable");
        if g.group.equal(&g.group.multiply(pa, lam), pb) {
            continue;
        }
        let w = witness_for_edge(g, &sp, root, z, e);
        if best.as_ref().is_none_or(|b| w.length < b.length) {
            best = Some(w);
        }
    }
    Ok(best)
}

fn witness_for_edge<G: GroupOracle>(
    g: &LabelledGraph<G>,
    sp: &ShortestPaths<G::Elem>,
    root: usize,
    z: &[u8],
    e: usize,
) -> DoublePathWitness<G::Elem> {
    let (a, b, _) = g.edges()[e];
    let to_a = tree_path(g, sp, a);
    let to_b = tree_path(g, sp, b);
    let common = to_a.iter().zip(&to_b).take_while(|(x, y)| x.edge == y.edge).count();
    let u = if common == 0 { root } else { to_a[common - 1].to };
    let stem = &to_a[..common];
    let arm_a = &to_a[common..];
    let arm_b = &to_b[common..];
    let closing = g.step(e, a);
    // Cycle u -> a -> b -> u; end the double path at b unless b is u.
    let (endpoint, path_a, path_b) = if b != u {
        let direct: Vec<_> = stem.iter().chain(arm_b).cloned().collect();
        let around: Vec<_> = stem.iter().chain(arm_a).cloned().chain([closing]).collect();
        (b, direct, around)
    } else if a != u {
        let direct: Vec<_> = stem.iter().chain(arm_a).cloned().collect();
        let around: Vec<_> =
            stem.iter().chain(arm_b).cloned().chain([g.step(e, b)]).collect();
        (a, direct, around)
    } else {
        // Self-loop at u.
        let direct: Vec<_> = stem.to_vec();
        let around: Vec<_> = stem.iter().cloned().chain([closing]).collect();
        (u, direct, around)
    };
    let length = double_path_length(z, root, g.n(), &path_a, &path_b, endpoint);
    DoublePathWitness { path_a, path_b, endpoint, length }
}

/// `true` iff every double path from `root` has length at least one unit.
pub fn is_hitting<G: GroupOracle>(g: &LabelledGraph<G>, root: usize, z: &[u8]) -> Result<bool, GfvsError> {
    Ok(shortest_double_path(g, root, z)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::super::group::Cyclic;
    use super::*;

    fn triangle() -> LabelledGraph<Cyclic> {
        let mut g = LabelledGraph::new(Cyclic::new(2), 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 0).unwrap();
        g.add_edge(2, 0, 0).unwrap();
        g
    }

    fn check_witness(g: &LabelledGraph<Cyclic>, root: usize, w: &DoublePathWitness<u64>) {
        for p in [&w.path_a, &w.path_b] {
            let mut at = root;
            for s in p.iter() {
                assert_eq!(s.from, at);
                at = s.to;
            }
            assert_eq!(at, w.endpoint);
        }
        assert_ne!(g.walk_label(&w.path_a), g.walk_label(&w.path_b));
    }

    #[test]
    fn triangle_zero_weights_violated() {
        let g = triangle();
        let w = shortest_double_path(&g, 0, &[0, 0, 0]).unwrap().unwrap();
        assert_eq!(w.length.halves, 0);
        check_witness(&g, 0, &w);
        assert!(!is_hitting(&g, 0, &[0, 0, 0]).unwrap());
    }

    #[test]
    fn triangle_half_weights_hit() {
        let g = triangle();
        assert_eq!(shortest_double_path(&g, 0, &[0, 1, 1]).unwrap(), None);
        assert!(is_hitting(&g, 0, &[0, 2, 0]).unwrap());
        assert!(is_hitting(&g, 0, &[0, 2, 2]).unwrap());
        assert!(!is_hitting(&g, 0, &[0, 1, 0]).unwrap());
    }

    #[test]
    fn consistent_graph_always_hit() {
        let mut g = LabelledGraph::new(Cyclic::new(3), 4);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(2, 0, 1).unwrap();
        g.add_edge(2, 3, 2).unwrap();
        for z in [[0, 0, 0, 0], [1, 1, 0, 2], [2, 0, 1, 0]] {
            assert!(is_hitting(&g, 0, &z).unwrap());
        }
    }

    #[test]
    fn pendant_cycle_and_self_loop_witnesses() {
        // root 0 - 1, triangle 1 2 3 with odd label sum, loop at 3.
        let mut g = LabelledGraph::new(Cyclic::new(2), 4);
        g.add_edge(0, 1, 0).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(2, 3, 0).unwrap();
        g.add_edge(3, 1, 0).unwrap();
        let w = shortest_double_path(&g, 0, &[0, 0, 1, 0]).unwrap().unwrap();
        check_witness(&g, 0, &w);
        assert_eq!(w.length.halves, 1);
        assert!(is_hitting(&g, 0, &[0, 0, 1, 1]).unwrap());
        assert!(is_hitting(&g, 0, &[0, 0, 2, 0]).unwrap());
        assert!(!is_hitting(&g, 0, &[1, 0, 1, 0]).unwrap());

        let mut h = LabelledGraph::new(Cyclic::new(2), 2);
        h.add_edge(0, 1, 0).unwrap();
        h.add_edge(1, 1, 1).unwrap();
        let w = shortest_double_path(&h, 0, &[0, 0]).unwrap().unwrap();
        check_witness(&h, 0, &w);
        assert!(is_hitting(&h, 0, &[0, 1]).unwrap());
        assert!(is_hitting(&h, 0, &[0, 2]).unwrap());
    }

    #[test]
    fn missing_root() {
        assert_eq!(shortest_double_path(&triangle(), 7, &[0; 3]).unwrap_err(), GfvsError::RootMissing(7));
    }
}
