//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's evaluators or solvers; only data accessors.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use ksubmod::gfvs::{AnyElem, AnyGroup, GroupOracle, LabelledGraph};
use ksubmod::network::{KSubNetwork, SINK, SOURCE};
use ksubmod::reductions::Graph;
use ksubmod::{ConstraintKind, VcspInstance};

/// Relaxed value of a unary table: the integral costs, and the mean of the
/// two cheapest ones at 0 (the only value when `k = 1`).
fn unary_halves(costs_halves: &[u64], x: u32) -> u64 {
    if x > 0 {
        return costs_halves[x as usize - 1];
    }
    let mut s = costs_halves.to_vec();
    s.sort_unstable();
    match s.len() {
        1 => s[0],
        _ => (s[0] + s[1]) / 2,
    }
}

/// Unweighted relaxed cost of one constraint, in halves, straight from the
/// case tables.
pub fn constraint_halves(kind: &ConstraintKind, args: &[u32]) -> u64 {
    match kind {
        ConstraintKind::Unary(t) => unary_halves(&t.halves()[1..], args[0]),
        ConstraintKind::Permutation(pi) => match (args[0], args[1]) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            (x, y) if pi.apply(x) == y => 0,
            _ => 2,
        },
        ConstraintKind::SoftOr { left, right } => {
            let (x, y) = (args[0], args[1]);
            if x == *left || y == *right {
                0
            } else {
                [x, y].iter().filter(|&&v| v != 0).count() as u64
            }
        }
        ConstraintKind::WideEquality => {
            let values: HashSet<u32> = args.iter().copied().filter(|&v| v != 0).collect();
            match values.len() {
                0 => 0,
                1 if args.contains(&0) => 1,
                1 => 0,
                _ => 2,
            }
        }
    }
}

/// Relaxed cost with crisp constraints at weight `crisp`.
pub fn relaxed_cost(inst: &VcspInstance, phi: &[u32], crisp: u64) -> u64 {
    inst.constraints()
        .iter()
        .map(|c| {
            let args: Vec<u32> = c.scope().iter().map(|&v| phi[v]).collect();
            let w = if c.is_crisp() { c.weight() * crisp } else { c.weight() };
            w * constraint_halves(c.kind(), &args)
        })
        .sum()
}

/// Soft cost, `None` if a crisp constraint is broken.
pub fn soft_cost(inst: &VcspInstance, phi: &[u32]) -> Option<u64> {
    let mut total = 0;
    for c in inst.constraints() {
        let args: Vec<u32> = c.scope().iter().map(|&v| phi[v]).collect();
        let h = constraint_halves(c.kind(), &args);
        if c.is_crisp() {
            if h > 0 {
                return None;
            }
        } else {
            total += c.weight() * h;
        }
    }
    Some(total)
}

/// Calls `visit` on every vector of `{lo..=hi}^n`.
pub fn for_each_vector(n: usize, lo: u32, hi: u32, mut visit: impl FnMut(&[u32])) {
    let mut x = vec![lo; n];
    loop {
        visit(&x);
        let Some(i) = x.iter().rposition(|&v| v < hi) else { return };
        x[i] += 1;
        x[i + 1..].iter_mut().for_each(|v| *v = lo);
    }
}

/// Relaxed minimum (crisp weight as given) and every minimiser.
pub fn brute_relaxed(inst: &VcspInstance, crisp: u64) -> (u64, Vec<Vec<u32>>) {
    let mut best = u64::MAX;
    let mut argmin = Vec::new();
    for_each_vector(inst.n(), 0, inst.k(), |x| {
        let c = relaxed_cost(inst, x, crisp);
        if c < best {
            best = c;
            argmin.clear();
        }
        if c == best {
            argmin.push(x.to_vec());
        }
    });
    (best, argmin)
}

/// Integral optimum respecting crisp constraints and the given fixes.
pub fn brute_integral(inst: &VcspInstance, fixed: &[Option<u32>]) -> Option<u64> {
    let mut best = None;
    for_each_vector(inst.n(), 1, inst.k(), |x| {
        if fixed.iter().zip(x).any(|(f, v)| f.is_some_and(|f| f != *v)) {
            return;
        }
        if let Some(c) = soft_cost(inst, x) {
            best = Some(best.map_or(c, |b: u64| b.min(c)));
        }
    });
    best
}

/// `y` keeps every nonzero coordinate of `x` and sets at least one more.
pub fn dominates(y: &[u32], x: &[u32]) -> bool {
    y != x && x.iter().zip(y).all(|(&a, &b)| a == 0 || a == b)
}

/// Classical vertex cover LP value in halves, by enumerating `{0, ½, 1}`
/// weights (the LP has a half-integral optimum).
pub fn vc_lp_halves(g: &Graph) -> u64 {
    let mut best = u64::MAX;
    for_each_vector(g.n, 0, 2, |x| {
        if g.edges.iter().all(|&(u, v, _)| x[u] + x[v] >= 2) {
            best = best.min(x.iter().map(|&h| u64::from(h)).sum());
        }
    });
    best
}

/// Minimum weight of edges crossing a partition separating `s` from `t`.
pub fn min_st_cut(g: &Graph, s: usize, t: usize) -> u64 {
    let others: Vec<usize> = (0..g.n).filter(|&v| v != s && v != t).collect();
    let mut best = u64::MAX;
    for mask in 0u32..1 << others.len() {
        let mut side = vec![false; g.n];
        side[s] = true;
        for (i, &v) in others.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let c = g.edges.iter().filter(|&&(u, v, _)| side[u] != side[v]).map(|e| e.2).sum();
        best = best.min(c);
    }
    best
}

/// Capacity of the cut given by membership flags.
pub fn cut_value(net: &KSubNetwork, member: &[bool]) -> u64 {
    net.edges().iter().filter(|e| member[e.from] && !member[e.to]).map(|e| e.cap.0).sum()
}

/// Drops every value group with more than one member.
pub fn normalised(k: u32, member: &[bool]) -> Vec<bool> {
    let k = k as usize;
    let mut out = member.to_vec();
    for group in member[2..].chunks(k).enumerate() {
        if group.1.iter().filter(|&&b| b).count() > 1 {
            let base = 2 + group.0 * k;
            out[base..base + k].iter_mut().for_each(|b| *b = false);
        }
    }
    out
}

/// The cut `S_φ`: source plus `v_d` for every `φ(v) = d ≠ 0`.
pub fn cut_of(k: u32, phi: &[u32]) -> Vec<bool> {
    let mut member = vec![false; 2 + phi.len() * k as usize];
    member[SOURCE] = true;
    member[SINK] = false;
    for (v, &d) in phi.iter().enumerate() {
        if d > 0 {
            member[2 + v * k as usize + d as usize - 1] = true;
        }
    }
    member
}

/// Labels every vertex not in `deleted` so that `φ(u)λ = φ(v)` on each
/// surviving edge, or reports that no such labelling exists.
pub fn consistent<G: GroupOracle>(g: &LabelledGraph<G>, deleted: &[bool]) -> bool {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, G::Elem)>> = vec![Vec::new(); n];
    for (u, v, l) in g.edges() {
        if deleted[*u] || deleted[*v] {
            continue;
        }
        adj[*u].push((*v, l.clone()));
        adj[*v].push((*u, g.group.invert(l)));
    }
    let mut label: Vec<Option<G::Elem>> = vec![None; n];
    for s in 0..n {
        if deleted[s] || label[s].is_some() {
            continue;
        }
        label[s] = Some(g.group.identity());
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let lu = label[u].clone().unwrap();
            for (v, l) in &adj[u] {
                let want = g.group.multiply(&lu, l);
                match &label[*v] {
                    None => {
                        label[*v] = Some(want);
                        queue.push_back(*v);
                    }
                    Some(have) if !g.group.equal(have, &want) => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Smallest number of vertex deletions leaving a consistent graph.
pub fn brute_gfvs<G: GroupOracle>(g: &LabelledGraph<G>) -> usize {
    let n = g.n();
    (0..=n)
        .find(|&size| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == size).any(|m| {
                let deleted: Vec<bool> = (0..n).map(|v| m >> v & 1 == 1).collect();
                consistent(g, &deleted)
            })
        })
        .expect("deleting everything is consistent")
}

/// Vertex sets (as bitmasks) of the non-null simple cycles of `g`,
/// including non-identity loops.
pub fn non_null_cycles<G: GroupOracle>(g: &LabelledGraph<G>) -> Vec<u64> {
    let n = g.n();
    assert!(n <= 64);
    // Directed arcs: (to, label, edge id).
    let mut adj: Vec<Vec<(usize, G::Elem, usize)>> = vec![Vec::new(); n];
    let mut masks = HashSet::new();
    for (i, (u, v, l)) in g.edges().iter().enumerate() {
        if u == v {
            if !g.group.is_identity(l) {
                masks.insert(1u64 << u);
            }
            continue;
        }
        adj[*u].push((*v, l.clone(), i));
        adj[*v].push((*u, g.group.invert(l), i));
    }
    struct Walk<'a, G: GroupOracle> {
        g: &'a LabelledGraph<G>,
        adj: &'a [Vec<(usize, G::Elem, usize)>],
        start: usize,
        masks: &'a mut HashSet<u64>,
    }
    impl<G: GroupOracle> Walk<'_, G> {
        fn go(&mut self, u: usize, mask: u64, label: G::Elem, first_edge: Option<usize>, last_edge: Option<usize>) {
            for (v, l, e) in &self.adj[u] {
                if Some(*e) == last_edge {
                    continue;
                }
                let next = self.g.group.multiply(&label, l);
                if *v == self.start {
                    // Closing edge must differ from the opening one.
                    if Some(*e) != first_edge && !self.g.group.is_identity(&next) {
                        self.masks.insert(mask);
                    }
                } else if *v > self.start && mask >> v & 1 == 0 {
                    self.go(*v, mask | 1 << v, next, first_edge.or(Some(*e)), Some(*e));
                }
            }
        }
    }
    for s in 0..n {
        let mut w = Walk { g, adj: &adj, start: s, masks: &mut masks };
        w.go(s, 1 << s, g.group.identity(), None, None);
    }
    let mut out: Vec<u64> = masks.into_iter().collect();
    out.sort_unstable();
    out
}

/// Shortest `z`-lengths from `root` counting internal vertices only (the
/// root weighs nothing). `None` for unreachable vertices.
pub fn path_lengths<G: GroupOracle>(g: &LabelledGraph<G>, root: usize, z: &[u8]) -> Vec<Option<u64>> {
    let n = g.n();
    let w = |v: usize| if v == root { 0 } else { u64::from(z[v]) };
    let mut dist: Vec<Option<u64>> = vec![None; n];
    dist[root] = Some(0);
    let mut done = vec![false; n];
    loop {
        let Some(u) = (0..n).filter(|&v| !done[v] && dist[v].is_some()).min_by_key(|&v| dist[v]) else {
            break;
        };
        done[u] = true;
        let du = dist[u].unwrap() + w(u);
        for (a, b, _) in g.edges() {
            for (x, y) in [(*a, *b), (*b, *a)] {
                if x == u && dist[y].is_none_or(|d| du < d) {
                    dist[y] = Some(du);
                }
            }
        }
    }
    dist
}

/// Hitting verdict from cycles: infeasible iff some non-null simple cycle
/// `C` through a reachable `u` has `z(C) + 2ℓ(u) + z(u) < 1`.
pub fn hitting_by_cycles<G: GroupOracle>(g: &LabelledGraph<G>, root: usize, z: &[u8], cycles: &[u64]) -> bool {
    let w = |v: usize| if v == root { 0 } else { u64::from(z[v]) };
    let ell = path_lengths(g, root, z);
    for &mask in cycles {
        let members: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let zc: u64 = members.iter().map(|&v| w(v)).sum();
        for &u in &members {
            if let Some(l) = ell[u] {
                if zc + 2 * l + w(u) < 2 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn group_name(g: &AnyGroup) -> String {
    match g {
        AnyGroup::Cyclic(c) => format!("Z_{}", c.q),
        AnyGroup::Z2Pow(z) => format!("Z_2^{}", z.m),
        AnyGroup::Perm(p) => format!("S_{}", p.k),
    }
}

pub fn random_elem(rng: &mut impl rand::Rng, g: &AnyGroup) -> AnyElem {
    match g {
        AnyGroup::Cyclic(c) => AnyElem::Residue(rng.gen_range(0..c.q)),
        AnyGroup::Z2Pow(z) => AnyElem::Mask(num_bigint::BigUint::from(rng.gen_range(0u64..1 << z.m))),
        AnyGroup::Perm(p) => {
            use rand::seq::SliceRandom;
            let mut v: Vec<u8> = (0..p.k as u8).collect();
            v.shuffle(rng);
            AnyElem::Perm(v)
        }
    }
}

/// Random labelled graph on `n` vertices, no loops.
pub fn random_labelled(rng: &mut impl rand::Rng, n: usize, p: f64, group: AnyGroup) -> LabelledGraph<AnyGroup> {
    let mut g = LabelledGraph::new(group, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let l = random_elem(rng, &group);
                g.add_edge(u, v, l).unwrap();
            }
        }
    }
    g
}
