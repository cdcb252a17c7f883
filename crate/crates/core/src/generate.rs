//! Seeded random instance generators used by the verification suites, the
//! examples and the CLI's `verify` subcommand.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::reductions::{Graph, UlcEdge, UlcInstance};
use crate::vcsp::{Constraint, Permutation, UnaryTable, VcspInstance};

/// Random bijection on `1..=k`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, k: u32) -> Permutation {
    let mut image: Vec<u32> = (1..=k).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled identity is a bijection")
}

/// Random unary table with integral costs in `0..=max_cost`.
pub fn random_unary<R: Rng + ?Sized>(rng: &mut R, k: u32, max_cost: u64) -> UnaryTable {
    let costs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=max_cost)).collect();
    UnaryTable::from_costs(&costs).expect("k >= 1")
}

fn distinct_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let x = rng.gen_range(0..n);
    let mut y = rng.gen_range(0..n - 1);
    if y >= x {
        y += 1;
    }
    (x, y)
}

/// One random unary, permutation or soft-or constraint on `n` variables.
/// About one in eight binary constraints is crisp.
pub fn random_constraint<R: Rng + ?Sized>(rng: &mut R, k: u32, n: usize) -> Constraint {
    let weight = rng.gen_range(1..=3);
    let family = if n < 2 { 0 } else { rng.gen_range(0..3) };
    match family {
        0 => {
            let v = rng.gen_range(0..n);
            Constraint::unary(v, random_unary(rng, k, 3), weight).expect("valid unary")
        }
        _ => {
            let (x, y) = distinct_pair(rng, n);
            let c = if family == 1 {
                Constraint::permutation(x, y, random_permutation(rng, k), weight)
            } else {
                Constraint::soft_or(x, rng.gen_range(1..=k), y, rng.gen_range(1..=k), weight)
            }
            .expect("valid binary constraint");
            if rng.gen_bool(0.125) {
                c.into_crisp()
            } else {
                c
            }
        }
    }
}

/// Random instance with `m` constraints drawn by [`random_constraint`].
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, k: u32, n: usize, m: usize) -> VcspInstance {
    let mut inst = VcspInstance::new(k, n).expect("k >= 1");
    for _ in 0..m {
        inst.push(random_constraint(rng, k, n)).expect("generated in range");
    }
    inst
}

/// Desk-scale instance with `n <= max_n`, `k <= max_k`, `m <= max_m`.
pub fn random_small_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    max_k: u32,
    max_m: usize,
) -> VcspInstance {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k);
    let m = rng.gen_range(0..=max_m);
    random_instance(rng, k, n, m)
}

/// Erdős–Rényi graph with unit weights.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, 1);
            }
        }
    }
    g
}

/// Graph with random weights in `1..=max_weight`.
pub fn random_weighted_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, max_weight: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, rng.gen_range(1..=max_weight));
            }
        }
    }
    g
}

/// Edge-deletion Unique Label Cover with a planted labelling.
///
/// Edges get random bijections consistent with the planted labels, then
/// `corrupt` edges between vertices of degree at least three have their
/// bijection replaced by one that disagrees with the plant. Returns the
/// instance and the planted labels.
pub fn planted_ulc<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    k: u32,
    corrupt: usize,
) -> (UlcInstance, Vec<u32>) {
    assert!(n >= 2 && k >= 2);
    let labels: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
    let mut pairs = Vec::with_capacity(m);
    // A spanning path keeps the instance connected.
    for v in 1..n.min(m + 1) {
        pairs.push((v - 1, v));
    }
    while pairs.len() < m {
        pairs.push(distinct_pair(rng, n));
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &pairs {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut edges: Vec<UlcEdge> = pairs
        .iter()
        .map(|&(u, v)| UlcEdge { u, v, weight: 1, pi: consistent_bijection(rng, k, labels[u], labels[v]) })
        .collect();
    let mut candidates: Vec<usize> =
        (0..m).filter(|&i| degree[pairs[i].0] >= 3 && degree[pairs[i].1] >= 3).collect();
    candidates.shuffle(rng);
    let mut touched = vec![false; n];
    let mut done = 0;
    for i in candidates {
        if done == corrupt {
            break;
        }
        let (u, v) = pairs[i];
        if touched[u] || touched[v] {
            continue;
        }
        touched[u] = true;
        touched[v] = true;
        let mut wrong = rng.gen_range(1..k);
        if wrong >= labels[v] {
            wrong += 1;
        }
        edges[i].pi = consistent_bijection(rng, k, labels[u], wrong);
        done += 1;
    }
    (UlcInstance { n, k, edges }, labels)
}

/// Random bijection sending `a` to `b`.
fn consistent_bijection<R: Rng + ?Sized>(rng: &mut R, k: u32, a: u32, b: u32) -> Permutation {
    let p = random_permutation(rng, k);
    // Compose with a transposition so that a -> b.
    let mut image = p.image().to_vec();
    let pos = image.iter().position(|&x| x == b).expect("bijection");
    image.swap(pos, (a - 1) as usize);
    Permutation::new(image).expect("still a bijection")
}
