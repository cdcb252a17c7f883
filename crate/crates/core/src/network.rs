//! (X,k)-networks: one vertex per (variable, integral value) plus a source
//! and a sink, with capacities chosen so that the cut of an assignment costs
//! exactly the assignment's relaxed value.

use std::fmt::Write as _;

use thiserror::Error;

use crate::vcsp::{
    Constraint, ConstraintKind, DomainValue, HalfAssignment, HalfCost, VcspInstance,
};

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("no flow gadget for {0} constraints")]
    Unsupported(&'static str),
    #[error("cut is not normalised: variable {0} has several members")]
    NotNormalised(usize),
    #[error("cut must contain the source and not the sink")]
    InvalidCut,
    #[error("constraint on variable {0} outside the instance")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub cap: HalfCost,
}

/// Edges contributed by a single constraint, plus the constant removed from
/// a unary table to make it non-negative with minimum 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetFragment {
    pub edges: Vec<Edge>,
    pub shift: HalfCost,
}

/// Vertex id of `v_d` for variable `var` and integral value `d`.
#[inline]
pub fn vertex_of(k: u32, var: usize, d: u32) -> usize {
    var * k as usize + (d as usize - 1) + 2
}

/// Inverse of [`vertex_of`] for non-terminal vertices.
#[inline]
pub fn value_of(k: u32, vertex: usize) -> (usize, u32) {
    let off = vertex - 2;
    (off / k as usize, (off % k as usize) as u32 + 1)
}

/// Gadget for one unary or binary basic constraint, capacities multiplied by
/// `weight` (the materialised weight for crisp constraints).
pub fn build_gadget(c: &Constraint, k: u32, weight: u64) -> Result<GadgetFragment, NetworkError> {
    let mut frag = GadgetFragment::default();
    frag.shift = gadget_into(c, k, weight, &mut frag.edges)?;
    Ok(frag)
}

/// Appends the gadget's edges to `out` and returns its shift.
fn gadget_into(c: &Constraint, k: u32, weight: u64, out: &mut Vec<Edge>) -> Result<HalfCost, NetworkError> {
    let mut shift_out = HalfCost::ZERO;
    let mut edge = |from: usize, to: usize, halves: u64| {
        out.push(Edge { from, to, cap: HalfCost(halves * weight) });
    };
    match c.kind() {
        ConstraintKind::Unary(table) => {
            let v = c.scope()[0];
            let (t, shift) = table.shifted();
            let h = t.halves();
            let d1 = (1..=k).min_by_key(|&d| (h[d as usize], d)).expect("k >= 1");
            edge(SOURCE, vertex_of(k, v, d1), h[0]);
            edge(vertex_of(k, v, d1), SINK, h[d1 as usize]);
            for d in (1..=k).filter(|&d| d != d1) {
                edge(vertex_of(k, v, d), SINK, h[d as usize] - h[0]);
            }
            shift_out = shift * weight;
        }
        ConstraintKind::Permutation(pi) => {
            let (u, v) = (c.scope()[0], c.scope()[1]);
            for i in 1..=k {
                edge(vertex_of(k, u, i), vertex_of(k, v, pi.apply(i)), 1);
            }
            for j in 1..=k {
                edge(vertex_of(k, v, j), vertex_of(k, u, pi.apply_inverse(j)), 1);
            }
        }
        ConstraintKind::SoftOr { left, right } => {
            let (u, v) = (c.scope()[0], c.scope()[1]);
            for i in (1..=k).filter(|i| i != left) {
                edge(vertex_of(k, u, i), vertex_of(k, v, *right), 1);
            }
            for j in (1..=k).filter(|j| j != right) {
                edge(vertex_of(k, v, j), vertex_of(k, u, *left), 1);
            }
        }
        ConstraintKind::WideEquality => return Err(NetworkError::Unsupported("wide-equality")),
    }
    Ok(shift_out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSubNetwork {
    k: u32,
    n: usize,
    edges: Vec<Edge>,
    offset: HalfCost,
}

impl KSubNetwork {
    pub fn empty(k: u32, n: usize) -> Self {
        KSubNetwork { k, n, edges: Vec::new(), offset: HalfCost::ZERO }
    }

    /// Builds a network from raw fragments, merging parallel edges and
    /// dropping zero capacities.
    pub fn from_fragments(k: u32, n: usize, fragments: impl IntoIterator<Item = GadgetFragment>) -> Self {
        let mut all = Vec::new();
        let mut offset = HalfCost::ZERO;
        for f in fragments {
            offset += f.shift;
            all.extend(f.edges);
        }
        Self::from_edges(k, n, all, offset)
    }

    fn from_edges(k: u32, n: usize, mut all: Vec<Edge>, offset: HalfCost) -> Self {
        all.retain(|e| e.cap.0 > 0);
        // Bucket by tail, then sort the short buckets by head.
        let nv = n * k as usize + 2;
        let mut start = vec![0usize; nv + 1];
        for e in &all {
            start[e.from + 1] += 1;
        }
        for v in 0..nv {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut sorted = vec![Edge { from: 0, to: 0, cap: HalfCost::ZERO }; all.len()];
        for e in all {
            sorted[fill[e.from]] = e;
            fill[e.from] += 1;
        }
        let mut edges: Vec<Edge> = Vec::with_capacity(sorted.len());
        for v in 0..nv {
            let bucket = &mut sorted[start[v]..start[v + 1]];
            bucket.sort_unstable_by_key(|e| e.to);
            for e in bucket.iter() {
                match edges.last_mut() {
                    Some(last) if last.from == e.from && last.to == e.to => last.cap += e.cap,
                    _ => edges.push(*e),
                }
            }
        }
        KSubNetwork { k, n, edges, offset }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.k as usize + 2
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Constant removed by unary shifts; `cut capacity + offset` is the
    /// represented function value.
    pub fn offset(&self) -> HalfCost {
        self.offset
    }

    /// Sum of capacities of all edges `from -> to`.
    pub fn capacity(&self, from: usize, to: usize) -> HalfCost {
        self.edges
            .iter()
            .filter(|e| e.from == from && e.to == to)
            .map(|e| e.cap)
            .sum()
    }

    /// One `u v cap_halves` line per edge.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.from, e.to, e.cap.0);
        }
        out
    }
}

/// Sums the gadgets of every constraint of the instance. Crisp constraints
/// use `crisp_weight`.
pub fn assemble_with(inst: &VcspInstance, crisp_weight: u64) -> Result<KSubNetwork, NetworkError> {
    assemble_with_extra(inst, &[], crisp_weight)
}

/// [`assemble_with`] for the instance extended by `extra` constraints on its
/// variables, without building the extended instance.
pub fn assemble_with_extra(
    inst: &VcspInstance,
    extra: &[Constraint],
    crisp_weight: u64,
) -> Result<KSubNetwork, NetworkError> {
    let k = inst.k();
    let count = inst.constraints().len() + extra.len();
    let mut edges = Vec::with_capacity(2 * k as usize * count);
    let mut offset = HalfCost::ZERO;
    for c in inst.constraints().iter().chain(extra) {
        if let Some(&v) = c.scope().iter().find(|&&v| v >= inst.n()) {
            return Err(NetworkError::OutOfRange(v));
        }
        offset += gadget_into(c, k, inst.effective_weight(c, crisp_weight), &mut edges)?;
    }
    Ok(KSubNetwork::from_edges(k, inst.n(), edges, offset))
}

/// [`assemble_with`] at the instance's default crisp weight, matching
/// [`VcspInstance::evaluate`].
pub fn assemble(inst: &VcspInstance) -> Result<KSubNetwork, NetworkError> {
    assemble_with(inst, inst.crisp_weight(HalfCost::ZERO))
}

/// An s-t cut given by membership flags over all vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    member: Vec<bool>,
}

impl Cut {
    pub fn new(member: Vec<bool>) -> Result<Self, NetworkError> {
        if member.len() < 2 || !member[SOURCE] || member[SINK] {
            return Err(NetworkError::InvalidCut);
        }
        Ok(Cut { member })
    }

    pub fn from_vertices(vertex_count: usize, vertices: &[usize]) -> Result<Self, NetworkError> {
        let mut member = vec![false; vertex_count];
        member[SOURCE] = true;
        for &v in vertices {
            member[v] = true;
        }
        Cut::new(member)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.member[v]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&v| self.member[v]).collect()
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn flags(&self) -> &[bool] {
        &self.member
    }

    pub fn is_subset_of(&self, other: &Cut) -> bool {
        self.member.iter().zip(&other.member).all(|(&a, &b)| !a || b)
    }

    pub fn is_normalised(&self, k: u32) -> bool {
        self.member[2..]
            .chunks(k as usize)
            .all(|group| group.iter().filter(|&&m| m).count() <= 1)
    }
}

/// `S_φ = {s} ∪ {v_φ(v) : φ(v) ≠ 0}`.
pub fn cut_of_assignment(k: u32, phi: &HalfAssignment) -> Cut {
    let mut member = vec![false; phi.len() * k as usize + 2];
    member[SOURCE] = true;
    for (v, d) in phi.values().iter().enumerate() {
        if !d.is_relaxed() {
            member[vertex_of(k, v, d.get())] = true;
        }
    }
    Cut { member }
}

/// Keeps exactly the value groups met in a single vertex.
pub fn normalise(k: u32, cut: &Cut) -> Cut {
    let mut member = cut.member.clone();
    for group in member[2..].chunks_mut(k as usize) {
        if group.iter().filter(|&&m| m).count() > 1 {
            group.iter_mut().for_each(|m| *m = false);
        }
    }
    Cut { member }
}

/// `φ_S(v) = i` if `S ∩ X_v = {v_i}`, otherwise 0.
pub fn assignment_of_cut(k: u32, cut: &Cut) -> Result<HalfAssignment, NetworkError> {
    let n = (cut.member.len() - 2) / k as usize;
    let mut phi = HalfAssignment::relaxed(n);
    for (v, group) in cut.member[2..].chunks(k as usize).enumerate() {
        let mut found = None;
        for (i, &m) in group.iter().enumerate() {
            if m {
                if found.is_some() {
                    return Err(NetworkError::NotNormalised(v));
                }
                found = Some(i as u32 + 1);
            }
        }
        if let Some(d) = found {
            phi.set(v, DomainValue(d));
        }
    }
    Ok(phi)
}

/// `c(δ⁺(S))`.
pub fn cut_capacity(net: &KSubNetwork, cut: &Cut) -> HalfCost {
    net.edges
        .iter()
        .filter(|e| cut.member[e.from] && !cut.member[e.to])
        .map(|e| e.cap)
        .sum()
}
