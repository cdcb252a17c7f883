//! Encodings of concrete problems as basic k-submodular instances, decoding
//! of integral solutions into certificates, and independent checkers.
//!
//! Boolean variables use the domain `{1, 2}` with `1` false and `2` true.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::vcsp::{Constraint, HalfAssignment, HalfCost, Permutation, UnaryTable, VcspError, VcspInstance};

pub const FALSE: u32 = 1;
pub const TRUE: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Vcsp(#[from] VcspError),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("clause {0} is empty or wider than two literals")]
    ClauseWidth(usize),
    #[error("terminal {0} listed twice")]
    DuplicateTerminal(usize),
    #[error("index {index} out of range for {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("weight must be positive")]
    ZeroWeight,
    #[error("solution is not integral")]
    NotIntegral,
    #[error("solution breaks a crisp constraint")]
    CrispViolated,
    #[error("expected {expected} deletion costs, got {got}")]
    CostCount { expected: usize, got: usize },
}

/// Undirected multigraph with positive edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: u64) {
        self.edges.push((u, v, w));
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph { n, edges: edges.iter().map(|&(u, v)| (u, v, 1)).collect() }
    }

    fn validate(&self) -> Result<(), ReductionError> {
        for &(u, v, w) in &self.edges {
            for x in [u, v] {
                if x >= self.n {
                    return Err(ReductionError::OutOfRange { index: x, n: self.n });
                }
            }
            if u == v {
                return Err(ReductionError::SelfLoop(u));
            }
            if w == 0 {
                return Err(ReductionError::ZeroWeight);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// The domain value that satisfies the literal.
    pub fn satisfying_value(self) -> u32 {
        if self.positive {
            TRUE
        } else {
            FALSE
        }
    }

    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "¬x{}", self.var + 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    /// `None` marks a crisp clause.
    pub weight: Option<u64>,
}

impl Clause {
    pub fn soft(literals: Vec<Literal>, weight: u64) -> Self {
        Clause { literals, weight: Some(weight) }
    }

    pub fn crisp(literals: Vec<Literal>) -> Self {
        Clause { literals, weight: None }
    }

    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.literals.iter().any(|l| l.holds(values[l.var]))
    }
}

/// Weighted CNF with clauses of width one or two.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    pub n: usize,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    fn validate(&self) -> Result<(), ReductionError> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.literals.is_empty() || c.literals.len() > 2 {
                return Err(ReductionError::ClauseWidth(i));
            }
            if c.weight == Some(0) {
                return Err(ReductionError::ZeroWeight);
            }
            for l in &c.literals {
                if l.var >= self.n {
                    return Err(ReductionError::OutOfRange { index: l.var, n: self.n });
                }
            }
        }
        Ok(())
    }
}

/// Constraint `label(v) = π(label(u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlcEdge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
    pub pi: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlcInstance {
    pub n: usize,
    pub k: u32,
    pub edges: Vec<UlcEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiwayCutInstance {
    pub graph: Graph,
    pub terminals: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemInstance {
    VertexCover(Graph),
    Almost2SatClause(Cnf),
    /// Formula whose clauses are all hard, plus one deletion cost per variable.
    Almost2SatVar { cnf: Cnf, costs: Vec<u64> },
    UlcEdge(UlcInstance),
    MultiwayCutEdge(MultiwayCutInstance),
}

/// Bookkeeping to read a certificate off a solver assignment.
///
/// A deletable item (vertex, clause, variable or edge) is deleted exactly
/// when the constraint recorded for it is violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    /// Constraint index to item index.
    pub item_of_constraint: Vec<Option<usize>>,
    /// Compiled variable carrying each original variable's value.
    pub representative: Vec<usize>,
    /// Cost of deleting each item, in whole units.
    pub item_costs: Vec<u64>,
}

/// Problem-level answer: deleted items and a labelling of the original
/// variables (`1..=k`; for Boolean problems `2` is true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub deleted: Vec<usize>,
    pub labels: Vec<u32>,
    pub cost: u64,
}

struct Builder {
    inst: VcspInstance,
    item_of_constraint: Vec<Option<usize>>,
}

impl Builder {
    fn new(k: u32, n: usize) -> Result<Self, ReductionError> {
        Ok(Builder { inst: VcspInstance::new(k, n)?, item_of_constraint: Vec::new() })
    }

    fn push(&mut self, c: Constraint, item: Option<usize>) -> Result<(), ReductionError> {
        self.inst.push(c)?;
        self.item_of_constraint.push(item);
        Ok(())
    }

    fn finish(self, representative: Vec<usize>, item_costs: Vec<u64>) -> (VcspInstance, ReductionMap) {
        let map = ReductionMap { item_of_constraint: self.item_of_constraint, representative, item_costs };
        (self.inst, map)
    }
}

/// `k = 2`: value 2 puts the vertex in the cover at cost 1, every edge is a
/// crisp `(u = 2 ∨ v = 2)`.
pub fn encode_vertex_cover(g: &Graph) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    g.validate()?;
    let mut b = Builder::new(2, g.n)?;
    for v in 0..g.n {
        b.push(Constraint::unary(v, UnaryTable::from_costs(&[0, 1])?, 1)?, Some(v))?;
    }
    for &(u, v, _) in &g.edges {
        b.push(Constraint::soft_or(u, TRUE, v, TRUE, 1)?.into_crisp(), None)?;
    }
    Ok(b.finish((0..g.n).collect(), vec![1; g.n]))
}

/// Clause `(l1 ∨ l2)` becomes a soft-or on the literals' satisfying values,
/// a unit clause a unary table. Tautologies are dropped and `(l ∨ l)` is
/// treated as `(l)`.
pub fn encode_a2sat_clause(f: &Cnf) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    f.validate()?;
    let mut b = Builder::new(2, f.n)?;
    for (i, clause) in f.clauses.iter().enumerate() {
        let lits = &clause.literals;
        let unit = match lits.as_slice() {
            [l] => Some(*l),
            [a, c] if a == c => Some(*a),
            [a, c] if a.var == c.var => None,
            _ => {
                let c = Constraint::soft_or(
                    lits[0].var,
                    lits[0].satisfying_value(),
                    lits[1].var,
                    lits[1].satisfying_value(),
                    clause.weight.unwrap_or(1),
                )?;
                let crisp = clause.weight.is_none();
                b.push(if crisp { c.into_crisp() } else { c }, (!crisp).then_some(i))?;
                continue;
            }
        };
        let Some(l) = unit else { continue };
        match clause.weight {
            None => b.push(Constraint::pin(2, l.var, l.satisfying_value())?, None)?,
            Some(w) => {
                let costs = if l.positive { [1, 0] } else { [0, 1] };
                b.push(Constraint::unary(l.var, UnaryTable::from_costs(&costs)?, w)?, Some(i))?;
            }
        }
    }
    let costs = f.clauses.iter().map(|c| c.weight.unwrap_or(0)).collect();
    Ok(b.finish((0..f.n).collect(), costs))
}

/// Variable deletion. Each variable is split into one copy per occurrence,
/// the clauses become crisp on the copies, and the copies are tied together
/// through `y_v`, `z_v`: crisp `(v(i) → y_v)`, `(z_v → v(i))` and a soft
/// `(y_v → z_v)` at the deletion cost.
pub fn encode_a2sat_var(f: &Cnf, costs: &[u64]) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    f.validate()?;
    if costs.len() != f.n {
        return Err(ReductionError::CostCount { expected: f.n, got: costs.len() });
    }
    if costs.contains(&0) {
        return Err(ReductionError::ZeroWeight);
    }
    // Normalise clauses first so that every surviving occurrence is real.
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    for c in &f.clauses {
        match c.literals.as_slice() {
            [a, b] if a == b => clauses.push(vec![*a]),
            [a, b] if a.var == b.var => {}
            lits => clauses.push(lits.to_vec()),
        }
    }
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); f.n];
    let mut next = 0usize;
    let mut occurrence: Vec<Vec<usize>> = Vec::with_capacity(clauses.len());
    for lits in &clauses {
        occurrence.push(
            lits.iter()
                .map(|l| {
                    copies[l.var].push(next);
                    next += 1;
                    next - 1
                })
                .collect(),
        );
    }
    for c in copies.iter_mut().filter(|c| c.is_empty()) {
        c.push(next);
        next += 1;
    }
    let aux_base = next;
    let multi: Vec<usize> = (0..f.n).filter(|&v| copies[v].len() >= 2).collect();
    let total = aux_base + 2 * multi.len();

    let mut b = Builder::new(2, total)?;
    for (lits, occ) in clauses.iter().zip(&occurrence) {
        match (lits.as_slice(), occ.as_slice()) {
            ([l], [x]) => b.push(Constraint::pin(2, *x, l.satisfying_value())?, None)?,
            ([l1, l2], [x1, x2]) => b.push(
                Constraint::soft_or(*x1, l1.satisfying_value(), *x2, l2.satisfying_value(), 1)?
                    .into_crisp(),
                None,
            )?,
            _ => unreachable!("clauses have width one or two"),
        }
    }
    // a → b on Boolean values is (a = false ∨ b = true).
    let implies = |a: usize, c: usize| Constraint::soft_or(a, FALSE, c, TRUE, 1);
    for (j, &v) in multi.iter().enumerate() {
        let (y, z) = (aux_base + 2 * j, aux_base + 2 * j + 1);
        for &x in &copies[v] {
            b.push(implies(x, y)?.into_crisp(), None)?;
            b.push(implies(z, x)?.into_crisp(), None)?;
        }
        b.push(Constraint::soft_or(y, FALSE, z, TRUE, costs[v])?, Some(v))?;
    }
    let representative = copies.iter().map(|c| c[0]).collect();
    Ok(b.finish(representative, costs.to_vec()))
}

/// One permutation constraint per edge at the edge's weight.
pub fn encode_ulc_edge(u: &UlcInstance) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    let mut b = Builder::new(u.k, u.n)?;
    for (i, e) in u.edges.iter().enumerate() {
        if e.u == e.v {
            return Err(ReductionError::SelfLoop(e.u));
        }
        if e.weight == 0 {
            return Err(ReductionError::ZeroWeight);
        }
        if e.pi.k() != u.k {
            return Err(VcspError::NotAPermutation(u.k).into());
        }
        b.push(Constraint::permutation(e.u, e.v, e.pi.clone(), e.weight)?, Some(i))?;
    }
    let costs = u.edges.iter().map(|e| e.weight).collect();
    Ok(b.finish((0..u.n).collect(), costs))
}

/// Identity permutation per edge, terminal `t_i` pinned to label `i`.
pub fn encode_multiway_cut_edge(
    mc: &MultiwayCutInstance,
) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    let g = &mc.graph;
    g.validate()?;
    let k = mc.terminals.len().max(1) as u32;
    let mut b = Builder::new(k, g.n)?;
    let mut seen = vec![false; g.n];
    for (i, &t) in mc.terminals.iter().enumerate() {
        if t >= g.n {
            return Err(ReductionError::OutOfRange { index: t, n: g.n });
        }
        if std::mem::replace(&mut seen[t], true) {
            return Err(ReductionError::DuplicateTerminal(t));
        }
        b.push(Constraint::pin(k, t, i as u32 + 1)?, None)?;
    }
    for (i, &(u, v, w)) in g.edges.iter().enumerate() {
        b.push(Constraint::permutation(u, v, Permutation::identity(k), w)?, Some(i))?;
    }
    let costs = g.edges.iter().map(|e| e.2).collect();
    Ok(b.finish((0..g.n).collect(), costs))
}

pub fn encode(p: &ProblemInstance) -> Result<(VcspInstance, ReductionMap), ReductionError> {
    match p {
        ProblemInstance::VertexCover(g) => encode_vertex_cover(g),
        ProblemInstance::Almost2SatClause(f) => encode_a2sat_clause(f),
        ProblemInstance::Almost2SatVar { cnf, costs } => encode_a2sat_var(cnf, costs),
        ProblemInstance::UlcEdge(u) => encode_ulc_edge(u),
        ProblemInstance::MultiwayCutEdge(m) => encode_multiway_cut_edge(m),
    }
}

/// Reads the certificate off an integral solution of the encoded instance.
pub fn decode(
    inst: &VcspInstance,
    map: &ReductionMap,
    phi: &HalfAssignment,
) -> Result<Certificate, ReductionError> {
    if !phi.is_integral() {
        return Err(ReductionError::NotIntegral);
    }
    if inst.soft_cost(phi).is_none() {
        return Err(ReductionError::CrispViolated);
    }
    let mut deleted: Vec<usize> = inst
        .violated(phi)
        .into_iter()
        .filter_map(|c| map.item_of_constraint[c])
        .collect();
    deleted.sort_unstable();
    deleted.dedup();
    let cost = deleted.iter().map(|&i| map.item_costs[i]).sum();
    let labels = map.representative.iter().map(|&x| phi.get(x).get()).collect();
    Ok(Certificate { deleted, labels, cost })
}

/// Cost of `cert` if it is a valid solution of `p`, checked directly on the
/// problem without going through the encoding.
pub fn check_certificate(p: &ProblemInstance, cert: &Certificate) -> Result<u64, String> {
    let mut deleted = cert.deleted.clone();
    deleted.sort_unstable();
    if deleted.windows(2).any(|w| w[0] == w[1]) {
        return Err("item deleted twice".into());
    }
    let cost = match p {
        ProblemInstance::VertexCover(g) => check_vertex_cover(g, &deleted)?,
        ProblemInstance::Almost2SatClause(f) => check_clause_deletion(f, &deleted, &cert.labels)?,
        ProblemInstance::Almost2SatVar { cnf, costs } => {
            check_variable_deletion(cnf, costs, &deleted, &cert.labels)?
        }
        ProblemInstance::UlcEdge(u) => check_ulc(u, &deleted, &cert.labels)?,
        ProblemInstance::MultiwayCutEdge(m) => check_multiway_cut(m, &deleted)?,
    };
    if cost != cert.cost {
        return Err(format!("certificate claims cost {} but deletions cost {cost}", cert.cost));
    }
    Ok(cost)
}

fn in_range(deleted: &[usize], n: usize) -> Result<(), String> {
    match deleted.iter().find(|&&i| i >= n) {
        Some(i) => Err(format!("deleted item {i} out of range")),
        None => Ok(()),
    }
}

fn bool_labels(labels: &[u32], n: usize) -> Result<Vec<bool>, String> {
    if labels.len() != n {
        return Err(format!("expected {n} labels, got {}", labels.len()));
    }
    labels
        .iter()
        .map(|&l| match l {
            FALSE => Ok(false),
            TRUE => Ok(true),
            other => Err(format!("label {other} is not Boolean")),
        })
        .collect()
}

fn check_vertex_cover(g: &Graph, cover: &[usize]) -> Result<u64, String> {
    in_range(cover, g.n)?;
    let mut inside = vec![false; g.n];
    cover.iter().for_each(|&v| inside[v] = true);
    match g.edges.iter().find(|&&(u, v, _)| !inside[u] && !inside[v]) {
        Some(&(u, v, _)) => Err(format!("edge {}-{} uncovered", u + 1, v + 1)),
        None => Ok(cover.len() as u64),
    }
}

fn check_clause_deletion(f: &Cnf, deleted: &[usize], labels: &[u32]) -> Result<u64, String> {
    in_range(deleted, f.clauses.len())?;
    let values = bool_labels(labels, f.n)?;
    let mut cost = 0;
    for (i, c) in f.clauses.iter().enumerate() {
        let gone = deleted.binary_search(&i).is_ok();
        match (gone, c.weight) {
            (true, None) => return Err(format!("crisp clause {} deleted", i + 1)),
            (true, Some(w)) => cost += w,
            (false, _) if !c.satisfied_by(&values) => {
                return Err(format!("clause {} unsatisfied", i + 1))
            }
            _ => {}
        }
    }
    Ok(cost)
}

fn check_variable_deletion(
    f: &Cnf,
    costs: &[u64],
    deleted: &[usize],
    labels: &[u32],
) -> Result<u64, String> {
    in_range(deleted, f.n)?;
    let values = bool_labels(labels, f.n)?;
    for (i, c) in f.clauses.iter().enumerate() {
        let touches_deleted = c.literals.iter().any(|l| deleted.binary_search(&l.var).is_ok());
        if !touches_deleted && !c.satisfied_by(&values) {
            return Err(format!("clause {} unsatisfied", i + 1));
        }
    }
    Ok(deleted.iter().map(|&v| costs[v]).sum())
}

fn check_ulc(u: &UlcInstance, deleted: &[usize], labels: &[u32]) -> Result<u64, String> {
    in_range(deleted, u.edges.len())?;
    if labels.len() != u.n || labels.iter().any(|&l| l == 0 || l > u.k) {
        return Err("labels must assign 1..=k to every vertex".into());
    }
    let mut cost = 0;
    for (i, e) in u.edges.iter().enumerate() {
        if deleted.binary_search(&i).is_ok() {
            cost += e.weight;
        } else if e.pi.apply(labels[e.u]) != labels[e.v] {
            return Err(format!("edge {} violated but kept", i + 1));
        }
    }
    Ok(cost)
}

fn check_multiway_cut(m: &MultiwayCutInstance, deleted: &[usize]) -> Result<u64, String> {
    let g = &m.graph;
    in_range(deleted, g.edges.len())?;
    let mut adj = vec![Vec::new(); g.n];
    let mut cost = 0;
    for (i, &(u, v, w)) in g.edges.iter().enumerate() {
        if deleted.binary_search(&i).is_ok() {
            cost += w;
        } else {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.n];
    for (i, &t) in m.terminals.iter().enumerate() {
        if owner[t].is_some() {
            return Err(format!("terminals meet at vertex {}", t + 1));
        }
        owner[t] = Some(i);
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                match owner[y] {
                    None => {
                        owner[y] = Some(i);
                        queue.push_back(y);
                    }
                    Some(j) if j != i => {
                        return Err(format!("terminals {} and {} still connected", j + 1, i + 1))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(cost)
}

/// Solver cost (half-units) converted to problem units, if integral.
pub fn units(c: HalfCost) -> Option<u64> {
    c.0.is_multiple_of(2).then_some(c.0 / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_fpt;
    use crate::vcsp::{brute_force_minimize, SearchMode};

    fn opt(inst: &VcspInstance, mode: SearchMode) -> HalfCost {
        brute_force_minimize(inst, mode).unwrap().0
    }

    fn solve_and_check(p: &ProblemInstance) -> Certificate {
        let (inst, map) = encode(p).unwrap();
        let sol = solve_fpt(&inst, HalfCost(inst.total_soft_halves())).unwrap().unwrap();
        let cert = decode(&inst, &map, &sol.assignment).unwrap();
        assert_eq!(check_certificate(p, &cert), Ok(units(sol.cost).unwrap()));
        cert
    }

    #[test]
    fn vertex_cover_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]);
        let (inst, _) = encode_vertex_cover(&edge).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        // Both endpoints at ½, as in the LP.
        assert_eq!(opt(&inst, SearchMode::Relaxed), HalfCost(2));

        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let (inst, _) = encode_vertex_cover(&tri).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(4));
        assert_eq!(opt(&inst, SearchMode::Relaxed), HalfCost(3));
        let cert = solve_and_check(&ProblemInstance::VertexCover(tri));
        assert_eq!(cert.deleted.len(), 2);

        let (inst, _) = encode_vertex_cover(&Graph::new(4)).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(0));
    }

    #[test]
    fn a2sat_clause_examples() {
        let f = Cnf {
            n: 2,
            clauses: vec![
                Clause::soft(vec![Literal::pos(0), Literal::pos(1)], 1),
                Clause::soft(vec![Literal::neg(0)], 1),
                Clause::soft(vec![Literal::neg(1)], 1),
            ],
        };
        let (inst, _) = encode_a2sat_clause(&f).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        solve_and_check(&ProblemInstance::Almost2SatClause(f));

        let contradiction = Cnf {
            n: 1,
            clauses: vec![Clause::soft(vec![Literal::pos(0)], 1), Clause::soft(vec![Literal::neg(0)], 1)],
        };
        let (inst, _) = encode_a2sat_clause(&contradiction).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));

        let sat = Cnf {
            n: 2,
            clauses: vec![
                Clause::soft(vec![Literal::pos(0), Literal::neg(1)], 3),
                Clause::soft(vec![Literal::pos(0), Literal::neg(0)], 3),
                Clause::soft(vec![Literal::pos(1), Literal::pos(1)], 3),
            ],
        };
        let cert = solve_and_check(&ProblemInstance::Almost2SatClause(sat));
        assert!(cert.deleted.is_empty());
    }

    #[test]
    fn a2sat_var_examples() {
        let contradiction = Cnf {
            n: 1,
            clauses: vec![Clause::crisp(vec![Literal::pos(0)]), Clause::crisp(vec![Literal::neg(0)])],
        };
        let (inst, _) = encode_a2sat_var(&contradiction, &[1]).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        let cert = solve_and_check(&ProblemInstance::Almost2SatVar { cnf: contradiction, costs: vec![1] });
        assert_eq!(cert.deleted, vec![0]);

        // (x → y), (y → z), (z → ¬x), (x)
        let chain = Cnf {
            n: 3,
            clauses: vec![
                Clause::crisp(vec![Literal::neg(0), Literal::pos(1)]),
                Clause::crisp(vec![Literal::neg(1), Literal::pos(2)]),
                Clause::crisp(vec![Literal::neg(2), Literal::neg(0)]),
                Clause::crisp(vec![Literal::pos(0)]),
            ],
        };
        let (inst, _) = encode_a2sat_var(&chain, &[1, 1, 1]).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        let cert = solve_and_check(&ProblemInstance::Almost2SatVar { cnf: chain, costs: vec![1, 1, 1] });
        assert_eq!(cert.cost, 1);

        let sat = Cnf { n: 2, clauses: vec![Clause::crisp(vec![Literal::pos(0), Literal::pos(1)])] };
        let cert = solve_and_check(&ProblemInstance::Almost2SatVar { cnf: sat, costs: vec![1, 1] });
        assert_eq!(cert.cost, 0);
    }

    fn edge(u: usize, v: usize, weight: u64, pi: Permutation) -> UlcEdge {
        UlcEdge { u, v, weight, pi }
    }

    #[test]
    fn ulc_examples() {
        let cycle = UlcInstance {
            n: 3,
            k: 3,
            edges: vec![
                edge(0, 1, 1, Permutation::shift(3, 1)),
                edge(1, 2, 1, Permutation::identity(3)),
                edge(2, 0, 1, Permutation::identity(3)),
            ],
        };
        let (inst, _) = encode_ulc_edge(&cycle).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        let cert = solve_and_check(&ProblemInstance::UlcEdge(cycle));
        assert_eq!(cert.deleted.len(), 1);

        let parallel = UlcInstance {
            n: 2,
            k: 3,
            edges: vec![edge(0, 1, 4, Permutation::identity(3)), edge(0, 1, 3, Permutation::shift(3, 1))],
        };
        let (inst, _) = encode_ulc_edge(&parallel).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(6));

        let consistent = UlcInstance {
            n: 3,
            k: 2,
            edges: vec![edge(0, 1, 1, Permutation::shift(2, 1)), edge(1, 2, 1, Permutation::shift(2, 1))],
        };
        assert_eq!(solve_and_check(&ProblemInstance::UlcEdge(consistent)).cost, 0);
    }

    #[test]
    fn multiway_cut_examples() {
        let path = MultiwayCutInstance { graph: Graph::from_edges(3, &[(0, 1), (1, 2)]), terminals: vec![0, 2] };
        let (inst, _) = encode_multiway_cut_edge(&path).unwrap();
        assert_eq!(opt(&inst, SearchMode::Integral), HalfCost(2));
        assert_eq!(solve_and_check(&ProblemInstance::MultiwayCutEdge(path)).cost, 1);

        let apart = MultiwayCutInstance { graph: Graph::from_edges(4, &[(0, 1), (2, 3)]), terminals: vec![0, 3] };
        assert_eq!(solve_and_check(&ProblemInstance::MultiwayCutEdge(apart)).cost, 0);
    }

    #[test]
    fn checkers_reject_bad_certificates() {
        let tri = ProblemInstance::VertexCover(Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]));
        let bad = Certificate { deleted: vec![0], labels: vec![2, 1, 1], cost: 1 };
        assert!(check_certificate(&tri, &bad).is_err());

        let path = ProblemInstance::MultiwayCutEdge(MultiwayCutInstance {
            graph: Graph::from_edges(3, &[(0, 1), (1, 2)]),
            terminals: vec![0, 2],
        });
        let none = Certificate { deleted: vec![], labels: vec![1, 1, 2], cost: 0 };
        assert!(check_certificate(&path, &none).is_err());
    }

    #[test]
    fn encoders_reject_malformed_input() {
        assert_eq!(
            encode_vertex_cover(&Graph::from_edges(2, &[(1, 1)])).unwrap_err(),
            ReductionError::SelfLoop(1)
        );
        let mc = MultiwayCutInstance { graph: Graph::new(2), terminals: vec![1, 1] };
        assert_eq!(encode_multiway_cut_edge(&mc).unwrap_err(), ReductionError::DuplicateTerminal(1));
    }
}
