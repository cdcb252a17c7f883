//! Text formats. All indices in files are 1-based.
//!
//! ```text
//! p edge n m          e u v [w]            graphs (vertex cover, FVS)
//! p edge n m          e u v [w] / t v      multiway cut (terminal lines)
//! p wcnf n m top      w l1 [l2] 0          2-CNF, weight >= top is crisp
//! p ulc n m k         e u v w p1 .. pk     label(v) = π(label(u)), π(i) = pi
//! p gfvs n m <group>  e u v g              group: z q | z2pow m | perm k
//! ```
//!
//! GFVS labels are residues for `z q`, hexadecimal masks for `z2pow m` and
//! one-line permutations for `perm k`, written either as `k` tokens or as a
//! single comma-separated token.

use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gfvs::{AnyElem, AnyGroup, Cyclic, GroupOracle, LabelledGraph, PermGroup, Z2Pow};
use crate::reductions::{Clause, Cnf, Graph, Literal, MultiwayCutInstance, UlcEdge, UlcInstance};
use crate::vcsp::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(t) if t.starts_with('c') => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().or_else(|_| err(line, format!("invalid {what} '{tok}'")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = number(line, tok, "index")?;
    if v == 0 || v > n {
        return err(line, format!("index {v} out of range 1..={n}"));
    }
    Ok(v - 1)
}

struct Header<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

/// Splits off the `p <kind> ...` header and returns the remaining lines.
fn header<'a>(
    text: &'a str,
    kind: &str,
) -> Result<(Header<'a>, Vec<(usize, Vec<&'a str>)>), ParseError> {
    let mut it = lines(text);
    let Some((line, toks)) = it.next() else { return err(0, "missing header") };
    if toks.len() < 2 || toks[0] != "p" || toks[1] != kind {
        return err(line, format!("expected 'p {kind} ...' header"));
    }
    Ok((Header { line, fields: toks[2..].to_vec() }, it.collect()))
}

fn expect_count(line: usize, got: usize, m: usize) -> Result<(), ParseError> {
    if got != m {
        return err(line, format!("header declares {m} items, found {got}"));
    }
    Ok(())
}

fn graph_body(
    h: &Header<'_>,
    body: &[(usize, Vec<&str>)],
    allow_terminals: bool,
) -> Result<(Graph, Vec<usize>), ParseError> {
    if h.fields.len() != 2 {
        return err(h.line, "expected 'p edge n m'");
    }
    let n: usize = number(h.line, h.fields[0], "vertex count")?;
    let m: usize = number(h.line, h.fields[1], "edge count")?;
    let mut g = Graph::new(n);
    let mut terminals = Vec::new();
    for (line, toks) in body {
        match (toks[0], toks.len()) {
            ("e", 3 | 4) => {
                let u = vertex(*line, toks[1], n)?;
                let v = vertex(*line, toks[2], n)?;
                let w = match toks.get(3) {
                    Some(t) => number(*line, t, "weight")?,
                    None => 1,
                };
                if w == 0 {
                    return err(*line, "weight must be positive");
                }
                g.add_edge(u, v, w);
            }
            ("t", 2) if allow_terminals => terminals.push(vertex(*line, toks[1], n)?),
            _ => return err(*line, "unexpected line"),
        }
    }
    expect_count(h.line, g.edges.len(), m)?;
    Ok((g, terminals))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let (h, body) = header(text, "edge")?;
    Ok(graph_body(&h, &body, false)?.0)
}

pub fn parse_multiway_cut(text: &str) -> Result<MultiwayCutInstance, ParseError> {
    let (h, body) = header(text, "edge")?;
    let (graph, terminals) = graph_body(&h, &body, true)?;
    let mut sorted = terminals.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return err(h.line, "terminal listed twice");
    }
    Ok(MultiwayCutInstance { graph, terminals })
}

/// Formula and the `top` weight from the header.
pub fn parse_wcnf(text: &str) -> Result<(Cnf, u64), ParseError> {
    let (h, body) = header(text, "wcnf")?;
    if h.fields.len() != 3 {
        return err(h.line, "expected 'p wcnf n m top'");
    }
    let n: usize = number(h.line, h.fields[0], "variable count")?;
    let m: usize = number(h.line, h.fields[1], "clause count")?;
    let top: u64 = number(h.line, h.fields[2], "top weight")?;
    let mut cnf = Cnf { n, clauses: Vec::new() };
    for (line, toks) in &body {
        if toks.len() < 3 || toks.len() > 4 || *toks.last().expect("non-empty") != "0" {
            return err(*line, "expected 'w l1 [l2] 0'");
        }
        let w: u64 = number(*line, toks[0], "weight")?;
        if w == 0 {
            return err(*line, "weight must be positive");
        }
        let mut lits = Vec::new();
        for t in &toks[1..toks.len() - 1] {
            let l: i64 = number(*line, t, "literal")?;
            if l == 0 || l.unsigned_abs() as usize > n {
                return err(*line, format!("literal {l} out of range"));
            }
            let var = l.unsigned_abs() as usize - 1;
            lits.push(if l > 0 { Literal::pos(var) } else { Literal::neg(var) });
        }
        cnf.clauses.push(if w >= top { Clause::crisp(lits) } else { Clause::soft(lits, w) });
    }
    expect_count(h.line, cnf.clauses.len(), m)?;
    Ok((cnf, top))
}

pub fn parse_ulc(text: &str) -> Result<UlcInstance, ParseError> {
    let (h, body) = header(text, "ulc")?;
    if h.fields.len() != 3 {
        return err(h.line, "expected 'p ulc n m k'");
    }
    let n: usize = number(h.line, h.fields[0], "vertex count")?;
    let m: usize = number(h.line, h.fields[1], "edge count")?;
    let k: u32 = number(h.line, h.fields[2], "label count")?;
    if k == 0 {
        return err(h.line, "label count must be positive");
    }
    let mut edges = Vec::new();
    for (line, toks) in &body {
        if toks[0] != "e" || toks.len() != 4 + k as usize {
            return err(*line, format!("expected 'e u v w' and {k} permutation entries"));
        }
        let u = vertex(*line, toks[1], n)?;
        let v = vertex(*line, toks[2], n)?;
        let weight: u64 = number(*line, toks[3], "weight")?;
        if weight == 0 {
            return err(*line, "weight must be positive");
        }
        let image = toks[4..].iter().map(|t| number(*line, t, "permutation entry")).collect::<Result<_, _>>()?;
        let Ok(pi) = Permutation::new(image) else { return err(*line, "not a bijection") };
        edges.push(UlcEdge { u, v, weight, pi });
    }
    expect_count(h.line, edges.len(), m)?;
    Ok(UlcInstance { n, k, edges })
}

fn parse_group(line: usize, fields: &[&str]) -> Result<AnyGroup, ParseError> {
    match fields {
        ["z", q] => {
            let q: u64 = number(line, q, "group order")?;
            if q == 0 {
                return err(line, "group order must be positive");
            }
            Ok(AnyGroup::Cyclic(Cyclic::new(q)))
        }
        ["z2pow", m] => Ok(AnyGroup::Z2Pow(Z2Pow { m: number(line, m, "exponent")? })),
        ["perm", k] => {
            let k: usize = number(line, k, "degree")?;
            if k == 0 || k > 255 {
                return err(line, "permutation degree must be in 1..=255");
            }
            Ok(AnyGroup::Perm(PermGroup { k }))
        }
        _ => err(line, "group must be 'z q', 'z2pow m' or 'perm k'"),
    }
}

fn parse_elem(line: usize, group: &AnyGroup, toks: &[&str]) -> Result<AnyElem, ParseError> {
    match group {
        AnyGroup::Cyclic(g) => {
            let [t] = toks else { return err(line, "expected one residue") };
            let r: u64 = number(line, t, "residue")?;
            if r >= g.q {
                return err(line, format!("residue {r} not in Z_{}", g.q));
            }
            Ok(AnyElem::Residue(r))
        }
        AnyGroup::Z2Pow(g) => {
            let [t] = toks else { return err(line, "expected one hexadecimal mask") };
            let digits = t.trim_start_matches("0x");
            let Some(mask) = BigUint::parse_bytes(digits.as_bytes(), 16) else {
                return err(line, format!("invalid hexadecimal mask '{t}'"));
            };
            if mask.bits() > g.m as u64 {
                return err(line, format!("mask wider than {} bits", g.m));
            }
            Ok(AnyElem::Mask(mask))
        }
        AnyGroup::Perm(g) => {
            let words: Vec<&str> = match toks {
                [one] => one.split(',').collect(),
                many => many.to_vec(),
            };
            let mut p = Vec::with_capacity(words.len());
            for w in words {
                let x: usize = number(line, w, "permutation entry")?;
                if x == 0 || x > g.k {
                    return err(line, format!("permutation entry {x} out of range"));
                }
                p.push((x - 1) as u8);
            }
            if !g.is_element(&p) {
                return err(line, "not a permutation");
            }
            Ok(AnyElem::Perm(p))
        }
    }
}

pub fn parse_gfvs(text: &str) -> Result<LabelledGraph<AnyGroup>, ParseError> {
    let (h, body) = header(text, "gfvs")?;
    if h.fields.len() != 4 {
        return err(h.line, "expected 'p gfvs n m <group>'");
    }
    let n: usize = number(h.line, h.fields[0], "vertex count")?;
    let m: usize = number(h.line, h.fields[1], "edge count")?;
    let group = parse_group(h.line, &h.fields[2..])?;
    let mut g = LabelledGraph::new(group, n);
    for (line, toks) in &body {
        if toks[0] != "e" || toks.len() < 4 {
            return err(*line, "expected 'e u v g'");
        }
        let u = vertex(*line, toks[1], n)?;
        let v = vertex(*line, toks[2], n)?;
        let label = parse_elem(*line, &group, &toks[3..])?;
        g.add_edge(u, v, label).expect("indices checked");
    }
    expect_count(h.line, g.edges().len(), m)?;
    Ok(g)
}

pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n, g.edges.len());
    for &(u, v, w) in &g.edges {
        if w == 1 {
            writeln!(s, "e {} {}", u + 1, v + 1).expect("write to string");
        } else {
            writeln!(s, "e {} {} {w}", u + 1, v + 1).expect("write to string");
        }
    }
    s
}

pub fn emit_multiway_cut(mc: &MultiwayCutInstance) -> String {
    let mut s = emit_graph(&mc.graph);
    for t in &mc.terminals {
        writeln!(s, "t {}", t + 1).expect("write to string");
    }
    s
}

/// Crisp clauses are written with weight `top`, one more than the total
/// soft weight.
pub fn emit_wcnf(f: &Cnf) -> String {
    let top = 1 + f.clauses.iter().filter_map(|c| c.weight).sum::<u64>();
    let mut s = format!("p wcnf {} {} {top}\n", f.n, f.clauses.len());
    for c in &f.clauses {
        write!(s, "{}", c.weight.unwrap_or(top)).expect("write to string");
        for l in &c.literals {
            let x = l.var as i64 + 1;
            write!(s, " {}", if l.positive { x } else { -x }).expect("write to string");
        }
        s.push_str(" 0\n");
    }
    s
}

pub fn emit_ulc(u: &UlcInstance) -> String {
    let mut s = format!("p ulc {} {} {}\n", u.n, u.edges.len(), u.k);
    for e in &u.edges {
        write!(s, "e {} {} {}", e.u + 1, e.v + 1, e.weight).expect("write to string");
        for p in e.pi.image() {
            write!(s, " {p}").expect("write to string");
        }
        s.push('\n');
    }
    s
}

pub fn format_elem(e: &AnyElem) -> String {
    match e {
        AnyElem::Residue(r) => r.to_string(),
        AnyElem::Mask(m) => m.to_str_radix(16),
        AnyElem::Perm(p) => p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","),
    }
}

pub fn emit_gfvs(g: &LabelledGraph<AnyGroup>) -> String {
    let group = match g.group {
        AnyGroup::Cyclic(c) => format!("z {}", c.q),
        AnyGroup::Z2Pow(z) => format!("z2pow {}", z.m),
        AnyGroup::Perm(p) => format!("perm {}", p.k),
    };
    let mut s = format!("p gfvs {} {} {group}\n", g.n(), g.edges().len());
    for (u, v, l) in g.edges() {
        writeln!(s, "e {} {} {}", u + 1, v + 1, format_elem(l)).expect("write to string");
    }
    s
}

/// Lifts a graph over a concrete backend to the runtime group type.
pub fn to_any<G: GroupOracle>(
    g: &LabelledGraph<G>,
    group: AnyGroup,
    lift: impl Fn(&G::Elem) -> AnyElem,
) -> LabelledGraph<AnyGroup> {
    let mut out = LabelledGraph::new(group, g.n());
    for (u, v, l) in g.edges() {
        out.add_edge(*u, *v, lift(l)).expect("same vertex set");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ulc_single_edge() {
        let u = parse_ulc("p ulc 2 1 3\ne 1 2 1 2 3 1\n").unwrap();
        assert_eq!(u.edges.len(), 1);
        assert_eq!(u.edges[0].pi, Permutation::shift(3, 1));
        assert_eq!((u.edges[0].u, u.edges[0].v), (0, 1));
    }

    #[test]
    fn wcnf_contradiction() {
        let (f, top) = parse_wcnf("c soft contradiction\np wcnf 1 2 100\n1 1 0\n1 -1 0\n").unwrap();
        assert_eq!(top, 100);
        assert_eq!(f.clauses, vec![Clause::soft(vec![Literal::pos(0)], 1), Clause::soft(vec![Literal::neg(0)], 1)]);
        let (f, _) = parse_wcnf("p wcnf 2 1 5\n5 1 -2 0\n").unwrap();
        assert_eq!(f.clauses[0].weight, None);
    }

    #[test]
    fn gfvs_triangle() {
        let g = parse_gfvs("p gfvs 3 3 z 2\ne 1 2 1\ne 2 3 1\ne 3 1 1\n").unwrap();
        assert_eq!(g.edges().len(), 3);
        assert!(g.edges().iter().all(|e| e.2 == AnyElem::Residue(1)));
        let p = parse_gfvs("p gfvs 2 2 perm 3\ne 1 2 2,3,1\ne 2 1 3 1 2\n").unwrap();
        assert_eq!(p.edges()[0].2, AnyElem::Perm(vec![1, 2, 0]));
        assert_eq!(p.edges()[1].2, AnyElem::Perm(vec![2, 0, 1]));
        let z = parse_gfvs("p gfvs 2 1 z2pow 8\ne 1 2 a5\n").unwrap();
        assert_eq!(z.edges()[0].2, AnyElem::Mask(BigUint::from(0xa5u32)));
    }

    #[test]
    fn errors() {
        assert!(parse_graph("p edge 2 1\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p edges 2 1\ne 1 2\n").is_err());
        assert!(parse_ulc("p ulc 2 1 3\ne 1 2 1 1 1 2\n").is_err());
        assert!(parse_gfvs("p gfvs 2 1 z 3\ne 1 2 3\n").is_err());
        assert!(parse_gfvs("p gfvs 2 1 z2pow 2\ne 1 2 f\n").is_err());
        assert!(parse_gfvs("p gfvs 2 1 perm 3\ne 1 2 1,1,2\n").is_err());
        assert_eq!(parse_wcnf("p wcnf 1 1 9\n1 2 0\n").unwrap_err().line, 2);
    }

    #[test]
    fn multiway_cut_terminals() {
        let mc = parse_multiway_cut("p edge 3 2\ne 1 2\ne 2 3 4\nt 1\nt 3\n").unwrap();
        assert_eq!(mc.terminals, vec![0, 2]);
        assert_eq!(mc.graph.edges[1], (1, 2, 4));
        assert_eq!(parse_multiway_cut(&emit_multiway_cut(&mc)).unwrap(), mc);
    }
}
