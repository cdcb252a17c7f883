//! Almost 2-SAT in both flavours: deleting clauses and deleting variables.

use ksubmod::reductions::{check_certificate, decode, encode, Clause, Cnf, Literal, ProblemInstance};
use ksubmod::{solve_fpt, HalfCost};

fn solve(problem: &ProblemInstance) {
    let (inst, map) = encode(problem).unwrap();
    let budget = HalfCost(inst.total_soft_halves());
    match solve_fpt(&inst, budget).unwrap() {
        Some(sol) => {
            let cert = decode(&inst, &map, &sol.assignment).unwrap();
            check_certificate(problem, &cert).unwrap();
            // Label 2 is true, 1 is false.
            let truth: Vec<bool> = cert.labels.iter().map(|&l| l == 2).collect();
            println!("  delete {:?} (cost {}), assignment {truth:?}", cert.deleted, cert.cost);
        }
        None => println!("  nothing within budget {budget}"),
    }
}

fn main() {
    use Literal as L;
    // x0 -> x1 -> x2 -> !x0, with x0 and x2 asserted.
    let implications = [
        vec![L::neg(0), L::pos(1)],
        vec![L::neg(1), L::pos(2)],
        vec![L::neg(2), L::neg(0)],
        vec![L::pos(0)],
        vec![L::pos(2)],
    ];
    let soft = Cnf { n: 3, clauses: implications.iter().map(|c| Clause::soft(c.clone(), 1)).collect() };
    println!("clause deletion:");
    solve(&ProblemInstance::Almost2SatClause(soft));

    let hard = Cnf { n: 3, clauses: implications.iter().map(|c| Clause::crisp(c.clone())).collect() };
    println!("variable deletion, x1 cheap but useless:");
    solve(&ProblemInstance::Almost2SatVar { cnf: hard, costs: vec![3, 1, 3] });
}
