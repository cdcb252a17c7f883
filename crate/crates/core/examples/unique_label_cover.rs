//! Planted edge-deletion Unique Label Cover: recover a labelling after a few
//! edges have been corrupted.

use std::time::Instant;

use ksubmod::generate::planted_ulc;
use ksubmod::reductions::{check_certificate, decode, encode, ProblemInstance};
use ksubmod::{solve_fpt, HalfCost};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2000);
    let mut rng = StdRng::seed_from_u64(7);
    let p: usize = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(3);
    let (ulc, _plant) = planted_ulc(&mut rng, n, 3 * n, 3, p);
    let problem = ProblemInstance::UlcEdge(ulc);
    let (inst, map) = encode(&problem).unwrap();

    let start = Instant::now();
    let sol = solve_fpt(&inst, HalfCost(2 * p as u64)).unwrap().expect("planted labelling is within budget");
    let cert = decode(&inst, &map, &sol.assignment).unwrap();
    check_certificate(&problem, &cert).unwrap();
    println!(
        "n={n}: deleted edges {:?}, relaxed {}, {} relaxations, {:.2?}",
        cert.deleted,
        sol.relaxed,
        sol.nodes,
        start.elapsed()
    );
}
