//! Vertex Cover above LP on a random graph: relaxed optimum, exact cover,
//! and the certificate check.

use ksubmod::generate::random_graph;
use ksubmod::reductions::{check_certificate, decode, encode, ProblemInstance};
use ksubmod::{minimize, solve_fpt, HalfCost};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let mut rng = StdRng::seed_from_u64(2024);
    let graph = random_graph(&mut rng, 14, 0.3);
    let problem = ProblemInstance::VertexCover(graph.clone());
    let (inst, map) = encode(&problem).expect("simple graph");

    let lp = minimize(&inst, &vec![None; inst.n()]).unwrap().optimal().unwrap();
    println!("{} vertices, {} edges", graph.n, graph.edges.len());
    println!("LP value {} with extreme solution {}", lp.cost, lp.assignment);

    let sol = solve_fpt(&inst, HalfCost(2 * graph.n as u64)).unwrap().expect("V is a cover");
    let cert = decode(&inst, &map, &sol.assignment).unwrap();
    let checked = check_certificate(&problem, &cert).expect("valid cover");
    println!("minimum cover {:?} of size {checked}", cert.deleted);
    println!("gap above LP: {} half-units, {} relaxations", sol.cost.0 - sol.relaxed.0, sol.nodes);
}
