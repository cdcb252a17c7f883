//! Edge Multiway Cut with three terminals on a weighted grid.

use ksubmod::reductions::{check_certificate, decode, encode, Graph, MultiwayCutInstance, ProblemInstance};
use ksubmod::{minimize, solve_fpt, HalfCost};

fn main() {
    let (w, h) = (4, 3);
    let id = |x: usize, y: usize| y * w + x;
    let mut graph = Graph::new(w * h);
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                graph.add_edge(id(x, y), id(x + 1, y), 1 + (x + y) as u64 % 3);
            }
            if y + 1 < h {
                graph.add_edge(id(x, y), id(x, y + 1), 2);
            }
        }
    }
    let problem = ProblemInstance::MultiwayCutEdge(MultiwayCutInstance {
        graph: graph.clone(),
        terminals: vec![id(0, 0), id(w - 1, 0), id(0, h - 1)],
    });
    let (inst, map) = encode(&problem).unwrap();
    let relaxed = minimize(&inst, &vec![None; inst.n()]).unwrap().optimal().unwrap();
    let sol = solve_fpt(&inst, HalfCost(inst.total_soft_halves())).unwrap().unwrap();
    let cert = decode(&inst, &map, &sol.assignment).unwrap();
    check_certificate(&problem, &cert).unwrap();

    println!("half-integral bound {}, optimum {}", relaxed.cost, sol.cost);
    for &e in &cert.deleted {
        let (u, v, c) = graph.edges[e];
        println!("  cut {u}-{v} (weight {c})");
    }
    for y in 0..h {
        let row: Vec<String> = (0..w).map(|x| cert.labels[id(x, y)].to_string()).collect();
        println!("  {}", row.join(" "));
    }
}
