//! Group Feedback Vertex Set over a cyclic group, and plain Feedback Vertex
//! Set of the Petersen graph through the Z_2^m reduction.

use ksubmod::gfvs::{reduce_fvs, relax_gfvs, solve_gfvs, Cyclic, LabelledGraph};
use ksubmod::reductions::Graph;

fn main() {
    // Two triangles over Z_3 sharing vertex 0; only the second is non-null.
    let mut g = LabelledGraph::new(Cyclic::new(3), 5);
    for (u, v, l) in [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (3, 4, 2), (4, 0, 1)] {
        g.add_edge(u, v, l).unwrap();
    }
    let r = relax_gfvs(&g, &[(0, 0)], &[]).unwrap().unwrap();
    println!("relaxation with vertex 0 labelled 0: {} (weights {:?})", r.cost, r.z);
    let sol = solve_gfvs(&g, 2).unwrap().unwrap();
    println!("delete {:?}, labels {:?}, {} nodes", sol.deleted, sol.labels, sol.nodes);

    let mut edges = Vec::new();
    for i in 0..5 {
        edges.extend([(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
    }
    let petersen = reduce_fvs(&Graph::from_edges(10, &edges));
    let fvs = solve_gfvs(&petersen, 10).unwrap().unwrap();
    println!("Petersen feedback vertex set {:?}", fvs.deleted);
}
