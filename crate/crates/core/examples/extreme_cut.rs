//! The network behind a small VCSP: gadget edges, a maximum flow, and the
//! extreme minimum cut read back as an assignment.

use ksubmod::flow::{extreme_min_cut, max_flow};
use ksubmod::network::{assemble, assignment_of_cut, cut_capacity};
use ksubmod::{Constraint, Permutation, UnaryTable, VcspInstance};

fn main() {
    let k = 3;
    let mut inst = VcspInstance::new(k, 3).unwrap();
    inst.push(Constraint::unary(0, UnaryTable::from_costs(&[0, 2, 2]).unwrap(), 1).unwrap()).unwrap();
    inst.push(Constraint::permutation(0, 1, Permutation::shift(k, 1), 2).unwrap()).unwrap();
    inst.push(Constraint::soft_or(1, 2, 2, 3, 1).unwrap()).unwrap();

    let net = assemble(&inst).unwrap();
    print!("{}", net.dump());
    let flow = max_flow(&net);
    let cut = extreme_min_cut(&net, &flow).unwrap();
    let phi = assignment_of_cut(k, &cut).unwrap();
    println!("flow {} in {} augmentations", flow.value, flow.augmentations);
    println!("extreme cut {:?} of capacity {}", cut.members(), cut_capacity(&net, &cut));
    println!("assignment {phi}, relaxed cost {}", inst.evaluate(&phi));
}
