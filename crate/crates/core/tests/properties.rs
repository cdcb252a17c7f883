mod common;

use common::*;
use ksubmod::cli::format::*;
use ksubmod::generate::{random_graph, random_small_instance, random_weighted_graph};
use ksubmod::gfvs::{is_hitting, AnyGroup, Cyclic, PermGroup, Z2Pow};
use ksubmod::reductions::{Clause, Cnf, Literal, MultiwayCutInstance, UlcEdge, UlcInstance};
use ksubmod::{solve_fpt, HalfAssignment, HalfCost, Permutation};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn group(pick: u8) -> AnyGroup {
    match pick % 4 {
        0 => AnyGroup::Cyclic(Cyclic::new(5)),
        1 => AnyGroup::Z2Pow(Z2Pow { m: 3 }),
        2 => AnyGroup::Perm(PermGroup { k: 4 }),
        _ => AnyGroup::Cyclic(Cyclic::new(2)),
    }
}

fn random_cnf(rng: &mut StdRng, n: usize, m: usize) -> Cnf {
    let lit = |rng: &mut StdRng| {
        let v = rng.gen_range(0..n);
        if rng.gen() { Literal::pos(v) } else { Literal::neg(v) }
    };
    let clauses = (0..m)
        .map(|_| {
            let mut lits = vec![lit(rng)];
            if rng.gen_bool(0.7) {
                lits.push(lit(rng));
            }
            if rng.gen_bool(0.2) { Clause::crisp(lits) } else { Clause::soft(lits, rng.gen_range(1..5)) }
        })
        .collect();
    Cnf { n, clauses }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_round_trip(seed: u64, n in 1usize..12) {
        let g = random_weighted_graph(&mut StdRng::seed_from_u64(seed), n, 0.4, 4);
        prop_assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }

    #[test]
    fn multiway_cut_round_trip(seed: u64, n in 3usize..12) {
        let mut rng = StdRng::seed_from_u64(seed);
        let graph = random_graph(&mut rng, n, 0.5);
        let mc = MultiwayCutInstance { graph, terminals: vec![0, n / 2, n - 1] };
        prop_assert_eq!(parse_multiway_cut(&emit_multiway_cut(&mc)).unwrap(), mc);
    }

    #[test]
    fn wcnf_round_trip(seed: u64, n in 1usize..8, m in 0usize..12) {
        let f = random_cnf(&mut StdRng::seed_from_u64(seed), n, m);
        let (back, _top) = parse_wcnf(&emit_wcnf(&f)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn ulc_round_trip(seed: u64, n in 1usize..10, k in 1u32..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let edges = (0..n * 2)
            .map(|_| {
                let mut image: Vec<u32> = (1..=k).collect();
                for i in (1..image.len()).rev() {
                    image.swap(i, rng.gen_range(0..=i));
                }
                UlcEdge {
                    u: rng.gen_range(0..n),
                    v: rng.gen_range(0..n),
                    weight: rng.gen_range(1..4),
                    pi: Permutation::new(image).unwrap(),
                }
            })
            .collect();
        let u = UlcInstance { n, k, edges };
        prop_assert_eq!(parse_ulc(&emit_ulc(&u)).unwrap(), u);
    }

    #[test]
    fn gfvs_round_trip(seed: u64, n in 1usize..10, pick: u8) {
        let g = random_labelled(&mut StdRng::seed_from_u64(seed), n, 0.4, group(pick));
        prop_assert_eq!(parse_gfvs(&emit_gfvs(&g)).unwrap(), g);
    }

    #[test]
    fn evaluation_matches_oracle(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let inst = random_small_instance(&mut rng, 6, 4, 10);
        let w = inst.crisp_weight(HalfCost::ZERO);
        for _ in 0..20 {
            let phi: Vec<u32> = (0..inst.n()).map(|_| rng.gen_range(0..=inst.k())).collect();
            prop_assert_eq!(inst.evaluate(&HalfAssignment::from_values(&phi)).0, relaxed_cost(&inst, &phi, w));
        }
    }

    #[test]
    fn fpt_matches_brute_force(seed: u64, budget_units in 0u64..6) {
        let inst = random_small_instance(&mut StdRng::seed_from_u64(seed), 6, 3, 10);
        let opt = brute_integral(&inst, &vec![None; inst.n()]);
        let sol = solve_fpt(&inst, HalfCost::from_units(budget_units)).unwrap();
        match opt {
            Some(o) if o <= 2 * budget_units => {
                let s = sol.expect("optimum within budget");
                prop_assert_eq!(s.cost.0, o);
                prop_assert_eq!(soft_cost(&inst, &s.assignment.raw()), Some(o));
            }
            _ => prop_assert!(sol.is_none()),
        }
    }

    #[test]
    fn hitting_matches_cycles(seed: u64, n in 2usize..8, pick: u8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_labelled(&mut rng, n, 0.5, group(pick));
        let cycles = non_null_cycles(&g);
        for _ in 0..10 {
            let z: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            let root = rng.gen_range(0..n);
            prop_assert_eq!(is_hitting(&g, root, &z).unwrap(), hitting_by_cycles(&g, root, &z, &cycles), "z = {:?}", z);
        }
    }
}
