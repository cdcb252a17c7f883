//! Randomised property suites run by `ksub verify`: gadget representation,
//! network k-submodularity, persistence and extremeness of the computed
//! minimum, each against exhaustive enumeration.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::generate::{random_constraint, random_small_instance};
use crate::network::{assemble, cut_capacity, cut_of_assignment, normalise, Cut, KSubNetwork};
use crate::solver::{minimize, Relaxation};
use crate::vcsp::{
    brute_force_minimize, check_persistence, is_k_submodular, HalfAssignment, HalfCost, SearchMode,
    VcspInstance,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Calls `visit` on every point of `{0..=k}^n`.
fn for_each_relaxed(n: usize, k: u32, mut visit: impl FnMut(&HalfAssignment)) {
    let mut raw = vec![0u32; n];
    loop {
        visit(&HalfAssignment::from_values(&raw));
        let Some(i) = raw.iter().rposition(|&x| x < k) else { return };
        raw[i] += 1;
        raw[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

fn single_constraint_instance(rng: &mut StdRng, max_k: u32) -> VcspInstance {
    let k = rng.gen_range(1..=max_k);
    let c = random_constraint(rng, k, 2);
    VcspInstance::with_constraints(k, 2, vec![c]).expect("generated in range")
}

/// Cut capacity of `S_φ` plus the unary offset equals the relaxed cost, for
/// every `φ`.
pub fn gadget_representation(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SuiteReport::new("gadget representation");
    for _ in 0..cases {
        let inst = single_constraint_instance(&mut rng, 5);
        let net = assemble(&inst).expect("basic binary constraint");
        let mut bad = None;
        for_each_relaxed(inst.n(), inst.k(), |phi| {
            let via_cut = cut_capacity(&net, &cut_of_assignment(inst.k(), phi)) + net.offset();
            if bad.is_none() && via_cut != inst.evaluate(phi) {
                bad = Some(phi.clone());
            }
        });
        report.record(bad.is_none(), || format!("{} at {}", inst.constraints()[0], bad.unwrap()));
    }
    report
}

/// Every s-t cut costs at least its normalisation.
pub fn network_is_k_submodular(net: &KSubNetwork) -> bool {
    let inner = net.vertex_count() - 2;
    assert!(inner <= 20, "exhaustive cut enumeration limited to 20 vertices");
    (0u32..1 << inner).all(|mask| {
        let mut member = vec![true, false];
        member.extend((0..inner).map(|i| mask >> i & 1 == 1));
        let cut = Cut::new(member).expect("contains s, not t");
        cut_capacity(net, &cut) >= cut_capacity(net, &normalise(net.k(), &cut))
    })
}

/// k-submodularity of single gadgets and of their networks.
pub fn k_submodularity(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SuiteReport::new("k-submodularity");
    for _ in 0..cases {
        let inst = single_constraint_instance(&mut rng, 4);
        let c = &inst.constraints()[0];
        let net = assemble(&inst).expect("basic binary constraint");
        let ok = is_k_submodular(c, inst.k()).unwrap_or(false) && network_is_k_submodular(&net);
        report.record(ok, || c.to_string());
    }
    report
}

/// Integral coordinates of every relaxed minimiser extend to an integral
/// minimiser.
pub fn persistence(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SuiteReport::new("persistence");
    for _ in 0..cases {
        let inst = random_small_instance(&mut rng, 6, 3, 10);
        let ok = check_persistence(&inst).unwrap_or(false);
        report.record(ok, || format!("{} variables, {} constraints", inst.n(), inst.constraints().len()));
    }
    report
}

/// `true` iff `phi` is a minimiser that no other minimiser dominates.
pub fn is_extreme_minimum(phi: &HalfAssignment, minimisers: &[HalfAssignment]) -> bool {
    minimisers.contains(phi) && !minimisers.iter().any(|y| phi.dominated_by(y))
}

/// The flow-based minimum matches exhaustive search and is extreme.
pub fn extremeness(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SuiteReport::new("extreme minimum");
    for _ in 0..cases {
        let inst = random_small_instance(&mut rng, 6, 3, 10);
        let (best, argmin) = brute_force_minimize(&inst, SearchMode::Relaxed).expect("desk scale");
        let ok = match minimize(&inst, &vec![None; inst.n()]) {
            Ok(Relaxation::Optimal(r)) => r.cost == best && is_extreme_minimum(&r.assignment, &argmin),
            // Infeasible only if every point breaks a crisp constraint.
            Ok(Relaxation::Infeasible) => best.0 >= inst.crisp_weight(HalfCost::ZERO),
            Err(_) => false,
        };
        report.record(ok, || format!("{} variables, {} constraints", inst.n(), inst.constraints().len()));
    }
    report
}

/// All suites with `cases` random cases each.
pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteReport> {
    vec![
        gadget_representation(seed, cases),
        k_submodularity(seed.wrapping_add(1), cases),
        persistence(seed.wrapping_add(2), cases),
        extremeness(seed.wrapping_add(3), cases),
    ]
}
