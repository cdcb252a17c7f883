//! Domain arithmetic, the valued-CSP instance model and the relaxation
//! tables of the four basic constraint families.
//!
//! Values live in `{0, 1, ..., k}` where `0` is the relaxed value and
//! `1..=k` are integral. Costs are carried as integer half-units so that
//! every relaxation used here is exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};

use thiserror::Error;

/// Largest search space accepted by the exhaustive oracles.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VcspError {
    #[error("constraint expects {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("value {value} outside domain 0..={k}")]
    ValueOutOfRange { value: u32, k: u32 },
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("scope repeats variable {0}")]
    RepeatedVariable(usize),
    #[error("not a bijection on 1..={0}")]
    NotAPermutation(u32),
    #[error("weight must be positive")]
    ZeroWeight,
    #[error("unary table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("search space of {0} points exceeds the brute-force limit")]
    TooLarge(u64),
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("{0}")]
    Invalid(String),
}

/// A value in the relaxed domain `{0, ..., k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DomainValue(pub u32);

impl DomainValue {
    pub const RELAXED: DomainValue = DomainValue(0);

    pub fn integral(d: u32) -> Self {
        debug_assert!(d >= 1);
        DomainValue(d)
    }

    #[inline]
    pub fn is_relaxed(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for DomainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Componentwise lower operation: distinct integral values meet at 0.
#[inline]
pub fn meet(a: DomainValue, b: DomainValue) -> DomainValue {
    if a == b {
        a
    } else {
        DomainValue::RELAXED
    }
}

/// Componentwise upper operation: 0 is the bottom, distinct integral values
/// join at 0.
#[inline]
pub fn join(a: DomainValue, b: DomainValue) -> DomainValue {
    if a.is_relaxed() {
        b
    } else if b.is_relaxed() || a == b {
        a
    } else {
        DomainValue::RELAXED
    }
}

/// Non-negative cost in half-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfCost(pub u64);

impl HalfCost {
    pub const ZERO: HalfCost = HalfCost(0);

    pub fn halves(self) -> u64 {
        self.0
    }

    pub fn from_units(units: u64) -> Self {
        HalfCost(2 * units)
    }

    /// Renders in problem units: `3`, `1½`, `½`.
    pub fn to_units_string(self) -> String {
        match (self.0 / 2, self.0 % 2) {
            (0, 1) => "½".to_string(),
            (w, 0) => w.to_string(),
            (w, _) => format!("{w}½"),
        }
    }

    pub fn saturating_sub(self, other: HalfCost) -> HalfCost {
        HalfCost(self.0.saturating_sub(other.0))
    }
}

impl fmt::Display for HalfCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_units_string())
    }
}

impl Add for HalfCost {
    type Output = HalfCost;
    fn add(self, rhs: HalfCost) -> HalfCost {
        HalfCost(self.0 + rhs.0)
    }
}

impl AddAssign for HalfCost {
    fn add_assign(&mut self, rhs: HalfCost) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfCost {
    type Output = HalfCost;
    fn sub(self, rhs: HalfCost) -> HalfCost {
        HalfCost(self.0 - rhs.0)
    }
}

impl Mul<u64> for HalfCost {
    type Output = HalfCost;
    fn mul(self, rhs: u64) -> HalfCost {
        HalfCost(self.0 * rhs)
    }
}

impl Sum for HalfCost {
    fn sum<I: Iterator<Item = HalfCost>>(iter: I) -> HalfCost {
        iter.fold(HalfCost::ZERO, Add::add)
    }
}

/// Unary cost table over `0..=k`, in half-units.
///
/// Built from integral costs on `1..=k`; the entry for the relaxed value is
/// always derived as `(f(d1) + f(d2)) / 2` where `d1`, `d2` are the two
/// cheapest integral values. With `k = 1` the relaxed entry copies `f(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryTable {
    halves: Vec<u64>,
}

impl UnaryTable {
    /// `costs[d - 1]` is the cost (in whole units) of value `d`.
    pub fn from_costs(costs: &[u64]) -> Result<Self, VcspError> {
        if costs.is_empty() {
            return Err(VcspError::EmptyDomain);
        }
        let mut sorted = costs.to_vec();
        sorted.sort_unstable();
        let relaxed = if sorted.len() == 1 {
            2 * sorted[0]
        } else {
            sorted[0] + sorted[1]
        };
        let mut halves = Vec::with_capacity(costs.len() + 1);
        halves.push(relaxed);
        halves.extend(costs.iter().map(|c| 2 * c));
        Ok(UnaryTable { halves })
    }

    /// The hard constant `f_d`: 0 at `d`, 1 elsewhere, ½ at the relaxed value.
    pub fn hard_constant(k: u32, d: u32) -> Result<Self, VcspError> {
        if d == 0 || d > k {
            return Err(VcspError::ValueOutOfRange { value: d, k });
        }
        let costs: Vec<u64> = (1..=k).map(|v| u64::from(v != d)).collect();
        Self::from_costs(&costs)
    }

    pub fn k(&self) -> u32 {
        (self.halves.len() - 1) as u32
    }

    #[inline]
    pub fn get(&self, x: DomainValue) -> HalfCost {
        HalfCost(self.halves[x.0 as usize])
    }

    /// Entries in half-units, index 0 is the relaxed value.
    pub fn halves(&self) -> &[u64] {
        &self.halves
    }

    /// Minimum over the integral values (also the global minimum).
    pub fn min_halves(&self) -> u64 {
        self.halves[1..].iter().copied().min().unwrap_or(0)
    }

    pub fn max_halves(&self) -> u64 {
        self.halves.iter().copied().max().unwrap_or(0)
    }

    /// Subtracts the minimum so the cheapest integral value costs 0.
    pub fn shifted(&self) -> (UnaryTable, HalfCost) {
        let m = self.min_halves();
        let halves = self.halves.iter().map(|h| h - m).collect();
        (UnaryTable { halves }, HalfCost(m))
    }
}

/// Bijection on `1..=k`, stored as the image of each value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u32>,
    inverse: Vec<u32>,
}

impl Permutation {
    /// `image[i - 1] = π(i)`.
    pub fn new(image: Vec<u32>) -> Result<Self, VcspError> {
        let k = image.len() as u32;
        if k == 0 {
            return Err(VcspError::EmptyDomain);
        }
        let mut inverse = vec![0u32; image.len()];
        for (i, &p) in image.iter().enumerate() {
            if p == 0 || p > k || inverse[(p - 1) as usize] != 0 {
                return Err(VcspError::NotAPermutation(k));
            }
            inverse[(p - 1) as usize] = i as u32 + 1;
        }
        Ok(Permutation { image, inverse })
    }

    pub fn identity(k: u32) -> Self {
        let image: Vec<u32> = (1..=k).collect();
        Permutation { inverse: image.clone(), image }
    }

    /// Cyclic shift `i -> i + s (mod k)` on `1..=k`.
    pub fn shift(k: u32, s: u32) -> Self {
        let image = (0..k).map(|i| (i + s) % k + 1).collect();
        Permutation::new(image).expect("shift is a bijection")
    }

    pub fn k(&self) -> u32 {
        self.image.len() as u32
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.image[(i - 1) as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, j: u32) -> u32 {
        self.inverse[(j - 1) as usize]
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| p == i as u32 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintKind {
    Unary(UnaryTable),
    /// Soft `(y = π(x))` on scope `(x, y)`.
    Permutation(Permutation),
    /// Soft `(x = left ∨ y = right)` on scope `(x, y)`.
    SoftOr { left: u32, right: u32 },
    /// Soft `(x1 = ... = xr)`.
    WideEquality,
}

impl ConstraintKind {
    fn name(&self) -> &'static str {
        match self {
            ConstraintKind::Unary(_) => "unary",
            ConstraintKind::Permutation(_) => "permutation",
            ConstraintKind::SoftOr { .. } => "soft-or",
            ConstraintKind::WideEquality => "wide-equality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    kind: ConstraintKind,
    scope: Vec<usize>,
    weight: u64,
    crisp: bool,
}

impl Constraint {
    pub fn new(
        kind: ConstraintKind,
        scope: Vec<usize>,
        weight: u64,
        crisp: bool,
    ) -> Result<Self, VcspError> {
        if weight == 0 {
            return Err(VcspError::ZeroWeight);
        }
        let expected = match &kind {
            ConstraintKind::Unary(_) => Some(1),
            ConstraintKind::Permutation(_) | ConstraintKind::SoftOr { .. } => Some(2),
            ConstraintKind::WideEquality => None,
        };
        match expected {
            Some(e) if e != scope.len() => {
                return Err(VcspError::ArityMismatch { expected: e, got: scope.len() })
            }
            None if scope.len() < 2 => {
                return Err(VcspError::ArityMismatch { expected: 2, got: scope.len() })
            }
            _ => {}
        }
        for (i, v) in scope.iter().enumerate() {
            if scope[..i].contains(v) {
                return Err(VcspError::RepeatedVariable(*v));
            }
        }
        if let ConstraintKind::SoftOr { left, right } = kind {
            if left == 0 || right == 0 {
                return Err(VcspError::Invalid("soft-or values must be integral".into()));
            }
        }
        // A crisp unary only distinguishes allowed (cheapest) from forbidden values.
        let kind = match kind {
            ConstraintKind::Unary(t) if crisp => ConstraintKind::Unary(t.shifted().0),
            other => other,
        };
        Ok(Constraint { kind, scope, weight, crisp })
    }

    pub fn unary(var: usize, table: UnaryTable, weight: u64) -> Result<Self, VcspError> {
        Self::new(ConstraintKind::Unary(table), vec![var], weight, false)
    }

    /// Crisp hard constant `(var = d)`.
    pub fn pin(k: u32, var: usize, d: u32) -> Result<Self, VcspError> {
        Self::new(
            ConstraintKind::Unary(UnaryTable::hard_constant(k, d)?),
            vec![var],
            1,
            true,
        )
    }

    pub fn permutation(x: usize, y: usize, pi: Permutation, weight: u64) -> Result<Self, VcspError> {
        Self::new(ConstraintKind::Permutation(pi), vec![x, y], weight, false)
    }

    pub fn soft_or(x: usize, left: u32, y: usize, right: u32, weight: u64) -> Result<Self, VcspError> {
        Self::new(ConstraintKind::SoftOr { left, right }, vec![x, y], weight, false)
    }

    pub fn wide_equality(scope: Vec<usize>, weight: u64) -> Result<Self, VcspError> {
        Self::new(ConstraintKind::WideEquality, scope, weight, false)
    }

    /// Marks the constraint as unbreakable.
    pub fn into_crisp(self) -> Self {
        Constraint::new(self.kind, self.scope, self.weight, true).expect("already validated")
    }

    pub fn kind(&self) -> &ConstraintKind {
        &self.kind
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn is_crisp(&self) -> bool {
        self.crisp
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }

    /// Checks the constraint's parameters against a domain size.
    pub fn validate(&self, k: u32) -> Result<(), VcspError> {
        match &self.kind {
            ConstraintKind::Unary(t) if t.k() != k => Err(VcspError::TableLength {
                expected: k as usize,
                got: t.k() as usize,
            }),
            ConstraintKind::Permutation(p) if p.k() != k => Err(VcspError::NotAPermutation(k)),
            ConstraintKind::SoftOr { left, right } if *left > k || *right > k => {
                Err(VcspError::ValueOutOfRange { value: (*left).max(*right), k })
            }
            _ => Ok(()),
        }
    }

    /// Unweighted relaxed cost in half-units.
    pub fn base_halves(&self, args: &[DomainValue]) -> u64 {
        match &self.kind {
            ConstraintKind::Unary(t) => t.get(args[0]).0,
            ConstraintKind::Permutation(pi) => {
                let (x, y) = (args[0], args[1]);
                match (x.is_relaxed(), y.is_relaxed()) {
                    (true, true) => 0,
                    (true, false) | (false, true) => 1,
                    (false, false) => {
                        if pi.apply(x.0) == y.0 {
                            0
                        } else {
                            2
                        }
                    }
                }
            }
            ConstraintKind::SoftOr { left, right } => {
                let (x, y) = (args[0], args[1]);
                if x.0 == *left || y.0 == *right {
                    return 0;
                }
                // Neither coordinate is safe: ½ per integral coordinate.
                u64::from(!x.is_relaxed()) + u64::from(!y.is_relaxed())
            }
            ConstraintKind::WideEquality => {
                let mut seen: Option<u32> = None;
                let mut has_zero = false;
                for a in args {
                    if a.is_relaxed() {
                        has_zero = true;
                    } else {
                        match seen {
                            None => seen = Some(a.0),
                            Some(s) if s != a.0 => return 2,
                            _ => {}
                        }
                    }
                }
                match (seen, has_zero) {
                    (Some(_), true) => 1,
                    _ => 0,
                }
            }
        }
    }

    /// Largest unweighted value of the relaxation.
    pub fn max_base_halves(&self) -> u64 {
        match &self.kind {
            ConstraintKind::Unary(t) => t.max_halves(),
            _ => 2,
        }
    }

    /// `weight × base` in half-units.
    pub fn relaxed_cost(&self, args: &[DomainValue]) -> Result<HalfCost, VcspError> {
        if args.len() != self.scope.len() {
            return Err(VcspError::ArityMismatch { expected: self.scope.len(), got: args.len() });
        }
        Ok(HalfCost(self.weight * self.base_halves(args)))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?} w={}", self.kind.name(), self.scope, self.weight)?;
        if self.crisp {
            f.write_str(" crisp")?;
        }
        Ok(())
    }
}

/// Assignment of relaxed-domain values to every variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfAssignment {
    values: Vec<DomainValue>,
}

impl HalfAssignment {
    pub fn relaxed(n: usize) -> Self {
        HalfAssignment { values: vec![DomainValue::RELAXED; n] }
    }

    pub fn from_values(values: &[u32]) -> Self {
        HalfAssignment { values: values.iter().map(|&v| DomainValue(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> DomainValue {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, d: DomainValue) {
        self.values[v] = d;
    }

    pub fn values(&self) -> &[DomainValue] {
        &self.values
    }

    pub fn raw(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.0).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| !v.is_relaxed())
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_relaxed()).count()
    }

    /// `true` when `other` keeps every integral coordinate of `self`.
    pub fn agrees_on_integral(&self, other: &HalfAssignment) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.is_relaxed() || a == b)
    }

    /// `self` is dominated by `other`: they differ and `other` keeps every
    /// integral coordinate of `self`.
    pub fn dominated_by(&self, other: &HalfAssignment) -> bool {
        self != other && self.agrees_on_integral(other)
    }

    pub fn meet(&self, other: &HalfAssignment) -> HalfAssignment {
        HalfAssignment {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| meet(a, b)).collect(),
        }
    }

    pub fn join(&self, other: &HalfAssignment) -> HalfAssignment {
        HalfAssignment {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| join(a, b)).collect(),
        }
    }
}

impl fmt::Display for HalfAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.0.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcspInstance {
    k: u32,
    n: usize,
    constraints: Vec<Constraint>,
}

impl VcspInstance {
    pub fn new(k: u32, n: usize) -> Result<Self, VcspError> {
        if k == 0 {
            return Err(VcspError::EmptyDomain);
        }
        Ok(VcspInstance { k, n, constraints: Vec::new() })
    }

    pub fn with_constraints(k: u32, n: usize, constraints: Vec<Constraint>) -> Result<Self, VcspError> {
        let mut inst = Self::new(k, n)?;
        for c in constraints {
            inst.push(c)?;
        }
        Ok(inst)
    }

    pub fn push(&mut self, c: Constraint) -> Result<(), VcspError> {
        for &v in c.scope() {
            if v >= self.n {
                return Err(VcspError::VariableOutOfRange { index: v, n: self.n });
            }
        }
        c.validate(self.k)?;
        self.constraints.push(c);
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Upper bound on the soft part of any assignment, in half-units.
    pub fn total_soft_halves(&self) -> u64 {
        self.constraints
            .iter()
            .filter(|c| !c.is_crisp())
            .map(|c| c.weight * c.max_base_halves())
            .sum()
    }

    /// Weight used to materialise crisp constraints: large enough that no
    /// assignment within `budget` can break one, even by half a unit.
    pub fn crisp_weight(&self, budget: HalfCost) -> u64 {
        self.total_soft_halves() + 2 * budget.0 + 2
    }

    pub fn effective_weight(&self, c: &Constraint, crisp_weight: u64) -> u64 {
        if c.is_crisp() {
            c.weight * crisp_weight
        } else {
            c.weight
        }
    }

    fn args_of(c: &Constraint, phi: &HalfAssignment, buf: &mut Vec<DomainValue>) {
        buf.clear();
        buf.extend(c.scope().iter().map(|&v| phi.get(v)));
    }

    /// Total relaxed cost with crisp constraints materialised at
    /// `crisp_weight(0)`.
    pub fn evaluate(&self, phi: &HalfAssignment) -> HalfCost {
        self.evaluate_with(phi, self.crisp_weight(HalfCost::ZERO))
    }

    pub fn evaluate_with(&self, phi: &HalfAssignment, crisp_weight: u64) -> HalfCost {
        assert_eq!(phi.len(), self.n, "assignment length");
        let mut buf = Vec::new();
        let mut total = 0u64;
        for c in &self.constraints {
            Self::args_of(c, phi, &mut buf);
            total += self.effective_weight(c, crisp_weight) * c.base_halves(&buf);
        }
        HalfCost(total)
    }

    /// Soft cost, or `None` when some crisp constraint is broken.
    pub fn soft_cost(&self, phi: &HalfAssignment) -> Option<HalfCost> {
        let mut buf = Vec::new();
        let mut total = 0u64;
        for c in &self.constraints {
            Self::args_of(c, phi, &mut buf);
            let base = c.base_halves(&buf);
            if c.is_crisp() {
                if base > 0 {
                    return None;
                }
            } else {
                total += c.weight * base;
            }
        }
        Some(HalfCost(total))
    }

    /// Indices of constraints with nonzero cost under `phi`.
    pub fn violated(&self, phi: &HalfAssignment) -> Vec<usize> {
        let mut buf = Vec::new();
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                Self::args_of(c, phi, &mut buf);
                c.base_halves(&buf) > 0
            })
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Over `{0..k}^n`.
    Relaxed,
    /// Over `{1..k}^n`.
    Integral,
}

/// Iterates over every point of `{lo..=k}^n` in lexicographic order.
fn for_each_point(n: usize, lo: u32, k: u32, mut visit: impl FnMut(&HalfAssignment)) {
    let mut phi = HalfAssignment { values: vec![DomainValue(lo); n] };
    loop {
        visit(&phi);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if phi.values[i].0 < k {
                phi.values[i].0 += 1;
                break;
            }
            phi.values[i].0 = lo;
        }
    }
}

fn space_size(n: usize, base: u64) -> Option<u64> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.checked_mul(base)?;
    }
    Some(size)
}

/// Exact minimum and every minimiser, by exhaustive enumeration.
///
/// Crisp constraints are materialised as in [`VcspInstance::evaluate`].
pub fn brute_force_minimize(
    inst: &VcspInstance,
    mode: SearchMode,
) -> Result<(HalfCost, Vec<HalfAssignment>), VcspError> {
    let guard = space_size(inst.n, u64::from(inst.k) + 1).unwrap_or(u64::MAX);
    if guard > BRUTE_FORCE_LIMIT {
        return Err(VcspError::TooLarge(guard));
    }
    let lo = match mode {
        SearchMode::Relaxed => 0,
        SearchMode::Integral => 1,
    };
    let w = inst.crisp_weight(HalfCost::ZERO);
    let mut best = HalfCost(u64::MAX);
    let mut argmin = Vec::new();
    for_each_point(inst.n, lo, inst.k, |phi| {
        let c = inst.evaluate_with(phi, w);
        if c < best {
            best = c;
            argmin.clear();
        }
        if c == best {
            argmin.push(phi.clone());
        }
    });
    Ok((best, argmin))
}

/// Exhaustive check of `f(X) + f(Y) >= f(X ⊓ Y) + f(X ⊔ Y)` for a function
/// on `{0..k}^arity`.
pub fn is_k_submodular_fn(k: u32, arity: usize, f: impl Fn(&[DomainValue]) -> u64) -> bool {
    let mut points = Vec::new();
    for_each_point(arity, 0, k, |p| points.push(p.clone()));
    let values: Vec<u64> = points.iter().map(|p| f(p.values())).collect();
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            let m = x.meet(y);
            let jn = x.join(y);
            if values[i] + values[j] < f(m.values()) + f(jn.values()) {
                return false;
            }
        }
    }
    true
}

/// Maximum arity exhaustively checked for wide equalities.
pub const WIDE_EQUALITY_CHECK_ARITY: usize = 4;

/// Exhaustive k-submodularity check of a constraint's relaxation.
pub fn is_k_submodular(c: &Constraint, k: u32) -> Result<bool, VcspError> {
    if c.arity() > WIDE_EQUALITY_CHECK_ARITY {
        return Err(VcspError::TooLarge(
            space_size(2 * c.arity(), u64::from(k) + 1).unwrap_or(u64::MAX),
        ));
    }
    c.validate(k)?;
    Ok(is_k_submodular_fn(k, c.arity(), |args| c.base_halves(args)))
}

/// `true` iff every relaxed optimum extends to an integral optimum that keeps
/// its integral coordinates.
pub fn check_persistence(inst: &VcspInstance) -> Result<bool, VcspError> {
    let (_, relaxed) = brute_force_minimize(inst, SearchMode::Relaxed)?;
    let (_, integral) = brute_force_minimize(inst, SearchMode::Integral)?;
    Ok(relaxed
        .iter()
        .all(|r| integral.iter().any(|x| r.agrees_on_integral(x))))
}
