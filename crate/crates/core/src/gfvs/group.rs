//! Group oracles. Elements are opaque values that the algorithms only
//! multiply, invert and compare.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;

pub trait GroupOracle: Clone + Debug {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.identity())
    }

    /// Left-to-right product of a sequence.
    fn product<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.identity(), |acc, x| self.multiply(&acc, x))
    }
}

/// Cyclic group `Z_q` on residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclic {
    pub q: u64,
}

impl Cyclic {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1, "cyclic group of order 0");
        Cyclic { q }
    }
}

impl GroupOracle for Cyclic {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn multiply(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(*b)) % u128::from(self.q)) as u64
    }

    fn invert(&self, a: &u64) -> u64 {
        (self.q - a % self.q) % self.q
    }
}

/// `Z_2^m` as bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z2Pow {
    pub m: usize,
}

impl Z2Pow {
    pub fn generator(&self, i: usize) -> BigUint {
        assert!(i < self.m);
        BigUint::from(1u32) << i
    }
}

impl GroupOracle for Z2Pow {
    type Elem = BigUint;

    fn identity(&self) -> BigUint {
        BigUint::default()
    }

    fn multiply(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a ^ b
    }

    fn invert(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

/// Symmetric group on `k` points; elements in one-line notation on
/// `0..k`, multiplied left to right (`(ab)(x) = b(a(x))`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermGroup {
    pub k: usize,
}

impl PermGroup {
    pub fn is_element(&self, p: &[u8]) -> bool {
        let mut seen = vec![false; self.k];
        p.len() == self.k
            && p.iter().all(|&x| (x as usize) < self.k && !std::mem::replace(&mut seen[x as usize], true))
    }
}

impl GroupOracle for PermGroup {
    type Elem = Vec<u8>;

    fn identity(&self) -> Vec<u8> {
        (0..self.k as u8).collect()
    }

    fn multiply(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        a.iter().map(|&x| b[x as usize]).collect()
    }

    fn invert(&self, a: &Vec<u8>) -> Vec<u8> {
        let mut inv = vec![0u8; a.len()];
        for (i, &x) in a.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        inv
    }
}

/// Element of one of the concrete backends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyElem {
    Residue(u64),
    Mask(BigUint),
    Perm(Vec<u8>),
}

/// Runtime choice of backend, as read from instance files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyGroup {
    Cyclic(Cyclic),
    Z2Pow(Z2Pow),
    Perm(PermGroup),
}

impl GroupOracle for AnyGroup {
    type Elem = AnyElem;

    fn identity(&self) -> AnyElem {
        match self {
            AnyGroup::Cyclic(g) => AnyElem::Residue(g.identity()),
            AnyGroup::Z2Pow(g) => AnyElem::Mask(g.identity()),
            AnyGroup::Perm(g) => AnyElem::Perm(g.identity()),
        }
    }

    fn multiply(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match (self, a, b) {
            (AnyGroup::Cyclic(g), AnyElem::Residue(a), AnyElem::Residue(b)) => {
                AnyElem::Residue(g.multiply(a, b))
            }
            (AnyGroup::Z2Pow(g), AnyElem::Mask(a), AnyElem::Mask(b)) => AnyElem::Mask(g.multiply(a, b)),
            (AnyGroup::Perm(g), AnyElem::Perm(a), AnyElem::Perm(b)) => AnyElem::Perm(g.multiply(a, b)),
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    fn invert(&self, a: &AnyElem) -> AnyElem {
        match (self, a) {
            (AnyGroup::Cyclic(g), AnyElem::Residue(a)) => AnyElem::Residue(g.invert(a)),
            (AnyGroup::Z2Pow(g), AnyElem::Mask(a)) => AnyElem::Mask(g.invert(a)),
            (AnyGroup::Perm(g), AnyElem::Perm(a)) => AnyElem::Perm(g.invert(a)),
            _ => panic!("element does not belong to {self:?}"),
        }
    }
}
