//! Finite coefficient groups: symmetric groups `S_l` (l ≤ 8) and `F_2`.

use std::fmt;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_L: usize = 8;

pub trait Group: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    /// `self · other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Identity of the same group as `self`.
    fn identity_like(&self) -> Self;
}

/// A permutation of `{0..len}`; `(στ)(i) = σ(τ(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    len: u8,
    map: [u8; MAX_L],
}

impl Perm {
    pub fn identity(l: usize) -> Self {
        assert!(l <= MAX_L, "permutation length {l} exceeds {MAX_L}");
        let mut map = [0u8; MAX_L];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        Perm { len: l as u8, map }
    }

    pub fn from_slice(images: &[usize]) -> Result<Self> {
        let l = images.len();
        if l > MAX_L {
            return Err(Error::InvalidInput(format!("permutation length {l} exceeds {MAX_L}")));
        }
        let mut seen = [false; MAX_L];
        let mut p = Perm::identity(l);
        for (i, &x) in images.iter().enumerate() {
            if x >= l || seen[x] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
            p.map[i] = x as u8;
        }
        Ok(p)
    }

    /// Transposition of `a` and `b` in `S_l`.
    pub fn swap(l: usize, a: usize, b: usize) -> Self {
        let mut p = Perm::identity(l);
        p.map.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.map[..self.len()].iter().map(|&x| x as usize).collect()
    }

    pub fn random<R: Rng + ?Sized>(l: usize, rng: &mut R) -> Self {
        let mut p = Perm::identity(l);
        p.map[..l].shuffle(rng);
        p
    }

    /// All of `S_l` in lexicographic order of images.
    pub fn all(l: usize) -> Vec<Perm> {
        use itertools::Itertools;
        (0..l)
            .permutations(l)
            .map(|v| Perm::from_slice(&v).expect("valid permutation"))
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl Group for Perm {
    fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len() {
            out.map[i] = self.map[other.map[i] as usize];
        }
        out
    }

    fn inverse(&self) -> Self {
        let mut out = *self;
        for i in 0..self.len() {
            out.map[self.map[i] as usize] = i as u8;
        }
        out
    }

    fn is_identity(&self) -> bool {
        (0..self.len()).all(|i| self.map[i] as usize == i)
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.len())
    }
}

/// An element of `F_2` under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bit(pub bool);

impl Group for Bit {
    fn compose(&self, other: &Self) -> Self {
        Bit(self.0 ^ other.0)
    }

    fn inverse(&self) -> Self {
        *self
    }

    fn is_identity(&self) -> bool {
        !self.0
    }

    fn identity_like(&self) -> Self {
        Bit(false)
    }
}
