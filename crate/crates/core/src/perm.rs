//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! The public constructors accept both 0-based and 1-based image arrays; the
//! 1-based form is what configuration files use for site permutations.

use std::fmt;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotBijective(images));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, as written in config files.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotBijective(images.to_vec()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
            .map_err(|_| Error::NotBijective(images.to_vec()))
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// The transposition exchanging the 0-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle lengths sorted in decreasing order, as a partition of the degree.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts_unchecked(lengths)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        let transpositions: usize = ct.parts().iter().map(|l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .parts()
            .iter()
            .fold(1u64, |acc, &l| num::integer::lcm(acc, l as u64))
    }

    /// Every permutation of `{0, .., n-1}` in lexicographic order of image arrays.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.one_based().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Lexicographic enumeration of `S_n`.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // standard next-permutation step
        let n = succ.len();
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && succ[i - 1] >= succ[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while succ[j] <= succ[i - 1] {
                    j -= 1;
                }
                succ.swap(i - 1, j);
                succ[i..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { images: current })
    }
}
