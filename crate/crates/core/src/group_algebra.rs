//! Elements of the real group algebra `R[S_n]` and their action on `W`.
//!
//! YJM polynomials, Young symmetrizers and character projectors are built
//! here as formal sums of permutations and only then realized as matrices,
//! which keeps every construction exact up to the final floating-point sum.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::{permute_strings, space_dim};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tensor::{Operator, StateVector};

/// A finite formal sum `Σ c_σ σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, f64>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n), 1.0)
    }

    pub fn from_perm(sigma: Permutation, coeff: f64) -> Self {
        let n = sigma.degree();
        let mut e = Self::zero(n);
        e.add_term(sigma, coeff);
        e
    }

    /// The Young–Jucys–Murphy element `J_k = Σ_{i<k} (i k)`, `k` 1-based.
    pub fn yjm(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let mut e = Self::zero(n);
        for i in 0..k - 1 {
            e.add_term(Permutation::transposition(n, i, k - 1), 1.0);
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, f64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, sigma: Permutation, coeff: f64) {
        debug_assert_eq!(sigma.degree(), self.n);
        match self.terms.entry(sigma) {
            Entry::Vacant(slot) => {
                if coeff != 0.0 {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0.0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(p, &c)| (p.clone(), c * factor)).collect(),
        }
    }

    /// `self + shift · e`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        out.add_term(Permutation::identity(self.n), shift);
        out
    }

    /// Product in the group algebra; `(a·b)` acts on `W` as `rep(a)·rep(b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (p, a) in self.terms() {
            for (q, b) in other.terms() {
                out.add_term(p.compose(q), a * b);
            }
        }
        out
    }

    /// Dense operator `Σ c_σ rep(σ)` on `(C^d)^{⊗n}`.
    pub fn to_operator(&self, d: usize) -> Result<Operator> {
        let dim = space_dim(self.n, d)?;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (p, c) in self.terms() {
            let images = permute_strings(self.n, d, p)?;
            for (x, &y) in images.iter().enumerate() {
                m[(y, x)] += Complex64::new(c, 0.0);
            }
        }
        Operator::new(self.n, d, m)
    }

    /// Applies the element to a vector without materializing the matrix.
    pub fn apply(&self, d: usize, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        let dim = space_dim(self.n, d)?;
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let mut out = DVector::<Complex64>::zeros(dim);
        for (p, c) in self.terms() {
            let images = permute_strings(self.n, d, p)?;
            for (x, &y) in images.iter().enumerate() {
                out[y] += v[x] * c;
            }
        }
        Ok(out)
    }

    pub fn apply_state(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        self.apply(state.d(), state.amplitudes())
    }
}
