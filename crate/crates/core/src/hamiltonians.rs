//! Problem Hamiltonians, their spin (`Z`) form and eigenvalue blocks, the
//! standard mixer, and the sector mixers built from shifted YJM squares.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::basis::{digits, space_dim};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::tensor::{random_unitary, sum_of_site_lifts, Operator, DEGENERACY_TOL};

/// An objective `F` on d-ary strings of length `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSpec {
    n: usize,
    d: usize,
    objective: Objective,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `a + Σ β_k x_k + Σ_{i ≤ j} α_ij x_i x_j`, sites 0-based.
    Quadratic {
        constant: f64,
        linear: Vec<f64>,
        quadratic: BTreeMap<(usize, usize), f64>,
    },
    /// `F(x)` for every string index.
    Table(Vec<f64>),
}

impl ProblemSpec {
    /// Quadratic objective; pairs `(i, j)` are 0-based and normalized to
    /// `i ≤ j`, duplicate pairs are summed.
    pub fn quadratic(
        n: usize,
        d: usize,
        constant: f64,
        linear: Vec<f64>,
        pairs: impl IntoIterator<Item = ((usize, usize), f64)>,
    ) -> Result<Self> {
        space_dim(n, d)?;
        if d < 2 {
            return Err(Error::InvalidSpec(format!("local dimension must be at least 2, got {d}")));
        }
        if linear.len() != n {
            return Err(Error::InvalidSpec(format!(
                "linear coefficients have length {}, expected {n}",
                linear.len()
            )));
        }
        if !constant.is_finite() || linear.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("coefficients must be finite".into()));
        }
        let mut quadratic = BTreeMap::new();
        for ((i, j), v) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidSpec(format!(
                    "quadratic index pair ({}, {}) outside 1..={n}",
                    i + 1,
                    j + 1
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidSpec("coefficients must be finite".into()));
            }
            *quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
        }
        Ok(Self {
            n,
            d,
            objective: Objective::Quadratic {
                constant,
                linear,
                quadratic,
            },
        })
    }

    pub fn table(n: usize, d: usize, values: Vec<f64>) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if d < 2 {
            return Err(Error::InvalidSpec(format!("local dimension must be at least 2, got {d}")));
        }
        if values.len() != dim {
            return Err(Error::InvalidSpec(format!(
                "value table has length {}, expected {dim}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("table values must be finite".into()));
        }
        Ok(Self {
            n,
            d,
            objective: Objective::Table(values),
        })
    }

    /// Tabulates an arbitrary function of the digit string.
    pub fn from_fn(n: usize, d: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        let dim = space_dim(n, d)?;
        Self::table(n, d, (0..dim).map(|x| f(&digits(x, n, d))).collect())
    }

    pub fn zero(n: usize, d: usize) -> Result<Self> {
        Self::quadratic(n, d, 0.0, vec![0.0; n], [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// `F(x)` with digits read as integers `0..d`.
    pub fn evaluate(&self, xs: &[usize]) -> f64 {
        match &self.objective {
            Objective::Quadratic {
                constant,
                linear,
                quadratic,
            } => {
                let mut total = *constant;
                for (k, &b) in linear.iter().enumerate() {
                    total += b * xs[k] as f64;
                }
                for (&(i, j), &a) in quadratic {
                    total += a * (xs[i] * xs[j]) as f64;
                }
                total
            }
            Objective::Table(values) => values[crate::basis::index_of(xs, self.d)],
        }
    }

    /// `F` at every string index.
    pub fn values(&self) -> Vec<f64> {
        match &self.objective {
            Objective::Table(values) => values.clone(),
            Objective::Quadratic { .. } => {
                let dim = self.d.pow(self.n as u32);
                (0..dim).map(|x| self.evaluate(&digits(x, self.n, self.d))).collect()
            }
        }
    }
}

/// The diagonal operator `H_F v_x = F(x) v_x`.
pub fn problem_hamiltonian(spec: &ProblemSpec) -> Result<Operator> {
    Operator::from_diagonal(spec.n, spec.d, &spec.values())
}

/// `constant·I + Σ β̃_k Z_k + Σ_{i<j} α̃_ij Z_i Z_j` with `Z = diag(1, -1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZForm {
    pub n: usize,
    pub constant: f64,
    pub linear: Vec<f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
}

/// Rewrites a binary quadratic objective in spin variables via `x = (1 - Z)/2`.
pub fn z_form(spec: &ProblemSpec) -> Result<ZForm> {
    if spec.d != 2 {
        return Err(Error::UnsupportedDimension(spec.d));
    }
    let Objective::Quadratic {
        constant,
        linear,
        quadratic,
    } = &spec.objective
    else {
        return Err(Error::InvalidSpec("spin form needs a coefficient objective".into()));
    };
    let n = spec.n;
    let mut c0 = *constant;
    let mut lin = vec![0.0; n];
    let mut quad = BTreeMap::new();
    for (k, &b) in linear.iter().enumerate() {
        c0 += b / 2.0;
        lin[k] -= b / 2.0;
    }
    for (&(i, j), &a) in quadratic {
        if i == j {
            // x_i^2 = x_i on bits
            c0 += a / 2.0;
            lin[i] -= a / 2.0;
        } else {
            c0 += a / 4.0;
            lin[i] -= a / 4.0;
            lin[j] -= a / 4.0;
            *quad.entry((i, j)).or_insert(0.0) += a / 4.0;
        }
    }
    Ok(ZForm {
        n,
        constant: c0,
        linear: lin,
        quadratic: quad,
    })
}

impl ZForm {
    /// `λ_b`: the spin-form eigenvalue at bit string `b`, scalar term excluded.
    /// Pairs with equal bits contribute `+α̃`, unequal `-α̃`; sites with bit 0
    /// contribute `+β̃`, bit 1 `-β̃`.
    pub fn lambda(&self, bits: &[usize]) -> f64 {
        let mut total = 0.0;
        for (&(i, j), &a) in &self.quadratic {
            if bits[i] == bits[j] {
                total += a;
            } else {
                total -= a;
            }
        }
        for (k, &b) in self.linear.iter().enumerate() {
            if bits[k] == 0 {
                total += b;
            } else {
                total -= b;
            }
        }
        total
    }

    /// `λ_b` for every string index.
    pub fn lambda_values(&self) -> Vec<f64> {
        (0..1usize << self.n).map(|x| self.lambda(&digits(x, self.n, 2))).collect()
    }

    /// The full diagonal including the scalar term.
    pub fn diagonal(&self) -> Vec<f64> {
        self.lambda_values().into_iter().map(|v| v + self.constant).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenBlock {
    pub value: f64,
    pub indices: Vec<usize>,
}

/// Basis indices grouped by diagonal value, values strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockStructure {
    pub blocks: Vec<EigenBlock>,
}

impl BlockStructure {
    pub fn from_values(values: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut blocks: Vec<EigenBlock> = Vec::new();
        for i in order {
            match blocks.last_mut() {
                Some(block) if values[i] - values[*block.indices.last().unwrap()] <= DEGENERACY_TOL => {
                    block.indices.push(i)
                }
                _ => blocks.push(EigenBlock {
                    value: values[i],
                    indices: vec![i],
                }),
            }
        }
        for block in &mut blocks {
            block.indices.sort_unstable();
        }
        Self { blocks }
    }

    /// Number of distinct eigenvalues.
    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.indices.len()).collect()
    }

    /// Whether two structures induce the same partition of the basis.
    pub fn same_partition(&self, other: &Self) -> bool {
        let canon = |s: &Self| {
            let mut sets: Vec<Vec<usize>> = s.blocks.iter().map(|b| b.indices.clone()).collect();
            sets.sort();
            sets
        };
        canon(self) == canon(other)
    }
}

pub fn eigenvalue_blocks(h: &Operator) -> Result<BlockStructure> {
    Ok(BlockStructure::from_values(&h.real_diagonal()?))
}

/// `max |UH - HU|` over entries.
pub fn block_commutant_check(h: &Operator, u: &Operator) -> Result<f64> {
    if h.is_diagonal() {
        if h.dim() != u.dim() {
            return Err(Error::DimensionMismatch {
                expected: h.dim(),
                found: u.dim(),
            });
        }
        let diag = h.matrix().diagonal();
        let m = u.matrix();
        let mut worst: f64 = 0.0;
        for j in 0..h.dim() {
            for i in 0..h.dim() {
                worst = worst.max((m[(i, j)] * (diag[j] - diag[i])).norm());
            }
        }
        Ok(worst)
    } else {
        u.commutator_norm(h)
    }
}

/// A Haar-random unitary on each block, zero between blocks.
pub fn random_block_unitary<R: Rng + ?Sized>(blocks: &BlockStructure, dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(dim, dim);
    for block in &blocks.blocks {
        let u = random_unitary(block.indices.len(), rng);
        for (a, &i) in block.indices.iter().enumerate() {
            for (b, &j) in block.indices.iter().enumerate() {
                out[(i, j)] = u[(a, b)];
            }
        }
    }
    out
}

/// Adjacency of the cyclic digit graph: `1` where `a - b ≡ ±1 (mod d)`.
/// Equals `X` for `d = 2` and `S + S†` for `d ≥ 3`.
pub fn cyclic_hop(d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |a, b| {
        let hop = (a + 1) % d == b || (b + 1) % d == a;
        Complex64::new(if hop && a != b { 1.0 } else { 0.0 }, 0.0)
    })
}

/// `-Σ_j` of the cyclic hop on site `j`; ground state is the uniform superposition.
pub fn standard_mixer(n: usize, d: usize) -> Result<Operator> {
    if d < 2 {
        return Err(Error::InvalidSpec(format!("local dimension must be at least 2, got {d}")));
    }
    Ok(sum_of_site_lifts(n, d, &cyclic_hop(d))?.scale(-1.0))
}

/// `diag(k - (d-1)/2)` for `k = 0..d`.
pub fn tau_site(d: usize) -> DMatrix<Complex64> {
    let half = (d as f64 - 1.0) / 2.0;
    DMatrix::from_fn(d, d, |i, j| Complex64::new(if i == j { i as f64 - half } else { 0.0 }, 0.0))
}

/// `1/(n·d)`, inside every admissible range the mixer definition allows.
pub fn default_epsilon(n: usize, d: usize) -> f64 {
    1.0 / (n * d) as f64
}

/// Exclusive upper bound `2/(n·d)` on the mixer's ε.
pub fn epsilon_bound(n: usize, d: usize) -> f64 {
    2.0 / (n * d) as f64
}

/// `(k, c)` pairs of the mixer terms `(J_k - c)^2`: `k = λ_1 + … + λ_i` and
/// `c = λ_i - i`, the content of the last box of row `i`.
pub fn yjm_shifts(shape: &Partition) -> Vec<(usize, i64)> {
    let mut k = 0;
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            k += len;
            (k, len as i64 - (i as i64 + 1))
        })
        .collect()
}

/// `Σ_i (J_{λ_1+…+λ_i} - (λ_i - i))^2` as a group-algebra element.
pub fn reduced_mixer_yjm_element(shape: &Partition) -> Result<GroupAlgebraElement> {
    let n = shape.size();
    let mut total = GroupAlgebraElement::zero(n);
    for (k, shift) in yjm_shifts(shape) {
        let term = GroupAlgebraElement::yjm(n, k)?.shifted(-(shift as f64));
        total = total.add(&term.mul(&term));
    }
    Ok(total)
}

fn check_admissible(shape: &Partition, n: usize, d: usize) -> Result<()> {
    if shape.size() != n {
        return Err(Error::SizeMismatch(format!("shape {shape} does not partition {n}")));
    }
    if shape.len() > d {
        return Err(Error::SectorInadmissible {
            shape: shape.to_string(),
            d,
        });
    }
    Ok(())
}

/// The YJM part of the sector mixer, without the ε-term.
pub fn reduced_mixer_yjm_part(shape: &Partition, n: usize, d: usize) -> Result<Operator> {
    check_admissible(shape, n, d)?;
    reduced_mixer_yjm_element(shape)?.to_operator(d)
}

/// Sector mixer `Σ_i (J_{λ_1+…+λ_i} - (λ_i - i))^2 + ε Σ_j τ_j`.
pub fn reduced_mixer(shape: &Partition, n: usize, d: usize, epsilon: f64) -> Result<Operator> {
    check_admissible(shape, n, d)?;
    let bound = epsilon_bound(n, d);
    if !(epsilon > 0.0 && epsilon < bound) {
        return Err(Error::EpsilonOutOfRange { epsilon, bound });
    }
    let yjm_part = reduced_mixer_yjm_part(shape, n, d)?;
    let weight = sum_of_site_lifts(n, d, &tau_site(d))?;
    yjm_part.add(&weight.scale(epsilon))
}
