//! Dense operators and states on `W = (C^d)^{⊗n}`.
//!
//! Everything here is exact-diagonalization machinery: operators are dense
//! complex matrices of side `d^n` (capped at [`crate::basis::MAX_DIM`]), exponentials go
//! through the spectral decomposition, and Hermitian eigenproblems are split
//! along the connected components of the matrix's support graph first.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::basis::{permute_strings, space_dim};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::perm::Permutation;

/// Tolerance for accepting an operator as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Absolute gap below which eigenvalues are considered degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Tolerance for accepting a state as normalized.
pub const NORM_TOL: f64 = 1e-10;

const PF_ZERO_TOL: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Complex matrix product routed through real GEMM on the real and
/// imaginary parts, skipping parts that are identically zero.
pub fn complex_matmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let mut re = DMatrix::<f64>::zeros(a.nrows(), b.ncols());
    let mut im = DMatrix::<f64>::zeros(a.nrows(), b.ncols());
    re.gemm(1.0, &ar, &br, 0.0);
    if let (Some(ai), Some(bi)) = (&ai, &bi) {
        re.gemm(-1.0, ai, bi, 1.0);
    }
    if let Some(bi) = &bi {
        im.gemm(1.0, &ar, bi, 1.0);
    }
    if let Some(ai) = &ai {
        im.gemm(1.0, ai, &br, 1.0);
    }
    DMatrix::from_fn(a.nrows(), b.ncols(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

fn split(m: &DMatrix<Complex64>) -> (DMatrix<f64>, Option<DMatrix<f64>>) {
    let re = m.map(|z| z.re);
    let im = if m.iter().any(|z| z.im != 0.0) {
        Some(m.map(|z| z.im))
    } else {
        None
    };
    (re, im)
}

/// A square operator on `(C^d)^{⊗n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n: usize,
    d: usize,
    matrix: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(n: usize, d: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if matrix.nrows() != dim { matrix.nrows() } else { matrix.ncols() },
            });
        }
        Ok(Self { n, d, matrix })
    }

    pub fn zeros(n: usize, d: usize) -> Result<Self> {
        let dim = space_dim(n, d)?;
        Ok(Self {
            n,
            d,
            matrix: DMatrix::zeros(dim, dim),
        })
    }

    pub fn identity(n: usize, d: usize) -> Result<Self> {
        let dim = space_dim(n, d)?;
        Ok(Self {
            n,
            d,
            matrix: DMatrix::identity(dim, dim),
        })
    }

    pub fn from_diagonal(n: usize, d: usize, diagonal: &[f64]) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if diagonal.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: diagonal.len(),
            });
        }
        let mut matrix = DMatrix::zeros(dim, dim);
        for (i, &v) in diagonal.iter().enumerate() {
            matrix[(i, i)] = c(v);
        }
        Ok(Self { n, d, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `max |M - M†|` over entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let m = &self.matrix;
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation <= HERMITIAN_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    /// Largest off-diagonal modulus.
    pub fn off_diagonal_magnitude(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for j in 0..dim {
            for i in 0..dim {
                if i != j {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal_magnitude() == 0.0
    }

    /// Real parts of the diagonal of a diagonal Hermitian operator.
    pub fn real_diagonal(&self) -> Result<Vec<f64>> {
        let magnitude = self.off_diagonal_magnitude();
        if magnitude > 0.0 {
            return Err(Error::NotDiagonal { magnitude });
        }
        let diag: Vec<Complex64> = self.matrix.diagonal().iter().copied().collect();
        let deviation = diag.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(diag.iter().map(|z| z.re).collect())
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            n: self.n,
            d: self.d,
            matrix: complex_matmul(&self.matrix, &other.matrix),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            n: self.n,
            d: self.d,
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            n: self.n,
            d: self.d,
            matrix: &self.matrix - &other.matrix,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            d: self.d,
            matrix: &self.matrix * c(factor),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            d: self.d,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// `max |A - B|` over entries.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |AB - BA|` over entries.
    pub fn commutator_norm(&self, other: &Self) -> Result<f64> {
        self.matmul(other)?.max_abs_diff(&other.matmul(self)?)
    }

    pub fn apply(&self, psi: &StateVector) -> Result<DVector<Complex64>> {
        if psi.n != self.n || psi.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.dim(),
            });
        }
        Ok(&self.matrix * &psi.amplitudes)
    }

    /// `⟨ψ|M|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64> {
        let v = self.apply(psi)?;
        Ok(psi.amplitudes.dotc(&v))
    }
}

/// A unit vector in `W`, amplitudes indexed by big-endian d-ary strings.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    d: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, d: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, d, amplitudes })
    }

    /// Normalizes `amplitudes`; fails on the zero vector.
    pub fn normalized(n: usize, d: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm < 1e-300 {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(n, d, amplitudes / c(norm))
    }

    pub fn basis(n: usize, d: usize, index: usize) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, max: dim - 1 });
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = c(1.0);
        Ok(Self { n, d, amplitudes })
    }

    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        let dim = space_dim(n, d)?;
        Ok(Self {
            n,
            d,
            amplitudes: DVector::from_element(dim, c(1.0 / (dim as f64).sqrt())),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
    /// Index groups of eigenvalues equal within [`DEGENERACY_TOL`].
    pub degeneracy_groups: Vec<Vec<usize>>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, &e) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(e);
        }
        complex_matmul(&scaled, &v.adjoint())
    }

    pub fn column(&self, j: usize) -> DVector<Complex64> {
        self.eigenvectors.column(j).into_owned()
    }

    /// `E_1 - E_0`, or zero for one-dimensional spaces.
    pub fn gap(&self) -> f64 {
        match self.eigenvalues.as_slice() {
            [a, b, ..] => b - a,
            _ => 0.0,
        }
    }

    /// Distinct eigenvalue levels with multiplicities.
    pub fn levels(&self) -> Vec<(f64, usize)> {
        self.degeneracy_groups
            .iter()
            .map(|g| (self.eigenvalues[g[0]], g.len()))
            .collect()
    }
}

fn group_degenerate(values: &[f64]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if v - values[*g.last().unwrap()] <= DEGENERACY_TOL => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Eigen-decomposition of one connected block of a Hermitian matrix.
#[derive(Debug, Clone)]
struct BlockEigen {
    indices: Vec<usize>,
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

/// Connected components of the graph with an edge wherever `m[i, j] != 0`.
fn support_components(m: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let dim = m.nrows();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for j in 0..dim {
        for i in 0..dim {
            if i != j && m[(i, j)] != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..dim {
        let r = find(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    by_root.into_values().collect()
}

fn hermitian_blocks(m: &DMatrix<Complex64>) -> Vec<BlockEigen> {
    support_components(m)
        .into_iter()
        .map(|indices| {
            let k = indices.len();
            let sub = DMatrix::from_fn(k, k, |i, j| m[(indices[i], indices[j])]);
            let (values, vectors) = if k == 1 {
                (vec![sub[(0, 0)].re], DMatrix::from_element(1, 1, c(1.0)))
            } else if sub.iter().all(|z| z.im == 0.0) {
                let real = sub.map(|z| z.re);
                let eig = real.symmetric_eigen();
                (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors.map(c))
            } else {
                let eig = sub.symmetric_eigen();
                (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
            };
            BlockEigen { indices, values, vectors }
        })
        .collect()
}

/// Spectral decomposition of an arbitrary dense Hermitian matrix.
pub fn hermitian_spectral(m: &DMatrix<Complex64>) -> Result<SpectralDecomposition> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let dim = m.nrows();
    let mut deviation: f64 = 0.0;
    for i in 0..dim {
        for j in i..dim {
            deviation = deviation.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let blocks = hermitian_blocks(m);
    let mut order: Vec<(f64, usize, usize)> = Vec::with_capacity(dim);
    for (b, block) in blocks.iter().enumerate() {
        for (k, &v) in block.values.iter().enumerate() {
            order.push((v, b, k));
        }
    }
    order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut eigenvectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, &(_, b, k)) in order.iter().enumerate() {
        let block = &blocks[b];
        for (r, &row) in block.indices.iter().enumerate() {
            eigenvectors[(row, col)] = block.vectors[(r, k)];
        }
    }
    let eigenvalues: Vec<f64> = order.iter().map(|x| x.0).collect();
    let degeneracy_groups = group_degenerate(&eigenvalues);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        degeneracy_groups,
    })
}

/// Spectral decomposition of a Hermitian operator.
pub fn spectral(op: &Operator) -> Result<SpectralDecomposition> {
    hermitian_spectral(op.matrix())
}

/// Precomputed `θ ↦ e^{-iθH}` for a fixed Hermitian `H`.
#[derive(Debug, Clone)]
pub struct Propagator {
    n: usize,
    d: usize,
    kind: PropagatorKind,
}

#[derive(Debug, Clone)]
enum PropagatorKind {
    Diagonal(Vec<f64>),
    Blocks(Vec<BlockEigen>),
}

impl Propagator {
    pub fn new(h: &Operator) -> Result<Self> {
        h.ensure_hermitian()?;
        let kind = if h.is_diagonal() {
            PropagatorKind::Diagonal(h.real_diagonal()?)
        } else {
            PropagatorKind::Blocks(hermitian_blocks(h.matrix()))
        };
        Ok(Self { n: h.n, d: h.d, kind })
    }

    pub fn from_diagonal(n: usize, d: usize, diagonal: Vec<f64>) -> Result<Self> {
        let dim = space_dim(n, d)?;
        if diagonal.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: diagonal.len(),
            });
        }
        Ok(Self {
            n,
            d,
            kind: PropagatorKind::Diagonal(diagonal),
        })
    }

    /// `e^{-iθH} ψ`.
    pub fn apply(&self, theta: f64, psi: &StateVector) -> Result<StateVector> {
        if psi.n != self.n || psi.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: space_dim(self.n, self.d)?,
                found: psi.dim(),
            });
        }
        let mut out = psi.amplitudes.clone();
        self.apply_in_place(theta, &mut out);
        Ok(StateVector {
            n: self.n,
            d: self.d,
            amplitudes: out,
        })
    }

    fn apply_in_place(&self, theta: f64, v: &mut DVector<Complex64>) {
        match &self.kind {
            PropagatorKind::Diagonal(diag) => {
                for (z, &e) in v.iter_mut().zip(diag) {
                    *z *= Complex64::from_polar(1.0, -theta * e);
                }
            }
            PropagatorKind::Blocks(blocks) => {
                for block in blocks {
                    let local = DVector::from_iterator(
                        block.indices.len(),
                        block.indices.iter().map(|&i| v[i]),
                    );
                    let mut coeffs = block.vectors.ad_mul(&local);
                    for (z, &e) in coeffs.iter_mut().zip(&block.values) {
                        *z *= Complex64::from_polar(1.0, -theta * e);
                    }
                    let back = &block.vectors * coeffs;
                    for (k, &i) in block.indices.iter().enumerate() {
                        v[i] = back[k];
                    }
                }
            }
        }
    }
}

/// `e^{-iθH} ψ` via spectral decomposition (elementwise phases for diagonal `H`).
pub fn evolve(h: &Operator, theta: f64, psi: &StateVector) -> Result<StateVector> {
    Propagator::new(h)?.apply(theta, psi)
}

/// Matrix of the site permutation `σ`: the string `x` maps to `y` with `y_{σ(i)} = x_i`.
pub fn permutation_rep(n: usize, d: usize, sigma: &Permutation) -> Result<Operator> {
    let images = permute_strings(n, d, sigma)?;
    let dim = images.len();
    let mut m = DMatrix::zeros(dim, dim);
    for (x, &y) in images.iter().enumerate() {
        m[(y, x)] = c(1.0);
    }
    Operator::new(n, d, m)
}

/// `J_k = Σ_{i<k} rep((i k))`, with `k` 1-based.
pub fn yjm(n: usize, d: usize, k: usize) -> Result<Operator> {
    GroupAlgebraElement::yjm(n, k)?.to_operator(d)
}

/// `I ⊗ … ⊗ local ⊗ … ⊗ I` with `local` on site `j` (1-based).
pub fn site_lift(n: usize, d: usize, j: usize, local: &DMatrix<Complex64>) -> Result<Operator> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    if local.nrows() != d || local.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if local.nrows() != d { local.nrows() } else { local.ncols() },
        });
    }
    let dim = space_dim(n, d)?;
    let stride = d.pow((n - j) as u32);
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let digit = (x / stride) % d;
        let base = x - digit * stride;
        for a in 0..d {
            let entry = local[(a, digit)];
            if entry != c(0.0) {
                m[(base + a * stride, x)] = entry;
            }
        }
    }
    Operator::new(n, d, m)
}

/// `Σ_j site_lift(j, local)`.
pub fn sum_of_site_lifts(n: usize, d: usize, local: &DMatrix<Complex64>) -> Result<Operator> {
    let mut total = Operator::zeros(n, d)?;
    for j in 1..=n {
        total = total.add(&site_lift(n, d, j, local)?)?;
    }
    Ok(total)
}

/// The diagonal action `U^{⊗n}` of a single-site unitary.
pub fn diagonal_action(n: usize, d: usize, u: &DMatrix<Complex64>) -> Result<Operator> {
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: u.nrows(),
        });
    }
    space_dim(n, d)?;
    let mut m = u.clone();
    for _ in 1..n {
        m = m.kronecker(u);
    }
    Operator::new(n, d, m)
}

/// Perron–Frobenius structure of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PfReport {
    /// All entries real and `≥ -1e-12`.
    pub nonnegative: bool,
    /// Support digraph (edges where `|m_ij| > 1e-12`) is strongly connected.
    pub irreducible: bool,
    /// Most negative real part among off-diagonal entries (0 if none).
    pub min_offdiag_shift: f64,
}

pub fn pf_check(op: &Operator) -> PfReport {
    pf_check_matrix(op.matrix())
}

pub fn pf_check_matrix(m: &DMatrix<Complex64>) -> PfReport {
    let dim = m.nrows();
    let nonnegative = m.iter().all(|z| z.im.abs() <= PF_ZERO_TOL && z.re >= -PF_ZERO_TOL);
    let mut min_offdiag: f64 = 0.0;
    let mut forward: Vec<Vec<usize>> = vec![Vec::new(); dim];
    let mut backward: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for j in 0..dim {
        for i in 0..dim {
            let z = m[(i, j)];
            if i != j {
                min_offdiag = min_offdiag.min(z.re);
                if z.norm() > PF_ZERO_TOL {
                    forward[i].push(j);
                    backward[j].push(i);
                }
            }
        }
    }
    let reaches_all = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; dim];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    let irreducible = dim <= 1 || (reaches_all(&forward) && reaches_all(&backward));
    PfReport {
        nonnegative,
        irreducible,
        min_offdiag_shift: min_offdiag,
    }
}

/// Haar-random unitary via QR of a complex Ginibre matrix with phase correction.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { c(1.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Random Hermitian matrix with standard-normal entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    (&g + g.adjoint()) * c(0.5)
}

/// Random unit vector.
pub fn random_state<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<StateVector> {
    let dim = space_dim(n, d)?;
    let v = DVector::from_fn(dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    StateVector::normalized(n, d, v)
}
