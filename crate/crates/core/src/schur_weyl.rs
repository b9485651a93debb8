//! Schur–Weyl sectors of `W = (C^d)^{⊗n}`.
//!
//! Each partition `λ ⊢ n` with at most `d` rows labels an isotypic block
//! `W_λ ≅ S_λ ⊗ V_λ`. The projector onto it is the character average
//! `(dim S_λ / n!) Σ_σ χ_λ(σ) rep(σ)`, summed over all of `S_n`, so
//! constructions that need projectors refuse `n > 8`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{index_of, permute_strings, space_dim};
use crate::combinatorics::{
    canonical_tableau, character, dim_symmetric_irrep, dim_unitary_irrep, factorial, partitions, Partition, Tableau,
};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::perm::Permutation;
use crate::tensor::{complex_matmul, hermitian_spectral, max_abs, Operator, StateVector};

/// Largest `n` for which full `S_n` sums are attempted.
pub const MAX_SUMMATION_SITES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectorEntry {
    pub shape: Partition,
    pub dim_s: u64,
    pub dim_v: u64,
    pub product: u64,
}

/// Dimensions of every sector of `(C^d)^{⊗n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectorTable {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<SectorEntry>,
    pub total: u64,
}

impl SectorTable {
    pub fn get(&self, shape: &Partition) -> Option<&SectorEntry> {
        self.entries.iter().find(|e| &e.shape == shape)
    }
}

/// Sector dimensions with the `Σ dim S_λ · dim V_λ = d^n` check.
pub fn sector_table(n: usize, d: usize) -> Result<SectorTable> {
    let dim = space_dim(n, d)?;
    let entries: Vec<SectorEntry> = partitions(n, d)
        .into_iter()
        .map(|shape| {
            let dim_s = dim_symmetric_irrep(&shape);
            let dim_v = dim_unitary_irrep(&shape, d)?;
            Ok(SectorEntry {
                shape,
                dim_s,
                dim_v,
                product: dim_s * dim_v,
            })
        })
        .collect::<Result<_>>()?;
    let total = entries.iter().map(|e| e.product).sum();
    if total != dim as u64 {
        return Err(Error::ConstructionFailure(format!(
            "sector dimensions sum to {total}, expected {dim}"
        )));
    }
    Ok(SectorTable { n, d, entries, total })
}

fn check_summable(n: usize) -> Result<()> {
    if n > MAX_SUMMATION_SITES {
        Err(Error::TooManySites {
            n,
            limit: MAX_SUMMATION_SITES,
        })
    } else {
        Ok(())
    }
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

/// Isotypic projector `P_λ` by the character formula.
pub fn sector_projector(shape: &Partition, n: usize, d: usize) -> Result<Operator> {
    check_admissible(shape, n, d)?;
    check_summable(n)?;
    let dim = space_dim(n, d)?;
    let scale = dim_symmetric_irrep(shape) as f64 / factorial(n) as f64;
    let mut chars: HashMap<Partition, i64> = HashMap::new();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for sigma in Permutation::all(n) {
        let ct = sigma.cycle_type();
        let chi = match chars.get(&ct) {
            Some(&v) => v,
            None => {
                let v = character(shape, &ct)?;
                chars.insert(ct, v);
                v
            }
        };
        if chi == 0 {
            continue;
        }
        let coeff = Complex64::new(scale * chi as f64, 0.0);
        for (x, y) in permute_strings(n, d, &sigma)?.into_iter().enumerate() {
            m[(y, x)] += coeff;
        }
    }
    Operator::new(n, d, m)
}

/// Projectors for every admissible shape, in partition order.
pub fn sector_projectors(n: usize, d: usize) -> Result<Vec<(Partition, Operator)>> {
    partitions(n, d)
        .into_iter()
        .map(|shape| {
            let p = sector_projector(&shape, n, d)?;
            Ok((shape, p))
        })
        .collect()
}

/// Sum of all permutations of the given 0-based points, as elements of `S_n`.
fn set_symmetrizer(n: usize, points: &[usize], signed: bool) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(n);
    for local in Permutation::all(points.len()) {
        let mut images: Vec<usize> = (0..n).collect();
        for (a, &p) in points.iter().enumerate() {
            images[p] = points[local.apply(a)];
        }
        let coeff = if signed { local.sign() as f64 } else { 1.0 };
        out.add_term(Permutation::new(images).expect("relabeled permutation"), coeff);
    }
    out
}

/// Young symmetrizer `c_T = R_T · C_T`: the row symmetrizer applied after the
/// column antisymmetrizer. Tableau entry `v` refers to site `v`.
pub fn young_symmetrizer_element(tableau: &Tableau) -> Result<GroupAlgebraElement> {
    if !tableau.is_standard() {
        return Err(Error::InvalidSpec(format!("tableau {tableau} is not standard")));
    }
    let shape = tableau.shape();
    let n = shape.size();
    check_summable(n)?;
    let mut rows = GroupAlgebraElement::identity(n);
    for row in tableau.rows() {
        let points: Vec<usize> = row.iter().map(|v| v - 1).collect();
        rows = rows.mul(&set_symmetrizer(n, &points, false));
    }
    let mut cols = GroupAlgebraElement::identity(n);
    for c in 1..=shape.row_len(1) {
        let points: Vec<usize> = (1..=shape.col_len(c))
            .map(|r| tableau.rows()[r - 1][c - 1] - 1)
            .collect();
        cols = cols.mul(&set_symmetrizer(n, &points, true));
    }
    Ok(rows.mul(&cols))
}

pub fn young_symmetrizer(tableau: &Tableau, n: usize, d: usize) -> Result<Operator> {
    if tableau.shape().size() != n {
        return Err(Error::SizeMismatch(format!("tableau {tableau} does not have {n} boxes")));
    }
    young_symmetrizer_element(tableau)?.to_operator(d)
}

/// A state attached to a sector.
#[derive(Debug, Clone)]
pub struct SectorState {
    pub shape: Partition,
    pub vector: StateVector,
}

/// The string placing digit `r - 1` on every site whose box in the row-filling
/// tableau lies in row `r`: the lowest `τ`-weight filling.
pub fn lowest_weight_string(shape: &Partition) -> Vec<usize> {
    let mut xs = Vec::with_capacity(shape.size());
    for (r, &len) in shape.parts().iter().enumerate() {
        xs.extend(std::iter::repeat_n(r, len));
    }
    xs
}

/// `ξ_λ`: the Young symmetrizer of the row-filling tableau applied to the
/// lowest-weight base tensor, normalized.
pub fn ground_state(shape: &Partition, n: usize, d: usize) -> Result<SectorState> {
    check_admissible(shape, n, d)?;
    let dim = space_dim(n, d)?;
    let element = young_symmetrizer_element(&canonical_tableau(shape))?;
    let mut base = DVector::<Complex64>::zeros(dim);
    base[index_of(&lowest_weight_string(shape), d)] = Complex64::new(1.0, 0.0);
    let image = element.apply(d, &base)?;
    if image.norm() < 1e-12 {
        return Err(Error::ConstructionFailure(format!(
            "Young symmetrizer annihilated the base tensor for {shape}"
        )));
    }
    Ok(SectorState {
        shape: shape.clone(),
        vector: StateVector::normalized(n, d, image)?,
    })
}

/// A sector together with its projector and an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct Sector {
    pub shape: Partition,
    pub projector: Operator,
    /// Orthonormal columns spanning `W_λ`.
    pub basis: DMatrix<Complex64>,
}

impl Sector {
    pub fn new(shape: &Partition, n: usize, d: usize) -> Result<Self> {
        let projector = sector_projector(shape, n, d)?;
        let basis = range_basis(&projector)?;
        Ok(Self {
            shape: shape.clone(),
            projector,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `‖(I - P_λ) ψ‖`.
    pub fn leakage(&self, psi: &StateVector) -> Result<f64> {
        let inside = self.projector.apply(psi)?;
        Ok((psi.amplitudes() - inside).norm())
    }

    /// `B† M B` for the sector basis `B`.
    pub fn compress(&self, op: &Operator) -> DMatrix<Complex64> {
        let b = &self.basis;
        complex_matmul(&b.adjoint(), &complex_matmul(op.matrix(), b))
    }

    /// `B† diag(h) B`.
    pub fn compress_diagonal(&self, diagonal: &[f64]) -> DMatrix<Complex64> {
        let b = &self.basis;
        let mut scaled = b.clone();
        for (i, &h) in diagonal.iter().enumerate() {
            scaled.row_mut(i).scale_mut(h);
        }
        complex_matmul(&b.adjoint(), &scaled)
    }

    /// Eigenvalues of `op` restricted to the sector, ascending.
    pub fn restricted_eigenvalues(&self, op: &Operator) -> Result<Vec<f64>> {
        Ok(hermitian_spectral(&self.compress(op))?.eigenvalues)
    }
}

/// Orthonormal basis of the range of a Hermitian projector, taken from its
/// eigenvectors; every eigenvalue must be within `1e-9` of 0 or 1.
pub fn range_basis(projector: &Operator) -> Result<DMatrix<Complex64>> {
    let spec = hermitian_spectral(projector.matrix())?;
    if let Some(bad) = spec
        .eigenvalues
        .iter()
        .find(|&&e| e.abs() > 1e-9 && (e - 1.0).abs() > 1e-9)
    {
        return Err(Error::ConstructionFailure(format!(
            "projector has eigenvalue {bad}, expected 0 or 1"
        )));
    }
    let cols: Vec<usize> = (0..spec.eigenvalues.len()).filter(|&j| spec.eigenvalues[j] > 0.5).collect();
    Ok(DMatrix::from_fn(projector.dim(), cols.len(), |i, k| {
        spec.eigenvectors[(i, cols[k])]
    }))
}

/// `‖(I - P_λ) H P_λ‖` (max entry) for every sector.
pub fn sector_preservation_report(h: &Operator, n: usize, d: usize) -> Result<BTreeMap<Partition, f64>> {
    if h.n() != n || h.d() != d {
        return Err(Error::DimensionMismatch {
            expected: space_dim(n, d)?,
            found: h.dim(),
        });
    }
    let projectors = sector_projectors(n, d)?;
    leakage_with(h, &projectors)
}

/// Same as [`sector_preservation_report`] with precomputed projectors.
pub fn leakage_with(h: &Operator, projectors: &[(Partition, Operator)]) -> Result<BTreeMap<Partition, f64>> {
    let mut out = BTreeMap::new();
    for (shape, p) in projectors {
        let hp = complex_matmul(h.matrix(), p.matrix());
        let php = complex_matmul(p.matrix(), &hp);
        out.insert(shape.clone(), max_abs(&(hp - php)));
    }
    Ok(out)
}
