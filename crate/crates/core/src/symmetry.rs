//! Classical symmetry groups acting on d-ary strings: induced index
//! permutations, orbits, orbit counts and orbit-invariant vectors.

use std::collections::VecDeque;

use nalgebra::DVector;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{digits, index_of, permute_strings, space_dim};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tensor::{Operator, StateVector};

/// The index permutation induced by permuting sites.
pub fn site_permutation_action(n: usize, d: usize, sigma: &Permutation) -> Result<Vec<usize>> {
    permute_strings(n, d, sigma)
}

/// The index permutation relabeling every digit `a` as `relabel[a]` on all sites.
pub fn digit_relabel_action(n: usize, d: usize, relabel: &Permutation) -> Result<Vec<usize>> {
    if relabel.degree() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: relabel.degree(),
        });
    }
    let dim = space_dim(n, d)?;
    Ok((0..dim)
        .map(|x| {
            let ys: Vec<usize> = digits(x, n, d).into_iter().map(|a| relabel.apply(a)).collect();
            index_of(&ys, d)
        })
        .collect())
}

/// A group given by generating permutations of `{0, .., degree-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for g in &generators {
            if g.len() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: g.len(),
                });
            }
            Permutation::new(g.clone())?;
        }
        Ok(Self { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
        }
    }

    /// The group on strings generated by the given site permutations.
    pub fn from_site_permutations(n: usize, d: usize, sites: &[Permutation]) -> Result<Self> {
        let degree = space_dim(n, d)?;
        let generators = sites
            .iter()
            .map(|s| site_permutation_action(n, d, s))
            .collect::<Result<_>>()?;
        Self::new(degree, generators)
    }

    /// The full site-permutation group `S_n`, generated by adjacent transpositions.
    pub fn symmetric_on_sites(n: usize, d: usize) -> Result<Self> {
        let gens: Vec<Permutation> = (0..n.saturating_sub(1))
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect();
        Self::from_site_permutations(n, d, &gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }
}

/// Disjoint orbits covering `{0, .., degree-1}`, ordered by smallest element,
/// each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSet {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitSet {
    pub fn degree(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    /// `orbit_of[x]` is the position of the orbit containing `x`.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree()];
        for (k, orbit) in self.orbits.iter().enumerate() {
            for &x in orbit {
                out[x] = k;
            }
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Orbits by breadth-first closure under the generators.
pub fn orbits(group: &PermGroup) -> OrbitSet {
    let mut seen = vec![false; group.degree];
    let mut out = Vec::new();
    for start in 0..group.degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in &group.generators {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    OrbitSet { orbits: out }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCount {
    /// Number of orbits.
    pub m: usize,
    /// `Σ_x 1/|G·x|` evaluated exactly; equals `m`.
    #[serde(skip)]
    pub reciprocal_sum: BigRational,
    #[serde(rename = "reciprocal_sum")]
    pub reciprocal_sum_f64: f64,
}

impl OrbitCount {
    pub fn is_consistent(&self) -> bool {
        self.reciprocal_sum == BigRational::from_integer(BigInt::from(self.m))
    }
}

pub fn orbit_count(orbits: &OrbitSet) -> OrbitCount {
    let index = orbits.orbit_index();
    let sizes = orbits.sizes();
    let mut sum = BigRational::zero();
    for &k in &index {
        sum += BigRational::new(BigInt::from(1), BigInt::from(sizes[k]));
    }
    OrbitCount {
        m: orbits.orbits.len(),
        reciprocal_sum_f64: sum.to_f64().unwrap_or(f64::NAN),
        reciprocal_sum: sum,
    }
}

/// `ξ_j = |O_j|^{-1/2} Σ_{s ∈ O_j} |s⟩` for every orbit.
pub fn invariant_vectors(orbits: &OrbitSet, n: usize, d: usize) -> Result<Vec<StateVector>> {
    let dim = space_dim(n, d)?;
    if orbits.degree() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: orbits.degree(),
        });
    }
    orbits
        .orbits
        .iter()
        .map(|orbit| {
            let amp = Complex64::new(1.0 / (orbit.len() as f64).sqrt(), 0.0);
            let mut v = DVector::zeros(dim);
            for &x in orbit {
                v[x] = amp;
            }
            StateVector::new(n, d, v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitInvarianceReport {
    /// `max - min` probability on each orbit.
    pub spreads: Vec<f64>,
    pub worst_orbit: usize,
    pub worst_spread: f64,
    pub pass: bool,
}

pub fn orbit_invariance_check(probabilities: &[f64], orbits: &OrbitSet, tol: f64) -> Result<OrbitInvarianceReport> {
    if probabilities.len() != orbits.degree() {
        return Err(Error::DimensionMismatch {
            expected: orbits.degree(),
            found: probabilities.len(),
        });
    }
    let spreads: Vec<f64> = orbits
        .orbits
        .iter()
        .map(|orbit| {
            let (lo, hi) = orbit.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(probabilities[x]), hi.max(probabilities[x]))
            });
            hi - lo
        })
        .collect();
    let (worst_orbit, worst_spread) = spreads
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (k, s)| if s > best.1 { (k, s) } else { best });
    Ok(OrbitInvarianceReport {
        pass: worst_spread <= tol,
        spreads,
        worst_orbit,
        worst_spread,
    })
}

/// Which symmetry conditions an index permutation meets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorVerdict {
    /// `F(g·x) = F(x)`, equivalently `[g, H_P] = 0` for diagonal `H_P`.
    pub preserves_objective: bool,
    /// `[g, H_M] = 0`.
    pub commutes_with_mixer: bool,
}

impl GeneratorVerdict {
    /// Invariance of both Hamiltonians.
    pub fn commutes_with_both(&self) -> bool {
        self.preserves_objective && self.commutes_with_mixer
    }
}

pub fn check_generator(generator: &[usize], problem_values: &[f64], mixer: &Operator, tol: f64) -> Result<GeneratorVerdict> {
    if generator.len() != problem_values.len() || generator.len() != mixer.dim() {
        return Err(Error::DimensionMismatch {
            expected: mixer.dim(),
            found: generator.len(),
        });
    }
    let preserves_objective = generator
        .iter()
        .enumerate()
        .all(|(x, &y)| (problem_values[x] - problem_values[y]).abs() <= tol);
    // g M g^{-1} = M  ⇔  M[g(i), g(j)] = M[i, j]
    let m = mixer.matrix();
    let dim = mixer.dim();
    let mut commutes_with_mixer = true;
    'outer: for j in 0..dim {
        for i in 0..dim {
            if (m[(generator[i], generator[j])] - m[(i, j)]).norm() > tol {
                commutes_with_mixer = false;
                break 'outer;
            }
        }
    }
    Ok(GeneratorVerdict {
        preserves_objective,
        commutes_with_mixer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::standard_mixer;
    use crate::schur_weyl::range_basis;
    use crate::tensor::{complex_matmul, max_abs};
    use nalgebra::DMatrix;

    #[test]
    fn induced_actions() {
        let id = site_permutation_action(3, 2, &Permutation::identity(3)).unwrap();
        assert_eq!(id, (0..8).collect::<Vec<_>>());
        let swap = site_permutation_action(2, 2, &Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(swap, vec![0, 2, 1, 3]);
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        let g = site_permutation_action(3, 2, &cycle).unwrap();
        let g3: Vec<usize> = (0..8).map(|x| g[g[g[x]]]).collect();
        assert_eq!(g3, (0..8).collect::<Vec<_>>());
        assert_ne!(g.iter().map(|&x| g[x]).collect::<Vec<_>>(), (0..8).collect::<Vec<_>>());
        let flip = digit_relabel_action(2, 2, &Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(flip, vec![3, 2, 1, 0]);
    }

    #[test]
    fn orbit_examples() {
        let s3 = PermGroup::symmetric_on_sites(3, 2).unwrap();
        let o = orbits(&s3);
        assert_eq!(o.sizes(), vec![1, 3, 3, 1]);
        let count = orbit_count(&o);
        assert_eq!(count.m, 4);
        assert!(count.is_consistent());

        let o = orbits(&PermGroup::trivial(9));
        assert_eq!(o.orbits.len(), 9);
        assert_eq!(orbit_count(&o).m, 9);

        let swap = PermGroup::from_site_permutations(2, 3, &[Permutation::transposition(2, 0, 1)]).unwrap();
        let o = orbits(&swap);
        assert_eq!(o.orbits.len(), 6);
        assert_eq!(o.sizes().iter().filter(|&&s| s == 1).count(), 3);

        let full = PermGroup::new(4, vec![vec![1, 2, 3, 0]]).unwrap();
        let count = orbit_count(&orbits(&full));
        assert_eq!(count.m, 1);
        assert!(count.is_consistent());
        assert!(PermGroup::new(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn generator_order_is_irrelevant() {
        let gens = vec![
            Permutation::transposition(4, 0, 1),
            Permutation::new(vec![1, 2, 3, 0]).unwrap(),
        ];
        let a = orbits(&PermGroup::from_site_permutations(4, 2, &gens).unwrap());
        let rev: Vec<_> = gens.into_iter().rev().collect();
        let b = orbits(&PermGroup::from_site_permutations(4, 2, &rev).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn invariant_vector_examples() {
        let o = OrbitSet {
            orbits: vec![vec![0], vec![1, 2], vec![3]],
        };
        let vs = invariant_vectors(&o, 2, 2).unwrap();
        assert_eq!(vs[0], StateVector::basis(2, 2, 0).unwrap());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((vs[1].amplitudes()[1].re - r).abs() < 1e-15);
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b).re - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn invariance_checks() {
        let o = orbits(&PermGroup::symmetric_on_sites(3, 2).unwrap());
        let uniform = vec![0.125; 8];
        assert!(orbit_invariance_check(&uniform, &o, 0.0).unwrap().pass);
        let mut bent = uniform.clone();
        bent[1] += 0.01;
        bent[2] -= 0.01;
        let r = orbit_invariance_check(&bent, &o, 1e-10).unwrap();
        assert!(!r.pass);
        assert_eq!(r.worst_orbit, 1);
    }

    #[test]
    fn invariant_span_is_preserved() {
        let (n, d) = (3, 2);
        let o = orbits(&PermGroup::symmetric_on_sites(n, d).unwrap());
        let vs = invariant_vectors(&o, n, d).unwrap();
        let dim = 8;
        let mut proj = DMatrix::<Complex64>::zeros(dim, dim);
        for v in &vs {
            proj += v.amplitudes() * v.amplitudes().adjoint();
        }
        let hp: Vec<f64> = (0..dim).map(|x| (digits(x, n, d).iter().sum::<usize>() as f64 - 1.0).powi(2)).collect();
        let hp = Operator::from_diagonal(n, d, &hp).unwrap();
        for h in [hp, standard_mixer(n, d).unwrap()] {
            let hp = complex_matmul(h.matrix(), &proj);
            let leak = &hp - complex_matmul(&proj, &hp);
            assert!(max_abs(&leak) <= 1e-9);
        }
        let proj_op = Operator::new(n, d, proj).unwrap();
        assert_eq!(range_basis(&proj_op).unwrap().ncols(), 4);
    }

    #[test]
    fn generator_verdicts() {
        let (n, d) = (2, 2);
        let mixer = standard_mixer(n, d).unwrap();
        let swap = site_permutation_action(n, d, &Permutation::transposition(2, 0, 1)).unwrap();
        let sym = vec![0.0, 1.0, 1.0, 2.0];
        let v = check_generator(&swap, &sym, &mixer, 1e-12).unwrap();
        assert!(v.commutes_with_both());
        let asym = vec![0.0, 1.0, 2.0, 3.0];
        let v = check_generator(&swap, &asym, &mixer, 1e-12).unwrap();
        assert!(!v.preserves_objective && v.commutes_with_mixer);
    }
}
