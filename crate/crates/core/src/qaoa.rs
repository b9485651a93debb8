//! The alternating-operator chain
//! `e^{-iβ_1 H_M} e^{-iγ_1 H_P} ⋯ e^{-iβ_p H_M} e^{-iγ_p H_P} ξ`,
//! exact expectations, sampling, parameter search, and full-space and
//! sector-restricted runs.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions, Partition};
use crate::error::{Error, Result};
use crate::hamiltonians::{problem_hamiltonian, reduced_mixer, standard_mixer, ProblemSpec};
use crate::optimizer::{minimize, SearchOptions, TraceEntry};
use crate::perm::Permutation;
use crate::schur_weyl::{ground_state, Sector};
use crate::symmetry::site_permutation_action;
use crate::tensor::{hermitian_spectral, pf_check, spectral, Operator, PfReport, Propagator, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::SizeMismatch(format!(
                "{} gammas but {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    /// `[γ_1..γ_p, β_1..β_p]`.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn from_flat(flat: &[f64]) -> Self {
        let p = flat.len() / 2;
        Self {
            gammas: flat[..p].to_vec(),
            betas: flat[p..].to_vec(),
        }
    }

    /// Linear ramp `γ_k = (k/p)Δ`, `β_k = (1 - k/p)Δ`.
    pub fn interpolation(p: usize, delta: f64) -> Self {
        let ramp = |k: usize| k as f64 / p as f64;
        Self {
            gammas: (1..=p).map(|k| ramp(k) * delta).collect(),
            betas: (1..=p).map(|k| (1.0 - ramp(k)) * delta).collect(),
        }
    }

    /// Search box: `γ ∈ [0, 2π)`, `β ∈ [0, π)`.
    pub fn domain(p: usize) -> Vec<(f64, f64)> {
        let mut d = vec![(0.0, TAU); p];
        d.extend(std::iter::repeat_n((0.0, PI), p));
        d
    }
}

/// Which exponential of a layer touches the state first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainOrder {
    /// Rightmost factor first: layer `p` down to `1`, problem before mixer.
    #[default]
    RightmostFirst,
    /// Layer `p` down to `1`, mixer before problem.
    MixerFirst,
}

/// A fixed `(H_P, H_M, ξ)` triple with precomputed propagators.
#[derive(Debug, Clone)]
pub struct Qaoa {
    problem: Vec<f64>,
    problem_prop: Propagator,
    mixer_prop: Propagator,
    initial: StateVector,
    order: ChainOrder,
}

impl Qaoa {
    /// `h_p` must be diagonal; `h_m` any Hermitian operator on the same space.
    pub fn new(h_p: &Operator, h_m: &Operator, initial: StateVector, order: ChainOrder) -> Result<Self> {
        let problem = h_p.real_diagonal()?;
        if h_m.n() != h_p.n() || h_m.d() != h_p.d() {
            return Err(Error::DimensionMismatch {
                expected: h_p.dim(),
                found: h_m.dim(),
            });
        }
        if initial.n() != h_p.n() || initial.d() != h_p.d() {
            return Err(Error::DimensionMismatch {
                expected: h_p.dim(),
                found: initial.dim(),
            });
        }
        Ok(Self {
            problem_prop: Propagator::from_diagonal(h_p.n(), h_p.d(), problem.clone())?,
            problem,
            mixer_prop: Propagator::new(h_m)?,
            initial,
            order,
        })
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn problem_diagonal(&self) -> &[f64] {
        &self.problem
    }

    pub fn state(&self, params: &QaoaParams) -> Result<StateVector> {
        apply_chain(&self.problem_prop, &self.mixer_prop, &self.initial, params, self.order)
    }

    pub fn expectation(&self, params: &QaoaParams) -> Result<f64> {
        Ok(diagonal_expectation(&self.state(params)?, &self.problem))
    }

    /// Optimizes the angles within `options.budget` expectation evaluations.
    pub fn optimize(&self, p: usize, options: &SearchOptions) -> Result<(QaoaParams, QaoaResult)> {
        let domain = QaoaParams::domain(p);
        let outcome = minimize(
            |x| {
                self.expectation(&QaoaParams::from_flat(x))
                    .expect("dimensions fixed at construction")
            },
            &domain,
            options,
        );
        let params = QaoaParams::from_flat(&outcome.best_point);
        let state = self.state(&params)?;
        let result = QaoaResult::from_state(state, &self.problem, outcome.trace, options.seed);
        Ok((params, result))
    }

    /// Expectation at the interpolation schedule for each depth in `depths`.
    pub fn p_sweep(&self, depths: &[usize], delta: f64) -> Result<Vec<(usize, f64)>> {
        depths
            .iter()
            .map(|&p| Ok((p, self.expectation(&QaoaParams::interpolation(p, delta))?)))
            .collect()
    }
}

fn apply_chain(
    problem: &Propagator,
    mixer: &Propagator,
    xi: &StateVector,
    params: &QaoaParams,
    order: ChainOrder,
) -> Result<StateVector> {
    let mut psi = xi.clone();
    for k in (0..params.p()).rev() {
        let (g, b) = (params.gammas[k], params.betas[k]);
        psi = match order {
            ChainOrder::RightmostFirst => mixer.apply(b, &problem.apply(g, &psi)?)?,
            ChainOrder::MixerFirst => problem.apply(g, &mixer.apply(b, &psi)?)?,
        };
    }
    Ok(psi)
}

/// The chain applied to `xi`, rightmost exponential first.
pub fn qaoa_state(h_p: &Operator, h_m: &Operator, xi: &StateVector, params: &QaoaParams) -> Result<StateVector> {
    qaoa_state_ordered(h_p, h_m, xi, params, ChainOrder::RightmostFirst)
}

pub fn qaoa_state_ordered(
    h_p: &Operator,
    h_m: &Operator,
    xi: &StateVector,
    params: &QaoaParams,
    order: ChainOrder,
) -> Result<StateVector> {
    for op in [h_p, h_m] {
        if op.n() != xi.n() || op.d() != xi.d() {
            return Err(Error::DimensionMismatch {
                expected: xi.dim(),
                found: op.dim(),
            });
        }
    }
    apply_chain(&Propagator::new(h_p)?, &Propagator::new(h_m)?, xi, params, order)
}

fn diagonal_expectation(psi: &StateVector, diagonal: &[f64]) -> f64 {
    psi.amplitudes().iter().zip(diagonal).map(|(z, h)| z.norm_sqr() * h).sum()
}

/// `Σ_x |ψ_x|² H_xx` for diagonal `H`.
pub fn expectation(psi: &StateVector, h: &Operator) -> Result<f64> {
    if h.n() != psi.n() || h.d() != psi.d() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: h.dim(),
        });
    }
    Ok(diagonal_expectation(psi, &h.real_diagonal()?))
}

/// Seeded multinomial draw of `shots` standard-basis measurements.
pub fn sample(psi: &StateVector, shots: usize, seed: u64) -> Result<BTreeMap<usize, u64>> {
    if shots == 0 {
        return Err(Error::InvalidSpec("shots must be positive".into()));
    }
    let dist = WeightedIndex::new(psi.probabilities())
        .map_err(|e| Error::InvalidSpec(format!("cannot sample state: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng)).or_insert(0) += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, Serialize)]
pub struct QaoaResult {
    #[serde(skip)]
    pub final_state: StateVector,
    pub expectation: f64,
    pub probabilities: Vec<f64>,
    /// Index of the most probable string.
    pub best_string: usize,
    pub optimizer_trace: Vec<TraceEntry>,
    pub seed: u64,
}

impl QaoaResult {
    fn from_state(final_state: StateVector, diagonal: &[f64], optimizer_trace: Vec<TraceEntry>, seed: u64) -> Self {
        let probabilities = final_state.probabilities();
        let best_string = probabilities
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &q)| if q > best.1 { (i, q) } else { best })
            .0;
        Self {
            expectation: diagonal_expectation(&final_state, diagonal),
            probabilities,
            best_string,
            final_state,
            optimizer_trace,
            seed,
        }
    }

    pub fn best_probability(&self) -> f64 {
        self.probabilities[self.best_string]
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    pub search: SearchOptions,
    pub chain_order: ChainOrder,
}

impl OptimizeOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            search: SearchOptions::new(budget, seed),
            chain_order: ChainOrder::default(),
        }
    }
}

/// Derivative-free angle search for `(H_P, H_M, ξ)` at depth `p`.
pub fn optimize(
    h_p: &Operator,
    h_m: &Operator,
    xi: &StateVector,
    p: usize,
    options: &OptimizeOptions,
) -> Result<(QaoaParams, QaoaResult)> {
    Qaoa::new(h_p, h_m, xi.clone(), options.chain_order)?.optimize(p, &options.search)
}

/// Full-space run with the standard mixer and its uniform ground state.
#[derive(Debug, Clone, Serialize)]
pub struct FullRunReport {
    pub global_min: f64,
    pub params: QaoaParams,
    pub result: QaoaResult,
}

/// Engine for the standard mixer started from the uniform superposition.
pub fn full_engine(spec: &ProblemSpec, order: ChainOrder) -> Result<Qaoa> {
    let h_p = problem_hamiltonian(spec)?;
    let h_m = standard_mixer(spec.n(), spec.d())?;
    Qaoa::new(&h_p, &h_m, StateVector::uniform(spec.n(), spec.d())?, order)
}

/// Engine for the sector mixer started from `ξ_λ`.
pub fn reduced_engine(shape: &Partition, spec: &ProblemSpec, epsilon: f64, order: ChainOrder) -> Result<Qaoa> {
    let (n, d) = (spec.n(), spec.d());
    let h_m = reduced_mixer(shape, n, d, epsilon)?;
    Qaoa::new(&problem_hamiltonian(spec)?, &h_m, ground_state(shape, n, d)?.vector, order)
}

pub fn run_full(spec: &ProblemSpec, p: usize, options: &OptimizeOptions) -> Result<FullRunReport> {
    let (params, result) = full_engine(spec, options.chain_order)?.optimize(p, &options.search)?;
    Ok(FullRunReport {
        global_min: spec.values().into_iter().fold(f64::INFINITY, f64::min),
        params,
        result,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorRunReport {
    pub shape: Partition,
    /// Smallest eigenvalue of `H_P` compressed to the sector.
    pub sector_min: f64,
    pub global_min: f64,
    pub achieved: f64,
    /// `‖(I - P_λ) ψ_final‖`.
    pub leakage: f64,
    pub epsilon: f64,
    /// Lowest spectral gap of the sector mixer.
    pub mixer_gap: f64,
    /// PF structure of `c·I - H_M` with `c` the largest diagonal entry of `H_M`.
    pub pf: PfReport,
    pub params: QaoaParams,
    pub result: QaoaResult,
}

/// Minimum eigenvalue of a diagonal Hamiltonian restricted to a sector.
pub fn sector_minimum(sector: &Sector, diagonal: &[f64]) -> Result<f64> {
    let spec = hermitian_spectral(&sector.compress_diagonal(diagonal))?;
    spec.eigenvalues
        .first()
        .copied()
        .ok_or_else(|| Error::ConstructionFailure(format!("sector {} is empty", sector.shape)))
}

/// The PF structure relevant to a ground state of `h`: that of `c·I - h`
/// shifted so its diagonal is nonnegative.
pub fn ground_state_pf(h: &Operator) -> Result<PfReport> {
    let diag = h.matrix().diagonal();
    let shift = diag.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let shifted = Operator::identity(h.n(), h.d())?.scale(shift).sub(h)?;
    Ok(pf_check(&shifted))
}

/// Sector-restricted run: sector mixer, Young-symmetrizer initial state.
pub fn run_reduced(
    shape: &Partition,
    spec: &ProblemSpec,
    p: usize,
    epsilon: f64,
    options: &OptimizeOptions,
) -> Result<SectorRunReport> {
    let (n, d) = (spec.n(), spec.d());
    let h_m = reduced_mixer(shape, n, d, epsilon)?;
    let xi = ground_state(shape, n, d)?.vector;
    let sector = Sector::new(shape, n, d)?;
    let h_p = problem_hamiltonian(spec)?;
    let diagonal = h_p.real_diagonal()?;
    let (params, result) = Qaoa::new(&h_p, &h_m, xi, options.chain_order)?.optimize(p, &options.search)?;
    Ok(SectorRunReport {
        shape: shape.clone(),
        sector_min: sector_minimum(&sector, &diagonal)?,
        global_min: diagonal.iter().copied().fold(f64::INFINITY, f64::min),
        achieved: result.expectation,
        leakage: sector.leakage(&result.final_state)?,
        epsilon,
        mixer_gap: spectral(&h_m)?.gap(),
        pf: ground_state_pf(&h_m)?,
        params,
        result,
    })
}

/// Fails with the first adjacent transposition that changes `F`.
pub fn check_site_symmetry(spec: &ProblemSpec) -> Result<()> {
    let (n, d) = (spec.n(), spec.d());
    let values = spec.values();
    for i in 0..n.saturating_sub(1) {
        let sigma = Permutation::transposition(n, i, i + 1);
        let images = site_permutation_action(n, d, &sigma)?;
        let tol = 1e-12 * values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        if images.iter().enumerate().any(|(x, &y)| (values[x] - values[y]).abs() > tol) {
            return Err(Error::SymmetryViolation {
                permutation: sigma.one_based(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorMinima {
    pub minima: BTreeMap<Partition, f64>,
    pub global_min: f64,
    /// Sectors whose minimum equals the global minimum within `1e-9`.
    pub attaining: Vec<Partition>,
    /// Number of strings attaining the global minimum.
    pub minimizers: usize,
    /// Number of admissible partitions.
    pub sector_count: usize,
}

/// Minimum of `H_P` in every sector, for site-symmetric objectives.
pub fn sector_minima_table(spec: &ProblemSpec) -> Result<SectorMinima> {
    check_site_symmetry(spec)?;
    let (n, d) = (spec.n(), spec.d());
    let values = spec.values();
    let global_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut minima = BTreeMap::new();
    for shape in partitions(n, d) {
        let sector = Sector::new(&shape, n, d)?;
        minima.insert(shape, sector_minimum(&sector, &values)?);
    }
    let attaining = minima
        .iter()
        .filter(|(_, &m)| (m - global_min).abs() <= 1e-9)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(SectorMinima {
        sector_count: minima.len(),
        minima,
        global_min,
        attaining,
        minimizers: values.iter().filter(|&&v| (v - global_min).abs() <= 1e-9).count(),
    })
}
