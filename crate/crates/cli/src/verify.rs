//! The invariant battery behind `symqaoa verify`.

use rayon::prelude::*;
use serde::Serialize;
use symqaoa_core::basis::space_dim;
use symqaoa_core::combinatorics::{
    self, binomial, character, class_size, dim_symmetric_irrep, dim_unitary_irrep, enumerate_tableaux, factorial,
    partitions, Cell, Partition, TableauKind,
};
use symqaoa_core::hamiltonians::{default_epsilon, reduced_mixer, ProblemSpec};
use symqaoa_core::qaoa::{ground_state_pf, sector_minima_table};
use symqaoa_core::schur_weyl::{ground_state, sector_projectors, sector_table, Sector};
use symqaoa_core::symmetry::{orbit_count, orbits, PermGroup};
use symqaoa_core::tensor::{spectral, yjm, Operator};
use symqaoa_core::{Error, StateVector};

/// Content of a box; replaceable so the battery can be mutation-tested.
pub type ContentFn = fn(&Partition, Cell) -> symqaoa_core::Result<i64>;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct Suite {
    pub max_n: usize,
    pub max_d: usize,
    pub content: ContentFn,
}

impl Suite {
    pub fn new(max_n: usize, max_d: usize) -> Self {
        Self {
            max_n,
            max_d,
            content: combinatorics::content,
        }
    }

    pub fn with_content(self, content: ContentFn) -> Self {
        Self { content, ..self }
    }

    /// `(n, d)` pairs within the suite bounds and the dimension cap.
    fn grid(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in 1..=self.max_d {
            for n in 1..=self.max_n {
                if space_dim(n, d).is_ok() {
                    out.push((n, d));
                }
            }
        }
        out
    }
}

impl Default for Suite {
    fn default() -> Self {
        Self::new(6, 3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub cases: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PfEntry {
    pub n: usize,
    pub d: usize,
    pub shape: Partition,
    pub nonnegative: bool,
    pub irreducible: bool,
    pub min_offdiag_shift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorMinimum {
    pub shape: Partition,
    pub minimum: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimumProbe {
    pub label: String,
    pub n: usize,
    pub d: usize,
    pub global_min: f64,
    pub minima: Vec<SectorMinimum>,
    pub attaining: Vec<Partition>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportOnly {
    pub pf: Vec<PfEntry>,
    pub minimum_probes: Vec<MinimumProbe>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub max_d: usize,
    pub checks: Vec<CheckResult>,
    pub report_only: ReportOnly,
    pub passed: bool,
}

type Outcome = Result<(usize, String), String>;

fn fail_on(err: Error) -> String {
    err.to_string()
}

type Check = (&'static str, fn(&Suite) -> Outcome);

const CHECKS: [Check; 8] = [
    ("dimension-sums", dimension_sums),
    ("tableau-counts", tableau_counts),
    ("hook-dimensions", hook_dimensions),
    ("character-orthogonality", character_orthogonality),
    ("projector-algebra", projector_algebra),
    ("mixer-ground-states", mixer_ground_states),
    ("yjm-contents", yjm_contents),
    ("orbit-counts", orbit_counts),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

pub fn run_suite(suite: &Suite) -> Result<VerifyReport, Error> {
    let checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .map(|(name, f)| {
            let (status, cases, detail) = match f(suite) {
                Ok((cases, detail)) => (Status::Pass, cases, detail),
                Err(detail) => (Status::Fail, 0, detail),
            };
            log::debug!("{name}: {status:?}");
            CheckResult { name, status, cases, detail }
        })
        .collect();
    let passed = checks.iter().all(|c| c.status == Status::Pass);
    Ok(VerifyReport {
        max_n: suite.max_n,
        max_d: suite.max_d,
        checks,
        report_only: ReportOnly {
            pf: pf_entries(suite)?,
            minimum_probes: minimum_probes()?,
        },
        passed,
    })
}

fn dimension_sums(s: &Suite) -> Outcome {
    let grid = s.grid();
    for &(n, d) in &grid {
        let t = sector_table(n, d).map_err(fail_on)?;
        let want = (d as u64).pow(n as u32);
        if t.total != want {
            return Err(format!("n={n} d={d}: {} != {want}", t.total));
        }
    }
    Ok((grid.len(), "Σ dim S·dim V = d^n".into()))
}

fn tableau_counts(s: &Suite) -> Outcome {
    let mut cases = 0;
    for n in 1..=s.max_n {
        for shape in partitions(n, n) {
            let syt = enumerate_tableaux(&shape, TableauKind::Standard).map_err(fail_on)?.len() as u64;
            if syt != dim_symmetric_irrep(&shape) {
                return Err(format!("{shape}: {syt} SYT vs hook formula {}", dim_symmetric_irrep(&shape)));
            }
            for d in shape.len()..=s.max_d + 1 {
                let ssyt = enumerate_tableaux(&shape, TableauKind::Semistandard(d)).map_err(fail_on)?.len() as u64;
                let want = dim_unitary_irrep(&shape, d).map_err(fail_on)?;
                if ssyt != want {
                    return Err(format!("{shape} d={d}: {ssyt} SSYT vs product formula {want}"));
                }
                cases += 1;
            }
            cases += 1;
        }
    }
    Ok((cases, "tableau counts match dimension formulas".into()))
}

fn hook_dimensions(_: &Suite) -> Outcome {
    let mut cases = 0;
    for n in 1..=12usize {
        for k in 0..n.min(4) {
            let shape = Partition::hook(n, k).map_err(fail_on)?;
            if dim_symmetric_irrep(&shape) != binomial(n - 1, k) {
                return Err(format!("{shape}: {} != C({}, {k})", dim_symmetric_irrep(&shape), n - 1));
            }
            cases += 1;
        }
    }
    Ok((cases, "hook dimensions are binomial".into()))
}

fn character_orthogonality(s: &Suite) -> Outcome {
    let mut cases = 0;
    for n in 1..=s.max_n {
        let shapes = partitions(n, n);
        for mu in &shapes {
            for nu in &shapes {
                let mut sum = 0i64;
                for l in &shapes {
                    sum += character(l, mu).map_err(fail_on)? * character(l, nu).map_err(fail_on)?;
                }
                let want = if mu == nu { (factorial(n) / class_size(mu)) as i64 } else { 0 };
                if sum != want {
                    return Err(format!("n={n} classes {mu}, {nu}: {sum} != {want}"));
                }
                cases += 1;
            }
        }
    }
    Ok((cases, "column orthogonality exact".into()))
}

fn projector_algebra(s: &Suite) -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (n, d) in s.grid() {
        let projectors = sector_projectors(n, d).map_err(fail_on)?;
        let table = sector_table(n, d).map_err(fail_on)?;
        let mut total = Operator::zeros(n, d).map_err(fail_on)?;
        for (a, (la, pa)) in projectors.iter().enumerate() {
            let idem = pa.matmul(pa).map_err(fail_on)?.max_abs_diff(pa).map_err(fail_on)?;
            let want = table.get(la).map(|e| e.product).unwrap_or(0) as f64;
            let tr = pa.trace();
            let tr_err = (tr.re - want).abs().max(tr.im.abs());
            if idem > TOL || tr_err > TOL {
                return Err(format!("n={n} d={d} {la}: idempotence {idem:.2e}, trace error {tr_err:.2e}"));
            }
            for (lb, pb) in projectors.iter().skip(a + 1) {
                let cross = pa.matmul(pb).map_err(fail_on)?.max_abs();
                if cross > TOL {
                    return Err(format!("n={n} d={d}: P{la} P{lb} = {cross:.2e}"));
                }
                worst = worst.max(cross);
            }
            worst = worst.max(idem).max(tr_err);
            total = total.add(pa).map_err(fail_on)?;
            cases += 1;
        }
        let comp = total.max_abs_diff(&Operator::identity(n, d).map_err(fail_on)?).map_err(fail_on)?;
        if comp > TOL {
            return Err(format!("n={n} d={d}: completeness {comp:.2e}"));
        }
        worst = worst.max(comp);
    }
    Ok((cases, format!("worst deviation {worst:.2e}")))
}

fn mixer_ground_states(s: &Suite) -> Outcome {
    let mut cases = 0;
    let mut min_gap = f64::INFINITY;
    for (n, d) in s.grid() {
        for shape in partitions(n, d) {
            let h = reduced_mixer(&shape, n, d, default_epsilon(n, d)).map_err(fail_on)?;
            let spec = spectral(&h).map_err(fail_on)?;
            let simple = spec.eigenvalues.len() == 1 || spec.gap() > 1e-6;
            let low = StateVector::normalized(n, d, spec.column(0)).map_err(fail_on)?;
            let xi = ground_state(&shape, n, d).map_err(fail_on)?.vector;
            let miss = 1.0 - low.overlap(&xi);
            let leak = Sector::new(&shape, n, d).map_err(fail_on)?.leakage(&low).map_err(fail_on)?;
            if !simple || miss > TOL || leak > TOL {
                return Err(format!(
                    "n={n} d={d} {shape}: gap {:.3e}, 1-overlap {miss:.2e}, leakage {leak:.2e}",
                    spec.gap()
                ));
            }
            if spec.eigenvalues.len() > 1 {
                min_gap = min_gap.min(spec.gap());
            }
            cases += 1;
        }
    }
    Ok((cases, format!("simple ground states; min gap {min_gap:.4e}")))
}

fn yjm_contents(s: &Suite) -> Outcome {
    let mut cases = 0;
    for (n, d) in s.grid() {
        for shape in partitions(n, d) {
            let sector = Sector::new(&shape, n, d).map_err(fail_on)?;
            let dim_v = dim_unitary_irrep(&shape, d).map_err(fail_on)? as usize;
            let syt = enumerate_tableaux(&shape, TableauKind::Standard).map_err(fail_on)?;
            for k in 1..=n {
                let mut want = Vec::with_capacity(syt.len() * dim_v);
                for t in &syt {
                    let cell = t.cell_of(k).ok_or_else(|| format!("{k} missing from a tableau of {shape}"))?;
                    let c = (s.content)(&shape, cell).map_err(fail_on)? as f64;
                    want.extend(std::iter::repeat_n(c, dim_v));
                }
                want.sort_by(f64::total_cmp);
                let got = sector.restricted_eigenvalues(&yjm(n, d, k).map_err(fail_on)?).map_err(fail_on)?;
                let err = if got.len() == want.len() {
                    got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
                } else {
                    f64::INFINITY
                };
                if err > TOL {
                    return Err(format!("n={n} d={d} {shape} J_{k}: spectrum deviates from contents by {err:.2e}"));
                }
                cases += 1;
            }
        }
    }
    Ok((cases, "J_k spectra equal box contents".into()))
}

fn orbit_counts(s: &Suite) -> Outcome {
    let mut cases = 0;
    for (n, d) in s.grid() {
        let sym = orbit_count(&orbits(&PermGroup::symmetric_on_sites(n, d).map_err(fail_on)?));
        let want = binomial(n + d - 1, d - 1) as usize;
        let dim = space_dim(n, d).map_err(fail_on)?;
        let trivial = orbit_count(&orbits(&PermGroup::trivial(dim)));
        if sym.m != want || !sym.is_consistent() || trivial.m != dim || !trivial.is_consistent() {
            return Err(format!(
                "n={n} d={d}: S_n orbits {} (want {want}), trivial orbits {} (want {dim})",
                sym.m, trivial.m
            ));
        }
        cases += 1;
    }
    Ok((cases, "orbit counts equal Σ 1/|orbit|".into()))
}

fn pf_entries(s: &Suite) -> Result<Vec<PfEntry>, Error> {
    let tasks: Vec<(usize, usize, Partition)> = s
        .grid()
        .into_iter()
        .flat_map(|(n, d)| partitions(n, d).into_iter().map(move |shape| (n, d, shape)))
        .collect();
    tasks
        .into_par_iter()
        .map(|(n, d, shape)| {
            let pf = ground_state_pf(&reduced_mixer(&shape, n, d, default_epsilon(n, d))?)?;
            Ok(PfEntry {
                n,
                d,
                shape,
                nonnegative: pf.nonnegative,
                irreducible: pf.irreducible,
                min_offdiag_shift: pf.min_offdiag_shift,
            })
        })
        .collect()
}

fn count_objective(n: usize, d: usize, target: f64) -> Result<ProblemSpec, Error> {
    ProblemSpec::from_fn(n, d, |xs| (xs.iter().sum::<usize>() as f64 - target).powi(2))
}

fn minimum_probes() -> Result<Vec<MinimumProbe>, Error> {
    let instances = [
        ("x1 + x2", ProblemSpec::quadratic(2, 2, 0.0, vec![1.0, 1.0], [])?),
        ("(x1 + x2 + x3 - 1)^2", count_objective(3, 2, 1.0)?),
        ("(x1 + x2 + x3 + x4 - 2)^2 over ternary digits", count_objective(4, 3, 2.0)?),
    ];
    instances
        .into_iter()
        .map(|(label, spec)| {
            let t = sector_minima_table(&spec)?;
            Ok(MinimumProbe {
                label: label.into(),
                n: spec.n(),
                d: spec.d(),
                global_min: t.global_min,
                minima: t
                    .minima
                    .into_iter()
                    .map(|(shape, minimum)| SectorMinimum { shape, minimum })
                    .collect(),
                attaining: t.attaining,
            })
        })
        .collect()
}
