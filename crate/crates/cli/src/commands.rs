//! The four subcommands. Each writes `<prefix>.json` and `<prefix>.csv` and
//! returns the text printed to stdout.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use symqaoa_core::basis::{label, space_dim};
use symqaoa_core::combinatorics::Partition;
use symqaoa_core::hamiltonians::standard_mixer;
use symqaoa_core::optimizer::TraceEntry;
use symqaoa_core::qaoa::{
    check_site_symmetry, full_engine, reduced_engine, run_full, run_reduced, ChainOrder, OptimizeOptions, Qaoa, QaoaParams,
};
use symqaoa_core::schur_weyl::sector_table;
use symqaoa_core::symmetry::{check_generator, orbit_count, orbit_invariance_check, orbits, PermGroup};
use symqaoa_core::PfReport;

use crate::config::{ExperimentConfig, SweepSection, VerifySection};
use crate::output::{num, text_table, timestamp, write_csv, write_json};
use crate::verify::{run_suite, Status, Suite};
use crate::CliError;

pub struct Context {
    pub config: ExperimentConfig,
    pub seed: Option<u64>,
    pub prefix: String,
}

fn log_written(paths: &[std::path::PathBuf]) {
    for p in paths {
        log::info!("wrote {}", p.display());
    }
}

#[derive(Serialize)]
struct SectorRow {
    shape: Partition,
    dim_s: u64,
    dim_v: u64,
    product: u64,
    /// Number of single-box rows below the first, for hook shapes.
    hook_k: Option<usize>,
    /// Degree in `n` of `dim S·dim V` for hook shapes.
    polynomial_degree: Option<usize>,
}

#[derive(Serialize)]
struct SectorsDoc {
    command: &'static str,
    timestamp: u64,
    n: usize,
    d: usize,
    dimension: u64,
    total: u64,
    total_matches: bool,
    entries: Vec<SectorRow>,
}

pub const SECTORS_CSV: [&str; 6] = ["shape", "dim_s", "dim_v", "product", "hook_k", "polynomial_degree"];

pub fn sectors(ctx: &Context) -> Result<String, CliError> {
    let problem = ctx.config.problem()?;
    let (n, d) = (problem.n, problem.d);
    let table = sector_table(n, d)?;
    let dimension = (d as u64).pow(n as u32);
    let entries: Vec<SectorRow> = table
        .entries
        .iter()
        .map(|e| {
            let hook_k = e.shape.is_hook().then(|| e.shape.len() - 1);
            SectorRow {
                shape: e.shape.clone(),
                dim_s: e.dim_s,
                dim_v: e.dim_v,
                product: e.product,
                hook_k,
                polynomial_degree: hook_k.map(|k| d + k - 1),
            }
        })
        .collect();
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.shape.to_string(),
                e.dim_s.to_string(),
                e.dim_v.to_string(),
                e.product.to_string(),
                opt(e.hook_k),
                opt(e.polynomial_degree),
            ]
        })
        .collect();
    let doc = SectorsDoc {
        command: "sectors",
        timestamp: timestamp(),
        n,
        d,
        dimension,
        total: table.total,
        total_matches: table.total == dimension,
        entries,
    };
    log_written(&[write_json(&ctx.prefix, &doc)?, write_csv(&ctx.prefix, &SECTORS_CSV, &rows)?]);

    let mut text = text_table(&SECTORS_CSV, &rows);
    text.push_str(&format!("\ntotal {} = {d}^{n}: {}", table.total, doc.total_matches));
    for e in &doc.entries {
        if let (Some(k), Some(deg)) = (e.hook_k, e.polynomial_degree) {
            text.push_str(&format!(
                "\nhook {} (k={k}): dim S·dim V = {} grows as a degree-{deg} polynomial in n, against {d}^n = {dimension}",
                e.shape, e.product
            ));
        }
    }
    Ok(text)
}

#[derive(Serialize)]
struct FullRecord {
    global_min: f64,
    achieved: f64,
    best_string: String,
    best_index: usize,
    best_probability: f64,
    params: QaoaParams,
    probabilities: Vec<f64>,
    optimizer_trace: Vec<TraceEntry>,
    p_sweep: Vec<SweepPoint>,
}

#[derive(Serialize)]
struct SweepPoint {
    p: usize,
    expectation: f64,
}

fn sweep(engine: &Qaoa, section: Option<&SweepSection>) -> Result<Vec<SweepPoint>, CliError> {
    let Some(section) = section else { return Ok(Vec::new()) };
    Ok(engine
        .p_sweep(&section.depths, section.delta)?
        .into_iter()
        .map(|(p, expectation)| SweepPoint { p, expectation })
        .collect())
}

#[derive(Serialize)]
struct SectorRecord {
    shape: Partition,
    sector_min: f64,
    global_min: f64,
    achieved: f64,
    leakage: f64,
    epsilon: f64,
    mixer_gap: f64,
    pf: PfReport,
    best_string: String,
    best_index: usize,
    best_probability: f64,
    params: QaoaParams,
    probabilities: Vec<f64>,
    optimizer_trace: Vec<TraceEntry>,
    p_sweep: Vec<SweepPoint>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RunRecord {
    Full(FullRecord),
    Sector(SectorRecord),
}

impl RunRecord {
    fn csv_row(&self) -> Vec<String> {
        match self {
            Self::Full(r) => vec![
                "full".into(),
                num(r.global_min),
                num(r.achieved),
                String::new(),
                r.best_string.clone(),
                num(r.best_probability),
            ],
            Self::Sector(r) => vec![
                r.shape.to_string(),
                num(r.sector_min),
                num(r.achieved),
                num(r.leakage),
                r.best_string.clone(),
                num(r.best_probability),
            ],
        }
    }
}

#[derive(Serialize)]
struct RunDoc {
    command: &'static str,
    timestamp: u64,
    n: usize,
    d: usize,
    depth: usize,
    budget: usize,
    seed: u64,
    chain_order: ChainOrder,
    epsilon: f64,
    records: Vec<RunRecord>,
}

pub const RUN_CSV: [&str; 6] = ["sector", "sector_min", "achieved", "leakage", "best_string", "probability"];

enum Task {
    Full,
    Sector(Partition),
}

pub fn run(ctx: &Context) -> Result<String, CliError> {
    let spec = ctx.config.problem()?.to_spec()?;
    let run = ctx.config.run()?;
    run.validate()?;
    let (n, d) = (spec.n(), spec.d());
    space_dim(n, d)?;
    let seed = ctx.seed.unwrap_or(run.seed);
    let epsilon = run.epsilon(n, d);
    let sectors = run.sectors(n, d)?;
    if sectors.is_empty() && !run.full {
        return Err(CliError::Config("run: no sectors requested and full = false".into()));
    }
    if !sectors.is_empty() {
        check_site_symmetry(&spec)?;
    }
    let options = OptimizeOptions {
        chain_order: run.chain_order,
        ..OptimizeOptions::new(run.budget, seed)
    };
    let mut tasks = Vec::new();
    if run.full {
        tasks.push(Task::Full);
    }
    tasks.extend(sectors.into_iter().map(Task::Sector));
    log::info!("{} run(s) at depth {} with budget {}", tasks.len(), run.depth, run.budget);

    let records: Vec<RunRecord> = tasks
        .par_iter()
        .map(|task| -> Result<RunRecord, CliError> {
            Ok(match task {
                Task::Full => {
                    let r = run_full(&spec, run.depth, &options)?;
                    RunRecord::Full(FullRecord {
                        global_min: r.global_min,
                        achieved: r.result.expectation,
                        best_string: label(r.result.best_string, n, d),
                        best_index: r.result.best_string,
                        best_probability: r.result.best_probability(),
                        params: r.params,
                        probabilities: r.result.probabilities,
                        optimizer_trace: r.result.optimizer_trace,
                        p_sweep: sweep(&full_engine(&spec, run.chain_order)?, run.sweep.as_ref())?,
                    })
                }
                Task::Sector(shape) => {
                    let r = run_reduced(shape, &spec, run.depth, epsilon, &options)?;
                    log::info!("sector {shape}: achieved {:.6} against sector minimum {:.6}", r.achieved, r.sector_min);
                    RunRecord::Sector(SectorRecord {
                        shape: r.shape,
                        sector_min: r.sector_min,
                        global_min: r.global_min,
                        achieved: r.achieved,
                        leakage: r.leakage,
                        epsilon: r.epsilon,
                        mixer_gap: r.mixer_gap,
                        pf: r.pf,
                        best_string: label(r.result.best_string, n, d),
                        best_index: r.result.best_string,
                        best_probability: r.result.best_probability(),
                        params: r.params,
                        probabilities: r.result.probabilities,
                        optimizer_trace: r.result.optimizer_trace,
                        p_sweep: sweep(&reduced_engine(shape, &spec, epsilon, run.chain_order)?, run.sweep.as_ref())?,
                    })
                }
            })
        })
        .collect::<Result<_, _>>()?;

    let rows: Vec<Vec<String>> = records.iter().map(RunRecord::csv_row).collect();
    let doc = RunDoc {
        command: "run",
        timestamp: timestamp(),
        n,
        d,
        depth: run.depth,
        budget: run.budget,
        seed,
        chain_order: run.chain_order,
        epsilon,
        records,
    };
    log_written(&[write_json(&ctx.prefix, &doc)?, write_csv(&ctx.prefix, &RUN_CSV, &rows)?]);
    Ok(text_table(&RUN_CSV, &rows))
}

#[derive(Serialize)]
struct GeneratorRow {
    index: usize,
    sites: Vec<usize>,
    relabel: Vec<usize>,
    preserves_objective: bool,
    commutes_with_mixer: bool,
}

#[derive(Serialize)]
struct HistogramRow {
    size: usize,
    count: usize,
}

#[derive(Serialize)]
struct InvarianceRow {
    pass: bool,
    tolerance: f64,
    worst_orbit: usize,
    worst_spread: f64,
}

#[derive(Serialize)]
struct OrbitsDoc {
    command: &'static str,
    timestamp: u64,
    n: usize,
    d: usize,
    generators: Vec<GeneratorRow>,
    m: usize,
    /// Exact rational value of `Σ_x 1/|orbit(x)|`.
    reciprocal_sum: String,
    reciprocal_sum_f64: f64,
    consistent: bool,
    histogram: Vec<HistogramRow>,
    invariance: Option<InvarianceRow>,
}

pub const ORBITS_CSV: [&str; 2] = ["orbit_size", "count"];

const INVARIANCE_TOL: f64 = 1e-10;

pub fn orbits_cmd(ctx: &Context) -> Result<String, CliError> {
    let spec = ctx.config.problem()?.to_spec()?;
    let (n, d) = (spec.n(), spec.d());
    let dim = space_dim(n, d)?;
    let symmetry = ctx
        .config
        .symmetry
        .as_ref()
        .ok_or_else(|| CliError::Config("symmetry: section missing; orbits needs generators".into()))?;
    let generators = symmetry.generators(n, d)?;
    let values = spec.values();
    let mixer = standard_mixer(n, d)?;
    let mut rows = Vec::with_capacity(generators.len());
    for (k, g) in generators.iter().enumerate() {
        let verdict = check_generator(&g.action, &values, &mixer, INVARIANCE_TOL)?;
        if !verdict.preserves_objective {
            return Err(CliError::Refused(format!(
                "generator {} (sites {:?}, relabel {:?}) does not commute with H_P",
                k + 1,
                g.sites,
                g.relabel
            )));
        }
        rows.push(GeneratorRow {
            index: k + 1,
            sites: g.sites.clone(),
            relabel: g.relabel.clone(),
            preserves_objective: verdict.preserves_objective,
            commutes_with_mixer: verdict.commutes_with_mixer,
        });
    }
    let group = PermGroup::new(dim, generators.iter().map(|g| g.action.clone()).collect())?;
    let set = orbits(&group);
    let count = orbit_count(&set);
    let mut histogram = BTreeMap::new();
    for size in set.sizes() {
        *histogram.entry(size).or_insert(0) += 1;
    }

    let invariance = match &ctx.config.run {
        Some(run) => {
            run.validate()?;
            let options = OptimizeOptions {
                chain_order: run.chain_order,
                ..OptimizeOptions::new(run.budget, ctx.seed.unwrap_or(run.seed))
            };
            let r = run_full(&spec, run.depth, &options)?;
            let report = orbit_invariance_check(&r.result.probabilities, &set, INVARIANCE_TOL)?;
            Some(InvarianceRow {
                pass: report.pass,
                tolerance: INVARIANCE_TOL,
                worst_orbit: report.worst_orbit,
                worst_spread: report.worst_spread,
            })
        }
        None => None,
    };

    let csv_rows: Vec<Vec<String>> = histogram.iter().map(|(s, c)| vec![s.to_string(), c.to_string()]).collect();
    let doc = OrbitsDoc {
        command: "orbits",
        timestamp: timestamp(),
        n,
        d,
        generators: rows,
        m: count.m,
        reciprocal_sum: count.reciprocal_sum.to_string(),
        reciprocal_sum_f64: count.reciprocal_sum_f64,
        consistent: count.is_consistent(),
        histogram: histogram.iter().map(|(&size, &count)| HistogramRow { size, count }).collect(),
        invariance,
    };
    log_written(&[write_json(&ctx.prefix, &doc)?, write_csv(&ctx.prefix, &ORBITS_CSV, &csv_rows)?]);

    let mut text = format!(
        "m = {}; Σ 1/|orbit| = {} ({})\n{}",
        doc.m,
        doc.reciprocal_sum,
        if doc.consistent { "consistent" } else { "INCONSISTENT" },
        text_table(&ORBITS_CSV, &csv_rows)
    );
    for g in &doc.generators {
        if !g.commutes_with_mixer {
            text.push_str(&format!(
                "\ngenerator {} preserves F but does not commute with the standard mixer",
                g.index
            ));
        }
    }
    if let Some(inv) = &doc.invariance {
        text.push_str(&format!(
            "\norbit invariance: {} (worst spread {:.3e} on orbit {})",
            if inv.pass { "pass" } else { "FAIL" },
            inv.worst_spread,
            inv.worst_orbit
        ));
        let all_commute = doc.generators.iter().all(|g| g.commutes_with_mixer);
        if !inv.pass && all_commute {
            return Err(CliError::Verification(text));
        }
    }
    if !doc.consistent {
        return Err(CliError::Verification(text));
    }
    Ok(text)
}

#[derive(Serialize)]
struct VerifyDoc {
    command: &'static str,
    timestamp: u64,
    #[serde(flatten)]
    report: crate::verify::VerifyReport,
}

pub const VERIFY_CSV: [&str; 5] = ["check", "kind", "status", "cases", "detail"];

pub fn verify(ctx: &Context, suite: Option<Suite>) -> Result<String, CliError> {
    let suite = suite.unwrap_or_else(|| {
        let v = ctx.config.verify.clone().unwrap_or_default();
        let VerifySection { max_n, max_d } = v;
        Suite::new(max_n, max_d)
    });
    if suite.max_n == 0 || suite.max_d == 0 {
        return Err(CliError::Config("verify: max_n and max_d must be positive".into()));
    }
    let report = run_suite(&suite)?;
    let mut rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let status = if c.status == Status::Pass { "pass" } else { "fail" };
            vec![c.name.to_string(), "assertive".into(), status.into(), c.cases.to_string(), c.detail.clone()]
        })
        .collect();
    rows.push(vec![
        "pf-structure".into(),
        "report".into(),
        "report".into(),
        report.report_only.pf.len().to_string(),
        format!(
            "{} of {} sector mixers have nonnegative c·I - H_M",
            report.report_only.pf.iter().filter(|p| p.nonnegative).count(),
            report.report_only.pf.len()
        ),
    ]);
    rows.push(vec![
        "sector-minima".into(),
        "report".into(),
        "report".into(),
        report.report_only.minimum_probes.len().to_string(),
        format!(
            "{} of {} probes have a sector missing the global minimum",
            report
                .report_only
                .minimum_probes
                .iter()
                .filter(|p| p.attaining.len() < p.minima.len())
                .count(),
            report.report_only.minimum_probes.len()
        ),
    ]);

    let mut text = Vec::new();
    for c in &report.checks {
        let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
        text.push(format!("{tag} {}: {} ({} cases)", c.name, c.detail, c.cases));
    }
    text.push("report-only:".into());
    for p in &report.report_only.pf {
        text.push(format!(
            "  pf n={} d={} {}: nonnegative={} irreducible={} min_offdiag={:.3}",
            p.n, p.d, p.shape, p.nonnegative, p.irreducible, p.min_offdiag_shift
        ));
    }
    for p in &report.report_only.minimum_probes {
        let minima: Vec<String> = p.minima.iter().map(|m| format!("{}: {:.4}", m.shape, m.minimum)).collect();
        let attaining: Vec<String> = p.attaining.iter().map(|s| s.to_string()).collect();
        text.push(format!(
            "  minima {} (n={}, d={}): global {:.4}; {}; attaining [{}]",
            p.label,
            p.n,
            p.d,
            p.global_min,
            minima.join(", "),
            attaining.join(", ")
        ));
    }
    let passed = report.passed;
    let doc = VerifyDoc {
        command: "verify",
        timestamp: timestamp(),
        report,
    };
    log_written(&[write_json(&ctx.prefix, &doc)?, write_csv(&ctx.prefix, &VERIFY_CSV, &rows)?]);
    let text = text.join("\n");
    if passed {
        Ok(text)
    } else {
        Err(CliError::Verification(text))
    }
}
