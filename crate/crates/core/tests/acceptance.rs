//! Acceptance battery. One line per criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symqaoa_core::basis::space_dim;
use symqaoa_core::combinatorics::{
    binomial, content, dim_symmetric_irrep, dim_unitary_irrep, enumerate_tableaux, hook_length, partitions,
    Cell, Partition, TableauKind,
};
use symqaoa_core::hamiltonians::{
    block_commutant_check, default_epsilon, eigenvalue_blocks, problem_hamiltonian, random_block_unitary,
    reduced_mixer, z_form, BlockStructure, ProblemSpec,
};
use symqaoa_core::qaoa::{
    ground_state_pf, run_full, run_reduced, sector_minima_table, OptimizeOptions, Qaoa, QaoaParams,
};
use symqaoa_core::schur_weyl::{ground_state, sector_projectors, sector_table, Sector};
use symqaoa_core::symmetry::{orbit_count, orbit_invariance_check, orbits, PermGroup};
use symqaoa_core::tensor::{spectral, yjm, Operator};
use symqaoa_core::{Error, StateVector};

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn count_objective(n: usize, d: usize, target: f64) -> ProblemSpec {
    ProblemSpec::from_fn(n, d, |xs| (xs.iter().sum::<usize>() as f64 - target).powi(2)).unwrap()
}

fn c1() -> Outcome {
    let lambda = shape(&[4, 3, 2]);
    let dim = dim_symmetric_irrep(&lambda);
    let hook = hook_length(&lambda, Cell::new(1, 1)).map_err(e)?;
    ensure(dim == 168 && hook == 6, || format!("dim {dim}, hook {hook}"))?;
    Ok(format!("dim S_(4,3,2) = {dim}, h(1,1) = {hook}"))
}

fn c2() -> Outcome {
    let t = sector_table(7, 3).map_err(e)?;
    ensure(t.entries.len() == 8 && t.total == 2187, || {
        format!("{} entries, total {}", t.entries.len(), t.total)
    })?;
    Ok(format!("{} sectors, total {}", t.entries.len(), t.total))
}

fn c3() -> Outcome {
    let mut cases = 0;
    for d in 1..=3usize {
        for n in 1..=8usize {
            let Ok(dim) = space_dim(n, d) else { continue };
            let mut sum = 0u64;
            for lambda in partitions(n, d) {
                sum += dim_symmetric_irrep(&lambda) * dim_unitary_irrep(&lambda, d).map_err(e)?;
            }
            ensure(sum == dim as u64, || format!("n={n} d={d}: {sum} != {dim}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n,d) pairs exact"))
}

fn c4() -> Outcome {
    let mut cases = 0;
    for n in 1..=12usize {
        for k in 0..n.min(4) {
            let lambda = Partition::hook(n, k).map_err(e)?;
            let (got, want) = (dim_symmetric_irrep(&lambda), binomial(n - 1, k));
            ensure(got == want, || format!("{lambda}: {got} != {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} hook shapes exact"))
}

fn c5() -> Outcome {
    let tol = 1e-9;
    let mut worst = 0.0f64;
    for d in 1..=3usize {
        for n in 1..=6usize {
            let projectors = sector_projectors(n, d).map_err(e)?;
            let mut total = Operator::zeros(n, d).map_err(e)?;
            for (a, (la, pa)) in projectors.iter().enumerate() {
                let sq = pa.matmul(pa).map_err(e)?;
                let idem = sq.max_abs_diff(pa).map_err(e)?;
                let entry = sector_table(n, d).map_err(e)?.get(la).cloned().ok_or("missing sector")?;
                let tr = pa.trace();
                let tr_err = (tr.re - entry.product as f64).abs().max(tr.im.abs());
                ensure(idem <= tol && tr_err <= tol, || {
                    format!("n={n} d={d} {la}: idempotence {idem:.2e}, trace error {tr_err:.2e}")
                })?;
                worst = worst.max(idem).max(tr_err);
                for (lb, pb) in projectors.iter().skip(a + 1) {
                    let cross = pa.matmul(pb).map_err(e)?.max_abs();
                    ensure(cross <= tol, || format!("n={n} d={d} {la}·{lb} = {cross:.2e}"))?;
                    worst = worst.max(cross);
                }
                total = total.add(pa).map_err(e)?;
            }
            let comp = total.max_abs_diff(&Operator::identity(n, d).map_err(e)?).map_err(e)?;
            ensure(comp <= tol, || format!("n={n} d={d}: completeness {comp:.2e}"))?;
            worst = worst.max(comp);
        }
    }
    Ok(format!("worst deviation {worst:.2e}"))
}

fn c6() -> Outcome {
    let mut min_gap = f64::INFINITY;
    let mut worst_overlap = 0.0f64;
    let mut worst_leak = 0.0f64;
    let mut cases = 0;
    for d in 1..=3usize {
        for n in 1..=6usize {
            let eps = default_epsilon(n, d);
            for lambda in partitions(n, d) {
                let h = reduced_mixer(&lambda, n, d, eps).map_err(e)?;
                let spec = spectral(&h).map_err(e)?;
                let gap = spec.gap();
                let simple = spec.eigenvalues.len() == 1 || gap > 1e-6;
                let low = StateVector::normalized(n, d, spec.column(0)).map_err(e)?;
                let xi = ground_state(&lambda, n, d).map_err(e)?.vector;
                let miss = 1.0 - low.overlap(&xi);
                let leak = Sector::new(&lambda, n, d).map_err(e)?.leakage(&low).map_err(e)?;
                ensure(simple && miss <= 1e-9 && leak <= 1e-9, || {
                    format!("n={n} d={d} {lambda}: gap {gap:.3e}, 1-overlap {miss:.2e}, leakage {leak:.2e}")
                })?;
                if spec.eigenvalues.len() > 1 {
                    min_gap = min_gap.min(gap);
                }
                worst_overlap = worst_overlap.max(miss);
                worst_leak = worst_leak.max(leak);
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} sectors; min gap {min_gap:.4e}, max 1-overlap {worst_overlap:.2e}, max leakage {worst_leak:.2e}"
    ))
}

fn c7() -> Outcome {
    let mut cases = 0;
    let mut worst = 0.0f64;
    for d in 1..=3usize {
        for n in 1..=5usize {
            for lambda in partitions(n, d) {
                let sector = Sector::new(&lambda, n, d).map_err(e)?;
                let dim_v = dim_unitary_irrep(&lambda, d).map_err(e)? as usize;
                let syt = enumerate_tableaux(&lambda, TableauKind::Standard).map_err(e)?;
                for k in 1..=n {
                    let mut want: Vec<f64> = Vec::new();
                    for t in &syt {
                        let cell = t.cell_of(k).ok_or("entry missing from tableau")?;
                        let c = content(&lambda, cell).map_err(e)? as f64;
                        want.extend(std::iter::repeat_n(c, dim_v));
                    }
                    want.sort_by(f64::total_cmp);
                    let got = sector.restricted_eigenvalues(&yjm(n, d, k).map_err(e)?).map_err(e)?;
                    ensure(got.len() == want.len(), || {
                        format!("n={n} d={d} {lambda} k={k}: {} eigenvalues, expected {}", got.len(), want.len())
                    })?;
                    let err = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    ensure(err <= 1e-9, || format!("n={n} d={d} {lambda} k={k}: deviation {err:.2e}"))?;
                    worst = worst.max(err);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (λ, k) spectra; worst deviation {worst:.2e}"))
}

fn c8() -> Outcome {
    let (n, d, p) = (4, 2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for lambda in partitions(n, d) {
        let (lin, pair, cst) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-1.0..1.0));
        let pairs: Vec<((usize, usize), f64)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| ((i, j), pair))).collect();
        let spec = ProblemSpec::quadratic(n, d, cst, vec![lin; n], pairs).map_err(e)?;
        let h_p = problem_hamiltonian(&spec).map_err(e)?;
        let h_m = reduced_mixer(&lambda, n, d, default_epsilon(n, d)).map_err(e)?;
        let xi = ground_state(&lambda, n, d).map_err(e)?.vector;
        let engine = Qaoa::new(&h_p, &h_m, xi, Default::default()).map_err(e)?;
        let sector = Sector::new(&lambda, n, d).map_err(e)?;
        for _ in 0..50 {
            let params = QaoaParams::new(
                (0..p).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect(),
                (0..p).map(|_| rng.random_range(0.0..std::f64::consts::PI)).collect(),
            )
            .map_err(e)?;
            let leak = sector.leakage(&engine.state(&params).map_err(e)?).map_err(e)?;
            ensure(leak <= 1e-8, || format!("{lambda}: leakage {leak:.2e}"))?;
            worst = worst.max(leak);
        }
    }
    Ok(format!("50 draws per sector; worst leakage {worst:.2e}"))
}

fn c9() -> Outcome {
    let (n, d) = (4, 2);
    let spec = count_objective(n, d, n as f64 / 2.0);
    let report = run_reduced(&Partition::row(n), &spec, 3, default_epsilon(n, d), &OptimizeOptions::new(2000, 20240601))
        .map_err(e)?;
    let gap = (report.achieved - report.sector_min).abs();
    let line = format!(
        "achieved {:.6}, sector minimum {:.6}, |Δ| = {gap:.4}, leakage {:.1e}",
        report.achieved, report.sector_min, report.leakage
    );
    ensure(gap <= 0.05, || format!("{line} > 0.05"))?;
    Ok(line)
}

fn c10() -> Outcome {
    let group = PermGroup::symmetric_on_sites(3, 2).map_err(e)?;
    let count = orbit_count(&orbits(&group));
    ensure(count.m == 4 && count.is_consistent(), || {
        format!("m = {}, Σ 1/|orbit| = {}", count.m, count.reciprocal_sum)
    })?;

    let (n, d) = (4, 2);
    let spec = ProblemSpec::quadratic(
        n,
        d,
        0.5,
        vec![-1.0; n],
        (0..n).flat_map(|i| (i + 1..n).map(move |j| ((i, j), 0.75))),
    )
    .map_err(e)?;
    let run = run_full(&spec, 2, &OptimizeOptions::new(300, 10)).map_err(e)?;
    let set = orbits(&PermGroup::symmetric_on_sites(n, d).map_err(e)?);
    let report = orbit_invariance_check(&run.result.probabilities, &set, 1e-10).map_err(e)?;
    ensure(report.pass, || format!("orbit {} spread {:.2e}", report.worst_orbit, report.worst_spread))?;
    Ok(format!(
        "m = {}, Σ 1/|orbit| = {}; full run spread {:.2e}",
        count.m, count.reciprocal_sum, report.worst_spread
    ))
}

fn c11() -> Outcome {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let mut draw = || rng.random_range(-3i32..=3) as f64;
        let linear: Vec<f64> = (0..n).map(|_| draw()).collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push(((i, j), draw()));
            }
        }
        let constant = draw();
        let spec = ProblemSpec::quadratic(n, 2, constant, linear, pairs).map_err(e)?;
        let h = problem_hamiltonian(&spec).map_err(e)?;
        let blocks = eigenvalue_blocks(&h).map_err(e)?;
        for _ in 0..3 {
            let u = Operator::new(n, 2, random_block_unitary(&blocks, h.dim(), &mut rng)).map_err(e)?;
            let comm = block_commutant_check(&h, &u).map_err(e)?;
            ensure(comm <= 1e-10, || format!("trial {trial}: commutator {comm:.2e}"))?;
            worst = worst.max(comm);
        }
        let zf = z_form(&spec).map_err(e)?;
        let via_lambda = BlockStructure::from_values(&zf.lambda_values());
        let direct = h.real_diagonal().map_err(e)?;
        let exact = zf.diagonal().iter().zip(&direct).all(|(a, b)| a == b);
        ensure(via_lambda.same_partition(&blocks) && exact, || {
            format!("trial {trial}: spin-form grouping differs from the direct diagonal")
        })?;
    }
    Ok(format!("20 QUBOs; worst commutator {worst:.2e}; spin-form grouping exact"))
}

fn c12() -> Outcome {
    let mut lines = Vec::new();
    for d in 1..=3usize {
        for n in 1..=5usize {
            for lambda in partitions(n, d) {
                let h = reduced_mixer(&lambda, n, d, default_epsilon(n, d)).map_err(e)?;
                let pf = ground_state_pf(&h).map_err(e)?;
                lines.push(format!(
                    "  pf n={n} d={d} {lambda}: nonnegative={} irreducible={} min_offdiag={:.3}",
                    pf.nonnegative, pf.irreducible, pf.min_offdiag_shift
                ));
            }
        }
    }
    let instances = [
        ("x1 + x2, n=2", ProblemSpec::quadratic(2, 2, 0.0, vec![1.0, 1.0], []).map_err(e)?),
        ("(Σx - 1)^2, n=3", count_objective(3, 2, 1.0)),
        ("(Σx - 2)^2, n=4, d=3", count_objective(4, 3, 2.0)),
    ];
    for (label, spec) in instances {
        let t = sector_minima_table(&spec).map_err(e)?;
        let cells: Vec<String> = t.minima.iter().map(|(s, m)| format!("{s}: {m:.4}")).collect();
        let attaining: Vec<String> = t.attaining.iter().map(|s| s.to_string()).collect();
        lines.push(format!(
            "  minima {label}: global {:.4}; {}; attaining [{}]; {} minimizers over {} sectors",
            t.global_min,
            cells.join(", "),
            attaining.join(", "),
            t.minimizers,
            t.sector_count
        ));
    }
    println!("{}", lines.join("\n"));
    Ok(format!("report-only, {} lines emitted", lines.len()))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "dimension and hook length of (4,3,2)", limit: Duration::from_millis(1), run: c1 },
        Criterion { id: 2, name: "sector table for n=7, d=3", limit: secs(1), run: c2 },
        Criterion { id: 3, name: "Schur-Weyl completeness", limit: secs(1), run: c3 },
        Criterion { id: 4, name: "hook-shape dimensions", limit: secs(1), run: c4 },
        Criterion { id: 5, name: "projector algebra", limit: secs(120), run: c5 },
        Criterion { id: 6, name: "mixer ground states", limit: secs(300), run: c6 },
        Criterion { id: 7, name: "YJM content spectra", limit: secs(120), run: c7 },
        Criterion { id: 8, name: "sector confinement", limit: secs(60), run: c8 },
        Criterion { id: 9, name: "reduced-QAOA convergence probe", limit: secs(60), run: c9 },
        Criterion { id: 10, name: "orbit machinery", limit: secs(60), run: c10 },
        Criterion { id: 11, name: "block-symmetry check", limit: secs(60), run: c11 },
        Criterion { id: 12, name: "report-only gates", limit: secs(120), run: c12 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > c.limit => ("FAIL", format!("runtime over {:?}", c.limit)),
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {verdict} [{:>9.3?}] {}: {detail}", c.id, elapsed, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
