use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use symqaoa_cli::commands::{Context, RUN_CSV};
use symqaoa_cli::config::ExperimentConfig;
use symqaoa_cli::output::canonical;
use symqaoa_cli::verify::{run_suite, Status, Suite};
use symqaoa_cli::{EXIT_CONFIG, EXIT_REFUSED, EXIT_VERIFICATION};
use symqaoa_core::combinatorics::{content, Cell, Partition};

const HAMMING4: &str = r#"
[problem]
n = 4
d = 2
constant = 4.0
linear = [-3.0, -3.0, -3.0, -3.0]
quadratic = [
  { i = 1, j = 2, value = 2.0 }, { i = 1, j = 3, value = 2.0 }, { i = 1, j = 4, value = 2.0 },
  { i = 2, j = 3, value = 2.0 }, { i = 2, j = 4, value = 2.0 }, { i = 3, j = 4, value = 2.0 },
]

[run]
depth = 2
budget = 200
seed = 3
sectors = "all"
sweep = { depths = [1, 2, 4], delta = 0.4 }
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symqaoa"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn invoke(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn read_json(prefix: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(prefix.with_extension("json")).unwrap()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sectors_for_seven_ternary_sites() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "[problem]\nn = 7\nd = 3\n");
    let out = dir.path().join("t");
    let o = invoke(&["sectors", "--config", s(&cfg), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = read_json(&out);
    assert_valid("sectors", &doc);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 8);
    assert_eq!(doc["total"], 2187);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "shape,dim_s,dim_v,product,hook_k,polynomial_degree");
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn sectors_small_total_and_cap_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "a.toml", "[problem]\nn = 2\nd = 2\n");
    let out = dir.path().join("a");
    assert!(invoke(&["sectors", "--config", s(&cfg), "--out", s(&out)]).status.success());
    assert_eq!(read_json(&out)["total"], 4);

    let cfg = write_config(dir.path(), "b.toml", "[problem]\nn = 13\nd = 3\n");
    let o = invoke(&["sectors", "--config", s(&cfg), "--out", s(&dir.path().join("b"))]);
    assert_eq!(o.status.code(), Some(EXIT_REFUSED));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", "[problem]\nn = 2\nd = 2\nextra = 1\n");
    let o = invoke(&["sectors", "--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(EXIT_CONFIG));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4") && err.contains("extra"), "{err}");
    assert_eq!(invoke(&["run"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(invoke(&["bogus-subcommand"]).status.code(), Some(EXIT_CONFIG));
}

#[test]
fn run_emits_full_and_sector_records() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "h.toml", HAMMING4);
    let out = dir.path().join("h");
    let o = invoke(&["run", "--config", s(&cfg), "--out", s(&out), "--jobs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = read_json(&out);
    assert_valid("run", &doc);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    assert_eq!(records[0]["kind"], "full");
    let shapes: Vec<&Value> = records[1..].iter().map(|r| &r["shape"]).collect();
    assert_eq!(shapes, [&serde_json::json!([4]), &serde_json::json!([3, 1]), &serde_json::json!([2, 2])]);
    for r in &records[1..] {
        assert!(r["leakage"].as_f64().unwrap() < 1e-8);
    }
    let sweep: Vec<u64> = records[0]["p_sweep"].as_array().unwrap().iter().map(|x| x["p"].as_u64().unwrap()).collect();
    assert_eq!(sweep, [1, 2, 4]);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), RUN_CSV.join(","));
}

#[test]
fn run_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "h.toml", HAMMING4);
    let mut docs = Vec::new();
    for (k, jobs) in ["1", "3", "1"].iter().enumerate() {
        let out = dir.path().join(format!("r{k}"));
        assert!(invoke(&["run", "--config", s(&cfg), "--out", s(&out), "--jobs", jobs]).status.success());
        docs.push(std::fs::read_to_string(out.with_extension("json")).unwrap());
    }
    assert_eq!(canonical(&docs[0]).unwrap(), canonical(&docs[1]).unwrap());
    let strip = |t: &str| {
        let mut v: Value = serde_json::from_str(t).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        symqaoa_cli::output::to_json(&v).unwrap()
    };
    assert_eq!(strip(&docs[0]), strip(&docs[2]));

    let other = dir.path().join("seeded");
    assert!(invoke(&["run", "--config", s(&cfg), "--out", s(&other), "--seed", "99"]).status.success());
    let seeded = canonical(&std::fs::read_to_string(other.with_extension("json")).unwrap()).unwrap();
    assert_eq!(seeded["seed"], 99);
    assert_ne!(seeded, canonical(&docs[0]).unwrap());
}

#[test]
fn depth_zero_reports_initial_expectation() {
    let cfg = ExperimentConfig::from_toml(&HAMMING4.replace("depth = 2", "depth = 0")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("p0").to_str().unwrap().to_string();
    let ctx = Context {
        config: cfg,
        seed: None,
        prefix: prefix.clone(),
    };
    symqaoa_cli::commands::run(&ctx).unwrap();
    let doc = read_json(Path::new(&prefix));
    let records = doc["records"].as_array().unwrap();
    // uniform start: mean of (w - 2)^2 over 16 strings is 1; ξ_(4) = |0000>, ξ_(3,1) has weight 1, ξ_(2,2) weight 2
    let want = [1.0, 4.0, 1.0, 0.0];
    for (r, w) in records.iter().zip(want) {
        assert!((r["achieved"].as_f64().unwrap() - w).abs() < 1e-12, "{r}");
    }
}

#[test]
fn asymmetric_objective_is_refused_with_permutation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "k.toml", "[problem]\nn = 3\nd = 2\nlinear = [1.0, 0.0, 0.0]\n[run]\nsectors = \"all\"\n");
    let o = invoke(&["run", "--config", s(&cfg), "--out", s(&dir.path().join("k"))]);
    assert_eq!(o.status.code(), Some(EXIT_REFUSED));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[2, 1, 3]"));

    let cfg = write_config(dir.path(), "f.toml", "[problem]\nn = 3\nd = 2\nlinear = [1.0, 0.0, 0.0]\n[run]\nsectors = \"none\"\n");
    assert!(invoke(&["run", "--config", s(&cfg), "--out", s(&dir.path().join("f"))]).status.success());
}

#[test]
fn orbits_of_s3_on_bits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "o.toml",
        "[problem]\nn = 3\nd = 2\nlinear = [1.0, 1.0, 1.0]\n[run]\ndepth = 2\nbudget = 100\n[symmetry]\ngenerators = [[2, 1, 3], [2, 3, 1]]\n",
    );
    let out = dir.path().join("o");
    let o = invoke(&["orbits", "--config", s(&cfg), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = read_json(&out);
    assert_valid("orbits", &doc);
    assert_eq!(doc["m"], 4);
    assert_eq!(doc["reciprocal_sum"], "4");
    assert_eq!(doc["invariance"]["pass"], true);
}

#[test]
fn orbits_trivial_group_and_bad_generators() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t.toml", "[problem]\nn = 3\nd = 3\n[symmetry]\ngenerators = []\n");
    let out = dir.path().join("t");
    assert!(invoke(&["orbits", "--config", s(&cfg), "--out", s(&out)]).status.success());
    assert_eq!(read_json(&out)["m"], 27);

    let cfg = write_config(dir.path(), "x.toml", "[problem]\nn = 3\nd = 2\n[symmetry]\ngenerators = [[1, 1, 2]]\n");
    assert_eq!(invoke(&["orbits", "--config", s(&cfg)]).status.code(), Some(EXIT_CONFIG));

    let cfg = write_config(
        dir.path(),
        "y.toml",
        "[problem]\nn = 3\nd = 2\nlinear = [1.0, 2.0, 2.0]\n[symmetry]\ngenerators = [[1, 3, 2], [2, 1, 3]]\n",
    );
    let o = invoke(&["orbits", "--config", s(&cfg), "--out", s(&dir.path().join("y"))]);
    assert_eq!(o.status.code(), Some(EXIT_REFUSED));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generator 2"));
}

#[test]
fn verify_small_suite_passes_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "v.toml", "[verify]\nmax_n = 4\nmax_d = 2\n");
    let out = dir.path().join("v");
    let o = invoke(&["verify", "--config", s(&cfg), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let doc = read_json(&out);
    assert_valid("verify", &doc);
    assert_eq!(doc["passed"], true);
    assert!(!doc["report_only"]["pf"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&o.stdout).contains("report-only:"));
}

fn content_sign_error(shape: &Partition, cell: Cell) -> symqaoa_core::Result<i64> {
    content(shape, cell).map(|c| -c)
}

#[test]
fn verify_names_the_mutated_check() {
    let report = run_suite(&Suite::new(4, 2).with_content(content_sign_error)).unwrap();
    assert!(!report.passed);
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect();
    assert_eq!(failed, ["yjm-contents"]);

    let dir = tempfile::tempdir().unwrap();
    let ctx = Context {
        config: ExperimentConfig::default(),
        seed: None,
        prefix: dir.path().join("m").to_str().unwrap().to_string(),
    };
    let err = symqaoa_cli::commands::verify(&ctx, Some(Suite::new(3, 2).with_content(content_sign_error))).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_VERIFICATION);
    assert!(err.to_string().contains("FAIL yjm-contents"));
}
