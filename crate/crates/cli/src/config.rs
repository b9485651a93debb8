//! Experiment configuration files (TOML). Sites and digits are 1-based in
//! the file and converted to the 0-based core API here.

use std::path::Path;

use serde::Deserialize;
use symqaoa_core::combinatorics::{partitions, Partition};
use symqaoa_core::hamiltonians::{default_epsilon, ProblemSpec};
use symqaoa_core::perm::Permutation;
use symqaoa_core::qaoa::ChainOrder;
use symqaoa_core::symmetry::{digit_relabel_action, site_permutation_action};

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Option<ProblemSection>,
    pub run: Option<RunSection>,
    pub symmetry: Option<SymmetrySection>,
    pub output: Option<OutputSection>,
    pub verify: Option<VerifySection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub n: usize,
    pub d: usize,
    #[serde(default)]
    pub constant: f64,
    pub linear: Option<Vec<f64>>,
    #[serde(default)]
    pub quadratic: Vec<QuadraticTerm>,
    /// `F(x)` for every string in index order.
    pub table: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticTerm {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default = "default_depth")]
    pub depth: usize,
    pub epsilon: Option<f64>,
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub chain_order: ChainOrder,
    #[serde(default)]
    pub sectors: SectorSelection,
    #[serde(default = "default_true")]
    pub full: bool,
    pub sweep: Option<SweepSection>,
}

/// Interpolation-schedule expectations at several depths, alongside the optimized run.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub depths: Vec<usize>,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_delta() -> f64 {
    0.5
}

fn default_depth() -> usize {
    1
}

fn default_budget() -> usize {
    500
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SectorSelection {
    /// `"all"` or `"none"`.
    Keyword(String),
    List(Vec<Vec<usize>>),
}

impl Default for SectorSelection {
    fn default() -> Self {
        Self::Keyword("all".into())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySection {
    pub generators: Vec<GeneratorSpec>,
}

/// A site permutation, optionally composed with the same digit relabeling on every site.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Sites(Vec<usize>),
    Composite {
        sites: Option<Vec<usize>>,
        relabel: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub prefix: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    #[serde(default = "default_max_d")]
    pub max_d: usize,
}

fn default_max_n() -> usize {
    6
}

fn default_max_d() -> usize {
    3
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            max_n: default_max_n(),
            max_d: default_max_d(),
        }
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn problem(&self) -> Result<&ProblemSection, CliError> {
        self.problem.as_ref().ok_or_else(|| invalid("problem", "section missing"))
    }

    pub fn run(&self) -> Result<&RunSection, CliError> {
        self.run.as_ref().ok_or_else(|| invalid("run", "section missing"))
    }
}

impl ProblemSection {
    pub fn to_spec(&self) -> Result<ProblemSpec, CliError> {
        let (n, d) = (self.n, self.d);
        if n == 0 {
            return Err(invalid("problem.n", "must be positive"));
        }
        if d == 0 {
            return Err(invalid("problem.d", "must be positive"));
        }
        if let Some(table) = &self.table {
            if self.linear.is_some() || !self.quadratic.is_empty() || self.constant != 0.0 {
                return Err(invalid("problem.table", "cannot be combined with constant, linear or quadratic"));
            }
            return ProblemSpec::table(n, d, table.clone()).map_err(|e| invalid("problem.table", e));
        }
        let linear = match &self.linear {
            Some(v) if v.len() != n => return Err(invalid("problem.linear", format!("expected {n} entries, found {}", v.len()))),
            Some(v) => v.clone(),
            None => vec![0.0; n],
        };
        let mut pairs = Vec::with_capacity(self.quadratic.len());
        for (k, t) in self.quadratic.iter().enumerate() {
            for (name, site) in [("i", t.i), ("j", t.j)] {
                if site == 0 || site > n {
                    return Err(invalid(&format!("problem.quadratic[{k}].{name}"), format!("site {site} outside 1..={n}")));
                }
            }
            pairs.push(((t.i - 1, t.j - 1), t.value));
        }
        ProblemSpec::quadratic(n, d, self.constant, linear, pairs).map_err(|e| invalid("problem", e))
    }
}

impl RunSection {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.budget == 0 {
            return Err(invalid("run.budget", "must be positive"));
        }
        if let Some(eps) = self.epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(invalid("run.epsilon", "must be a positive number"));
            }
        }
        Ok(())
    }

    pub fn epsilon(&self, n: usize, d: usize) -> f64 {
        self.epsilon.unwrap_or_else(|| default_epsilon(n, d))
    }

    /// Requested sectors in canonical order.
    pub fn sectors(&self, n: usize, d: usize) -> Result<Vec<Partition>, CliError> {
        match &self.sectors {
            SectorSelection::Keyword(k) if k == "all" => Ok(partitions(n, d)),
            SectorSelection::Keyword(k) if k == "none" => Ok(Vec::new()),
            SectorSelection::Keyword(k) => Err(invalid("run.sectors", format!("expected \"all\", \"none\" or a list of partitions, found \"{k}\""))),
            SectorSelection::List(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (k, parts) in list.iter().enumerate() {
                    let shape = Partition::of(n, parts.clone()).map_err(|e| invalid(&format!("run.sectors[{k}]"), e))?;
                    if shape.len() > d {
                        return Err(invalid(&format!("run.sectors[{k}]"), format!("{shape} has more than d = {d} rows")));
                    }
                    out.push(shape);
                }
                out.sort();
                out.dedup();
                Ok(out)
            }
        }
    }
}

/// A validated generator: its 1-based description and its action on string indices.
#[derive(Debug, Clone)]
pub struct Generator {
    pub sites: Vec<usize>,
    pub relabel: Vec<usize>,
    pub action: Vec<usize>,
}

impl SymmetrySection {
    pub fn generators(&self, n: usize, d: usize) -> Result<Vec<Generator>, CliError> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            let field = format!("symmetry.generators[{k}]");
            let (sites, relabel) = match g {
                GeneratorSpec::Sites(s) => (Some(s.clone()), None),
                GeneratorSpec::Composite { sites, relabel } => (sites.clone(), relabel.clone()),
            };
            let sites = sites.unwrap_or_else(|| (1..=n).collect());
            let relabel = relabel.unwrap_or_else(|| (1..=d).collect());
            if sites.len() != n {
                return Err(invalid(&field, format!("site images must have length n = {n}")));
            }
            if relabel.len() != d {
                return Err(invalid(&field, format!("digit relabeling must have length d = {d}")));
            }
            let sigma = Permutation::from_one_based(&sites).map_err(|e| invalid(&field, e))?;
            let rho = Permutation::from_one_based(&relabel).map_err(|e| invalid(&field, e))?;
            let site_action = site_permutation_action(n, d, &sigma).map_err(|e| invalid(&field, e))?;
            let digit_action = digit_relabel_action(n, d, &rho).map_err(|e| invalid(&field, e))?;
            let action = site_action.iter().map(|&y| digit_action[y]).collect();
            out.push(Generator { sites, relabel, action });
        }
        Ok(out)
    }
}
