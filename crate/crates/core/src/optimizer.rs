//! Budget-bounded Nelder–Mead simplex search with seeded random restarts.
//!
//! Every coordinate lives on a periodic interval `[lo, hi)` and is wrapped
//! before evaluation. The sequence of evaluated points depends only on the
//! seed and the per-restart limit, never on the total budget, so a larger
//! budget replays a smaller one as a prefix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Total objective evaluations.
    pub budget: usize,
    pub seed: u64,
    /// Evaluations allowed per simplex run before restarting.
    pub evals_per_restart: usize,
    /// Starting point of the first run; random if absent.
    pub initial: Option<Vec<f64>>,
    /// Stop a run once the simplex values agree to this tolerance.
    pub value_tol: f64,
}

impl SearchOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            budget,
            seed,
            evals_per_restart: 400,
            initial: None,
            value_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    /// 1-based evaluation count at which the best value improved.
    pub evaluation: usize,
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub restarts: usize,
    /// Best-so-far improvements; values strictly decrease.
    pub trace: Vec<TraceEntry>,
}

struct Evaluator<'a, F> {
    f: &'a mut F,
    domain: &'a [(f64, f64)],
    budget: usize,
    used: usize,
    best: Option<(Vec<f64>, f64)>,
    trace: Vec<TraceEntry>,
}

impl<F: FnMut(&[f64]) -> f64> Evaluator<'_, F> {
    fn wrap(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.domain)
            .map(|(&v, &(lo, hi))| lo + (v - lo).rem_euclid(hi - lo))
            .collect()
    }

    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.budget {
            return None;
        }
        let point = self.wrap(x);
        let value = (self.f)(&point);
        self.used += 1;
        let improved = match &self.best {
            None => true,
            Some((_, b)) => value < *b,
        };
        if improved {
            self.trace.push(TraceEntry {
                evaluation: self.used,
                point: point.clone(),
                value,
            });
            self.best = Some((point, value));
        }
        Some(value)
    }
}

fn add_scaled(base: &[f64], dir: &[f64], t: f64) -> Vec<f64> {
    base.iter().zip(dir).map(|(b, d)| b + t * d).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// One simplex descent from `start`. Returns `None` when the budget ran out.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(ev: &mut Evaluator<'_, F>, start: &[f64], limit: usize, tol: f64) -> Option<()> {
    let dim = start.len();
    let stop_at = ev.used + limit;
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = ev.eval(start)?;
    simplex.push((start.to_vec(), v0));
    for i in 0..dim {
        let (lo, hi) = ev.domain[i];
        let mut x = start.to_vec();
        x[i] += (hi - lo) / 8.0;
        let v = ev.eval(&x)?;
        simplex.push((x, v));
    }
    while ev.used < stop_at {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if (worst - best).abs() <= tol {
            break;
        }
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let away = sub(&centroid, &simplex[dim].0);
        let xr = add_scaled(&centroid, &away, REFLECTION);
        let fr = ev.eval(&xr)?;
        if fr < best {
            let xe = add_scaled(&centroid, &away, REFLECTION * EXPANSION);
            let fe = ev.eval(&xe)?;
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (xc, fc, accept) = if fr < worst {
            let xc = add_scaled(&centroid, &away, REFLECTION * CONTRACTION);
            let fc = ev.eval(&xc)?;
            (xc, fc, fc <= fr)
        } else {
            let xc = add_scaled(&centroid, &away, -CONTRACTION);
            let fc = ev.eval(&xc)?;
            (xc, fc, fc < worst)
        };
        if accept {
            simplex[dim] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = add_scaled(&anchor, &sub(&vertex.0, &anchor), SHRINK);
            let v = ev.eval(&x)?;
            *vertex = (x, v);
        }
    }
    Some(())
}

/// Minimizes `f` over the periodic box `domain` within `options.budget` evaluations.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, domain: &[(f64, f64)], options: &SearchOptions) -> SearchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut ev = Evaluator {
        f: &mut f,
        domain,
        budget: options.budget,
        used: 0,
        best: None,
        trace: Vec::new(),
    };
    let limit = options.evals_per_restart.max(domain.len() + 2);
    let mut restarts = 0;
    loop {
        let start: Vec<f64> = match (&options.initial, restarts) {
            (Some(x), 0) => x.clone(),
            _ => domain.iter().map(|&(lo, hi)| rng.random_range(lo..hi)).collect(),
        };
        if domain.is_empty() {
            ev.eval(&start);
            break;
        }
        if nelder_mead(&mut ev, &start, limit, options.value_tol).is_none() || ev.used >= ev.budget {
            break;
        }
        restarts += 1;
    }
    let (best_point, best_value) = ev.best.clone().unwrap_or((Vec::new(), f64::NAN));
    SearchOutcome {
        best_point,
        best_value,
        evaluations: ev.used,
        restarts,
        trace: ev.trace,
    }
}
