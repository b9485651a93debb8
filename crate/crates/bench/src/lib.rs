//! Shared fixtures for the benchmarks in `benches/`.

use symqaoa_core::hamiltonians::ProblemSpec;

/// `(Σ x_k - n/2)^2` over `d`-ary digits.
pub fn count_objective(n: usize, d: usize) -> ProblemSpec {
    let target = n as f64 / 2.0;
    ProblemSpec::from_fn(n, d, |xs| (xs.iter().sum::<usize>() as f64 - target).powi(2))
        .expect("fixture sizes are within the cap")
}
