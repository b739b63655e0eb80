//! Tightness of every bound against the oracle on generated matrices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sigma_bounds::{
    bound_report, generate, reference_sigma, BoundKind, BoundValue, GeneratorSpec, MatrixDescriptor, OracleConfig,
};
use std::collections::BTreeMap;

use crate::CliError;

/// Relative slack allowed when checking soundness against the oracle.
pub const SOUNDNESS_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub trial: usize,
    pub seed: u64,
    pub matrix: MatrixDescriptor,
    pub oracle_sigma: f64,
    pub oracle_converged: bool,
    pub bounds: BTreeMap<String, BoundValue>,
    /// `bound / sigma` per bound; absent when sigma = 0.
    pub tightness: BTreeMap<String, f64>,
    pub upper_ok: bool,
    pub lower_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub generator: String,
    pub seed: u64,
    pub trials: usize,
    pub r: usize,
    pub p: usize,
    pub rows: Vec<BenchRow>,
}

/// Seed of trial `k` in a run seeded with `seed`.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run_trial(spec: &GeneratorSpec, seed: u64, trial: usize, r: usize, p: usize) -> Result<BenchRow, CliError> {
    let s = trial_seed(seed, trial);
    let a = generate(spec, s)?;
    let rep = bound_report(&a, r, p, None)?;
    let oracle = reference_sigma(&a, &OracleConfig::default());
    let sigma = oracle.sigma;
    let mut tightness = BTreeMap::new();
    let mut upper_ok = true;
    let mut lower_ok = true;
    for (name, b) in &rep.bounds {
        if sigma > 0.0 {
            let t = b.value / sigma;
            tightness.insert(name.clone(), t);
            match b.kind {
                BoundKind::Upper => upper_ok &= t >= 1.0 - SOUNDNESS_SLACK,
                BoundKind::Lower => lower_ok &= t <= 1.0 + SOUNDNESS_SLACK,
                BoundKind::Estimate => {}
            }
        }
    }
    Ok(BenchRow {
        trial,
        seed: s,
        matrix: a.descriptor(),
        oracle_sigma: sigma,
        oracle_converged: oracle.converged,
        bounds: rep.bounds,
        tightness,
        upper_ok,
        lower_ok,
    })
}

/// Runs `trials` trials on the worker pool; rows come back in trial order.
pub fn run_bench(spec: &GeneratorSpec, seed: u64, trials: usize, r: usize, p: usize) -> Result<BenchReport, CliError> {
    let rows = (0..trials)
        .into_par_iter()
        .map(|k| run_trial(spec, seed, k, r, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BenchReport {
        generator: spec.to_string(),
        seed,
        trials,
        r,
        p,
        rows,
    })
}
