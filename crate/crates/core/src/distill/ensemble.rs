//! Pair-level Monte Carlo of the pipeline.
//!
//! Each stage draws its random numbers in fixed-size chunks of work items;
//! chunk c of stage k uses stream `stage_stream(k, c)`, so the outcome does
//! not depend on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{pipeline_report, DistillationReport, Outcome, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::qstate::DensityMatrix;
use crate::rng;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    /// Number of stages this pair has come through.
    pub state_id: u32,
    pub alive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleState {
    pub pair_count: usize,
    pub rng_seed: u64,
    pub pairs: Vec<PairRecord>,
}

impl EnsembleState {
    pub fn new(pair_count: usize, rng_seed: u64) -> Self {
        Self { pair_count, rng_seed, pairs: vec![PairRecord { state_id: 0, alive: true }; pair_count] }
    }

    pub fn alive_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.alive).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleOptions {
    pub n_pairs: usize,
    pub f_target: f64,
    pub max_steps: usize,
    pub seed: u64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRun {
    pub report: DistillationReport,
    pub n_pairs: usize,
    pub seed: u64,
    pub surviving_pairs: usize,
    /// Alive pairs after each stage.
    pub stage_survivors: Vec<usize>,
    pub empirical_efficiency: f64,
    pub expected_survivors: f64,
    /// Standard deviation of the survivor count under the binomial chain.
    pub sigma: f64,
    pub z_score: f64,
    pub within_5_sigma: bool,
}

pub fn simulate_ensemble(rho: &DensityMatrix, n_pairs: usize, f_target: f64, seed: u64) -> Result<EnsembleRun> {
    simulate_ensemble_with(rho, &EnsembleOptions { n_pairs, f_target, max_steps: DEFAULT_MAX_STEPS, seed, workers: 0 })
}

pub fn simulate_ensemble_with(rho: &DensityMatrix, opts: &EnsembleOptions) -> Result<EnsembleRun> {
    if opts.n_pairs < 2 {
        return Err(Error::InvalidParameter {
            name: "n_pairs",
            value: opts.n_pairs as f64,
            reason: "need at least two pairs",
        });
    }
    let report = pipeline_report(rho, opts.f_target, opts.max_steps)?;
    match report.outcome {
        Outcome::Reached => {}
        Outcome::NotDistillable => return Err(Error::NotDistillable { min_eigenvalue: report.min_pt_eigenvalue }),
        Outcome::TargetUnreachable => {
            return Err(Error::TargetUnreachable {
                steps: opts.max_steps,
                fidelity: report.final_fidelity(),
                target: opts.f_target,
            })
        }
    }

    let mut ensemble = EnsembleState::new(opts.n_pairs, opts.seed);
    let run = |ensemble: &mut EnsembleState| -> Vec<usize> {
        report
            .stages
            .iter()
            .enumerate()
            .map(|(k, stage)| {
                let id = k as u32 + 1;
                if stage.pairs_consumed_ratio == 1.0 {
                    filter_stage(ensemble, id, stage.pass_probability)
                } else {
                    purify_stage(ensemble, id, stage.pass_probability)
                }
            })
            .collect()
    };
    let stage_survivors = if opts.workers == 0 {
        run(&mut ensemble)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|_| Error::InvalidParameter {
                name: "workers",
                value: opts.workers as f64,
                reason: "thread pool could not start",
            })?;
        pool.install(|| run(&mut ensemble))
    };

    let surviving_pairs = ensemble.alive_count();
    let (mean, var) = survivor_moments(&report, opts.n_pairs);
    let sigma = var.sqrt();
    let diff = surviving_pairs as f64 - mean;
    let z_score = if sigma > 0.0 { diff / sigma } else { 0.0 };
    Ok(EnsembleRun {
        n_pairs: opts.n_pairs,
        seed: opts.seed,
        surviving_pairs,
        stage_survivors,
        empirical_efficiency: surviving_pairs as f64 / opts.n_pairs as f64,
        expected_survivors: mean,
        sigma,
        z_score,
        within_5_sigma: diff.abs() <= 5.0 * sigma,
        report,
    })
}

/// Mean and variance of the survivor count. A filter stage is Bin(N, p);
/// a purification stage is Bin(N/2, q), giving
/// E' = qE/2 and Var' = q(1−q)E/2 + q²Var/4.
fn survivor_moments(report: &DistillationReport, n_pairs: usize) -> (f64, f64) {
    let mut mean = n_pairs as f64;
    let mut var = 0.0;
    for s in &report.stages {
        let q = s.pass_probability;
        let m = mean / s.pairs_consumed_ratio;
        let v = var / (s.pairs_consumed_ratio * s.pairs_consumed_ratio);
        var = q * (1.0 - q) * m + q * q * v;
        mean = q * m;
    }
    (mean, var)
}

/// Bernoulli trials, one per work item, in chunked streams.
fn draw(seed: u64, stage: u32, items: usize, p: f64) -> Vec<bool> {
    let mut out = vec![false; items];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
        let mut r = rng::stream(seed, rng::stage_stream(stage, c as u32));
        for x in chunk {
            *x = r.random::<f64>() < p;
        }
    });
    out
}

fn filter_stage(ensemble: &mut EnsembleState, stage: u32, p: f64) -> usize {
    let passed = draw(ensemble.rng_seed, stage, ensemble.pairs.len(), p);
    for (pair, ok) in ensemble.pairs.iter_mut().zip(passed) {
        if pair.alive {
            pair.alive = ok;
            pair.state_id = stage;
        }
    }
    ensemble.alive_count()
}

/// Pairs up survivors in index order; the first of each couple is kept on
/// success, the second is always consumed, an odd leftover is discarded.
fn purify_stage(ensemble: &mut EnsembleState, stage: u32, q: f64) -> usize {
    let alive: Vec<usize> = (0..ensemble.pairs.len()).filter(|&i| ensemble.pairs[i].alive).collect();
    let success = draw(ensemble.rng_seed, stage, alive.len() / 2, q);
    for &i in &alive {
        ensemble.pairs[i].alive = false;
    }
    for (couple, ok) in alive.chunks_exact(2).zip(success) {
        let kept = &mut ensemble.pairs[couple[0]];
        kept.alive = ok;
        kept.state_id = stage;
    }
    ensemble.alive_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{eq10_state, random_separable, werner_state};

    fn opts(n_pairs: usize, seed: u64, workers: usize) -> EnsembleOptions {
        EnsembleOptions { n_pairs, f_target: 0.9, max_steps: 50, seed, workers }
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let rho = eq10_state(0.9f64.sqrt(), 0.1f64.sqrt(), 0.8).unwrap();
        let a = simulate_ensemble_with(&rho, &opts(50_000, 7, 1)).unwrap();
        let b = simulate_ensemble_with(&rho, &opts(50_000, 7, 4)).unwrap();
        let c = simulate_ensemble_with(&rho, &opts(50_000, 7, 0)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = simulate_ensemble_with(&rho, &opts(50_000, 8, 1)).unwrap();
        assert_ne!(a.stage_survivors, d.stage_survivors);
    }

    #[test]
    fn identity_filter_keeps_every_pair() {
        let run = simulate_ensemble(&werner_state(0.75).unwrap(), 10_000, 0.85, 1).unwrap();
        assert_eq!(run.stage_survivors[0], 10_000);
    }

    #[test]
    fn agrees_with_exact_efficiency() {
        let rho = eq10_state(0.8f64.sqrt(), 0.2f64.sqrt(), 0.3).unwrap();
        for seed in 0..5 {
            let run = simulate_ensemble_with(&rho, &opts(200_000, seed, 0)).unwrap();
            assert!(run.within_5_sigma, "seed {seed}: z = {}", run.z_score);
            let expect = run.report.cumulative_efficiency * run.n_pairs as f64;
            assert!((run.expected_survivors - expect).abs() < 1e-6 * expect);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let w = werner_state(0.75).unwrap();
        assert!(simulate_ensemble(&w, 1, 0.9, 0).is_err());
        let sep = random_separable(2, 2).unwrap();
        assert!(matches!(simulate_ensemble(&sep, 100, 0.9, 0), Err(Error::NotDistillable { .. })));
    }

    #[test]
    fn ensemble_state_counts() {
        let mut e = EnsembleState::new(10, 3);
        assert_eq!(e.alive_count(), 10);
        purify_stage(&mut e, 1, 1.0);
        assert_eq!(e.alive_count(), 5);
        assert!(e.alive_count() <= e.pair_count);
    }
}
