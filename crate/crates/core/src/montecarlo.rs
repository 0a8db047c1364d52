//! Seeded Monte Carlo estimation of union probabilities.
//!
//! Each trial draws its own counter-derived substream of the master
//! seed, so the estimate is a pure function of `(model, seed, trials)`
//! and does not depend on how trials are chunked across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{BlockFamily, Markov2Model};

/// Trial count, master seed, and worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64, workers: usize) -> Result<Self> {
        if trials < 1 {
            return Err(Error::invalid("need at least one trial"));
        }
        if workers < 1 {
            return Err(Error::invalid("need at least one worker"));
        }
        Ok(McConfig {
            trials,
            seed,
            workers,
        })
    }
}

/// Point estimate with its normal-approximation 95% interval.
///
/// Degenerate estimates (exactly 0 or 1) get a rule-of-three flavoured
/// widening instead of the zero-width normal interval:
/// `[max(0, est - 1/trials), min(1, est + 3/trials)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
}

/// A model the estimator knows how to sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McModel {
    Markov2(Markov2Model<f64>),
    Block(BlockFamily<f64>),
}

/// One stationary path of the two-state chain, fully determined by
/// `stream_seed`.
pub fn sample_markov2(a: f64, b: f64, n: usize, stream_seed: u64) -> Result<Vec<bool>> {
    let model = Markov2Model::new(a, b, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    let mut path = Vec::with_capacity(n);
    let mut state = rng.random::<f64>() < model.stationary_p();
    path.push(state);
    for _ in 1..n {
        state = if state {
            !(rng.random::<f64>() < b)
        } else {
            rng.random::<f64>() < a
        };
        path.push(state);
    }
    Ok(path)
}

/// Whether the union event fires on one sampled trajectory. Stops at
/// the first hit; the prefix of the trial's substream it consumes is
/// the same either way.
fn trial_hits(model: &McModel, rng: &mut ChaCha8Rng) -> bool {
    match model {
        McModel::Markov2(chain) => {
            let p = chain.stationary_p();
            let mut state = rng.random::<f64>() < p;
            if state {
                return true;
            }
            for _ in 1..chain.n() {
                state = if state {
                    !(rng.random::<f64>() < chain.b())
                } else {
                    rng.random::<f64>() < chain.a()
                };
                if state {
                    return true;
                }
            }
            false
        }
        McModel::Block(family) => {
            // the union over all events equals the union over the q blocks
            let p = family.p();
            (0..family.q()).any(|_| rng.random::<f64>() < p)
        }
    }
}

fn count_hits(model: &McModel, seed: u64, trials: std::ops::Range<u64>) -> u64 {
    let mut hits = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in trials {
        rng.set_stream(trial);
        rng.set_word_pos(0);
        if trial_hits(model, &mut rng) {
            hits += 1;
        }
    }
    hits
}

/// Estimates `P(⋃ A_k)` for the model by `cfg.trials` independent
/// trajectories. Identical `(model, seed, trials)` give bit-identical
/// results for any worker count.
pub fn estimate_union(model: &McModel, cfg: &McConfig) -> Result<McEstimate> {
    if cfg.trials < 1 || cfg.workers < 1 {
        return Err(Error::invalid("trials and workers must be positive"));
    }
    let trials = cfg.trials;
    let workers = cfg.workers.min(trials as usize).max(1);

    let hits: u64 = if workers == 1 {
        count_hits(model, cfg.seed, 0..trials)
    } else {
        let chunk = trials.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(trials);
                    scope.spawn(move || count_hits(model, cfg.seed, lo..hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .sum()
        })
    };

    let n = trials as f64;
    let estimate = hits as f64 / n;
    let stderr = (estimate * (1.0 - estimate) / n).sqrt();
    let ci95 = if estimate == 0.0 || estimate == 1.0 {
        ((estimate - 1.0 / n).max(0.0), (estimate + 3.0 / n).min(1.0))
    } else {
        (
            (estimate - 1.96 * stderr).max(0.0),
            (estimate + 1.96 * stderr).min(1.0),
        )
    };
    Ok(McEstimate {
        estimate,
        stderr,
        ci95,
    })
}
