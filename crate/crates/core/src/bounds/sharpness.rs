//! Scanner for the universal spacing constant.
//!
//! A constant `c` admits a bound of the form `1 - exp(-c S_N)` over all
//! `m`-dependent families only if `-log(1-p) >= c (m+1) p` for every
//! `p in (0,1)` — the duplicated-block family turns any violating `p`
//! into a counterexample. Since `inf_p (-log(1-p))/p = 1`, the scan
//! finds witnesses exactly for `c > 1/(m+1)` once the grid reaches far
//! enough towards 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::Real;
use crate::models::BlockFamily;

/// A candidate constant `c` to test against range-`m` dependence, a
/// probability grid to test on, and the block count `q` used when a
/// witness is expanded into a concrete family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub struct SharpnessQuery<F: Real> {
    pub m: usize,
    pub c: F,
    pub p_grid: Vec<F>,
    pub q: usize,
}

impl<F: Real> SharpnessQuery<F> {
    pub fn new(m: usize, c: F, p_grid: Vec<F>, q: usize) -> Result<Self> {
        if !(c > F::zero()) {
            return Err(Error::invalid("candidate constant must be positive"));
        }
        if q < 1 {
            return Err(Error::invalid("block count must be at least 1"));
        }
        if p_grid.is_empty() {
            return Err(Error::invalid("probability grid must be non-empty"));
        }
        for (idx, &p) in p_grid.iter().enumerate() {
            if !(p > F::zero() && p < F::one()) {
                return Err(Error::InvalidProbability {
                    index: idx + 1,
                    value: p.as_f64(),
                });
            }
        }
        Ok(SharpnessQuery { m, c, p_grid, q })
    }

    /// Expands a grid point into the concrete duplicated-block family
    /// with this query's range `m` and block count `q`. For a witness
    /// `p`, the family's exact union sits strictly below
    /// `1 - exp(-c S_N)`, disproving the candidate constant.
    pub fn family_at(&self, p: F) -> Result<BlockFamily<F>> {
        BlockFamily::new(self.m, p, self.q)
    }
}

/// Outcome of a grid scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub enum SharpnessVerdict<F: Real> {
    /// `-log(1-p) >= c (m+1) p` held at every grid point.
    NoViolation,
    /// First grid point where the test inequality fails.
    Witness { p: F, lhs: F, rhs: F },
}

/// Tests `-log(1-p) >= c (m+1) p` at each grid point in order and
/// reports the first violation, if any.
pub fn sharpness_scan<F: Real>(query: &SharpnessQuery<F>) -> SharpnessVerdict<F> {
    let factor = query.c * F::from_count(query.m + 1);
    for &p in &query.p_grid {
        let lhs = -(-p).ln_1p();
        let rhs = factor * p;
        if lhs < rhs {
            return SharpnessVerdict::Witness { p, lhs, rhs };
        }
    }
    SharpnessVerdict::NoViolation
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_spaced_grid<F: Real>(lo: F, hi: F, count: usize) -> Result<Vec<F>> {
    if !(lo > F::zero() && hi > lo) {
        return Err(Error::invalid("need 0 < lo < hi"));
    }
    if count < 2 {
        return Err(Error::invalid("need at least two grid points"));
    }
    let log_lo = lo.ln();
    let log_hi = hi.ln();
    let step = (log_hi - log_lo) / F::from_count(count - 1);
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                (log_lo + step * F::from_count(i)).exp()
            }
        })
        .collect())
}
