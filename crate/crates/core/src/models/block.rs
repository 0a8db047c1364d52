//! The duplicated-block family: `q` independent events, each repeated
//! `m + 1` consecutive times.
//!
//! The family is `m`-dependent with fully dependent events inside a
//! block, and it asymptotically saturates the `1/(m+1)` spacing
//! constant in the low-probability, many-block regime — which is what
//! the sharpness scanner probes.

use serde::{Deserialize, Serialize};

use crate::band::IntersectionBand;
use crate::error::{Error, Result};
use crate::float::Real;
use crate::marginals::MarginalSequence;
use crate::models::joint::{JointTableModel, MAX_TABLE_BITS};

/// Events `A_{(j-1)(m+1)+r} := B_j` for independent `B_1..B_q` with
/// `P(B_j) = p`, so `N = (m+1) q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockFamily<F: Real> {
    m: usize,
    p: F,
    q: usize,
}

impl<F: Real> BlockFamily<F> {
    pub fn new(m: usize, p: F, q: usize) -> Result<Self> {
        if !(p > F::zero() && p < F::one()) {
            return Err(Error::invalid(format!(
                "block probability {} must lie in (0,1)",
                p.as_f64()
            )));
        }
        if q < 1 {
            return Err(Error::invalid("block count must be at least 1"));
        }
        Ok(BlockFamily { m, p, q })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> F {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        (self.m + 1) * self.q
    }

    /// Constant marginals `p, ..., p` of length `N = (m+1) q`.
    pub fn marginals(&self) -> MarginalSequence<F> {
        MarginalSequence::constant(self.p, self.n()).expect("p is in (0,1)")
    }

    /// `S_N = (m+1) q p`.
    pub fn total_mass(&self) -> F {
        F::from_count(self.n()) * self.p
    }

    /// `P(⋃ A_k) = P(⋃ B_j) = 1 - (1-p)^q`.
    pub fn exact_union(&self) -> F {
        F::one() - (F::one() - self.p).powf(F::from_count(self.q))
    }

    /// `P(A_i ∩ A_j)`: `p` inside a block, `p^2` across blocks.
    pub fn pair_intersection(&self, i: usize, j: usize) -> Result<F> {
        let n = self.n();
        for k in [i, j] {
            if k < 1 || k > n {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
        }
        let block = |k: usize| (k - 1) / (self.m + 1);
        Ok(if block(i) == block(j) {
            self.p
        } else {
            self.p * self.p
        })
    }

    /// All pairwise intersections as a full-bandwidth band.
    pub fn intersection_band(&self) -> Result<IntersectionBand<F>> {
        let n = self.n();
        if n == 1 {
            return IntersectionBand::empty(1, 1);
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                pairs.push((i, j, self.pair_intersection(i, j)?));
            }
        }
        IntersectionBand::new(n, n - 1, pairs)
    }

    /// Expands into an explicit joint table (`N <= 20`). Only outcome
    /// strings whose bits are constant within each block carry weight.
    pub fn to_joint_table(&self) -> Result<JointTableModel<F>> {
        let n = self.n();
        if n > MAX_TABLE_BITS {
            return Err(Error::invalid(format!(
                "block family over {n} events exceeds the budget of {MAX_TABLE_BITS}"
            )));
        }
        let mut weights = vec![F::zero(); 1usize << n];
        for pattern in 0..(1usize << self.q) {
            let mut index = 0usize;
            let mut weight = F::one();
            for j in 0..self.q {
                if pattern >> j & 1 == 1 {
                    // all m+1 bits of block j set
                    let ones = (1usize << (self.m + 1)) - 1;
                    index |= ones << (j * (self.m + 1));
                    weight = weight * self.p;
                } else {
                    weight = weight * (F::one() - self.p);
                }
            }
            weights[index] = weight;
        }
        JointTableModel::new(n, weights)
    }
}
