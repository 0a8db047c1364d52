//! Stationary two-state Markov chain with closed-form event structure.

use serde::{Deserialize, Serialize};

use crate::band::IntersectionBand;
use crate::error::{Error, Result};
use crate::float::Real;
use crate::marginals::MarginalSequence;
use crate::models::joint::{JointTableModel, MAX_TABLE_BITS};

/// The chain on `{0, 1}` with transition matrix
/// `[[1-a, a], [b, 1-b]]`, started from its stationary law, observed
/// for `N` steps; the events are `A_k = {X_k = 1}`.
///
/// Everything of interest is closed-form: the marginals are constant
/// `a/(a+b)`, the union probability is `1 - (b/(a+b))(1-a)^{N-1}`, the
/// stationary pair intersections follow from the `d`-step transition
/// probabilities, and `|1-a-b|^n` is an envelope for the chain's
/// uniform mixing coefficient at lag `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Markov2Model<F: Real> {
    a: F,
    b: F,
    n: usize,
}

impl<F: Real> Markov2Model<F> {
    pub fn new(a: F, b: F, n: usize) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v > F::zero() && v < F::one()) {
                return Err(Error::invalid(format!(
                    "transition probability {name} = {} must lie in (0,1)",
                    v.as_f64()
                )));
            }
        }
        if n < 1 {
            return Err(Error::invalid("chain length must be at least 1"));
        }
        Ok(Markov2Model { a, b, n })
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Second eigenvalue `λ = 1 - a - b` of the transition matrix.
    pub fn lambda(&self) -> F {
        F::one() - self.a - self.b
    }

    /// Stationary probability of state 1, `a/(a+b)`.
    pub fn stationary_p(&self) -> F {
        self.a / (self.a + self.b)
    }

    /// Constant marginal sequence `p, ..., p` with `p = a/(a+b)`.
    pub fn marginals(&self) -> MarginalSequence<F> {
        MarginalSequence::constant(self.stationary_p(), self.n)
            .expect("stationary probability is in (0,1)")
    }

    /// `P(⋃ A_k) = 1 - (b/(a+b)) (1-a)^{N-1}` at stationarity.
    pub fn exact_union(&self) -> F {
        let pi0 = F::one() - self.stationary_p();
        F::one() - pi0 * (F::one() - self.a).powf(F::from_count(self.n - 1))
    }

    /// `P(A_i ∩ A_{i+d})` at stationarity for gap `d >= 1`:
    /// `p (p + (1-p) λ^d)` with `p = a/(a+b)`.
    pub fn pair_intersection(&self, d: usize) -> Result<F> {
        if d < 1 {
            return Err(Error::invalid("pair gap must be at least 1"));
        }
        let p = self.stationary_p();
        let pi0 = F::one() - p;
        // signed power kept explicit; λ is negative when a + b > 1
        let magnitude = self.lambda().abs().powf(F::from_count(d));
        let lambda_pow = if self.lambda() < F::zero() && d % 2 == 1 {
            -magnitude
        } else {
            magnitude
        };
        Ok(p * (p + pi0 * lambda_pow))
    }

    /// Mixing envelope `min(1, |λ|^n)` for the chain's uniform
    /// coefficient at lag `n`.
    pub fn phi_envelope(&self, lag: usize) -> Result<F> {
        if lag < 1 {
            return Err(Error::invalid("lag must be at least 1"));
        }
        Ok(self.lambda().abs().powf(F::from_count(lag)).min(F::one()))
    }

    /// All pairwise intersections as a full-bandwidth band (the entry
    /// for `(i, j)` depends only on the gap `j - i`).
    pub fn intersection_band(&self) -> Result<IntersectionBand<F>> {
        if self.n == 1 {
            return IntersectionBand::empty(1, 1);
        }
        let mut pairs = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for d in 1..self.n {
            let v = self.pair_intersection(d)?;
            for i in 1..=(self.n - d) {
                pairs.push((i, i + d, v));
            }
        }
        IntersectionBand::new(self.n, self.n - 1, pairs)
    }

    /// Expands the chain into an explicit joint table (`N <= 20`):
    /// the weight of a path is its stationary initial mass times the
    /// product of one-step transition probabilities.
    pub fn to_joint_table(&self) -> Result<JointTableModel<F>> {
        if self.n > MAX_TABLE_BITS {
            return Err(Error::invalid(format!(
                "chain length {} exceeds the enumeration budget of {MAX_TABLE_BITS}",
                self.n
            )));
        }
        let p1 = self.stationary_p();
        let step = |from: usize, to: usize| -> F {
            match (from, to) {
                (0, 0) => F::one() - self.a,
                (0, 1) => self.a,
                (1, 0) => self.b,
                (1, 1) => F::one() - self.b,
                _ => unreachable!(),
            }
        };
        let size = 1usize << self.n;
        let mut weights = Vec::with_capacity(size);
        for s in 0..size {
            let first = s & 1;
            let mut w = if first == 1 { p1 } else { F::one() - p1 };
            for t in 1..self.n {
                w = w * step(s >> (t - 1) & 1, s >> t & 1);
            }
            weights.push(w);
        }
        JointTableModel::new(self.n, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_parameters() {
        assert!(Markov2Model::<f64>::new(0.0, 0.5, 3).is_err());
        assert!(Markov2Model::<f64>::new(0.5, 1.0, 3).is_err());
        assert!(Markov2Model::<f64>::new(0.5, 0.5, 0).is_err());
    }

    #[test]
    fn exact_union_reference_values() {
        let row1 = Markov2Model::<f64>::new(0.20, 0.30, 50).unwrap();
        let expected1 = 1.0 - 0.6 * 0.8f64.powi(49);
        assert!((row1.exact_union() - expected1).abs() < 1e-15);
        assert!((expected1 - 0.99999).abs() < 5e-6);

        let row2 = Markov2Model::<f64>::new(0.05, 0.15, 100).unwrap();
        let expected2 = 1.0 - 0.75 * 0.95f64.powi(99);
        assert!((row2.exact_union() - expected2).abs() < 1e-15);
        assert!((expected2 - 0.995).abs() < 5e-4);

        // single stationary event
        let single = Markov2Model::<f64>::new(0.2, 0.3, 1).unwrap();
        assert!((single.exact_union() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn stationary_pair_formula() {
        let m = Markov2Model::<f64>::new(0.2, 0.3, 10).unwrap();
        // p (p + (1-p) λ^d) with p = 0.4, λ = 0.5
        assert!((m.pair_intersection(1).unwrap() - 0.28).abs() < 1e-15);
        assert!((m.pair_intersection(2).unwrap() - 0.4 * (0.4 + 0.6 * 0.25)).abs() < 1e-15);
        assert!(m.pair_intersection(0).is_err());
    }

    #[test]
    fn joint_table_agrees_with_closed_forms() {
        let m = Markov2Model::<f64>::new(0.2, 0.3, 3).unwrap();
        let t = m.to_joint_table().unwrap();
        // all-zero path: stationary mass of 0 times two 0->0 steps
        assert!((t.weights()[0] - 0.6 * 0.8 * 0.8).abs() < 1e-15);
        assert!((t.weights()[0] - 0.384).abs() < 1e-15);

        let full: Vec<usize> = (1..=3).collect();
        assert!((t.union_probability(&full).unwrap() - m.exact_union()).abs() < 1e-12);

        let band = t.pairwise_intersections().unwrap();
        for (i, j, v) in band.iter() {
            let formula = m.pair_intersection(j - i).unwrap();
            assert!((v - formula).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_lambda_pair_formula_matches_enumeration() {
        // a + b > 1 gives alternating correlations (λ < 0)
        let m = Markov2Model::<f64>::new(0.7, 0.8, 6).unwrap();
        assert!(m.lambda() < 0.0);
        let t = m.to_joint_table().unwrap();
        let band = t.pairwise_intersections().unwrap();
        for (i, j, v) in band.iter() {
            let formula = m.pair_intersection(j - i).unwrap();
            assert!(
                (v - formula).abs() < 1e-12,
                "pair ({i},{j}): table {v} vs formula {formula}"
            );
        }
        let full: Vec<usize> = (1..=6).collect();
        assert!((t.union_probability(&full).unwrap() - m.exact_union()).abs() < 1e-12);
    }

    #[test]
    fn fair_chain_is_iid() {
        let m = Markov2Model::<f64>::new(0.5, 0.5, 2).unwrap();
        let t = m.to_joint_table().unwrap();
        for &w in t.weights() {
            assert!((w - 0.25).abs() < 1e-15);
        }
        assert_eq!(m.lambda(), 0.0);
    }

    #[test]
    fn envelope_decays_geometrically() {
        let m = Markov2Model::<f64>::new(0.2, 0.3, 5).unwrap();
        assert!((m.phi_envelope(3).unwrap() - 0.125).abs() < 1e-15);
        assert!(m.phi_envelope(0).is_err());
    }
}
