//! Marginal event probabilities `p_k = P(A_k)` and their cumulative mass.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::accum::NeumaierSum;
use crate::error::{Error, Result};
use crate::float::Real;

/// Ordered sequence of event probabilities `p_1..p_N`.
///
/// Every entry lies in `[0, 1]` and the sequence is non-empty; both are
/// enforced at construction, so downstream code can rely on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMarginals<F>", into = "RawMarginals<F>")]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub struct MarginalSequence<F: Real> {
    probs: Vec<F>,
}

/// Wire shape `{"probs":[...]}`.
#[derive(Serialize, Deserialize)]
struct RawMarginals<F> {
    probs: Vec<F>,
}

impl<F: Real> TryFrom<RawMarginals<F>> for MarginalSequence<F> {
    type Error = Error;
    fn try_from(raw: RawMarginals<F>) -> Result<Self> {
        MarginalSequence::new(raw.probs)
    }
}

impl<F: Real + Clone> From<MarginalSequence<F>> for RawMarginals<F> {
    fn from(m: MarginalSequence<F>) -> Self {
        RawMarginals { probs: m.probs }
    }
}

impl<F: Real> MarginalSequence<F> {
    /// Validates membership in `[0, 1]` and non-emptiness.
    pub fn new(probs: Vec<F>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (idx, &p) in probs.iter().enumerate() {
            if !(p >= F::zero() && p <= F::one()) {
                return Err(Error::InvalidProbability {
                    index: idx + 1,
                    value: p.as_f64(),
                });
            }
        }
        Ok(MarginalSequence { probs })
    }

    /// Constant sequence `p, p, ..., p` of length `n`.
    pub fn constant(p: F, n: usize) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    /// `p_k` with 1-based index `k`.
    pub fn prob(&self, k: usize) -> F {
        self.probs[k - 1]
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    /// All prefix sums `S_1, S_2, ..., S_N`.
    pub fn prefix_sums(&self) -> Vec<F> {
        let mut acc = NeumaierSum::new();
        self.probs
            .iter()
            .map(|&p| {
                acc.add(p);
                acc.total()
            })
            .collect()
    }

    /// Total first-moment mass `S_N`.
    pub fn total_mass(&self) -> F {
        let mut acc = NeumaierSum::new();
        for &p in &self.probs {
            acc.add(p);
        }
        acc.total()
    }

    pub fn min_prob(&self) -> F {
        self.probs.iter().cloned().fold(F::one(), F::min)
    }

    pub fn max_prob(&self) -> F {
        self.probs.iter().cloned().fold(F::zero(), F::max)
    }

    /// Smallest `M >= 1` whose prefix mass reaches `threshold`:
    /// `Φ(n) = min { M : S_M >= n }`.
    ///
    /// Errors with `insufficient-mass` when `S_N < n`.
    pub fn mass_threshold(&self, threshold: usize) -> Result<usize> {
        if threshold < 1 {
            return Err(Error::invalid("mass threshold must be at least 1"));
        }
        let need = F::from_count(threshold);
        let mut acc = NeumaierSum::new();
        for (idx, &p) in self.probs.iter().enumerate() {
            acc.add(p);
            if acc.total() >= need {
                return Ok(idx + 1);
            }
        }
        Err(Error::InsufficientMass {
            total: self.total_mass().as_f64(),
            needed: threshold as f64,
        })
    }

    /// Loads one probability per line; blank lines are skipped.
    pub fn from_csv_path(path: &Path) -> Result<Self>
    where
        F: std::str::FromStr,
    {
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text)
    }

    pub fn from_csv_str(text: &str) -> Result<Self>
    where
        F: std::str::FromStr,
    {
        let mut probs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: F = line.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("cannot parse probability from {line:?}"),
            })?;
            probs.push(value);
        }
        Self::new(probs)
    }

    /// Loads the JSON document `{"probs":[...]}`.
    pub fn from_json_path(path: &Path) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// A finite mass window: shift `i`, mass threshold `n`, the index
/// `Φ(i+n)` where the cumulative mass reaches `i + n`, and the window
/// length `M = Φ(i+n) − i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub shift: usize,
    pub mass: usize,
    pub phi_at: usize,
    pub window_len: usize,
}

impl WindowSpec {
    /// Builds the window from the minimal mass-threshold map, or from an
    /// explicit `phi_override` giving `Φ(i+n)` (any non-decreasing map
    /// satisfying the mass condition is admissible; only its value at
    /// `i + n` is consumed).
    pub fn from_marginals<F: Real>(
        marginals: &MarginalSequence<F>,
        shift: usize,
        mass: usize,
        phi_override: Option<usize>,
    ) -> Result<Self> {
        if mass < 1 {
            return Err(Error::invalid("window mass threshold must be at least 1"));
        }
        let needed = shift + mass;
        let phi_at = match phi_override {
            None => marginals.mass_threshold(needed)?,
            Some(phi) => {
                if phi < 1 || phi > marginals.len() {
                    return Err(Error::IndexOutOfRange {
                        index: phi,
                        n: marginals.len(),
                    });
                }
                let mut acc = NeumaierSum::new();
                for &p in &marginals.probs()[..phi] {
                    acc.add(p);
                }
                if acc.total() < F::from_count(needed) {
                    return Err(Error::InsufficientMass {
                        total: acc.total().as_f64(),
                        needed: needed as f64,
                    });
                }
                phi
            }
        };
        // Probabilities are at most one, so reaching mass i+n needs at
        // least i+n indices; the window is therefore at least n long.
        debug_assert!(phi_at >= needed);
        Ok(WindowSpec {
            shift,
            mass,
            phi_at,
            window_len: phi_at - shift,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_probabilities() {
        assert!(MarginalSequence::new(vec![0.5, 1.2]).is_err());
        assert!(MarginalSequence::new(vec![-0.1]).is_err());
        assert!(MarginalSequence::<f64>::new(vec![]).is_err());
        assert!(MarginalSequence::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn total_mass_examples() {
        let single = MarginalSequence::new(vec![0.5]).unwrap();
        assert_eq!(single.total_mass(), 0.5);

        let row1 = MarginalSequence::<f64>::constant(0.4, 50).unwrap();
        assert!((row1.total_mass() - 20.0).abs() < 1e-12);

        let zeros = MarginalSequence::new(vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(zeros.total_mass(), 0.0);
    }

    #[test]
    fn prefix_sums_are_non_decreasing_and_end_at_total() {
        let m = MarginalSequence::new(vec![0.25, 0.0, 0.5, 0.125]).unwrap();
        let prefix = m.prefix_sums();
        assert_eq!(prefix.len(), 4);
        for w in prefix.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert_eq!(*prefix.last().unwrap(), m.total_mass());
    }

    #[test]
    fn mass_threshold_examples() {
        let halves = MarginalSequence::constant(0.5, 10).unwrap();
        assert_eq!(halves.mass_threshold(2).unwrap(), 4);

        let units = MarginalSequence::<f64>::constant(1.0, 3).unwrap();
        assert_eq!(units.mass_threshold(3).unwrap(), 3);

        let thin = MarginalSequence::constant(0.3, 3).unwrap();
        let err = thin.mass_threshold(2).unwrap_err();
        assert!(err.to_string().contains("insufficient-mass"));
    }

    #[test]
    fn mass_threshold_monotone_in_n() {
        let m = MarginalSequence::new(vec![0.9, 0.2, 0.8, 1.0, 0.6, 0.9, 0.7]).unwrap();
        let mut last = 0;
        for n in 1..=5 {
            let phi = m.mass_threshold(n).unwrap();
            assert!(phi >= last);
            last = phi;
        }
    }

    #[test]
    fn window_spec_minimal_and_override() {
        let m = MarginalSequence::constant(0.5, 20).unwrap();
        let w = WindowSpec::from_marginals(&m, 2, 3, None).unwrap();
        assert_eq!(w.phi_at, 10);
        assert_eq!(w.window_len, 8);

        // non-minimal override is accepted as long as the mass condition holds
        let w2 = WindowSpec::from_marginals(&m, 2, 3, Some(12)).unwrap();
        assert_eq!(w2.window_len, 10);
        // an override below the mass threshold is rejected
        assert!(WindowSpec::from_marginals(&m, 2, 3, Some(9)).is_err());
    }

    #[test]
    fn csv_and_json_round_trip() {
        let m = MarginalSequence::<f64>::from_csv_str("0.5\n\n0.25\n1\n").unwrap();
        assert_eq!(m.probs(), &[0.5, 0.25, 1.0]);
        assert!(MarginalSequence::<f64>::from_csv_str("0.5\nnope\n").is_err());

        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"probs":[0.5,0.25,1.0]}"#);
        let back: MarginalSequence<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // validation also runs on deserialize
        assert!(serde_json::from_str::<MarginalSequence<f64>>(r#"{"probs":[2.0]}"#).is_err());
    }
}
