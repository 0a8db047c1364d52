//! Local pairwise intersection probabilities `P(A_i ∩ A_j)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::Real;
use crate::marginals::MarginalSequence;

/// A banded table of pairwise intersection probabilities: entries are
/// keyed by ordered pairs `(i, j)` with `i < j` and `j - i <= W`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionBand<F: Real> {
    n: usize,
    bandwidth: usize,
    entries: BTreeMap<(usize, usize), F>,
}

/// Wire shape `{"band":{"W":..,"entries":[[i,j,v],...]}}`.
#[derive(Serialize, Deserialize)]
struct BandDocument<F> {
    band: RawBand<F>,
}

#[derive(Serialize, Deserialize)]
struct RawBand<F> {
    #[serde(rename = "W")]
    w: usize,
    entries: Vec<(usize, usize, F)>,
}

impl<F: Real> IntersectionBand<F> {
    /// Builds a band over indices `1..=n`, validating every triple.
    pub fn new(n: usize, bandwidth: usize, pairs: Vec<(usize, usize, F)>) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("band index range must be at least 1"));
        }
        if bandwidth < 1 {
            return Err(Error::invalid("bandwidth must be at least 1"));
        }
        let mut entries = BTreeMap::new();
        for (i, j, value) in pairs {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if j < 1 || j > n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if i >= j {
                return Err(Error::invalid(format!(
                    "band entries need i < j, got ({i},{j})"
                )));
            }
            if j - i > bandwidth {
                return Err(Error::invalid(format!(
                    "pair ({i},{j}) exceeds bandwidth {bandwidth}"
                )));
            }
            if !(value >= F::zero() && value <= F::one()) {
                return Err(Error::InvalidProbability {
                    index: i,
                    value: value.as_f64(),
                });
            }
            entries.insert((i, j), value);
        }
        Ok(IntersectionBand {
            n,
            bandwidth,
            entries,
        })
    }

    /// Empty band (no recorded intersections).
    pub fn empty(n: usize, bandwidth: usize) -> Result<Self> {
        Self::new(n, bandwidth, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for the pair `(i, j)`, `i < j`, if recorded.
    pub fn get(&self, i: usize, j: usize) -> Option<F> {
        self.entries.get(&(i, j)).copied()
    }

    /// Iterates entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, F)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Checks consistency against a marginal sequence: same index range
    /// and every entry at most `min(p_i, p_j)` (within float dust).
    pub fn validate_against(&self, marginals: &MarginalSequence<F>) -> Result<()> {
        if self.n != marginals.len() {
            return Err(Error::invalid(format!(
                "band covers 1..={} but marginals have length {}",
                self.n,
                marginals.len()
            )));
        }
        let tol = F::from_f64(1e-12).unwrap();
        for (i, j, v) in self.iter() {
            let cap = marginals.prob(i).min(marginals.prob(j));
            if v > cap + tol {
                return Err(Error::invalid(format!(
                    "intersection P(A_{i} ∩ A_{j}) = {} exceeds min(p_{i}, p_{j}) = {}",
                    v.as_f64(),
                    cap.as_f64()
                )));
            }
        }
        Ok(())
    }

    /// Rebinds the band to the index range of `marginals` (the JSON and
    /// CSV forms do not carry `N`), then validates.
    pub fn attached_to(mut self, marginals: &MarginalSequence<F>) -> Result<Self> {
        if self.n > marginals.len() {
            return Err(Error::invalid(format!(
                "band mentions index {} beyond marginals length {}",
                self.n,
                marginals.len()
            )));
        }
        self.n = marginals.len();
        self.validate_against(marginals)?;
        Ok(self)
    }

    /// Loads `i,j,value` triples, one per line. The index range is
    /// inferred as the largest index seen.
    pub fn from_csv_str(text: &str) -> Result<Self>
    where
        F: std::str::FromStr,
    {
        let mut pairs = Vec::new();
        let mut max_index = 1;
        let mut max_gap = 1;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected i,j,value but got {line:?}"),
                });
            }
            let parse_idx = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("cannot parse index from {s:?}"),
                })
            };
            let i = parse_idx(fields[0])?;
            let j = parse_idx(fields[1])?;
            let value: F = fields[2].parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("cannot parse probability from {:?}", fields[2]),
            })?;
            max_index = max_index.max(i).max(j);
            if j > i {
                max_gap = max_gap.max(j - i);
            }
            pairs.push((i, j, value));
        }
        Self::new(max_index, max_gap, pairs)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self>
    where
        F: std::str::FromStr,
    {
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text)
    }

    /// Loads the JSON document `{"band":{"W":..,"entries":[[i,j,v],...]}}`.
    /// The index range is inferred as the largest index seen.
    pub fn from_json_path(path: &Path) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        let doc: BandDocument<F> = serde_json::from_str(text)?;
        let max_index = doc
            .band
            .entries
            .iter()
            .map(|&(i, j, _)| i.max(j))
            .max()
            .unwrap_or(1);
        Self::new(max_index, doc.band.w, doc.band.entries)
    }

    /// Serializes to the JSON document shape.
    pub fn to_json_string(&self) -> Result<String>
    where
        F: Serialize,
    {
        let doc = BandDocument {
            band: RawBand {
                w: self.bandwidth,
                entries: self.iter().collect(),
            },
        };
        Ok(serde_json::to_string(&doc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_shape() {
        assert!(IntersectionBand::new(3, 1, vec![(1, 2, 0.1), (2, 3, 0.1)]).is_ok());
        assert!(IntersectionBand::new(3, 1, vec![(1, 3, 0.1)]).is_err()); // gap > W
        assert!(IntersectionBand::new(3, 2, vec![(2, 2, 0.1)]).is_err()); // i >= j
        assert!(IntersectionBand::new(3, 2, vec![(1, 4, 0.1)]).is_err()); // out of range
        assert!(IntersectionBand::new(3, 2, vec![(1, 2, 1.5)]).is_err()); // not a probability
    }

    #[test]
    fn validation_against_marginals() {
        let m = MarginalSequence::new(vec![0.3, 0.2, 0.5]).unwrap();
        let good = IntersectionBand::new(3, 2, vec![(1, 2, 0.2), (1, 3, 0.3)]).unwrap();
        assert!(good.validate_against(&m).is_ok());
        let bad = IntersectionBand::new(3, 2, vec![(1, 2, 0.25)]).unwrap();
        assert!(bad.validate_against(&m).is_err());
    }

    #[test]
    fn csv_and_json_loading() {
        let band = IntersectionBand::<f64>::from_csv_str("1,2,0.1\n2,3,0.1\n").unwrap();
        assert_eq!(band.n(), 3);
        assert_eq!(band.get(1, 2), Some(0.1));

        let json = r#"{"band":{"W":2,"entries":[[1,2,0.1],[1,3,0.05]]}}"#;
        let band = IntersectionBand::<f64>::from_json_str(json).unwrap();
        assert_eq!(band.bandwidth(), 2);
        assert_eq!(band.get(1, 3), Some(0.05));

        let round = band.to_json_string().unwrap();
        let back = IntersectionBand::<f64>::from_json_str(&round).unwrap();
        assert_eq!(back, band);
    }
}
