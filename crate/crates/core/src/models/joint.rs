//! Explicit joint distributions over binary outcome strings.
//!
//! A `JointTableModel` stores one weight per outcome string of length
//! `N` (bit `k-1` of the string index is the indicator of event `k`),
//! which makes every probability of interest an exact finite sum. This
//! is the brute-force oracle the bound inequalities are verified
//! against.

use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::accum::NeumaierSum;
use crate::band::IntersectionBand;
use crate::error::{Error, Result};
use crate::float::Real;
use crate::marginals::MarginalSequence;

/// Enumeration budget: 2^20 outcome strings keep every oracle fast.
pub const MAX_TABLE_BITS: usize = 20;

/// Magic bytes of the raw little-endian table file.
pub const TABLE_FILE_MAGIC: &[u8; 8] = b"BCJT0001";

/// An explicit joint distribution over `2^N` binary outcome strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable<F>", into = "RawTable<F>")]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub struct JointTableModel<F: Real> {
    n: usize,
    weights: Vec<F>,
}

/// Wire shape `{"N":…,"weights":[…]}`.
#[derive(Serialize, Deserialize)]
struct RawTable<F> {
    #[serde(rename = "N")]
    n: usize,
    weights: Vec<F>,
}

impl<F: Real> TryFrom<RawTable<F>> for JointTableModel<F> {
    type Error = Error;
    fn try_from(raw: RawTable<F>) -> Result<Self> {
        JointTableModel::new(raw.n, raw.weights)
    }
}

impl<F: Real> From<JointTableModel<F>> for RawTable<F> {
    fn from(t: JointTableModel<F>) -> Self {
        RawTable {
            n: t.n,
            weights: t.weights,
        }
    }
}

impl<F: Real> JointTableModel<F> {
    /// Validates the weight table: `1 <= N <= 20`, `2^N` non-negative
    /// weights summing to 1 within `1e-12`.
    pub fn new(n: usize, weights: Vec<F>) -> Result<Self> {
        Self::with_budget(n, weights, MAX_TABLE_BITS)
    }

    /// [`new`](Self::new) with a caller-supplied enumeration budget.
    /// Every oracle on the table scans all `2^N` weights, so anything
    /// past [`MAX_TABLE_BITS`] is at the caller's risk.
    pub fn with_budget(n: usize, weights: Vec<F>, max_bits: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("table needs at least one event"));
        }
        if n > max_bits || n >= usize::BITS as usize {
            return Err(Error::invalid(format!(
                "table length {n} exceeds the enumeration budget of {max_bits} events"
            )));
        }
        if weights.len() != 1usize << n {
            return Err(Error::invalid(format!(
                "expected {} weights for N = {n}, got {}",
                1usize << n,
                weights.len()
            )));
        }
        let mut acc = NeumaierSum::new();
        for (idx, &w) in weights.iter().enumerate() {
            if !(w >= F::zero()) {
                return Err(Error::InvalidProbability {
                    index: idx,
                    value: w.as_f64(),
                });
            }
            acc.add(w);
        }
        let total = acc.total().as_f64();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "weights sum to {total}, not 1 (tolerance 1e-12)"
            )));
        }
        Ok(JointTableModel { n, weights })
    }

    /// Independent events with the given marginals.
    pub fn product(marginals: &MarginalSequence<F>) -> Result<Self> {
        let n = marginals.len();
        if n > MAX_TABLE_BITS {
            return Err(Error::invalid(format!(
                "product table over {n} events exceeds the budget of {MAX_TABLE_BITS}"
            )));
        }
        let size = 1usize << n;
        let mut weights = vec![F::one(); size];
        for (s, w) in weights.iter_mut().enumerate() {
            for k in 0..n {
                let p = marginals.prob(k + 1);
                *w = *w * if s >> k & 1 == 1 { p } else { F::one() - p };
            }
        }
        JointTableModel::new(n, weights)
    }

    /// Dirichlet(1,...,1) random table: uniform on the weight simplex.
    pub fn random_dirichlet<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if !(1..=MAX_TABLE_BITS).contains(&n) {
            return Err(Error::invalid(format!(
                "table length must lie in 1..={MAX_TABLE_BITS}"
            )));
        }
        let size = 1usize << n;
        let draws: Vec<f64> = (0..size)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let mut acc = NeumaierSum::new();
        for &d in &draws {
            acc.add(d);
        }
        let total = acc.total();
        let weights = draws
            .iter()
            .map(|&d| F::from_f64(d / total).unwrap())
            .collect();
        JointTableModel::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    fn mask_for(&self, index_set: &[usize]) -> Result<usize> {
        let mut mask = 0usize;
        for &k in index_set {
            if k < 1 || k > self.n {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    n: self.n,
                });
            }
            mask |= 1 << (k - 1);
        }
        Ok(mask)
    }

    /// `P(⋃_{k ∈ index_set} A_k)`: total weight of strings with at
    /// least one indexed bit set. The empty set gives 0.
    pub fn union_probability(&self, index_set: &[usize]) -> Result<F> {
        let mask = self.mask_for(index_set)?;
        let mut acc = NeumaierSum::new();
        for (s, &w) in self.weights.iter().enumerate() {
            if s & mask != 0 {
                acc.add(w);
            }
        }
        Ok(acc.total())
    }

    /// `P(⋂_{k ∈ index_set} A_k^c)`: total weight of strings with every
    /// indexed bit clear. The empty set gives 1.
    pub fn nonoccurrence_probability(&self, index_set: &[usize]) -> Result<F> {
        let mask = self.mask_for(index_set)?;
        let mut acc = NeumaierSum::new();
        for (s, &w) in self.weights.iter().enumerate() {
            if s & mask == 0 {
                acc.add(w);
            }
        }
        Ok(acc.total())
    }

    /// Marginal probabilities `p_k = P(A_k)`.
    pub fn marginals(&self) -> MarginalSequence<F> {
        let mut accs = vec![NeumaierSum::new(); self.n];
        for (s, &w) in self.weights.iter().enumerate() {
            let mut bits = s;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                accs[k].add(w);
                bits &= bits - 1;
            }
        }
        let probs = accs
            .iter()
            .map(|acc| acc.total().min(F::one()).max(F::zero()))
            .collect();
        MarginalSequence::new(probs).expect("table marginals are probabilities")
    }

    /// Every pairwise intersection `P(A_i ∩ A_j)`, `i < j`, as a
    /// full-bandwidth band.
    pub fn pairwise_intersections(&self) -> Result<IntersectionBand<F>> {
        if self.n == 1 {
            return IntersectionBand::empty(1, 1);
        }
        let pair_count = self.n * (self.n - 1) / 2;
        let mut accs = vec![NeumaierSum::new(); pair_count];
        let pair_slot = |i: usize, j: usize| -> usize {
            // i < j, zero-based row-major upper triangle
            i * (2 * self.n - i - 1) / 2 + (j - i - 1)
        };
        for (s, &w) in self.weights.iter().enumerate() {
            let mut rest = s;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut others = rest;
                while others != 0 {
                    let j = others.trailing_zeros() as usize;
                    others &= others - 1;
                    accs[pair_slot(i, j)].add(w);
                }
            }
        }
        let mut pairs = Vec::with_capacity(pair_count);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = accs[pair_slot(i, j)].total().min(F::one()).max(F::zero());
                pairs.push((i + 1, j + 1, v));
            }
        }
        IntersectionBand::new(self.n, self.n - 1, pairs)
    }

    pub fn to_json_string(&self) -> Result<String>
    where
        F: Serialize,
    {
        Ok(serde_json::to_string(&RawTable {
            n: self.n,
            weights: self.weights.clone(),
        })?)
    }

    pub fn from_json_str(text: &str) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json_path(path: &Path) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }
}

impl JointTableModel<f64> {
    /// Writes the compact raw form: the 8-byte magic `BCJT0001`
    /// followed by `2^N` little-endian doubles.
    pub fn write_binary(&self, mut out: impl Write) -> Result<()> {
        out.write_all(TABLE_FILE_MAGIC)?;
        for &w in &self.weights {
            out.write_all(&w.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn to_binary_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_binary(std::io::BufWriter::new(file))
    }

    /// Reads the raw form; `N` is recovered from the payload length.
    pub fn read_binary(mut input: impl Read) -> Result<Self> {
        let mut magic = [0u8; 8];
        input
            .read_exact(&mut magic)
            .map_err(|_| Error::MalformedTable("file shorter than the 8-byte header".into()))?;
        if &magic != TABLE_FILE_MAGIC {
            return Err(Error::MalformedTable(format!(
                "bad magic {:?}, expected {:?}",
                magic, TABLE_FILE_MAGIC
            )));
        }
        let mut payload = Vec::new();
        input.read_to_end(&mut payload)?;
        if payload.len() % 8 != 0 {
            return Err(Error::MalformedTable(
                "payload length is not a multiple of 8".into(),
            ));
        }
        let count = payload.len() / 8;
        if count == 0 || !count.is_power_of_two() {
            return Err(Error::MalformedTable(format!(
                "{count} weights is not a power of two"
            )));
        }
        let n = count.trailing_zeros() as usize;
        let weights = payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        JointTableModel::new(n, weights)
    }

    pub fn from_binary_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_binary(std::io::BufReader::new(file))
    }
}
