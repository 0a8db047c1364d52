//! Lag-indexed upper envelopes for the mixing coefficients φ(n) and α(n).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::Real;

/// Which coefficient family a profile describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientFamily {
    Phi,
    Alpha,
}

impl CoefficientFamily {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientFamily::Phi => "phi",
            CoefficientFamily::Alpha => "alpha",
        }
    }
}

/// Decay shape of the envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[serde(bound(serialize = "F: Serialize", deserialize = "F: Deserialize<'de>"))]
pub enum ProfileKind<F: Real> {
    /// `min(1, C ρ^n)` with `C >= 1`, `ρ in (0,1)`.
    Geometric {
        #[serde(rename = "C")]
        c: F,
        rho: F,
    },
    /// `min(1, C n^{-γ})` with `C >= 1`, `γ > 0`.
    Polynomial {
        #[serde(rename = "C")]
        c: F,
        gamma: F,
    },
    /// Exactly 0 past range `m`; 1 (the universal envelope) at lags `<= m`,
    /// where the cut-off alone carries no information.
    MDependent { m: usize },
    /// Explicit per-lag values for lags `1..=len`; lags beyond the table
    /// evaluate to the last entry, which stays a valid envelope because
    /// the coefficients are non-increasing in the lag.
    Tabulated { values: Vec<F> },
}

/// A mixing-coefficient envelope together with its family and the
/// optional finite-restriction length.
///
/// With `restriction` set to `N`, lags `>= N` evaluate to exactly 0: a
/// finite family of length `N` has no admissible past/future pair at
/// those lags, so the restricted coefficient is 0 by convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile<F>", into = "RawProfile<F>")]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub struct MixingProfile<F: Real> {
    pub kind: ProfileKind<F>,
    pub family: CoefficientFamily,
    pub restriction: Option<usize>,
}

/// Wire shape: the kind tag and its parameters flattened beside
/// `family` and `restriction`.
#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "F: Serialize", deserialize = "F: Deserialize<'de>"))]
struct RawProfile<F: Real> {
    #[serde(flatten)]
    kind: ProfileKind<F>,
    family: CoefficientFamily,
    #[serde(default)]
    restriction: Option<usize>,
}

impl<F: Real> TryFrom<RawProfile<F>> for MixingProfile<F> {
    type Error = Error;
    fn try_from(raw: RawProfile<F>) -> Result<Self> {
        let profile = MixingProfile {
            kind: raw.kind,
            family: raw.family,
            restriction: raw.restriction,
        };
        profile.validate()?;
        Ok(profile)
    }
}

impl<F: Real> From<MixingProfile<F>> for RawProfile<F> {
    fn from(p: MixingProfile<F>) -> Self {
        RawProfile {
            kind: p.kind,
            family: p.family,
            restriction: p.restriction,
        }
    }
}

impl<F: Real> MixingProfile<F> {
    pub fn new(kind: ProfileKind<F>, family: CoefficientFamily) -> Result<Self> {
        let profile = MixingProfile {
            kind,
            family,
            restriction: None,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn geometric(c: F, rho: F, family: CoefficientFamily) -> Result<Self> {
        Self::new(ProfileKind::Geometric { c, rho }, family)
    }

    pub fn polynomial(c: F, gamma: F, family: CoefficientFamily) -> Result<Self> {
        Self::new(ProfileKind::Polynomial { c, gamma }, family)
    }

    pub fn m_dependent(m: usize, family: CoefficientFamily) -> Result<Self> {
        Self::new(ProfileKind::MDependent { m }, family)
    }

    pub fn tabulated(values: Vec<F>, family: CoefficientFamily) -> Result<Self> {
        Self::new(ProfileKind::Tabulated { values }, family)
    }

    /// Returns the same profile with the finite-restriction length set.
    pub fn restricted(mut self, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("restriction length must be at least 1"));
        }
        self.restriction = Some(n);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        match &self.kind {
            ProfileKind::Geometric { c, rho } => {
                if !(*c >= F::one()) {
                    return Err(Error::invalid("geometric profile needs C >= 1"));
                }
                if !(*rho > F::zero() && *rho < F::one()) {
                    return Err(Error::invalid("geometric profile needs rho in (0,1)"));
                }
            }
            ProfileKind::Polynomial { c, gamma } => {
                if !(*c >= F::one()) {
                    return Err(Error::invalid("polynomial profile needs C >= 1"));
                }
                if !(*gamma > F::zero()) {
                    return Err(Error::invalid("polynomial profile needs gamma > 0"));
                }
            }
            ProfileKind::MDependent { .. } => {}
            ProfileKind::Tabulated { values } => {
                if values.is_empty() {
                    return Err(Error::invalid("tabulated profile needs at least one value"));
                }
                for (idx, &v) in values.iter().enumerate() {
                    if !(v >= F::zero()) {
                        return Err(Error::InvalidProbability {
                            index: idx + 1,
                            value: v.as_f64(),
                        });
                    }
                }
                // Both coefficient families are non-increasing in the lag
                // by definition, so an increasing table is a user error.
                // A hair of tolerance admits tables built from independent
                // per-lag enumerations.
                let tol = F::from_f64(1e-12).unwrap();
                for w in values.windows(2) {
                    if w[1] > w[0] + tol {
                        return Err(Error::invalid(format!(
                            "tabulated profile must be non-increasing, saw {} then {}",
                            w[0].as_f64(),
                            w[1].as_f64()
                        )));
                    }
                }
            }
        }
        if let Some(n) = self.restriction {
            if n < 1 {
                return Err(Error::invalid("restriction length must be at least 1"));
            }
        }
        Ok(())
    }

    /// Envelope value at `lag >= 1`, always clamped to `[0, 1]`.
    pub fn value_at(&self, lag: usize) -> Result<F> {
        if lag < 1 {
            return Err(Error::invalid("lag must be at least 1"));
        }
        if let Some(n) = self.restriction {
            if lag >= n {
                return Ok(F::zero());
            }
        }
        let raw = match &self.kind {
            ProfileKind::Geometric { c, rho } => *c * rho.powi(lag as i32),
            ProfileKind::Polynomial { c, gamma } => *c * F::from_count(lag).powf(-*gamma),
            ProfileKind::MDependent { m } => {
                if lag > *m {
                    F::zero()
                } else {
                    F::one()
                }
            }
            ProfileKind::Tabulated { values } => {
                let idx = (lag - 1).min(values.len() - 1);
                values[idx]
            }
        };
        Ok(raw.max(F::zero()).min(F::one()))
    }

    /// Errors unless the profile belongs to `expected`.
    pub fn expect_family(&self, expected: CoefficientFamily) -> Result<()> {
        if self.family != expected {
            return Err(Error::FamilyMismatch {
                expected: expected.name(),
                got: self.family.name(),
            });
        }
        Ok(())
    }

    /// Loads the JSON document, e.g.
    /// `{"kind":"geometric","C":1.0,"rho":0.5,"family":"phi","restriction":null}`.
    pub fn from_json_path(path: &Path) -> Result<Self>
    where
        F: serde::de::DeserializeOwned,
    {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}
