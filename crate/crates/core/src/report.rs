//! The result type every bound returns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::float::{one_minus_exp_neg, Real};

/// Which inequality produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundForm {
    #[serde(rename = "phi-main")]
    PhiMain,
    #[serde(rename = "phi-clean")]
    PhiClean,
    #[serde(rename = "phi-opt")]
    PhiOpt,
    #[serde(rename = "alpha-main")]
    AlphaMain,
    #[serde(rename = "alpha-lower-mass")]
    AlphaLowerMass,
    #[serde(rename = "window-phi")]
    WindowPhi,
    #[serde(rename = "window-alpha")]
    WindowAlpha,
    #[serde(rename = "second-order")]
    SecondOrder,
    #[serde(rename = "second-order-weighted")]
    SecondOrderWeighted,
    #[serde(rename = "chung-erdos")]
    ChungErdos,
    #[serde(rename = "geom-phi")]
    GeomPhi,
    #[serde(rename = "poly-alpha")]
    PolyAlpha,
}

impl BoundForm {
    pub fn name(self) -> &'static str {
        match self {
            BoundForm::PhiMain => "phi-main",
            BoundForm::PhiClean => "phi-clean",
            BoundForm::PhiOpt => "phi-opt",
            BoundForm::AlphaMain => "alpha-main",
            BoundForm::AlphaLowerMass => "alpha-lower-mass",
            BoundForm::WindowPhi => "window-phi",
            BoundForm::WindowAlpha => "window-alpha",
            BoundForm::SecondOrder => "second-order",
            BoundForm::SecondOrderWeighted => "second-order-weighted",
            BoundForm::ChungErdos => "chung-erdos",
            BoundForm::GeomPhi => "geom-phi",
            BoundForm::PolyAlpha => "poly-alpha",
        }
    }
}

/// A lower bound for a union probability, with enough provenance to
/// reconstruct how it was assembled.
///
/// `bound` always lies in `[0, 1]`. `exponent` is the quantity inside
/// `exp(-·)` when the bound has exponential shape; it is kept alongside
/// the probability so that bounds like `1 - e^{-50}` remain
/// distinguishable from `1.0`. Additive corrections, residual mixing
/// terms, and similar named quantities live in `residuals`. `clipped`
/// marks a result that was clamped to 0 because the additive correction
/// exceeded the exponential gain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Serialize + Clone",
    deserialize = "F: Deserialize<'de>"
))]
pub struct BoundReport<F: Real> {
    pub bound: F,
    pub exponent: Option<F>,
    #[serde(rename = "L")]
    pub spacing: Option<usize>,
    pub residuals: BTreeMap<String, F>,
    pub clipped: bool,
    pub form: BoundForm,
}

impl<F: Real> BoundReport<F> {
    /// Report of shape `1 - exp(-exponent)` with no additive correction.
    pub fn exponential(form: BoundForm, exponent: F, spacing: usize) -> Self {
        BoundReport {
            bound: one_minus_exp_neg(exponent),
            exponent: Some(exponent),
            spacing: Some(spacing),
            residuals: BTreeMap::new(),
            clipped: false,
            form,
        }
    }

    /// Report of shape `max(0, 1 - exp(-exponent) - correction)`; the
    /// clipped flag records whether the clamp fired.
    pub fn exponential_with_correction(
        form: BoundForm,
        exponent: F,
        correction: F,
        spacing: usize,
    ) -> Self {
        let raw = one_minus_exp_neg(exponent) - correction;
        let clipped = raw < F::zero();
        let mut report = BoundReport {
            bound: if clipped { F::zero() } else { raw },
            exponent: Some(exponent),
            spacing: Some(spacing),
            residuals: BTreeMap::new(),
            clipped,
            form,
        };
        report.push_residual("additive_correction", correction);
        report
    }

    pub fn push_residual(&mut self, name: &str, value: F) -> &mut Self {
        self.residuals.insert(name.to_string(), value);
        self
    }

    pub fn with_residual(mut self, name: &str, value: F) -> Self {
        self.push_residual(name, value);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_shape_matches_definition() {
        let r = BoundReport::exponential(BoundForm::PhiMain, 0.5f64, 0);
        assert!((r.bound - (1.0 - (-0.5f64).exp())).abs() < 1e-16);
        assert!(!r.clipped);
    }

    #[test]
    fn correction_clips_and_flags() {
        let r = BoundReport::exponential_with_correction(BoundForm::AlphaMain, 0.6f64, 1.5, 1);
        assert_eq!(r.bound, 0.0);
        assert!(r.clipped);
        let ok = BoundReport::exponential_with_correction(BoundForm::AlphaMain, 0.6f64, 0.03, 1);
        assert!(!ok.clipped);
        assert!((ok.bound - (1.0 - (-0.6f64).exp() - 0.03)).abs() < 1e-15);
    }

    #[test]
    fn json_field_order_is_stable() {
        let r = BoundReport::exponential(BoundForm::PhiClean, 1.0f64, 2)
            .with_residual("phi_at_lag", 0.125);
        let text = serde_json::to_string(&r).unwrap();
        let bound_pos = text.find("\"bound\"").unwrap();
        let expo_pos = text.find("\"exponent\"").unwrap();
        let l_pos = text.find("\"L\"").unwrap();
        let res_pos = text.find("\"residuals\"").unwrap();
        let clip_pos = text.find("\"clipped\"").unwrap();
        let form_pos = text.find("\"form\"").unwrap();
        assert!(bound_pos < expo_pos && expo_pos < l_pos && l_pos < res_pos);
        assert!(res_pos < clip_pos && clip_pos < form_pos);
        assert!(text.contains("\"form\":\"phi-clean\""));
    }
}
