//! Finite-window rate bounds: the first-order inequalities applied to
//! the window `i+1 ..= Φ(i+n)` whose cumulative mass reaches `i + n`.

use crate::error::Result;
use crate::float::{positive_part, Real};
use crate::marginals::{MarginalSequence, WindowSpec};
use crate::profile::{CoefficientFamily, MixingProfile};
use crate::report::{BoundForm, BoundReport};

/// Lower bound for `P(⋃_{k=i+1}^{Φ(i+n)} A_k)`; the profile family
/// selects the variant:
///
/// * φ: `1 - exp(-(n - M φ(L+1))_+ / (L+1))`,
/// * α: `max(0, 1 - exp(-n/(L+1)) - ⌈M/(L+1)⌉ α(L+1))`,
///
/// where `M = Φ(i+n) - i` is the window length. `phi_override`
/// substitutes a non-minimal `Φ(i+n)`; it must still satisfy the mass
/// condition.
pub fn window_bound<F: Real>(
    marginals: &MarginalSequence<F>,
    profile: &MixingProfile<F>,
    shift: usize,
    mass: usize,
    spacing: usize,
    phi_override: Option<usize>,
) -> Result<BoundReport<F>> {
    let window = WindowSpec::from_marginals(marginals, shift, mass, phi_override)?;
    let window_len = F::from_count(window.window_len);
    let mass_f = F::from_count(mass);
    let denom = F::from_count(spacing + 1);
    let coefficient = profile.value_at(spacing + 1)?;

    let mut report = match profile.family {
        CoefficientFamily::Phi => {
            let exponent = positive_part(mass_f - window_len * coefficient) / denom;
            BoundReport::exponential(BoundForm::WindowPhi, exponent, spacing)
                .with_residual("phi_at_lag", coefficient)
        }
        CoefficientFamily::Alpha => {
            let blocks = window.window_len.div_ceil(spacing + 1);
            let correction = F::from_count(blocks) * coefficient;
            BoundReport::exponential_with_correction(
                BoundForm::WindowAlpha,
                mass_f / denom,
                correction,
                spacing,
            )
            .with_residual("alpha_at_lag", coefficient)
            .with_residual("block_count", F::from_count(blocks))
        }
    };
    report.push_residual("window_len", window_len);
    report.push_residual("window_end", F::from_count(window.phi_at));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn unit_masses_zero_residual() {
        let m = MarginalSequence::constant(1.0, 5).unwrap();
        let zeros = MixingProfile::tabulated(vec![0.0], CoefficientFamily::Phi).unwrap();
        let r = window_bound(&m, &zeros, 0, 3, 0, None).unwrap();
        assert_eq!(r.residuals["window_end"], 3.0);
        assert_eq!(r.residuals["window_len"], 3.0);
        assert!((r.bound - (1.0 - (-3.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn phi_variant_reference_value() {
        // halves, shift 2, mass 3: Φ(5) = 10, M = 8, φ(2) = 0.1
        let m = MarginalSequence::constant(0.5, 20).unwrap();
        let prof = MixingProfile::tabulated(vec![0.1, 0.1], CoefficientFamily::Phi).unwrap();
        let r = window_bound(&m, &prof, 2, 3, 1, None).unwrap();
        assert_eq!(r.residuals["window_end"], 10.0);
        let expected = 1.0 - (-(3.0f64 - 0.8) / 2.0).exp();
        assert!((r.bound - expected).abs() < 1e-12);
        assert!((r.bound - (1.0 - (-1.1f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn alpha_variant_reference_value() {
        let m = MarginalSequence::constant(0.5, 20).unwrap();
        let prof = MixingProfile::tabulated(vec![0.05, 0.05], CoefficientFamily::Alpha).unwrap();
        let r = window_bound(&m, &prof, 2, 3, 1, None).unwrap();
        // M = 8, ceil(8/2) = 4 blocks
        let expected = (1.0 - (-1.5f64).exp() - 4.0 * 0.05).max(0.0);
        assert!((r.bound - expected).abs() < 1e-12);
        assert_eq!(r.residuals["block_count"], 4.0);
    }

    #[test]
    fn insufficient_mass_propagates() {
        let m = MarginalSequence::constant(0.1, 5).unwrap();
        let zeros = MixingProfile::tabulated(vec![0.0], CoefficientFamily::Phi).unwrap();
        let err = window_bound(&m, &zeros, 0, 2, 0, None).unwrap_err();
        assert!(matches!(err, Error::InsufficientMass { .. }));
    }

    #[test]
    fn override_changes_window_length() {
        let m = MarginalSequence::constant(0.5, 20).unwrap();
        let prof = MixingProfile::tabulated(vec![0.1], CoefficientFamily::Phi).unwrap();
        let minimal = window_bound(&m, &prof, 2, 3, 1, None).unwrap();
        let wider = window_bound(&m, &prof, 2, 3, 1, Some(14)).unwrap();
        assert_eq!(wider.residuals["window_len"], 12.0);
        // a longer window pays a larger residual, hence a weaker bound
        assert!(wider.bound <= minimal.bound + 1e-15);
    }
}
