//! First-order lower bounds under uniform (φ) mixing.

use crate::accum::NeumaierSum;
use crate::error::{Error, Result};
use crate::float::{positive_part, Real};
use crate::marginals::MarginalSequence;
use crate::profile::{CoefficientFamily, MixingProfile};
use crate::report::{BoundForm, BoundReport};

/// Exponent `(1/(L+1)) Σ_k (p_k - φ(L+1))_+` of the residue-class bound.
fn phi_exponent<F: Real>(marginals: &MarginalSequence<F>, phi_at_lag: F, spacing: usize) -> F {
    let mut acc = NeumaierSum::new();
    for &p in marginals.probs() {
        acc.add(positive_part(p - phi_at_lag));
    }
    acc.total() / F::from_count(spacing + 1)
}

/// Residue-class lower bound: `1 - exp(-(1/(L+1)) Σ (p_k - φ(L+1))_+)`.
///
/// When `φ(L+1) <= min_k p_k` every positive part is active, the
/// exponent simplifies to `(S_N - N φ(L+1))/(L+1)`, and the report is
/// flagged with the clean form.
pub fn phi_bound<F: Real>(
    marginals: &MarginalSequence<F>,
    profile: &MixingProfile<F>,
    spacing: usize,
) -> Result<BoundReport<F>> {
    profile.expect_family(CoefficientFamily::Phi)?;
    let phi_at_lag = profile.value_at(spacing + 1)?;
    let exponent = phi_exponent(marginals, phi_at_lag, spacing);
    let form = if phi_at_lag <= marginals.min_prob() {
        BoundForm::PhiClean
    } else {
        BoundForm::PhiMain
    };
    Ok(BoundReport::exponential(form, exponent, spacing).with_residual("phi_at_lag", phi_at_lag))
}

/// Optimised exponent `Ψ = sup_L (1/(L+1)) Σ (p_k - φ(L+1))_+`.
///
/// The scan runs over `L in 0..=N-1`. Under the restricted convention
/// the coefficient at lag `N` is already 0, so the endpoint exponent is
/// `S_N/N` and larger spacings cannot beat it; for ambient profiles the
/// same cap applies and is recorded in the report under
/// `L_search_max`. Ties go to the smallest `L`.
pub fn phi_optimize<F: Real>(
    marginals: &MarginalSequence<F>,
    profile: &MixingProfile<F>,
) -> Result<BoundReport<F>> {
    profile.expect_family(CoefficientFamily::Phi)?;
    let n = marginals.len();
    let mut best_spacing = 0usize;
    let mut best_exponent = F::neg_infinity();
    let mut best_phi = F::zero();
    for spacing in 0..n {
        let phi_at_lag = profile.value_at(spacing + 1)?;
        let exponent = phi_exponent(marginals, phi_at_lag, spacing);
        if exponent > best_exponent {
            best_exponent = exponent;
            best_spacing = spacing;
            best_phi = phi_at_lag;
        }
    }
    Ok(
        BoundReport::exponential(BoundForm::PhiOpt, best_exponent, best_spacing)
            .with_residual("phi_at_lag", best_phi)
            .with_residual("L_search_max", F::from_count(n - 1)),
    )
}

/// Fixed-spacing bound for a geometric envelope `φ(n) <= C ρ^n` and a
/// positive lower mass: with the smallest `L0` such that
/// `C ρ^{L0+1} <= p_min / 2`, the bound is `1 - exp(-S_N / (2(L0+1)))`.
///
/// The weaker closed form `1 - exp(-p_min N / (2(L0+1)))` is reported
/// under the `weak_bound` residual.
pub fn geom_phi_bound<F: Real>(
    marginals: &MarginalSequence<F>,
    c: F,
    rho: F,
) -> Result<BoundReport<F>> {
    if !(c >= F::one()) {
        return Err(Error::invalid("geometric envelope needs C >= 1"));
    }
    if !(rho > F::zero() && rho < F::one()) {
        return Err(Error::invalid("geometric envelope needs rho in (0,1)"));
    }
    let p_min = marginals.min_prob();
    if !(p_min > F::zero()) {
        let index = marginals
            .probs()
            .iter()
            .position(|&p| !(p > F::zero()))
            .unwrap_or(0);
        return Err(Error::ZeroLowerMass { index: index + 1 });
    }
    let threshold = p_min / F::from_count(2);
    // powf rather than powi: lags can exceed i32 when rho sits next to 1
    let envelope = |lag: usize| c * rho.powf(F::from_count(lag));

    // smallest lag with C rho^lag <= p_min/2; start from the analytic
    // guess and settle the boundary by direct checks
    let guess = ((threshold / c).ln() / rho.ln()).ceil();
    let mut lag = guess.to_usize().unwrap_or(1).max(1);
    while envelope(lag) > threshold {
        lag += 1;
    }
    while lag > 1 && envelope(lag - 1) <= threshold {
        lag -= 1;
    }
    let spacing = lag - 1; // L0

    let s_n = marginals.total_mass();
    let denom = F::from_count(2 * (spacing + 1));
    let exponent = s_n / denom;
    let weak = crate::float::one_minus_exp_neg(p_min * F::from_count(marginals.len()) / denom);
    Ok(
        BoundReport::exponential(BoundForm::GeomPhi, exponent, spacing)
            .with_residual("p_min", p_min)
            .with_residual("phi_at_lag", envelope(lag))
            .with_residual("weak_bound", weak),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_phi(c: f64, rho: f64) -> MixingProfile<f64> {
        MixingProfile::geometric(c, rho, CoefficientFamily::Phi).unwrap()
    }

    #[test]
    fn reference_row_one() {
        // constant 0.4 marginals, geometric envelope rho = 0.5, L = 2
        let m = MarginalSequence::constant(0.4, 50).unwrap();
        let r = phi_bound(&m, &geometric_phi(1.0, 0.5), 2).unwrap();
        let expected_exponent = 50.0 * (0.4 - 0.125) / 3.0;
        assert!((r.exponent.unwrap() - expected_exponent).abs() < 1e-12);
        assert!((r.bound - 0.990).abs() < 5e-4);
        assert_eq!(r.form, BoundForm::PhiClean);
    }

    #[test]
    fn single_independent_event() {
        let m = MarginalSequence::new(vec![0.5]).unwrap();
        let zeros = MixingProfile::tabulated(vec![0.0], CoefficientFamily::Phi).unwrap();
        let r = phi_bound(&m, &zeros, 0).unwrap();
        assert!((r.bound - (1.0 - (-0.5f64).exp())).abs() < 1e-15);
        assert_eq!(r.exponent.unwrap(), 0.5);
    }

    #[test]
    fn residual_annihilates_all_terms() {
        let m = MarginalSequence::constant(0.1, 10).unwrap();
        let heavy = MixingProfile::tabulated(vec![0.2], CoefficientFamily::Phi).unwrap();
        for spacing in 0..5 {
            let r = phi_bound(&m, &heavy, spacing).unwrap();
            assert_eq!(r.exponent.unwrap(), 0.0);
            assert_eq!(r.bound, 0.0);
            assert_eq!(r.form, BoundForm::PhiMain);
        }
    }

    #[test]
    fn rejects_alpha_profile() {
        let m = MarginalSequence::constant(0.4, 5).unwrap();
        let alpha = MixingProfile::geometric(1.0, 0.5, CoefficientFamily::Alpha).unwrap();
        let err = phi_bound(&m, &alpha, 1).unwrap_err();
        assert!(err.to_string().contains("family mismatch"));
    }

    #[test]
    fn optimizer_reference_rows() {
        let m = MarginalSequence::constant(0.25, 100).unwrap();
        let r = phi_optimize(&m, &geometric_phi(1.0, 0.8)).unwrap();
        assert_eq!(r.spacing, Some(11));
        assert!((r.bound - 0.779).abs() < 5e-4);

        let m = MarginalSequence::constant(0.4, 50).unwrap();
        let r = phi_optimize(&m, &geometric_phi(1.0, 0.5)).unwrap();
        assert_eq!(r.spacing, Some(2));
        assert!((r.bound - 0.990).abs() < 5e-4);
    }

    #[test]
    fn optimizer_independent_case_picks_l_zero() {
        let m = MarginalSequence::<f64>::constant(0.3, 6).unwrap();
        let zeros = MixingProfile::tabulated(vec![0.0], CoefficientFamily::Phi).unwrap();
        let r = phi_optimize(&m, &zeros).unwrap();
        assert_eq!(r.spacing, Some(0));
        assert!((r.exponent.unwrap() - 1.8).abs() < 1e-12);
    }

    #[test]
    fn optimizer_dominates_every_fixed_spacing() {
        let m = MarginalSequence::new(vec![0.3, 0.7, 0.2, 0.9, 0.05, 0.4]).unwrap();
        let profile = geometric_phi(1.2, 0.6);
        let best = phi_optimize(&m, &profile).unwrap();
        for spacing in 0..m.len() {
            let r = phi_bound(&m, &profile, spacing).unwrap();
            assert!(best.exponent.unwrap() >= r.exponent.unwrap() - 1e-15);
            assert!(best.bound >= r.bound - 1e-15);
        }
    }

    #[test]
    fn optimizer_ties_resolve_to_smallest_spacing() {
        // zero mass gives a zero exponent at every L; the report must
        // still be deterministic
        let m = MarginalSequence::new(vec![0.0, 0.0, 0.0, 0.0]).unwrap();
        let zeros = MixingProfile::tabulated(vec![0.0], CoefficientFamily::Phi).unwrap();
        let r = phi_optimize(&m, &zeros).unwrap();
        assert_eq!(r.spacing, Some(0));
        assert_eq!(r.exponent.unwrap(), 0.0);
    }

    #[test]
    fn geom_phi_reference_rows() {
        // a = 0.2, b = 0.3, N = 50: p = 0.4, rho = 0.5
        let m = MarginalSequence::<f64>::constant(0.4, 50).unwrap();
        let r = geom_phi_bound(&m, 1.0, 0.5).unwrap();
        assert_eq!(r.spacing, Some(2));
        assert!((r.bound - 0.964).abs() < 5e-4);

        // a = 0.05, b = 0.15, N = 100: p = 0.25, rho = 0.8
        let m = MarginalSequence::<f64>::constant(0.25, 100).unwrap();
        let r = geom_phi_bound(&m, 1.0, 0.8).unwrap();
        assert_eq!(r.spacing, Some(9));
        assert!((r.bound - 0.713).abs() < 5e-4);
        // weak form is weaker (equal here since marginals are constant)
        assert!(r.residuals["weak_bound"] <= r.bound + 1e-15);
    }

    #[test]
    fn geom_phi_tiny_rho_meets_threshold_at_first_lag() {
        let m = MarginalSequence::<f64>::constant(0.5, 10).unwrap();
        let r = geom_phi_bound(&m, 1.0, 1e-9).unwrap();
        assert_eq!(r.spacing, Some(0));
        assert!((r.bound - (1.0 - (-5.0f64 / 2.0).exp())).abs() < 1e-12);
    }

    #[test]
    fn geom_phi_requires_positive_lower_mass() {
        let m = MarginalSequence::<f64>::new(vec![0.5, 0.0, 0.5]).unwrap();
        let err = geom_phi_bound(&m, 1.0, 0.5).unwrap_err();
        assert!(err.to_string().contains("zero-lower-mass"));
    }
}
