//! The second-moment comparator: `P(⋃ A_k) >= S_N² / Σ_{i,j} P(A_i ∩ A_j)`.

use crate::accum::NeumaierSum;
use crate::band::IntersectionBand;
use crate::error::{Error, Result};
use crate::float::Real;
use crate::marginals::MarginalSequence;
use crate::report::{BoundForm, BoundReport};

/// Second-moment lower bound. The denominator runs over all ordered
/// pairs: diagonal terms `P(A_i ∩ A_i) = p_i` come from the marginals,
/// off-diagonal terms from the band, which must therefore contain every
/// pair `i < j` (`missing-pairs` otherwise).
///
/// Degenerate all-zero marginals give bound 0 by convention. For
/// intersection tables that arise from an actual probability model the
/// ratio never exceeds 1 (Cauchy–Schwarz); an inconsistent hand-written
/// band can push it above 1, in which case the value is clamped, the
/// `clipped` flag is set, and the raw ratio is kept in the residuals.
pub fn chung_erdos_bound<F: Real>(
    marginals: &MarginalSequence<F>,
    intersections: &IntersectionBand<F>,
) -> Result<BoundReport<F>> {
    let n = marginals.len();
    if intersections.n() != n {
        return Err(Error::invalid(format!(
            "band covers 1..={} but marginals have length {n}",
            intersections.n()
        )));
    }
    if n > 1 && intersections.bandwidth() < n - 1 {
        return Err(Error::InsufficientBand {
            have: intersections.bandwidth(),
            need: n - 1,
        });
    }
    let mut denom = NeumaierSum::new();
    for &p in marginals.probs() {
        denom.add(p);
    }
    let two = F::from_count(2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            match intersections.get(i, j) {
                Some(v) => denom.add(two * v),
                None => return Err(Error::MissingPair { i, j }),
            }
        }
    }
    let denom = denom.total();
    let s_n = marginals.total_mass();

    let mut report = BoundReport {
        bound: F::zero(),
        exponent: None,
        spacing: None,
        residuals: Default::default(),
        clipped: false,
        form: BoundForm::ChungErdos,
    };
    report.push_residual("mass", s_n);
    report.push_residual("denominator", denom);
    if s_n > F::zero() {
        let ratio = s_n * s_n / denom;
        if ratio > F::one() {
            report.bound = F::one();
            report.clipped = true;
            report.push_residual("raw_ratio", ratio);
        } else {
            report.bound = ratio;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_event_is_tight() {
        let m = MarginalSequence::<f64>::new(vec![0.3]).unwrap();
        let band = IntersectionBand::empty(1, 1).unwrap();
        let r = chung_erdos_bound(&m, &band).unwrap();
        assert!((r.bound - 0.3).abs() < 1e-15);
    }

    #[test]
    fn independent_pair_reference_value() {
        let m = MarginalSequence::<f64>::new(vec![0.5, 0.5]).unwrap();
        let band = IntersectionBand::new(2, 1, vec![(1, 2, 0.25)]).unwrap();
        let r = chung_erdos_bound(&m, &band).unwrap();
        assert!((r.bound - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn all_zero_marginals_give_zero() {
        let m = MarginalSequence::<f64>::new(vec![0.0, 0.0]).unwrap();
        let band = IntersectionBand::new(2, 1, vec![(1, 2, 0.0)]).unwrap();
        let r = chung_erdos_bound(&m, &band).unwrap();
        assert_eq!(r.bound, 0.0);
        assert!(!r.clipped);
    }

    #[test]
    fn missing_pair_is_an_error() {
        let m = MarginalSequence::<f64>::new(vec![0.5, 0.5, 0.5]).unwrap();
        let band = IntersectionBand::new(3, 2, vec![(1, 2, 0.25)]).unwrap();
        let err = chung_erdos_bound(&m, &band).unwrap_err();
        assert!(err.to_string().contains("missing-pairs"));
    }

    #[test]
    fn unrealizable_band_is_clamped_and_flagged() {
        // intersections of 0 with p = 0.9 are impossible for two events;
        // the formula then exceeds 1 and the clamp must be visible
        let m = MarginalSequence::new(vec![0.9, 0.9]).unwrap();
        let band = IntersectionBand::new(2, 1, vec![(1, 2, 0.0)]).unwrap();
        let r = chung_erdos_bound(&m, &band).unwrap();
        assert_eq!(r.bound, 1.0);
        assert!(r.clipped);
        assert!(r.residuals["raw_ratio"] > 1.0);
    }
}
