//! Second-order refinement: shifted-block Bonferroni with local
//! pairwise intersections.

use crate::accum::NeumaierSum;
use crate::band::IntersectionBand;
use crate::error::{Error, Result};
use crate::float::{positive_part, Real};
use crate::marginals::MarginalSequence;
use crate::profile::{CoefficientFamily, MixingProfile};
use crate::report::{BoundForm, BoundReport};

/// Local overlap mass over pairs at gap `d <= L-1`: plain sum, or
/// weighted by `(L-d)/L` so nearest pairs count most.
///
/// Sums the entries present in the band; the band's declared bandwidth
/// must cover every gap the sum ranges over (`insufficient-band`
/// otherwise). Completeness of the entries is the caller's concern —
/// [`second_order_bound`] enforces it.
pub fn local_overlap<F: Real>(
    band: &IntersectionBand<F>,
    spacing: usize,
    weighted: bool,
) -> Result<F> {
    if spacing < 2 {
        return Err(Error::invalid("local overlap needs L >= 2"));
    }
    let max_gap = spacing - 1;
    // gaps larger than N-1 cannot occur, so a narrow band on a short
    // index range still covers everything
    let needed = max_gap.min(band.n().saturating_sub(1));
    if band.bandwidth() < needed {
        return Err(Error::InsufficientBand {
            have: band.bandwidth(),
            need: needed,
        });
    }
    let mut acc = NeumaierSum::new();
    for (i, j, v) in band.iter() {
        let gap = j - i;
        if gap > max_gap {
            continue;
        }
        let term = if weighted {
            v * F::from_count(spacing - gap) / F::from_count(spacing)
        } else {
            v
        };
        acc.add(term);
    }
    Ok(acc.total())
}

/// Second-order bound
/// `1 - exp(-½ (S_N - T - κ_{N,L} φ(L+1))_+)` with
/// `κ_{N,L} = ⌈N/L⌉ + 1` and `T` the (optionally weighted) local
/// overlap at gaps `<= L-1`.
///
/// Every pair at gap `<= L-1` must be present in the band: a missing
/// entry is an error, because silently reading it as zero would
/// overstate the bound.
pub fn second_order_bound<F: Real>(
    marginals: &MarginalSequence<F>,
    band: &IntersectionBand<F>,
    profile: &MixingProfile<F>,
    spacing: usize,
    weighted: bool,
) -> Result<BoundReport<F>> {
    profile.expect_family(CoefficientFamily::Phi)?;
    if spacing < 2 {
        return Err(Error::invalid("second-order bound needs L >= 2"));
    }
    let n = marginals.len();
    if band.n() != n {
        return Err(Error::invalid(format!(
            "band covers 1..={} but marginals have length {n}",
            band.n()
        )));
    }
    let max_gap = (spacing - 1).min(n.saturating_sub(1));
    for i in 1..=n {
        for j in (i + 1)..=n.min(i + max_gap) {
            if band.get(i, j).is_none() {
                return Err(Error::MissingPair { i, j });
            }
        }
    }
    let overlap = local_overlap(band, spacing, weighted)?;
    let phi_at_lag = profile.value_at(spacing + 1)?;
    let kappa = F::from_count(n.div_ceil(spacing) + 1);
    let exponent =
        positive_part(marginals.total_mass() - overlap - kappa * phi_at_lag) / F::from_count(2);
    let form = if weighted {
        BoundForm::SecondOrderWeighted
    } else {
        BoundForm::SecondOrder
    };
    Ok(BoundReport::exponential(form, exponent, spacing)
        .with_residual("kappa", kappa)
        .with_residual("local_overlap", overlap)
        .with_residual("phi_at_lag", phi_at_lag))
}
