//! Exact finite-restricted mixing coefficients of a joint table.
//!
//! For a finite family `A_1..A_N` and a lag `n`, the restricted
//! coefficient is the supremum over cut points `k` with `k + n <= N` of
//! the coefficient between `σ(A_1..A_k)` and `σ(A_{k+n}..A_N)`; it is 0
//! when no cut point is admissible (in particular at lags `>= N`).
//!
//! Both suprema over events are computed exactly:
//!
//! * For a fixed event `A` on one side, the supremum over events `B` on
//!   the other side of `|P(A ∩ B) - P(A) P(B)|` is attained by the union
//!   of the atoms whose signed contribution is positive, because the set
//!   function is additive and has total mass 0. This collapses one side
//!   to a positive-part sum over atoms.
//! * For the uniform coefficient, the supremum over conditioning events
//!   is attained at an atom: the conditional law of an event is a convex
//!   combination of the conditional laws of its atoms, and the
//!   total-variation objective is convex. So only atoms are visited.
//! * For the strong-mixing coefficient no such collapse exists on the
//!   remaining side, so events there are enumerated as subsets of atoms
//!   — over whichever side has fewer atoms, which is equivalent by
//!   symmetry of `|P(A ∩ B) - P(A) P(B)|`.
//!
//! The subset enumeration is budgeted by `max_past`: a side with more
//! than `2^max_past` atoms is refused with `past-too-large`.

use crate::accum::NeumaierSum;
use crate::error::{Error, Result};
use crate::float::{positive_part, Real};
use crate::models::joint::JointTableModel;
use crate::profile::CoefficientFamily;

/// Default enumeration budget: at most `2^(2^4) = 65536` events per cut.
pub const DEFAULT_MAX_PAST: usize = 4;

/// Exact finite-restricted coefficient of `table` at `lag >= 1`.
///
/// `max_past` caps, in atom bits, the side whose events must be
/// enumerated for the strong-mixing supremum; the uniform coefficient
/// never enumerates events and ignores the cap.
pub fn exact_restricted_coefficient<F: Real>(
    table: &JointTableModel<F>,
    family: CoefficientFamily,
    lag: usize,
    max_past: usize,
) -> Result<F> {
    if lag < 1 {
        return Err(Error::invalid("lag must be at least 1"));
    }
    let n = table.n();
    if lag >= n {
        // no admissible cut point: the coefficient is 0 by convention
        return Ok(F::zero());
    }
    let mut best = F::zero();
    for cut in 1..=(n - lag) {
        let value = coefficient_at_cut(table, family, lag, cut, max_past)?;
        best = best.max(value);
    }
    Ok(best.min(F::one()))
}

/// Coefficient between `σ(A_1..A_cut)` and `σ(A_{cut+lag}..A_N)`.
fn coefficient_at_cut<F: Real>(
    table: &JointTableModel<F>,
    family: CoefficientFamily,
    lag: usize,
    cut: usize,
    max_past: usize,
) -> Result<F> {
    let n = table.n();
    let past_bits = cut;
    let future_bits = n - (cut + lag) + 1;

    if family == CoefficientFamily::Alpha && past_bits.min(future_bits) > max_past {
        return Err(Error::PastTooLarge {
            lag,
            needed: past_bits.min(future_bits),
            cap: max_past,
        });
    }

    let np = 1usize << past_bits;
    let nf = 1usize << future_bits;

    // Joint law of (past atom, future atom): marginalize the gap bits.
    let mut joint = vec![NeumaierSum::<F>::new(); np * nf];
    let past_mask = np - 1;
    let future_shift = cut + lag - 1;
    for (s, &w) in table.weights().iter().enumerate() {
        let ap = s & past_mask;
        let af = (s >> future_shift) & (nf - 1);
        joint[ap * nf + af].add(w);
    }
    let joint: Vec<F> = joint.iter().map(|acc| acc.total()).collect();

    let mut past_marginal = vec![F::zero(); np];
    let mut future_marginal = vec![F::zero(); nf];
    for ap in 0..np {
        let mut acc = NeumaierSum::new();
        for af in 0..nf {
            acc.add(joint[ap * nf + af]);
        }
        past_marginal[ap] = acc.total();
    }
    for af in 0..nf {
        let mut acc = NeumaierSum::new();
        for ap in 0..np {
            acc.add(joint[ap * nf + af]);
        }
        future_marginal[af] = acc.total();
    }

    match family {
        CoefficientFamily::Phi => Ok(uniform_coefficient(
            &joint,
            &past_marginal,
            &future_marginal,
            np,
            nf,
        )),
        CoefficientFamily::Alpha => Ok(strong_coefficient(
            &joint,
            &past_marginal,
            &future_marginal,
            np,
            nf,
        )),
    }
}

/// `sup_{A: P(A)>0} sup_B |P(B|A) - P(B)|`, the supremum over `A`
/// running over past atoms only (see module docs).
fn uniform_coefficient<F: Real>(joint: &[F], past: &[F], future: &[F], np: usize, nf: usize) -> F {
    let mut best = F::zero();
    for ap in 0..np {
        let pa = past[ap];
        if !(pa > F::zero()) {
            continue;
        }
        let mut acc = NeumaierSum::new();
        for af in 0..nf {
            acc.add(positive_part(joint[ap * nf + af] / pa - future[af]));
        }
        best = best.max(acc.total());
    }
    best
}

/// `sup_{A,B} |P(A ∩ B) - P(A) P(B)|`: subsets of the smaller side's
/// atoms are enumerated, the other side collapses to a positive-part
/// sum. `deviation[x][y] = P(x ∩ y) - P(x) P(y)` over atom pairs.
fn strong_coefficient<F: Real>(joint: &[F], past: &[F], future: &[F], np: usize, nf: usize) -> F {
    // Lay the enumerated side out as rows.
    let (rows, cols) = if np <= nf { (np, nf) } else { (nf, np) };
    let deviation = |x: usize, y: usize| -> F {
        if np <= nf {
            joint[x * nf + y] - past[x] * future[y]
        } else {
            joint[y * nf + x] - past[y] * future[x]
        }
    };

    let subsets = 1usize << rows;
    // value[s] accumulates sum_y (sum_{x in s} deviation(x,y))_+ .
    let mut value = vec![F::zero(); subsets];
    let mut partial = vec![F::zero(); subsets];
    for y in 0..cols {
        partial[0] = F::zero();
        for s in 1..subsets {
            let low = s.trailing_zeros() as usize;
            // subset sums share all but the lowest set bit
            partial[s] = partial[s & (s - 1)] + deviation(low, y);
        }
        for s in 1..subsets {
            value[s] = value[s] + positive_part(partial[s]);
        }
    }
    value.iter().cloned().fold(F::zero(), F::max)
}
