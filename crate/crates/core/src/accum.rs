//! Compensated (Neumaier) summation.
//!
//! The exact oracles reduce up to 2^20 table weights; plain accumulation
//! drifts past the 1e-12 tolerances the invariants are checked at, so
//! every oracle reduction goes through this accumulator.

use crate::float::Real;

/// Neumaier variant of Kahan summation: error-free until the final fold.
#[derive(Debug, Clone, Copy)]
pub struct NeumaierSum<F: Real> {
    sum: F,
    compensation: F,
}

impl<F: Real> NeumaierSum<F> {
    pub fn new() -> Self {
        NeumaierSum {
            sum: F::zero(),
            compensation: F::zero(),
        }
    }

    pub fn add(&mut self, value: F) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn total(&self) -> F {
        self.sum + self.compensation
    }
}

impl<F: Real> Default for NeumaierSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum<F: Real>(values: &[F]) -> F {
    let mut acc = NeumaierSum::new();
    for &v in values {
        acc.add(v);
    }
    acc.total()
}
