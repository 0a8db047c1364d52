//! Scalar abstraction for the probability arithmetic.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over: `f32` or `f64`.
///
/// All bound formulas are plain real arithmetic (`exp`, `ln`, positive
/// parts, prefix sums), so they are written once against this trait.
/// The crate-root aliases fix `f64`, which is what the CLI and the file
/// formats use.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion of a count into the scalar type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Conversion to `f64` for error messages and reports.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `max(x, 0)`, the positive part used throughout the bound exponents.
pub fn positive_part<F: Real>(x: F) -> F {
    if x > F::zero() {
        x
    } else {
        F::zero()
    }
}

/// `1 - exp(-x)` computed via `exp_m1` so small exponents stay accurate.
pub fn one_minus_exp_neg<F: Real>(x: F) -> F {
    -(-x).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_part_clamps() {
        assert_eq!(positive_part(-0.5f64), 0.0);
        assert_eq!(positive_part(0.25f64), 0.25);
        assert_eq!(positive_part(0.0f64), 0.0);
    }

    #[test]
    fn one_minus_exp_neg_matches_direct_form() {
        for &x in &[0.0f64, 1e-12, 0.5, 4.583333, 50.0] {
            let direct = 1.0 - (-x).exp();
            assert!((one_minus_exp_neg(x) - direct).abs() <= 1e-15);
        }
        // tiny exponents keep full relative precision
        let x = 1e-14f64;
        assert!((one_minus_exp_neg(x) - x).abs() < 1e-28);
    }
}
