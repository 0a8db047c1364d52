//! Residue-class spacing partition of the index set `1..=N`.
//!
//! For a spacing parameter `L >= 0` the indices split into `L + 1`
//! classes by residue modulo `L + 1`; members of one class are at least
//! `L + 1` apart, which is what lets a lag-`(L+1)` mixing coefficient
//! control the dependence inside a class.

use crate::error::{Error, Result};

/// The `r`-th spaced class `{ k in 1..=N : k ≡ r (mod L+1) }`, increasing.
///
/// `r` ranges over `1..=L+1`; the class for `r = L + 1` collects the
/// indices divisible by `L + 1`. The class may be empty.
pub fn spaced_partition(n: usize, spacing: usize, r: usize) -> Result<Vec<usize>> {
    if n < 1 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let modulus = spacing + 1;
    if r < 1 || r > modulus {
        return Err(Error::ClassOutOfRange {
            r,
            classes: modulus,
        });
    }
    // First member of the class is r itself; subsequent members step by L+1.
    Ok((r..=n).step_by(modulus).collect())
}

/// All `L + 1` spaced classes, in class order `r = 1..=L+1`.
pub fn spaced_classes(n: usize, spacing: usize) -> Result<Vec<Vec<usize>>> {
    (1..=spacing + 1)
        .map(|r| spaced_partition(n, spacing, r))
        .collect()
}
