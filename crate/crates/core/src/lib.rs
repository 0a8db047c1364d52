//! Finite-sample lower bounds for `P(A_1 ∪ … ∪ A_N)` when the events
//! are weakly dependent.
//!
//! The inputs are the one-dimensional marginals `p_k = P(A_k)`, a
//! lag-indexed envelope for a mixing coefficient (uniform φ or strong
//! α), and — for the second-order and second-moment bounds — local or
//! full pairwise intersection probabilities. Each inequality returns a
//! [`BoundReport`] carrying the bound, its exponent, the spacing used,
//! and named residual terms.
//!
//! The [`models`] module supplies exact oracles: explicit joint tables
//! with brute-force unions and exact restricted mixing coefficients, a
//! stationary two-state Markov chain, and the duplicated-block family.
//! [`montecarlo`] estimates unions for models too large to enumerate,
//! reproducibly. [`validate`] wires bounds and oracles into a
//! randomized validity suite.
//!
//! The numeric core is generic over the scalar type through [`Real`];
//! the aliases at the crate root fix `f64`, which is what the CLI and
//! the file formats use.

// Validation guards use the negated form `!(x > 0)` on purpose: it
// also rejects NaN, which the un-negated comparison would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accum;
pub mod band;
pub mod bounds;
pub mod error;
pub mod float;
pub mod marginals;
pub mod models;
pub mod montecarlo;
pub mod partition;
pub mod profile;
pub mod report;
pub mod validate;

pub use band::IntersectionBand;
pub use error::{Error, Result};
pub use float::Real;
pub use marginals::{MarginalSequence, WindowSpec};
pub use partition::{spaced_classes, spaced_partition};
pub use profile::{CoefficientFamily, MixingProfile, ProfileKind};
pub use report::{BoundForm, BoundReport};

/// `f64` instantiations of the generic core types.
pub type Marginals = MarginalSequence<f64>;
pub type Profile = MixingProfile<f64>;
pub type Band = IntersectionBand<f64>;
pub type Report = BoundReport<f64>;
pub type JointTable = models::JointTableModel<f64>;
pub type Markov2 = models::Markov2Model<f64>;
pub type Blocks = models::BlockFamily<f64>;
