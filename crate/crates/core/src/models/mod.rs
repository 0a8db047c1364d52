//! Exact dependent-event models and the oracles built on them.

mod block;
mod coeffs;
mod joint;
mod markov;

pub use block::BlockFamily;
pub use coeffs::{exact_restricted_coefficient, DEFAULT_MAX_PAST};
pub use joint::{JointTableModel, MAX_TABLE_BITS, TABLE_FILE_MAGIC};
pub use markov::Markov2Model;
