//! The bound inequalities, each returning a [`BoundReport`](crate::report::BoundReport).

mod alpha;
mod chung_erdos;
mod phi;
mod second_order;
mod sharpness;
mod window;

pub use alpha::{
    alpha_bound, alpha_lower_mass_bound, default_poly_theta, poly_alpha_bound,
    poly_alpha_bound_from_marginals,
};
pub use chung_erdos::chung_erdos_bound;
pub use phi::{geom_phi_bound, phi_bound, phi_optimize};
pub use second_order::{local_overlap, second_order_bound};
pub use sharpness::{log_spaced_grid, sharpness_scan, SharpnessQuery, SharpnessVerdict};
pub use window::window_bound;
