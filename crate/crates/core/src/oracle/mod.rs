//! Independent verification over a large prime field: dimensions by Hermite
//! interpolation at reproducible random points, vanishing orders along
//! lines, the eighth associated point, and membership checks for
//! transported curves.

mod config;
mod fp;
mod geom;
mod interp;
mod matrix;
mod poly;

pub use config::PointConfiguration;
pub use fp::{is_prime, Field};
pub use geom::{
    cremona_point_map, curve_membership_check, eighth_point, family_base_point,
    line_vanishing_order, sample_pencil_curve, transport_config,
};
pub use interp::{conditions_matrix, evaluate_form, h0_interpolation, kernel_basis, KernelBasis};

/// Default prime for oracle runs: the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Default seed for oracle runs.
pub const DEFAULT_SEED: u64 = 42;
