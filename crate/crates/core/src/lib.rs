//! Linear systems of surfaces in P^3 through up to eight fat points in
//! general position: dimension, fixed components, and complete base locus,
//! computed by cubic Cremona reduction on the Picard lattice of the blown-up
//! space, with an independent finite-field interpolation oracle.
//!
//! The lattice side is generic over the integer scalar; [`DivisorClass`]
//! and [`CurveClass`] are the `i64` instantiations used by the CLI, with
//! `Big*` aliases available when multiplicities threaten to overflow.

pub mod baselocus;
pub mod cremona;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod reduction;
pub mod scalar;

pub use baselocus::{base_locus, transport_cross_check, BaseLocusResult, PointSpec};
pub use cremona::{cremona_curve, cremona_divisor, CremonaStep, ReductionTrace};
pub use error::{Error, Result};
pub use lattice::{Curve, Divisor, MinusOneCurveId};
pub use reduction::{dimension, fixed_components, reduce_to_standard, FixedPart, ReductionResult};
pub use scalar::Int;

/// A divisor class with machine-integer entries.
pub type DivisorClass = Divisor<i64>;
/// A curve class with machine-integer entries.
pub type CurveClass = Curve<i64>;
/// A divisor class with arbitrary-precision entries.
pub type BigDivisorClass = Divisor<num_bigint::BigInt>;
/// A curve class with arbitrary-precision entries.
pub type BigCurveClass = Curve<num_bigint::BigInt>;
