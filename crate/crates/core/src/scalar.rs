//! Scalar abstraction for the lattice side of the library.
//!
//! All divisor/curve arithmetic is exact integer arithmetic. The types are
//! generic over any signed integer scalar (`i64`, `i128`, `BigInt`, ...);
//! overflow in a fixed-width scalar is a hard error, never wraparound.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Signed integer scalar usable as the coefficient type of divisor and
/// curve classes. Blanket-implemented; `i64`, `i128` and `BigInt` all
/// qualify.
pub trait Int:
    Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
{
    fn from_int(v: i64) -> Self {
        FromPrimitive::from_i64(v).expect("i64 must embed into the scalar type")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
{
}

pub(crate) fn add<T: Int>(a: &T, b: &T) -> T {
    a.checked_add(b).expect("integer overflow in lattice arithmetic")
}

pub(crate) fn sub<T: Int>(a: &T, b: &T) -> T {
    a.checked_sub(b).expect("integer overflow in lattice arithmetic")
}

pub(crate) fn mul<T: Int>(a: &T, b: &T) -> T {
    a.checked_mul(b).expect("integer overflow in lattice arithmetic")
}

/// Binomial coefficient `C(n, 3)`, zero for `n < 3`.
pub(crate) fn binom3<T: Int>(n: &T) -> T {
    if *n < T::from_int(3) {
        return T::zero();
    }
    let n1 = sub(n, &T::one());
    let n2 = sub(n, &T::from_int(2));
    mul(&mul(n, &n1), &n2).div_floor(&T::from_int(6))
}
