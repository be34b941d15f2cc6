use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalars usable as matrix entries.
///
/// Fixed-width types go through checked arithmetic and panic on overflow
/// instead of wrapping; `BigInt` never overflows.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    fn int(x: i64) -> Self {
        <Self as FromPrimitive>::from_i64(x).expect("scalar conversion")
    }

    fn add_c(&self, other: &Self) -> Self {
        self.checked_add(other).expect("integer overflow in addition")
    }

    fn sub_c(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("integer overflow in subtraction")
    }

    fn mul_c(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("integer overflow in multiplication")
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}
