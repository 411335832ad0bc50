//! Scalar traits for the generic numeric layer.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Commutative ring with unity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Ring where every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Division that is only ever asked for when the quotient exists in the ring
/// (fraction-free elimination).
pub trait ExactDiv: Ring {
    fn div_exact(&self, divisor: &Self) -> Self;
}

impl ExactDiv for BigInt {
    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division {self} / {divisor}");
        q
    }
}

impl ExactDiv for i64 {
    fn div_exact(&self, divisor: &Self) -> Self {
        debug_assert_eq!(self % divisor, 0);
        self / divisor
    }
}

impl ExactDiv for i128 {
    fn div_exact(&self, divisor: &Self) -> Self {
        debug_assert_eq!(self % divisor, 0);
        self / divisor
    }
}

impl ExactDiv for num_rational::BigRational {
    fn div_exact(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

impl ExactDiv for f64 {
    fn div_exact(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

/// Embeds a machine integer into the scalar type.
pub fn from_i64<T: Ring>(value: i64) -> T {
    // double-and-add keeps this to the ring operations
    let mut acc = T::zero();
    let mut base = T::one();
    let mut n = value.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        n >>= 1;
    }
    if value < 0 {
        -acc
    } else {
        acc
    }
}
