use super::rational::Rational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Ring element that can produce its own zero and one. Multiplication need
/// not commute: matrix products keep the factor order, and only the
/// determinant routines assume commutativity.
///
/// Polynomial types carry their variable count, so `zero`/`one` are taken
/// relative to an existing element instead of being associated constants.
pub trait RingElem:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}
