//! Scalar traits the algebra is generic over.
//!
//! Two roles show up: wedge multiplicities (nonnegative counts that grow like
//! binomial coefficients) and the integer ring used for Smith normal form.
//! Both are satisfied by machine integers and by their arbitrary-precision
//! counterparts from `num-bigint`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::AddAssign;

use num_integer::Integer;
use num_traits::{CheckedSub, FromPrimitive, Signed, ToPrimitive, Unsigned};

/// A nonnegative count attached to a wedge summand.
pub trait Multiplicity:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Unsigned
    + CheckedSub
    + AddAssign
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("multiplicity type cannot hold count")
    }
}

impl<T> Multiplicity for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Ord
        + Integer
        + Unsigned
        + CheckedSub
        + AddAssign
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// A Euclidean integer ring for exact elimination.
pub trait IntegerRing:
    Clone + Debug + Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> IntegerRing for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
