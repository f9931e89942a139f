//! Integer scalar abstraction.
//!
//! Everything in this crate is exact: root coordinates are integers over the
//! simple-root basis and all derived quantities are integers or rationals.
//! The core types are generic over the integer scalar so the library works
//! with `i64` (the default alias at the crate root) as well as wider types.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer scalar used for root coordinates, Cartan matrices and lattice maps.
pub trait Scalar:
    Integer + Signed + FromPrimitive + ToPrimitive + Clone + Hash + Debug + Display + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + FromPrimitive + ToPrimitive + Clone + Hash + Debug + Display + 'static
{
}

/// Exact rational over the scalar `I`.
pub type Rat<I> = num_rational::Ratio<I>;

/// Shorthand for embedding an integer into the rationals.
pub fn rat<I: Scalar>(n: I) -> Rat<I> {
    Rat::from_integer(n)
}

/// The scalar value `n` as an `I`, for small literals.
pub fn from_i64<I: Scalar>(n: i64) -> I {
    I::from_i64(n).expect("scalar conversion from i64")
}
