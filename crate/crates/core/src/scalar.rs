use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::Signed;

/// Exact integer scalar the linear algebra runs over.
///
/// Implemented for every signed integer type that can absorb an `i64`, so
/// `i64`, `i128` and [`BigInt`](num_bigint::BigInt) all qualify. Only the
/// big-integer instantiation is immune to overflow.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
}
