//! Coefficient fields.
//!
//! Everything linear in the engine is generic over [`Scalar`]. The exact
//! computations run over [`Q`]; the floating types only exist so that the
//! linear-algebra layer can be reused for quick numerical experiments, where
//! zero tests are of course no longer exact.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

/// A field of coefficients.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Builds the scalar `n`.
    fn from_i64(n: i64) -> Self;

    /// Builds the scalar `num/den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// `(-1)^e`.
    fn sign(e: u64) -> Self {
        if e.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Q = BigRational;

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
}

/// Shorthand for an exact rational `n/1`.
pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

/// Shorthand for an exact rational `num/den`.
pub fn qr(num: i64, den: i64) -> Q {
    Q::ratio(num, den)
}

/// Sign `(-1)^e` for an integer exponent.
pub fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
