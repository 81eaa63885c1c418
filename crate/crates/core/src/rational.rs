//! Big-rational scalar type and small helpers.
//!
//! All arithmetic in this crate is exact over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// The rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `p/q` in lowest terms (`q != 0`).
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Whether `r` is an integer `>= 0`.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Integer value of `r` when `r` is an integer small enough for `i64`.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    let n = r.to_integer();
    i64::try_from(&n).ok()
}

/// Whether `r` is zero.
pub fn is_zero(r: &Rat) -> bool {
    Zero::is_zero(r)
}
