//! Exact rational scalars and their `"a"` / `"a/b"` wire representation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// The scalar type used everywhere in the crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal-free rational string: `"a"` or `"a/b"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let mut parts = s.splitn(2, '/');
    let num = parts.next().ok_or_else(bad)?;
    let num: BigInt = num.parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den) => {
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Formats a rational canonically: `"a"` when integral, `"a/b"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is a non-negative rational.
pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}
