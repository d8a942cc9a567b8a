//! Exact rational scalars.
//!
//! All coefficient arithmetic in the crate is over `Rat`, an
//! arbitrary-precision rational kept reduced with a positive denominator
//! (the backing implementation normalizes on construction). Helpers here
//! cover the few constructions used everywhere and a canonical `a/b`
//! rendering shared by the printers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// Canonical rendering: integers print bare, otherwise `n/d` with the sign
/// on the numerator.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rendering for coefficient positions in expressions: the magnitude only;
/// callers emit the sign as `+`/`-` between terms.
pub fn fmt_rat_abs(r: &Rat) -> String {
    fmt_rat(&r.abs())
}
