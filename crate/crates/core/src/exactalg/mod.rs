//! Exact arithmetic: rationals, sparse bivariate polynomials in `(τ, Ẽ)`,
//! dense univariate polynomials and real-root isolation.
//!
//! Nothing in here converts coefficients to floating point except the
//! explicit `to_f64` helpers used at reporting boundaries.

mod bipoly;
mod roots;
mod upoly;

pub use bipoly::{poly_arith, BiPoly, PolyOp};
pub use roots::{count_real_roots, isolate_real_roots, refine_root, RootInterval};
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type BigRat = num_rational::BigRational;

/// `n / d` as a [`BigRat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &BigRat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<BigRat> {
    BigRat::from_float(x)
}

