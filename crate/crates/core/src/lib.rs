//! Exact arithmetic for the Weyl algebras `W^(l)` with fractional powers of
//! `X`, their commutative counterparts `L^(l)`, the valuation geometry of
//! supports (directions, leading parts, corners, associated univariate
//! polynomials), the `(rho,sigma)`-bracket machinery, support-cutting
//! automorphisms, and a certificate-producing exhaustive search over
//! compatible complete corner chains.
//!
//! Everything is computed over the rationals; there is no floating point
//! anywhere in this crate.

pub mod bracket;
pub mod chain;
pub mod element;
pub mod point;
pub mod poly;
pub mod transform;
pub mod valuation;
pub mod verify;

mod linalg;

use num::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational scalar used throughout.
pub type Rat = BigRational;

/// Errors raised by the algebra, valuation and search operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("level {child} does not divide {parent}")]
    LevelNotDivisible { child: i64, parent: i64 },
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("direction ({0}, {1}) is not primitive or lies below the antidiagonal")]
    InvalidDirection(i64, i64),
    #[error("corner undefined at boundary direction ({0}, {1})")]
    BoundaryCorner(i64, i64),
    #[error("direction ({0}, {1}) has sigma > 0")]
    SigmaPositive(i64, i64),
    #[error("point lies on the diagonal Z(1,1)")]
    DiagonalPoint,
    #[error("support point off the expected leading-term lattice")]
    OffLattice,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operands are ({0}, {1})-proportional")]
    Proportional(i64, i64),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    use num::BigInt;
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rat {
    use num::BigInt;
    BigRational::from_integer(BigInt::from(n))
}

/// Greatest common divisor on `i64`, always nonnegative.
pub(crate) fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd64(a, b)).abs() * b.abs()
    }
}

/// Formats a rational as `p` or `p/q` with positive denominator.
pub fn format_rat(r: &Rat) -> String {
    use num::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` fraction strings; the stored form must be reduced.
pub fn parse_rat(s: &str) -> Result<Rat> {
    use num::{BigInt, Integer, Zero};
    let err = || Error::Malformed(format!("bad fraction {s:?}"));
    let (num, den) = match s.split_once('/') {
        None => (s.trim().parse::<BigInt>().map_err(|_| err())?, BigInt::from(1)),
        Some((p, q)) => (
            p.trim().parse::<BigInt>().map_err(|_| err())?,
            q.trim().parse::<BigInt>().map_err(|_| err())?,
        ),
    };
    if den.is_zero() {
        return Err(Error::Malformed(format!("zero denominator in {s:?}")));
    }
    if den < BigInt::zero() || (num.gcd(&den) != BigInt::from(1) && !num.is_zero()) {
        return Err(Error::Malformed(format!("fraction {s:?} is not reduced")));
    }
    if num.is_zero() && den != BigInt::from(1) {
        return Err(Error::Malformed(format!("fraction {s:?} is not reduced")));
    }
    Ok(BigRational::new(num, den))
}
