//! Exact arithmetic shared by every guessing method.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; on top of
//! them this module provides dense univariate polynomials, truncated power
//! series, fixed-precision decimals and exact nullspace computation.

mod decimal;
mod linalg;
mod poly;
mod series;

pub use decimal::FixedDecimal;
pub use linalg::{nullspace, primitive_int_vector, rank};
pub use poly::Polynomial;
pub use series::{EvalReport, TruncatedSeries};
pub(crate) use poly::render_terms;
pub(crate) use series::rational_sqrt;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Shorthand used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_of<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, n| acc.gcd(n))
}

/// Number of characters needed to print `n` in decimal, counting a leading
/// minus sign.
pub fn decimal_width(n: &BigInt) -> usize {
    let digits = n.abs().to_str_radix(10).len();
    digits + usize::from(n.is_negative())
}

/// Character count of a rational printed as `p` or `p/q`.
pub fn rational_width(q: &Rat) -> usize {
    if q.is_integer() {
        decimal_width(q.numer())
    } else {
        decimal_width(q.numer()) + decimal_width(q.denom())
    }
}

/// `true` when every entry is an integer.
pub fn all_integral(values: &[Rat]) -> bool {
    values.iter().all(|v| v.is_integer())
}

pub fn to_integers(values: &[Rat]) -> Option<Vec<BigInt>> {
    values
        .iter()
        .map(|v| v.is_integer().then(|| v.to_integer()))
        .collect()
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}
