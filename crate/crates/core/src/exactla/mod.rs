//! Exact linear algebra over the rationals and over prime fields.
//!
//! Every constraint matrix built elsewhere in the crate has integer
//! entries, and every evaluation point is rational, so ranks and kernel
//! dimensions computed here over ℚ agree with the same quantities over ℂ:
//! Gaussian elimination never leaves the field generated by the entries.

mod elim;
mod matrix;
mod modp;
mod sparse;

pub use elim::{charpoly, det_fraction_free, nullspace, rank, rank_of_integer_rows, rref};
pub use matrix::{RationalMatrix, RationalVector};
pub use modp::{rank_mod_p, MERSENNE_61};
pub use sparse::{PivotStrategy, SparseElimination, SparseMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `num/den`, or just `num` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num`, `num/den`, with optional sign on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for none).
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a row of rationals to integers by the lcm of its denominators.
pub(crate) fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row.iter());
    row.iter()
        .map(|r| {
            if r.is_zero() {
                BigInt::zero()
            } else {
                r.numer() * (&l / r.denom())
            }
        })
        .collect()
}

/// Serializes a rational as its `num/den` text.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}
