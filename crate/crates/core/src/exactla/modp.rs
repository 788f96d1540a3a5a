use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if p.is_multiple_of(q) {
            return p == q;
        }
    }
    let mut d = p - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, p);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus { r + p } else { r };
    r.to_u64().expect("residue fits")
}

/// Image of a rational in `GF(p)`, or `None` if `p` divides the denominator.
pub(crate) fn rational_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce(r.numer(), p), inv_mod(d, p), p))
}

/// Rank of the reduction of `m` modulo the prime `p`. Never exceeds the
/// rank over ℚ.
pub fn rank_mod_p(m: &RationalMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Option<Vec<u64>> = m.row(i).iter().map(|r| rational_mod_p(r, p)).collect();
        rows.push(row.ok_or(Error::BadPrime(p))?);
    }
    rank_mod_p_rows(rows, p)
}

/// Rank over `GF(p)` of rows already reduced mod `p`; `p` must be prime.
pub(crate) fn rank_mod_p_rows(mut rows: Vec<Vec<u64>>, p: u64) -> Result<usize> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    for row in rows.iter_mut() {
        for v in row.iter_mut() {
            *v %= p;
        }
    }
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(piv) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..cols {
                if prow[j] != 0 {
                    let sub = mul_mod(f, prow[j], p);
                    row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
                }
            }
        }
        r += 1;
    }
    Ok(r)
}
