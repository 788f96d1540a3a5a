use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{clear_denominators, Rational, RationalMatrix, RationalVector};
use crate::error::{Error, Result};

/// Reduced row echelon form and its pivot columns (Gauss–Jordan over ℚ).
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.row_vectors();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow).skip(c) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = RationalMatrix::from_rows(a).unwrap_or_else(|_| RationalMatrix::zeros(rows, cols));
    (out, pivots)
}

/// Kernel basis read off the RREF: one vector per free column.
pub fn nullspace(m: &RationalMatrix) -> Vec<RationalVector> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = RationalVector::zeros(cols);
            v.0[f] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v.0[p] = -r.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the input, so divisions are exact.
pub fn rank_of_integer_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in (c + 1)..cols {
                let v = &prow[c] * &row[j] - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank over ℚ. Rows are scaled to integers and reduced fraction-free.
pub fn rank(m: &RationalMatrix) -> usize {
    let rows = (0..m.rows()).map(|i| clear_denominators(m.row(i))).collect();
    rank_of_integer_rows(rows)
}

/// Exact determinant via Bareiss elimination after clearing denominators
/// row by row.
pub fn det_fraction_free(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let l = super::denominator_lcm(row.iter());
        scale *= &l;
        a.push(clear_denominators(row));
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap(c, p);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(c + 1);
        let prow = &head[c];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in (c + 1)..n {
                let v = &prow[c] * &row[j] - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[c][c].clone();
    }
    let d = if negate { -prev } else { prev };
    let mut out = Rational::new(d, scale);
    if out.denom().is_negative() {
        out = -out;
    }
    Ok(out)
}

/// Coefficients `c₀, …, cₙ` of `det(λI − A) = Σ cₖ λᵏ` (Faddeev–LeVerrier).
pub fn charpoly(a: &RationalMatrix) -> Result<Vec<Rational>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next.add_at(i, i, &c[n - k + 1]);
        }
        let am = a * &next;
        let tr: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        m = next;
    }
    Ok(c)
}
