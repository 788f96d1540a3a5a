use std::collections::HashMap;

use num_traits::One;

use super::SparsePolynomial;
use crate::error::{Error, Result};
use crate::exactla::Rational;

/// Largest matrix size accepted by [`determinant_poly`].
pub const DEFAULT_DET_CAP: usize = 12;

/// Symbolic determinant of a square matrix of polynomials.
pub fn determinant_poly(entries: &[Vec<SparsePolynomial>]) -> Result<SparsePolynomial> {
    determinant_poly_with_cap(entries, DEFAULT_DET_CAP)
}

/// Laplace expansion along rows, memoized on the set of columns still
/// available: the minor on rows `k..n` depends only on that set.
pub fn determinant_poly_with_cap(
    entries: &[Vec<SparsePolynomial>],
    cap: usize,
) -> Result<SparsePolynomial> {
    let n = entries.len();
    if n > cap {
        return Err(Error::TooLarge {
            what: "symbolic determinant",
            cap,
        });
    }
    for row in entries {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    let nvars = entries[0][0].nvars();
    let mut memo: HashMap<u32, SparsePolynomial> = HashMap::new();
    Ok(minor(entries, nvars, (1u32 << n) - 1, &mut memo))
}

fn minor(
    a: &[Vec<SparsePolynomial>],
    nvars: usize,
    cols: u32,
    memo: &mut HashMap<u32, SparsePolynomial>,
) -> SparsePolynomial {
    if cols == 0 {
        return SparsePolynomial::constant(nvars, Rational::one());
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let n = a.len();
    let row = n - cols.count_ones() as usize;
    let mut acc = SparsePolynomial::zero(nvars);
    let mut sign_neg = false;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &a[row][c];
        if !e.is_zero() {
            let sub = minor(a, nvars, cols & !(1 << c), memo);
            if !sub.is_zero() {
                let t = e * &sub;
                acc = if sign_neg { &acc - &t } else { &acc + &t };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePolynomial {
        SparsePolynomial::parse(4, s).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant_poly(&[vec![p("x1")]]).unwrap(), p("x1"));
        let m = vec![vec![p("x1"), p("x2")], vec![p("x4"), p("x3")]];
        assert_eq!(determinant_poly(&m).unwrap(), p("x1*x3 - x2*x4"));
    }

    #[test]
    fn sign_of_permutation() {
        let one = || p("1");
        let zero = || SparsePolynomial::zero(4);
        let m = vec![
            vec![zero(), one(), zero()],
            vec![zero(), zero(), one()],
            vec![one(), zero(), zero()],
        ];
        assert_eq!(determinant_poly(&m).unwrap(), one());
        let swap = vec![vec![zero(), one()], vec![one(), zero()]];
        assert_eq!(determinant_poly(&swap).unwrap(), p("-1"));
    }

    #[test]
    fn cap_and_shape() {
        let row = vec![p("x1"); 3];
        assert!(matches!(
            determinant_poly_with_cap(&[row.clone(), row.clone(), row.clone()], 2),
            Err(Error::TooLarge { .. })
        ));
        assert!(determinant_poly(&[row]).is_err());
    }
}
