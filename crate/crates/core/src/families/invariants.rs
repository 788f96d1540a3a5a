use serde::Serialize;

use super::{make, phi, EdgeGluingLabels, Family, FamilyKind};
use crate::error::{Error, Result};
use crate::poly::{cubic_of, determinant_poly, SparsePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Relative invariant of `g[p]` acting on `V`.
    Primal,
    /// Relative invariant of the transposed action.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInvariant {
    pub name: String,
    pub side: Side,
    pub polynomial: SparsePolynomial,
}

fn inv(name: impl Into<String>, side: Side, polynomial: SparsePolynomial) -> FamilyInvariant {
    FamilyInvariant {
        name: name.into(),
        side,
        polynomial,
    }
}

/// The chain dual invariants `q₀` (`par = 0`) and `q₁` (`par = 1`): the
/// determinant with first column `x_{n+1+par}, x_{n+3+par}, …`, superdiagonal
/// `x_{2+par}, x_{4+par}, …` and diagonal `−x_{1+par}, −x_{3+par}, …`.
fn chain_dual(n: usize, par: usize) -> Result<SparsePolynomial> {
    let nv = 2 * n + 1;
    let start = n + 1 + par;
    let last = if (n + par).is_multiple_of(2) { 2 * n + 1 } else { 2 * n };
    let m = (last - start) / 2 + 1;
    let x = |v: usize| SparsePolynomial::var(nv, v - 1);
    if 2 * (m - 1) + par > n || 2 + par > n {
        return Err(Error::SizeOutOfRange { kind: "chain dual invariant", n });
    }
    let mut rows = vec![vec![SparsePolynomial::zero(nv); m]; m];
    for (r, row) in rows.iter_mut().enumerate() {
        row[0] = x(start + 2 * r);
        if r == 0 {
            if m > 1 {
                row[1] = x(2 + par);
            }
            continue;
        }
        row[r] = -&x(2 * r - 1 + par);
        if r + 1 < m {
            row[r + 1] = x(2 * r + 2 + par);
        }
    }
    determinant_poly(&rows)
}

/// `Σᵢ y_i Π_{j=0..k} x_{φ(i+2j)}` with `n = 2k + 1`.
fn circular_dual(n: usize) -> SparsePolynomial {
    let nv = 2 * n;
    let k = (n - 1) / 2;
    (1..=n).fold(SparsePolynomial::zero(nv), |acc, i| {
        let vars: Vec<usize> = std::iter::once(n + i - 1)
            .chain((0..=k).map(|j| phi(n, i + 2 * j) - 1))
            .collect();
        &acc + &SparsePolynomial::product_of(nv, &vars)
    })
}

/// Relative invariants listed for each family, primal and dual.
pub fn expected_invariants(kind: &FamilyKind) -> Result<Vec<FamilyInvariant>> {
    let k = FamilyKind::new(kind.family, kind.n)?;
    let n = k.n;
    let nv = k.vertex_count();
    let p = cubic_of(&make(&k)?);
    let x = |v: usize| SparsePolynomial::var(nv, v - 1);
    let mut out = vec![inv("p", Side::Primal, p)];
    match k.family {
        Family::Daisy => out.push(inv(format!("x{}", 2 * n + 1), Side::Primal, x(2 * n + 1))),
        Family::Chain => {
            if n >= 3 {
                out.extend((2..=n).map(|i| inv(format!("x{}", n + i), Side::Primal, x(n + i))));
                out.push(inv("q0", Side::Dual, chain_dual(n, 0)?));
                out.push(inv("q1", Side::Dual, chain_dual(n, 1)?));
                out.extend((2..n).map(|i| inv(format!("x{i}"), Side::Dual, x(i))));
            }
        }
        Family::Circular => {
            if n >= 5 {
                out.extend((1..=n).map(|i| inv(format!("x{}", n + i), Side::Primal, x(n + i))));
            }
            if n >= 5 && n % 2 == 1 {
                out.push(inv("q0", Side::Dual, circular_dual(n)));
                out.extend((1..=n).map(|i| inv(format!("x{i}"), Side::Dual, x(i))));
            }
            if n == 4 {
                let q = &(&x(1) * &x(3)) - &(&x(2) * &x(4));
                out.push(inv("q0", Side::Dual, q));
            }
        }
        Family::EdgeGluing => {
            let l = EdgeGluingLabels { n };
            out.extend((0..=n).map(|i| inv(format!("x{}", l.x(i)), Side::Primal, x(l.x(i)))));
            let w = (1..=n).fold(SparsePolynomial::zero(nv), |s, j| &s + &x(l.w(j)));
            out.push(inv("w_sum", Side::Primal, w));
        }
    }
    Ok(out)
}
