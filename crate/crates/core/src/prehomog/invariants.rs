use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{random_point, schwartz_zippel_bound, RankConfig};
use crate::error::{Error, Result};
use crate::exactla::{charpoly, det_fraction_free, Rational, RationalMatrix, RationalVector, SparseMatrix};
use crate::liealg::{proportionality, MatrixBasis};
use crate::poly::{lie_derivative, SparsePolynomial};

/// Result of testing `L_{Bₖ} q = λₖ q` across a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub polynomial: SparsePolynomial,
    pub is_relative_invariant: bool,
    /// `λₖ` per basis element; empty unless the test passed.
    #[serde(serialize_with = "crate::exactla::ser_rationals")]
    pub character: Vec<Rational>,
}

impl InvariantReport {
    /// Re-checks the stored character against `b`.
    pub fn recheck(&self, b: &MatrixBasis) -> Result<bool> {
        if !self.is_relative_invariant {
            return Ok(false);
        }
        for (e, l) in b.elements().iter().zip(&self.character) {
            if lie_derivative(e, &self.polynomial)? != self.polynomial.scale(l) {
                return Ok(false);
            }
        }
        Ok(self.character.len() == b.dim())
    }
}

pub fn relative_invariant_character(q: &SparsePolynomial, b: &MatrixBasis) -> Result<InvariantReport> {
    if q.is_zero() {
        return Err(Error::ZeroCandidate);
    }
    if q.nvars() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            got: q.nvars(),
        });
    }
    let mut character = Vec::with_capacity(b.dim());
    for e in b.elements() {
        match proportionality(&lie_derivative(e, q)?, q) {
            Some(l) => character.push(l),
            None => {
                return Ok(InvariantReport {
                    polynomial: q.clone(),
                    is_relative_invariant: false,
                    character: Vec::new(),
                })
            }
        }
    }
    Ok(InvariantReport {
        polynomial: q.clone(),
        is_relative_invariant: true,
        character,
    })
}

/// 1-based indices `i` such that every basis element has row `i`
/// supported on the diagonal, i.e. `xᵢ` is a relative invariant.
pub fn coordinate_invariants(b: &MatrixBasis) -> Vec<usize> {
    (0..b.n()).filter(|&i| b.row_is_diagonal(i)).map(|i| i + 1).collect()
}

/// A joint eigenspace of the transposed basis: every nonzero form in
/// `basis` is a relative invariant with the given character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInvariant {
    pub basis: Vec<RationalVector>,
    pub character: Vec<Rational>,
}

/// Largest eigenvalue search range per matrix.
const EIGEN_RANGE_CAP: u64 = 1 << 20;

/// Rational eigenvalues of `m` in increasing order. With `d` the common
/// denominator, eigenvalues of `d·m` are algebraic integers, so the rational
/// ones are integers bounded by the largest absolute row sum.
fn rational_eigenvalues(m: &RationalMatrix) -> Option<Vec<Rational>> {
    let d = m
        .as_flat()
        .iter()
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let dr = Rational::from_integer(d.clone());
    let scaled = m.scale(&dr);
    let bound = (0..scaled.rows())
        .map(|i| scaled.row(i).iter().map(|v| v.abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = bound.to_integer().to_u64()?;
    if bound > EIGEN_RANGE_CAP {
        return None;
    }
    let c: Vec<BigInt> = charpoly(&scaled)
        .expect("square")
        .into_iter()
        .map(|r| r.to_integer())
        .collect();
    let b = bound as i64;
    Some(
        (-b..=b)
            .filter(|&mu| {
                let x = BigInt::from(mu);
                c.iter().rev().fold(BigInt::zero(), |acc, k| acc * &x + k).is_zero()
            })
            .map(|mu| Rational::new(BigInt::from(mu), d.clone()))
            .collect(),
    )
}

/// Linear forms `ℓ` with `ᵗBₖ ℓ = λₖ ℓ` for every basis element, grouped by
/// character. Only rational characters are found; matrices whose
/// eigenvalue range exceeds the search cap leave their forms undetected.
pub fn linear_invariants(b: &MatrixBasis) -> Vec<LinearInvariant> {
    let n = b.n();
    let mut spaces = vec![LinearInvariant {
        basis: (0..n)
            .map(|i| {
                let mut v = RationalVector::zeros(n);
                v.0[i] = Rational::from_integer(1.into());
                v
            })
            .collect(),
        character: Vec::new(),
    }];
    for e in b.elements() {
        let t = e.transpose();
        let Some(eigs) = rational_eigenvalues(&t) else {
            return Vec::new();
        };
        let mut next = Vec::new();
        for s in &spaces {
            let w = RationalMatrix::from_columns(n, &s.basis);
            let tw = &t * &w;
            for l in &eigs {
                let m = &tw - &w.scale(l);
                let kernel = SparseMatrix::from_dense(&m).nullspace();
                if kernel.is_empty() {
                    continue;
                }
                let basis: Vec<RationalVector> = kernel
                    .iter()
                    .map(|c| w.mul_vec(c).expect("shape"))
                    .collect();
                let mut character = s.character.clone();
                character.push(l.clone());
                next.push(LinearInvariant { basis, character });
            }
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }
    spaces
}

/// Whether the form `Σ ℓᵢ xᵢ` is a relative invariant of `b`.
pub fn is_linear_invariant(b: &MatrixBasis, l: &RationalVector) -> Result<bool> {
    let q = SparsePolynomial::linear_form(&l.0);
    if q.is_zero() {
        return Err(Error::ZeroCandidate);
    }
    Ok(relative_invariant_character(&q, b)?.is_relative_invariant)
}

/// Outcome of the log-Hessian probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityProbe {
    pub nondegenerate: bool,
    pub samples_used: usize,
    /// Bound on the chance that a `false` answer is wrong.
    pub error_bound: Option<Rational>,
}

/// Tests whether `det(f·Hess f − ∇f ᵗ∇f)` vanishes identically by
/// evaluation at random points.
pub fn log_hessian_nondegenerate(f: &SparsePolynomial, cfg: &RankConfig) -> Result<RegularityProbe> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let grad = f.gradient();
    let hess = f.hessian();
    let mut rng = cfg.rng(2);
    let samples = cfg.samples.max(1);
    for s in 0..samples {
        let x = random_point(&mut rng, n, cfg.coord_bound);
        let fx = f.eval(&x)?;
        let g: Vec<Rational> = grad.iter().map(|p| p.eval(&x)).collect::<Result<_>>()?;
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let h = hess[i][j].eval(&x)?;
                m.set(i, j, &fx * h - &g[i] * &g[j]);
            }
        }
        if !det_fraction_free(&m)?.is_zero() {
            return Ok(RegularityProbe {
                nondegenerate: true,
                samples_used: s + 1,
                error_bound: None,
            });
        }
    }
    let deg = f.degree().unwrap_or(0) as usize;
    Ok(RegularityProbe {
        nondegenerate: false,
        samples_used: samples,
        error_bound: Some(schwartz_zippel_bound(
            n * (2 * deg).saturating_sub(2).max(1),
            cfg.coord_bound,
            samples,
        )),
    })
}
