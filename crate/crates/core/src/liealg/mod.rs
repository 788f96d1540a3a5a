//! Invariance Lie algebras of polynomials.
//!
//! For `p` in `n` variables, `g₀[p]` is the space of `n×n` matrices `M` with
//! `Σᵢ (Mx)ᵢ ∂ᵢp = 0`, and `g[p]` adjoins the identity. Membership is a
//! linear condition on the entries `M_{ia}`, one equation per monomial.

mod span;
mod structure;

pub use span::SpanReducer;
pub use structure::{key_relations, structure_check, KeyRelation, StructureReport};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::TriangleArrangement;
use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Rational, RationalMatrix, SparseMatrix};
use crate::poly::{cubic_of, lie_derivative, Monomial, SparsePolynomial};

/// Linear conditions on the `n²` unknowns `M_{ia}` (row-major index
/// `i*n + a`), one row per monomial of `Σ (Mx)ᵢ ∂ᵢp`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    n: usize,
    rows: BTreeMap<Monomial, BTreeMap<usize, Rational>>,
}

impl ConstraintSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unknowns(&self) -> usize {
        self.n * self.n
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The linear form attached to a monomial, as `((i, a), coefficient)`
    /// with 0-based indices. Empty if the monomial imposes nothing.
    pub fn row(&self, m: &Monomial) -> Vec<((usize, usize), Rational)> {
        self.rows
            .get(m)
            .map(|r| {
                r.iter()
                    .map(|(&k, v)| ((k / self.n, k % self.n), v.clone()))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Monomial, &BTreeMap<usize, Rational>)> {
        self.rows.iter()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::new(self.unknowns());
        for r in self.rows.values() {
            s.push_row(r.iter().map(|(&k, v)| (k, v.clone())).collect());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.to_sparse().rank()
    }
}

/// Builds the constraint system of `p`: a term `c·x^α` contributes
/// `c·αᵢ·M_{ia}` to the row of `x^α / xᵢ · x_a`.
pub fn constraint_system(p: &SparsePolynomial) -> Result<ConstraintSystem> {
    if !p.is_homogeneous() || p.degree().is_some_and(|d| d != 3) {
        return Err(Error::NotCubic);
    }
    let n = p.nvars();
    let mut rows: BTreeMap<Monomial, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (mono, c) in p.terms() {
        for (i, e) in mono.iter() {
            let lowered = mono.lowered(i);
            let ce = c * Rational::from_integer(e.into());
            for a in 0..n {
                let row = rows.entry(lowered.raised(a)).or_default();
                let slot = row.entry(i * n + a).or_insert_with(Rational::zero);
                *slot += &ce;
                if slot.is_zero() {
                    row.remove(&(i * n + a));
                }
            }
        }
    }
    rows.retain(|_, r| !r.is_empty());
    Ok(ConstraintSystem { n, rows })
}

/// Which algebra a basis spans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    G0,
    G,
    Sub(String),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::G0 => write!(f, "g0"),
            BasisLabel::G => write!(f, "g"),
            BasisLabel::Sub(s) => write!(f, "{s}"),
        }
    }
}

/// Linearly independent `n×n` matrices spanning a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBasis {
    n: usize,
    elements: Vec<RationalMatrix>,
    label: BasisLabel,
}

impl MatrixBasis {
    /// Checks shapes and linear independence.
    pub fn new(n: usize, elements: Vec<RationalMatrix>, label: BasisLabel) -> Result<Self> {
        for e in &elements {
            if e.rows() != n || e.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.rows().max(e.cols()),
                });
            }
        }
        let reducer = SpanReducer::new(n * n, elements.iter().map(|e| e.as_flat().to_vec()));
        if reducer.rank() != elements.len() {
            return Err(Error::Parse("basis elements are linearly dependent".into()));
        }
        Ok(MatrixBasis { n, elements, label })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn relabeled(mut self, label: BasisLabel) -> Self {
        self.label = label;
        self
    }

    pub fn reducer(&self) -> SpanReducer {
        SpanReducer::new(
            self.n * self.n,
            self.elements.iter().map(|e| e.as_flat().to_vec()),
        )
    }

    /// Whether `m` lies in the span.
    pub fn contains(&self, m: &RationalMatrix) -> bool {
        self.reducer().contains(m.as_flat())
    }

    /// Conjugates every element by the permutation `e_i ↦ e_{perm[i]}`
    /// (0-based).
    pub fn conjugate(&self, perm: &[usize]) -> MatrixBasis {
        MatrixBasis {
            n: self.n,
            elements: self.elements.iter().map(|e| e.permute(perm)).collect(),
            label: self.label.clone(),
        }
    }

    /// Whether row `i` (0-based) of every element vanishes off the diagonal.
    pub fn row_is_diagonal(&self, i: usize) -> bool {
        self.elements
            .iter()
            .all(|e| (0..self.n).all(|a| a == i || e.get(i, a).is_zero()))
    }

    /// Positions (0-based) that are nonzero in some element.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self
            .elements
            .iter()
            .flat_map(|e| e.nonzero_entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BasisJson::from(self)).expect("basis serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: BasisJson = serde_json::from_str(s)?;
        j.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    dim: usize,
    label: BasisLabel,
    elements: Vec<ElementJson>,
}

impl From<&MatrixBasis> for BasisJson {
    fn from(b: &MatrixBasis) -> Self {
        BasisJson {
            dim: b.n,
            label: b.label.clone(),
            elements: b
                .elements
                .iter()
                .map(|e| ElementJson {
                    entries: e
                        .nonzero_entries()
                        .map(|(i, j, v)| (i + 1, j + 1, format_rational(v)))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<BasisJson> for MatrixBasis {
    type Error = Error;
    fn try_from(j: BasisJson) -> Result<Self> {
        let n = j.dim;
        let mut elements = Vec::with_capacity(j.elements.len());
        for e in j.elements {
            let mut m = RationalMatrix::zeros(n, n);
            for (i, k, v) in e.entries {
                if i == 0 || k == 0 || i > n || k > n {
                    return Err(Error::Parse(format!("entry ({i},{k}) outside {n}x{n}")));
                }
                m.set(i - 1, k - 1, parse_rational(&v)?);
            }
            elements.push(m);
        }
        MatrixBasis::new(n, elements, j.label)
    }
}

/// Basis of `g₀[p]` in canonical (reduced echelon) form.
pub fn g0_basis(p: &SparsePolynomial) -> Result<MatrixBasis> {
    let sys = constraint_system(p)?;
    let n = p.nvars();
    let elements: Vec<RationalMatrix> = sys
        .to_sparse()
        .nullspace()
        .into_iter()
        .map(|v| RationalMatrix::from_flat(n, n, v.0).expect("n² entries"))
        .collect();
    for e in &elements {
        assert!(
            lie_derivative(e, p)?.is_zero(),
            "kernel element fails to annihilate p"
        );
    }
    Ok(MatrixBasis {
        n,
        elements,
        label: BasisLabel::G0,
    })
}

/// Basis of `g[p]`: the identity followed by the basis of `g₀[p]`.
pub fn g_basis(p: &SparsePolynomial) -> Result<MatrixBasis> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g0 = g0_basis(p)?;
    let n = p.nvars();
    // L_I p = 3p ≠ 0, so I is not in g₀[p]
    let id = RationalMatrix::identity(n);
    assert_eq!(lie_derivative(&id, p)?, p.scale(&Rational::from_integer(3.into())));
    let mut elements = Vec::with_capacity(g0.dim() + 1);
    elements.push(id);
    elements.extend(g0.elements);
    Ok(MatrixBasis {
        n,
        elements,
        label: BasisLabel::G,
    })
}

/// `dim g[p]` from the rank of the constraint system alone.
pub fn dim_g(p: &SparsePolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sys = constraint_system(p)?;
    Ok(sys.unknowns() - sys.rank() + 1)
}

/// `Some(λ)` if `L_M p = λ·p`, `None` otherwise.
pub fn verify_membership(m: &RationalMatrix, p: &SparsePolynomial) -> Result<Option<Rational>> {
    let l = lie_derivative(m, p)?;
    Ok(proportionality(&l, p))
}

/// `Some(λ)` with `l = λ·q`; `q` must be nonzero for a meaningful answer.
pub(crate) fn proportionality(l: &SparsePolynomial, q: &SparsePolynomial) -> Option<Rational> {
    if l.is_zero() {
        return Some(Rational::zero());
    }
    let (m, c) = q.leading_term()?;
    let lambda = l.coefficient(m) / c;
    (l == &q.scale(&lambda)).then_some(lambda)
}

/// Whether `[Bᵢ, Bⱼ]` lies in the span for all pairs.
pub fn bracket_closure_check(b: &MatrixBasis) -> bool {
    let r = b.reducer();
    let e = b.elements();
    (0..e.len()).all(|i| {
        (i + 1..e.len()).all(|j| {
            let c = e[i].commutator(&e[j]).expect("square matrices of equal size");
            r.contains(c.as_flat())
        })
    })
}

/// Basis of the span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
pub fn bracket_span(a: &[RationalMatrix], b: &[RationalMatrix]) -> Vec<RationalMatrix> {
    let Some(n) = a.first().or(b.first()).map(RationalMatrix::rows) else {
        return Vec::new();
    };
    let mut r = SpanReducer::new(n * n, std::iter::empty());
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let c = x.commutator(y).expect("square matrices of equal size");
            if r.insert(c.as_flat().to_vec()) {
                out.push(c);
            }
        }
    }
    out
}

/// Dimensions of the derived series `g, [g,g], …`, stopping at zero or
/// when the dimension stabilizes.
pub fn derived_series_dims(b: &MatrixBasis) -> Vec<usize> {
    let mut dims = vec![b.dim()];
    let mut cur = b.elements().to_vec();
    loop {
        let next = bracket_span(&cur, &cur);
        let d = next.len();
        let last = *dims.last().expect("nonempty");
        dims.push(d);
        if d == 0 || d == last {
            return dims;
        }
        cur = next;
    }
}

pub fn is_solvable(b: &MatrixBasis) -> bool {
    derived_series_dims(b).last() == Some(&0)
}

/// Checks the bordered-matrix law for black circles: stripping black
/// circles one at a time, each step must change `dim g` by `n' + 1 + k'`,
/// where `n'` is the vertex count after stripping and `k'` the number of
/// black circles left. With `k' = 0` this is the bordered form
/// `(M' 0; ᵗx m)`. The law presumes linearly independent partials of `p`.
pub fn black_circle_extension_check(t: &TriangleArrangement) -> Result<bool> {
    let blacks = t.black_circles();
    if blacks.is_empty() {
        return Err(Error::NoBlackCircle);
    }
    if t.triangle_count() == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let mut cur = t.clone();
    let mut dim = dim_g(&cubic_of(&cur))?;
    for (left, &v) in blacks.iter().enumerate().rev() {
        let smaller = cur.remove_black_circle(v)?;
        let d = dim_g(&cubic_of(&smaller))?;
        if dim != d + smaller.n() + 1 + left {
            return Ok(false);
        }
        cur = smaller;
        dim = d;
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
