//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are indexed from 0 internally and printed as `x1, x2, …`.

mod det;
mod monomial;
mod text;

pub use det::{determinant_poly, determinant_poly_with_cap, DEFAULT_DET_CAP};
pub use monomial::Monomial;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::TriangleArrangement;
use crate::error::{Error, Result};
use crate::exactla::{rank, Rational, RationalMatrix, RationalVector};

/// Polynomial in `nvars` variables. Terms are keyed by monomial in graded
/// lexicographic order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

pub type PolyVector = Vec<SparsePolynomial>;

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(), c)
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert!(m.max_var().is_none_or(|v| v < nvars), "variable out of range");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(i), Rational::one())
    }

    /// Product of the given 0-based variables (with repetition).
    pub fn product_of(nvars: usize, vars: &[usize]) -> Self {
        Self::term(nvars, Monomial::from_vars(vars), Rational::one())
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(self.nvars, Rational::one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Partial derivative in the 0-based variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.lowered(i), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn gradient(&self) -> PolyVector {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Matrix of second partial derivatives.
    pub fn hessian(&self) -> Vec<PolyVector> {
        let g = self.gradient();
        g.iter().map(|gi| gi.gradient()).collect()
    }

    pub fn eval(&self, x: &RationalVector) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.eval(&x.0)).sum())
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            out.add_term(m.renamed(map), c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &SparsePolynomial) -> Option<SparsePolynomial> {
        self.check_vars(d);
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.divide(&dm)?;
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = SparsePolynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            nvars: usize,
            text: &'a str,
        }
        Repr {
            nvars: self.nvars,
            text: &self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            nvars: usize,
            text: String,
        }
        let r = Repr::deserialize(d)?;
        SparsePolynomial::parse(r.nvars, &r.text).map_err(serde::de::Error::custom)
    }
}

/// `Σ x_i x_j x_k` over the triangles of `a`.
pub fn cubic_of(a: &TriangleArrangement) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(a.n());
    for t in a.triangles() {
        p.add_term(Monomial::from_vars(&[t[0] - 1, t[1] - 1, t[2] - 1]), Rational::one());
    }
    p
}

/// `Σᵢ (Mx)ᵢ ∂ᵢp`: the infinitesimal action of `m` on `p`.
pub fn lie_derivative(m: &RationalMatrix, p: &SparsePolynomial) -> Result<SparsePolynomial> {
    let n = p.nvars();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if m.rows() != n { m.rows() } else { m.cols() },
        });
    }
    let mut out = SparsePolynomial::zero(n);
    for (mono, c) in &p.terms {
        for (i, e) in mono.iter() {
            let lowered = mono.lowered(i);
            let ce = c * Rational::from_integer(e.into());
            for a in 0..n {
                let mia = m.get(i, a);
                if !mia.is_zero() {
                    out.add_term(lowered.raised(a), &ce * mia);
                }
            }
        }
    }
    Ok(out)
}

/// `p(S z)`: the change of variables `x = S z`. `S` must be invertible.
pub fn substitute_linear(p: &SparsePolynomial, s: &RationalMatrix) -> Result<SparsePolynomial> {
    let n = p.nvars();
    if s.rows() != n || s.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if s.rows() != n { s.rows() } else { s.cols() },
        });
    }
    if rank(s) < n {
        return Err(Error::Singular);
    }
    let images: Vec<SparsePolynomial> = (0..n)
        .map(|i| SparsePolynomial::linear_form(s.row(i)))
        .collect();
    let mut out = SparsePolynomial::zero(n);
    for (mono, c) in &p.terms {
        let mut t = SparsePolynomial::constant(n, c.clone());
        for (i, e) in mono.iter() {
            t = &t * &images[i].pow(e);
        }
        out = &out + &t;
    }
    Ok(out)
}

/// Evaluates a polynomial at a point.
pub fn eval(p: &SparsePolynomial, x: &RationalVector) -> Result<Rational> {
    p.eval(x)
}
