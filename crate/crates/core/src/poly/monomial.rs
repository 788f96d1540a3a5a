use std::cmp::Ordering;

use num_traits::{One, Pow};
use smallvec::SmallVec;

use crate::exactla::Rational;

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = SmallVec::new();
        v.push((i as u32, 1));
        Monomial(v)
    }

    /// Product of variables, repeated entries raising the exponent.
    pub fn from_vars(vars: &[usize]) -> Self {
        let mut m = Self::one();
        for &v in vars {
            m = m.raised(v);
        }
        m
    }

    /// From `(variable, exponent)` pairs in any order; zero exponents dropped.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            for _ in 0..e {
                m = m.raised(v);
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v as usize == i)
            .map_or(0, |&(_, e)| e)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Multiplies by `x_i`.
    pub fn raised(&self, i: usize) -> Self {
        let i = i as u32;
        let mut out = self.0.clone();
        match out.binary_search_by_key(&i, |&(v, _)| v) {
            Ok(k) => out[k].1 += 1,
            Err(k) => out.insert(k, (i, 1)),
        }
        Monomial(out)
    }

    /// Divides by `x_i`; the exponent of `x_i` must be positive.
    pub fn lowered(&self, i: usize) -> Self {
        let i = i as u32;
        let mut out = self.0.clone();
        let k = out
            .binary_search_by_key(&i, |&(v, _)| v)
            .expect("variable present");
        if out[k].1 == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(v, e) in &other.0 {
            let k = out.binary_search_by_key(&v, |&(w, _)| w).ok()?;
            if out[k].1 < e {
                return None;
            }
            out[k].1 -= e;
            if out[k].1 == 0 {
                out.remove(k);
            }
        }
        Some(Monomial(out))
    }

    pub fn renamed(&self, map: &[usize]) -> Monomial {
        let pairs: Vec<(usize, u32)> = self.iter().map(|(v, e)| (map[v], e)).collect();
        Monomial::from_pairs(&pairs)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.iter()
            .fold(Rational::one(), |acc, (v, e)| acc * Pow::pow(&x[v], e))
    }

    /// Lexicographic comparison with `x1 > x2 > …`.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            let ((va, ea), (vb, eb)) = (a[k], b[k]);
            if va != vb {
                // the monomial containing the earlier variable is larger
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
