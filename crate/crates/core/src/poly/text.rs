use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Monomial, SparsePolynomial};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Rational};

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, e) in m.iter() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", v + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Terms in decreasing graded lexicographic order, e.g.
/// `x1*x2*x3 - 1/2*x4^2 + 3`.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl SparsePolynomial {
    /// Parses sums of terms such as `2*x1^2*x3 - 1/3*x2 + 5` in `nvars`
    /// variables. Variables are `x1 … xn`.
    pub fn parse(nvars: usize, s: &str) -> Result<SparsePolynomial> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let mut out = SparsePolynomial::zero(nvars);
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
                terms.push((neg, &compact[start..i]));
                neg = b == b'-';
                start = i + 1;
            } else if (b == b'+' || b == b'-') && i == 0 {
                neg = b == b'-';
                start = 1;
            }
        }
        terms.push((neg, &compact[start..]));

        for (neg, t) in terms {
            if t.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = Rational::one();
            let mut mono = Monomial::one();
            for factor in t.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable out of range"));
                    }
                    mono = mono.mul(&Monomial::from_pairs(&[(idx - 1, exp)]));
                } else if factor.is_empty() {
                    return Err(bad("empty factor"));
                } else {
                    coeff *= parse_rational(factor).map_err(|_| bad("bad coefficient"))?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            if !coeff.is_zero() {
                out.add_term(mono, coeff);
            }
        }
        Ok(out)
    }
}
