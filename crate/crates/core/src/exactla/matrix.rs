use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Dense vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(len: usize) -> Self {
        RationalVector(vec![Rational::zero(); len])
    }

    pub fn from_i64(values: &[i64]) -> Self {
        RationalVector(values.iter().map(|&v| int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        RationalVector(v)
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix unit with a single one at 0-based position `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = Rational::one();
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[RationalVector]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    /// Entries in row-major order.
    pub fn as_flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as 0-based `(row, col, value)` triples in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / cols, k % cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &RationalVector) -> Result<RationalVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.iter())
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    /// Conjugation `P A P⁻¹` by the permutation matrix sending basis vector
    /// `e_i` to `e_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> RationalMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, j, v) in self.nonzero_entries() {
            out.set(perm[i], perm[j], v.clone());
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix dimensions do not agree")
    }
}
