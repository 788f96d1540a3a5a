use num_traits::Zero;

use crate::exactla::Rational;

/// Incrementally maintained reduced echelon basis of a subspace of ℚᵈ.
/// Every pivot column occurs only in its own row, so membership is a
/// single pass of subtractions.
#[derive(Clone, Debug)]
pub struct SpanReducer {
    dim: usize,
    rows: Vec<(usize, Vec<(usize, Rational)>)>,
}

impl SpanReducer {
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut r = SpanReducer {
            dim,
            rows: Vec::new(),
        };
        for v in vectors {
            r.insert(v);
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after removing its component along the pivots.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (c, x) in row {
                v[*c] -= &f * x;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let r = self.reduce(&v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pc].recip();
        let row: Vec<(usize, Rational)> = r
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x * &inv))
            .collect();
        for (_, other) in self.rows.iter_mut() {
            let Some(k) = other.iter().position(|(c, _)| *c == pc) else {
                continue;
            };
            let f = other[k].1.clone();
            let mut dense: Vec<(usize, Rational)> = Vec::with_capacity(other.len() + row.len());
            let (mut i, mut j) = (0, 0);
            while i < other.len() || j < row.len() {
                let ci = other.get(i).map_or(usize::MAX, |e| e.0);
                let cj = row.get(j).map_or(usize::MAX, |e| e.0);
                if ci < cj {
                    dense.push(other[i].clone());
                    i += 1;
                } else if cj < ci {
                    dense.push((cj, -(&f * &row[j].1)));
                    j += 1;
                } else {
                    let x = &other[i].1 - &f * &row[j].1;
                    if !x.is_zero() {
                        dense.push((ci, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            *other = dense;
        }
        self.rows.push((pc, row));
        true
    }

    /// The reduced basis vectors, sorted by pivot column.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<&(usize, Vec<(usize, Rational)>)> = self.rows.iter().collect();
        rows.sort_by_key(|(pc, _)| *pc);
        rows.iter()
            .map(|(_, row)| {
                let mut v = vec![Rational::zero(); self.dim];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }
}
