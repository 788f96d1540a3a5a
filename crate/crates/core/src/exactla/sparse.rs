use num_traits::{One, Zero};

use super::{Rational, RationalMatrix, RationalVector};

/// Row-sparse rational matrix. Each row is a list of `(column, value)`
/// pairs sorted by column with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

/// How pivots are chosen during sparse elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Shortest remaining row, then its least-populated column. Limits
    /// fill-in on the very sparse constraint systems.
    Markowitz,
    /// Columns in increasing order. Produces the unique reduced row
    /// echelon form.
    ColumnOrder,
}

/// Fully reduced result of sparse elimination: every pivot column appears
/// only in its own pivot row, with coefficient one.
#[derive(Clone, Debug)]
pub struct SparseElimination {
    cols: usize,
    pivots: Vec<(usize, Vec<(usize, Rational)>)>,
}

type Row = Vec<(usize, Rational)>;

fn coeff(row: &Row, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// `row - factor * pivot`, dropping cancelled entries.
fn axpy(row: &Row, factor: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map_or(usize::MAX, |e| e.0);
        let cb = pivot.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(row[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, -(factor * &pivot[b].1)));
            b += 1;
        } else {
            let v = &row[a].1 - factor * &pivot[b].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as unsorted `(column, value)` pairs; duplicate
    /// columns are summed and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Rational)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Row = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn from_dense(m: &RationalMatrix) -> Self {
        let mut s = SparseMatrix::new(m.cols());
        for i in 0..m.rows() {
            s.push_row(
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect(),
            );
        }
        s
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_entries(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn eliminate(&self, strategy: PivotStrategy) -> SparseElimination {
        let mut active: Vec<Row> = self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut col_count = vec![0usize; self.cols];
        for row in &active {
            for (c, _) in row {
                col_count[*c] += 1;
            }
        }
        let mut pivots: Vec<(usize, Row)> = Vec::new();
        let mut next_col = 0usize;

        loop {
            active.retain(|r| !r.is_empty());
            if active.is_empty() {
                break;
            }
            let (ri, pc) = match strategy {
                PivotStrategy::Markowitz => {
                    let ri = (0..active.len())
                        .min_by_key(|&i| (active[i].len(), active[i][0].0))
                        .expect("nonempty");
                    let pc = active[ri]
                        .iter()
                        .map(|(c, _)| *c)
                        .min_by_key(|&c| (col_count[c], c))
                        .expect("nonempty row");
                    (ri, pc)
                }
                PivotStrategy::ColumnOrder => {
                    let col = loop {
                        if col_count[next_col] > 0 {
                            break next_col;
                        }
                        next_col += 1;
                    };
                    let ri = (0..active.len())
                        .filter(|&i| active[i][0].0 == col)
                        .min_by_key(|&i| active[i].len())
                        .expect("column count tracks leading entries");
                    next_col += 1;
                    (ri, col)
                }
            };
            let mut prow = active.swap_remove(ri);
            for (c, _) in &prow {
                col_count[*c] -= 1;
            }
            let inv = coeff(&prow, pc).expect("pivot present").recip();
            if !inv.is_one() {
                for (_, v) in prow.iter_mut() {
                    *v *= &inv;
                }
            }
            for row in active.iter_mut() {
                if let Some(f) = coeff(row, pc).cloned() {
                    for (c, _) in row.iter() {
                        col_count[*c] -= 1;
                    }
                    *row = axpy(row, &f, &prow);
                    for (c, _) in row.iter() {
                        col_count[*c] += 1;
                    }
                }
            }
            pivots.push((pc, prow));
        }

        // Back substitution: later pivots are already free of earlier pivot
        // columns, so clear later pivot columns from earlier rows.
        for k in (0..pivots.len()).rev() {
            let (pc, prow) = (pivots[k].0, pivots[k].1.clone());
            for j in 0..k {
                if let Some(f) = coeff(&pivots[j].1, pc).cloned() {
                    pivots[j].1 = axpy(&pivots[j].1, &f, &prow);
                }
            }
        }
        if strategy == PivotStrategy::ColumnOrder {
            pivots.sort_by_key(|(c, _)| *c);
        }
        SparseElimination {
            cols: self.cols,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate(PivotStrategy::Markowitz).rank()
    }

    /// Kernel basis in canonical form: the reduced row echelon form of the
    /// kernel, so equal kernels give identical output.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let raw = self.eliminate(PivotStrategy::Markowitz).kernel_sparse();
        let mut k = SparseMatrix::new(self.cols);
        for v in raw {
            k.push_row(v);
        }
        k.eliminate(PivotStrategy::ColumnOrder)
            .pivots
            .into_iter()
            .map(|(_, row)| {
                let mut v = RationalVector::zeros(self.cols);
                for (c, x) in row {
                    v.0[c] = x;
                }
                v
            })
            .collect()
    }
}

impl SparseElimination {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Reduced rows; for [`PivotStrategy::ColumnOrder`] this is the RREF.
    pub fn rows(&self) -> impl Iterator<Item = &[(usize, Rational)]> {
        self.pivots.iter().map(|(_, r)| r.as_slice())
    }

    /// One kernel vector per free column: `e_f - Σ row_p[f] e_p`.
    fn kernel_sparse(&self) -> Vec<Row> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        // column -> list of (pivot col, coefficient)
        let mut by_free: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (pc, row) in &self.pivots {
            for (c, v) in row {
                if *c != *pc {
                    by_free[*c].push((*pc, -v.clone()));
                }
            }
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = std::mem::take(&mut by_free[f]);
                v.push((f, Rational::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}
