use crate::error::Result;
use crate::liealg::MatrixBasis;
use crate::poly::SparsePolynomial;

/// `A(x)` with `x` left symbolic: entry `(i, k)` is `Σₐ (Bₖ)ᵢₐ xₐ`.
pub fn poly_action_matrix(b: &MatrixBasis) -> Result<Vec<Vec<SparsePolynomial>>> {
    let n = b.n();
    Ok((0..n)
        .map(|i| {
            b.elements()
                .iter()
                .map(|e| SparsePolynomial::linear_form(e.row(i)))
                .collect()
        })
        .collect())
}

/// Rank over the field of rational functions, by fraction-free elimination
/// with exact polynomial division.
pub fn rank_over_function_field(m: &[Vec<SparsePolynomial>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let nvars = m[0][0].nvars();
    let mut a: Vec<Vec<SparsePolynomial>> = m.to_vec();
    let mut prev = SparsePolynomial::constant(nvars, num_traits::One::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // sparsest nonzero pivot keeps the products small
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].len())
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = std::mem::replace(&mut row[c], SparsePolynomial::zero(nvars));
            for j in (c + 1)..cols {
                let v = &(&prow[c] * &row[j]) - &(&f * &prow[j]);
                row[j] = v.div_exact(&prev).expect("Bareiss quotient is exact");
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePolynomial {
        SparsePolynomial::parse(3, s).unwrap()
    }

    #[test]
    fn generic_rank_of_symbolic_matrices() {
        let m = vec![vec![p("x1"), p("x2")], vec![p("x2"), p("x3")]];
        assert_eq!(rank_over_function_field(&m), 2);
        let m = vec![vec![p("x1"), p("x2")], vec![p("2*x1"), p("2*x2")]];
        assert_eq!(rank_over_function_field(&m), 1);
        let m = vec![
            vec![p("x1"), p("x2"), p("x3")],
            vec![p("x2"), p("x3"), p("x1")],
            vec![p("x1 + x2"), p("x2 + x3"), p("x3 + x1")],
        ];
        assert_eq!(rank_over_function_field(&m), 2);
    }
}
