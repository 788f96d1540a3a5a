use super::*;
use crate::exactla::int;

fn p(n: usize, s: &str) -> SparsePolynomial {
    SparsePolynomial::parse(n, s).unwrap()
}

fn arr(n: usize, t: &[[usize; 3]]) -> TriangleArrangement {
    TriangleArrangement::new(n, t.iter().copied()).unwrap()
}

/// Independent oracle: coefficient table of Σ M_ia x_a ∂_i p built from dense
/// exponent vectors, then rank by i128 fraction elimination.
fn oracle_rank(n: usize, monomials: &[Vec<usize>]) -> usize {
    use std::collections::HashMap;
    let mut table: HashMap<Vec<u32>, Vec<i128>> = HashMap::new();
    for mono in monomials {
        let mut exp = vec![0u32; n];
        for &v in mono {
            exp[v] += 1;
        }
        for i in 0..n {
            if exp[i] == 0 {
                continue;
            }
            for a in 0..n {
                let mut e = exp.clone();
                e[i] -= 1;
                e[a] += 1;
                let row = table.entry(e).or_insert_with(|| vec![0; n * n]);
                row[i * n + a] += exp[i] as i128;
            }
        }
    }
    let mut rows: Vec<Vec<i128>> = table.into_values().collect();
    let cols = n * n;
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let (a, b) = (rows[r][c], rows[k][c]);
                for j in 0..cols {
                    rows[k][j] = rows[k][j] * a - rows[r][j] * b;
                }
                let g = rows[k].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    for x in rows[k].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn single_monomial_rank_and_kernel() {
    let q = p(3, "x1*x2*x3");
    let sys = constraint_system(&q).unwrap();
    assert_eq!(sys.rank(), 7);
    assert_eq!(oracle_rank(3, &[vec![0, 1, 2]]), 7);
    let g0 = g0_basis(&q).unwrap();
    assert_eq!(g0.dim(), 2);
    for e in g0.elements() {
        assert_eq!(e.nonzero_entries().filter(|(i, j, _)| i != j).count(), 0);
        assert_eq!((0..3).map(|i| e.get(i, i).clone()).sum::<Rational>(), int(0));
    }
    // rows: the trace row plus one single-entry row per off-diagonal unknown
    let diag = Monomial::from_vars(&[0, 1, 2]);
    assert_eq!(sys.row(&diag).len(), 3);
    assert_eq!(sys.row_count(), 7);
    assert!(sys
        .rows()
        .filter(|(m, _)| **m != diag)
        .all(|(_, r)| r.len() == 1));
}

#[test]
fn two_triangle_rows() {
    let q = p(5, "x1*x2*x3 + x1*x4*x5");
    let sys = constraint_system(&q).unwrap();
    let row = sys.row(&Monomial::from_vars(&[0, 1, 2]));
    assert_eq!(row, vec![((0, 0), int(1)), ((1, 1), int(1)), ((2, 2), int(1))]);
    let row = sys.row(&Monomial::from_vars(&[0, 2, 3]));
    assert_eq!(row, vec![((1, 3), int(1)), ((4, 2), int(1))]);

    let g0 = g0_basis(&q).unwrap();
    assert_eq!(g0.dim(), 7);
    assert_eq!(
        oracle_rank(5, &[vec![0, 1, 2], vec![0, 3, 4]]),
        25 - 7
    );
    let g = g_basis(&q).unwrap();
    assert_eq!(g.dim(), 8);
    assert_eq!(g.elements()[0], RationalMatrix::identity(5));
    // pairing M24 = -M53 etc.
    for e in g0.elements() {
        assert_eq!(e.get(1, 3), &-e.get(4, 2));
        assert_eq!(e.get(1, 4), &-e.get(3, 2));
        assert_eq!(e.get(2, 3), &-e.get(4, 1));
        assert_eq!(e.get(2, 4), &-e.get(3, 1));
    }
}

#[test]
fn disconnected_block_structure() {
    let a = arr(6, &[[1, 2, 3], [4, 5, 6]]);
    let g0 = g0_basis(&cubic_of(&a)).unwrap();
    for (i, j) in g0.support() {
        assert_eq!(i < 3, j < 3, "cross-block entry at ({i},{j})");
    }
    assert_eq!(dim_g(&cubic_of(&a)).unwrap(), 5);
}

#[test]
fn rejects_non_cubics() {
    assert!(matches!(constraint_system(&p(2, "x1^2")), Err(Error::NotCubic)));
    assert!(matches!(constraint_system(&p(2, "x1^3 + x2")), Err(Error::NotCubic)));
    assert!(matches!(g_basis(&SparsePolynomial::zero(3)), Err(Error::ZeroPolynomial)));
    assert_eq!(g0_basis(&SparsePolynomial::zero(2)).unwrap().dim(), 4);
}

#[test]
fn membership() {
    let q = p(3, "x1*x2*x3");
    assert_eq!(
        verify_membership(&RationalMatrix::identity(3), &q).unwrap(),
        Some(int(3))
    );
    assert_eq!(verify_membership(&RationalMatrix::unit(3, 0, 1), &q).unwrap(), None);
    for e in g0_basis(&q).unwrap().elements() {
        assert_eq!(verify_membership(e, &q).unwrap(), Some(int(0)));
    }
    assert!(verify_membership(&RationalMatrix::identity(2), &q).is_err());
}

#[test]
fn closure() {
    let q = p(5, "x1*x2*x3 + x1*x4*x5");
    assert!(bracket_closure_check(&g0_basis(&q).unwrap()));
    let e12 = RationalMatrix::unit(3, 0, 1);
    let e21 = RationalMatrix::unit(3, 1, 0);
    let b = MatrixBasis::new(3, vec![e12, e21], BasisLabel::Sub("x".into())).unwrap();
    assert!(!bracket_closure_check(&b));
    let chain4 = arr(9, &[[1, 5, 6], [2, 6, 7], [3, 7, 8], [4, 8, 9]]);
    assert!(bracket_closure_check(&g_basis(&cubic_of(&chain4)).unwrap()));
}

#[test]
fn black_circle_law() {
    let hex = arr(6, &[[1, 2, 3], [1, 5, 6]]);
    assert_eq!(dim_g(&cubic_of(&hex)).unwrap(), 14);
    assert!(black_circle_extension_check(&hex).unwrap());

    let t_a = arr(7, &[[1, 4, 5], [2, 5, 6], [3, 6, 7]]);
    let with = t_a.with_black_circles(1);
    assert_eq!(
        dim_g(&cubic_of(&with)).unwrap(),
        dim_g(&cubic_of(&t_a)).unwrap() + 8
    );
    assert!(black_circle_extension_check(&with).unwrap());
    assert!(matches!(
        black_circle_extension_check(&t_a),
        Err(Error::NoBlackCircle)
    ));
    assert!(black_circle_extension_check(&TriangleArrangement::empty(2).unwrap()).is_err());

    // two black circles: the second also gains the entry in the first one's row
    let two = t_a.with_black_circles(2);
    assert_eq!(dim_g(&cubic_of(&two)).unwrap(), dim_g(&cubic_of(&t_a)).unwrap() + 8 + 10);
    assert!(black_circle_extension_check(&two).unwrap());

    // x₁x₂(x₃ + x₄): ∂₃p = ∂₄p leaves M₃₅ + M₄₅ = 0 as the only column condition
    let shared = arr(4, &[[1, 2, 3], [1, 2, 4]]).with_black_circles(1);
    assert_eq!(dim_g(&cubic_of(&shared)).unwrap(), 7 + 5 + 1);
    assert!(!black_circle_extension_check(&shared).unwrap());
}

#[test]
fn json_round_trip() {
    let g = g_basis(&p(5, "x1*x2*x3 + x1*x4*x5")).unwrap();
    let s = g.to_json();
    assert!(s.starts_with(r#"{"dim":5,"#));
    assert_eq!(MatrixBasis::from_json(&s).unwrap(), g);
}

#[test]
fn derived_series_of_torus_stops() {
    let g = g_basis(&p(3, "x1*x2*x3")).unwrap();
    assert_eq!(derived_series_dims(&g), vec![3, 0]);
    assert!(is_solvable(&g));
}

#[test]
fn key_relations_of_chain() {
    let chain3 = arr(7, &[[1, 4, 5], [2, 5, 6], [3, 6, 7]]);
    let rel = key_relations(&chain3);
    let pairs: Vec<((usize, usize), (usize, usize))> = rel.iter().map(|r| (r.first, r.second)).collect();
    // isolated 1 in {1,4,5}, j = 5, {2,5,6} with b = 2 isolated
    assert!(pairs.contains(&((1, 6), (2, 4))));
    // isolated apex 4 with b = 2
    assert!(pairs.contains(&((4, 6), (2, 1))));
    let g = g_basis(&cubic_of(&chain3)).unwrap();
    let r = structure_check(&chain3, &g).unwrap();
    assert!(r.ok());
    assert_eq!(r.support_ok, Some(true));
    assert!(r.key_relations > 0);

    // the ring has a third source for every candidate monomial
    let ring = arr(6, &[[1, 2, 3], [2, 4, 5], [3, 5, 6]]);
    assert!(key_relations(&ring).is_empty());
    assert!(structure_check(&ring, &g_basis(&cubic_of(&ring)).unwrap()).unwrap().ok());

    let shared = arr(4, &[[1, 2, 3], [1, 2, 4]]);
    assert!(key_relations(&shared).is_empty());
    let r = structure_check(&shared, &g_basis(&cubic_of(&shared)).unwrap()).unwrap();
    assert_eq!(r.support_ok, None);
}

#[test]
fn structure_holds_with_black_circles() {
    let a = arr(8, &[[1, 2, 3], [1, 5, 6]]);
    let g = g_basis(&cubic_of(&a)).unwrap();
    let r = structure_check(&a, &g).unwrap();
    assert!(r.ok(), "{r:?}");
}
