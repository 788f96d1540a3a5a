use num_traits::Zero;
use proptest::prelude::*;

use triarr::arrangement::{attach, attach_map, canonical_form, TriangleArrangement};
use triarr::attach::{attach_and_verify, SubalgebraSpec};
use triarr::exactla::{
    det_fraction_free, int, nullspace, rank, rank_mod_p, rref, Rational, RationalMatrix, MERSENNE_61,
};
use triarr::families::{make, Family, FamilyKind};
use triarr::liealg::{bracket_closure_check, constraint_system, g0_basis, g_basis, SpanReducer};
use triarr::poly::{cubic_of, lie_derivative, substitute_linear, SparsePolynomial};
use triarr::prehomog::{is_prehomogeneous, rank_at, relative_invariant_character, RankConfig};

fn matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            RationalMatrix::from_flat(r, c, v.into_iter().map(int).collect()).unwrap()
        })
    })
}

fn square(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| RationalMatrix::from_flat(n, n, v.into_iter().map(int).collect()).unwrap())
}

/// Up to five random triangles on `3..=max` vertices; unused vertices are
/// black circles.
fn arrangement(max: usize) -> impl Strategy<Value = TriangleArrangement> {
    (3..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 3), 1..=5)
            .prop_map(move |ts| TriangleArrangement::new(n, ts.into_iter().map(|t| [t[0], t[1], t[2]])).unwrap())
    })
}

fn with_perm(max: usize) -> impl Strategy<Value = (TriangleArrangement, Vec<usize>)> {
    arrangement(max).prop_flat_map(|a| {
        let n = a.n();
        (Just(a), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Sum of random monomials of degree `d` in `n` variables.
fn homogeneous(n: usize) -> impl Strategy<Value = (SparsePolynomial, u32)> {
    (1u32..=4).prop_flat_map(move |d| {
        prop::collection::vec((prop::collection::vec(0..n, d as usize), -3i64..=3), 1..=4).prop_map(move |ms| {
            let p = ms.iter().fold(SparsePolynomial::zero(n), |acc, (vars, c)| {
                &acc + &SparsePolynomial::product_of(n, vars).scale(&int(*c))
            });
            (p, d)
        })
    })
}

fn perm_sign(p: &[usize]) -> i64 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let (r, pivots) = rref(&m);
        let k = nullspace(&m);
        prop_assert_eq!(rank(&r), rank(&m));
        prop_assert_eq!(pivots.len(), rank(&m));
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().0.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_rank_bounds(m in matrix(6)) {
        let exact = rank(&m);
        let primes = [MERSENNE_61, 1_000_000_007, 998_244_353, 1_152_921_504_606_846_883, 2_305_843_009_213_693_951];
        let ranks: Vec<usize> = primes.iter().map(|&q| rank_mod_p(&m, q).unwrap()).collect();
        prop_assert!(ranks.iter().all(|&r| r <= exact));
        prop_assert!(ranks.contains(&exact));
    }

    #[test]
    fn permutation_determinant(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let mut m = RationalMatrix::zeros(6, 6);
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j, int(1));
        }
        prop_assert_eq!(det_fraction_free(&m).unwrap(), int(perm_sign(&perm)));
    }

    #[test]
    fn relabeling_preserves_structure((a, map) in with_perm(9)) {
        let b = a.relabel(&map).unwrap();
        let (da, db) = (a.degrees(), b.degrees());
        for v in 0..a.n() {
            prop_assert_eq!(da[v], db[map[v] - 1]);
        }
        prop_assert_eq!(a.has_edge_sharing(), b.has_edge_sharing());
        prop_assert_eq!(
            a.isolated_vertices().iter().map(|&v| map[v - 1]).collect::<std::collections::BTreeSet<_>>(),
            b.isolated_vertices().into_iter().collect()
        );
        for i in 1..=a.n() {
            let (di, dj) = (a.distances_from(i).unwrap(), b.distances_from(map[i - 1]).unwrap());
            for j in 1..=a.n() {
                prop_assert_eq!(di[j], dj[map[j - 1]]);
            }
        }
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn distance_triangle_inequality(a in arrangement(9)) {
        let d: Vec<_> = (1..=a.n()).map(|i| a.distances_from(i).unwrap()).collect();
        for i in 1..=a.n() {
            for j in 1..=a.n() {
                for k in 1..=a.n() {
                    if let (Some(ij), Some(jk), Some(ik)) = (d[i - 1][j], d[j - 1][k], d[i - 1][k]) {
                        prop_assert!(ik <= ij + jk);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in arrangement(9)) {
        let c = canonical_form(&a).unwrap();
        prop_assert_eq!(canonical_form(&c.to_arrangement()).unwrap(), c);
    }

    #[test]
    fn attach_is_symmetric_and_adds_cubics(a1 in arrangement(6), a2 in arrangement(6), s in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let (v1, v2) = (s.index(a1.n()) + 1, t.index(a2.n()) + 1);
        let x = attach(&a1, v1, &a2, v2).unwrap();
        let y = attach(&a2, v2, &a1, v1).unwrap();
        prop_assert_eq!(canonical_form(&x).unwrap(), canonical_form(&y).unwrap());
        prop_assert_eq!(x.triangle_count(), a1.triangle_count() + a2.triangle_count());

        let n = x.n();
        let lift: Vec<usize> = (0..a1.n()).collect();
        let image: Vec<usize> = attach_map(a1.n(), v1, a2.n(), v2).into_iter().map(|v| v - 1).collect();
        let sum = &cubic_of(&a1).rename_vars(n, &lift) + &cubic_of(&a2).rename_vars(n, &image);
        prop_assert_eq!(cubic_of(&x), sum);
    }

    #[test]
    fn lie_derivative_is_linear_and_a_representation(
        (p, d) in homogeneous(4), a in square(4), b in square(4), s in -3i64..=3, t in -3i64..=3,
    ) {
        let l = |m: &RationalMatrix, q: &SparsePolynomial| lie_derivative(m, q).unwrap();
        let combo = &a.scale(&int(s)) + &b.scale(&int(t));
        prop_assert_eq!(l(&combo, &p), &l(&a, &p).scale(&int(s)) + &l(&b, &p).scale(&int(t)));
        // Σ (Mx)ᵢ ∂ᵢ is the vector field x ↦ Mx, whose bracket reverses the commutator
        let ab = a.commutator(&b).unwrap();
        prop_assert_eq!(l(&ab, &p), &l(&b, &l(&a, &p)) - &l(&a, &l(&b, &p)));
        prop_assert_eq!(l(&RationalMatrix::identity(4), &p), p.scale(&int(i64::from(d))));
    }

    #[test]
    fn substitution_inverse(
        (p, _) in homogeneous(4),
        shears in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 1..=5),
    ) {
        let mut s = RationalMatrix::identity(4);
        let mut inv = RationalMatrix::identity(4);
        for &(i, j, c) in shears.iter().filter(|(i, j, _)| i != j) {
            let mut e = RationalMatrix::identity(4);
            e.set(i, j, int(c));
            let mut f = RationalMatrix::identity(4);
            f.set(i, j, int(-c));
            s = s.try_mul(&e).unwrap();
            inv = f.try_mul(&inv).unwrap();
        }
        let q = substitute_linear(&p, &s).unwrap();
        prop_assert_eq!(substitute_linear(&q, &inv).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn g0_dimension_and_closure(a in arrangement(8)) {
        let p = cubic_of(&a);
        let n = a.n();
        let g0 = g0_basis(&p).unwrap();
        prop_assert_eq!(g0.dim(), n * n - constraint_system(&p).unwrap().rank());
        prop_assert!(bracket_closure_check(&g0));
        for b in g0.elements() {
            prop_assert!(lie_derivative(b, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn support_and_trace_laws(a in arrangement(8)) {
        prop_assume!(!a.has_edge_sharing());
        let g0 = g0_basis(&cubic_of(&a)).unwrap();
        let deg = a.degrees();
        for i in 1..=a.n() {
            if deg[i - 1] == 0 {
                continue;
            }
            let d = a.distances_from(i).unwrap();
            for e in g0.elements() {
                for c in 1..=a.n() {
                    if !e.get(i - 1, c - 1).is_zero() {
                        prop_assert!(matches!(d[c], Some(0) | Some(2)), "entry ({}, {}) at distance {:?}", i, c, d[c]);
                    }
                }
            }
        }
        for t in a.triangles() {
            for e in g0.elements() {
                let tr: Rational = t.iter().map(|&v| e.get(v - 1, v - 1).clone()).sum();
                prop_assert!(tr.is_zero());
            }
        }
    }

    #[test]
    fn conjugation_invariance((a, map) in with_perm(8), seed in any::<u64>()) {
        let b = a.relabel(&map).unwrap();
        let ga = g_basis(&cubic_of(&a)).unwrap();
        let gb = g_basis(&cubic_of(&b)).unwrap();
        prop_assert_eq!(ga.dim(), gb.dim());
        let perm: Vec<usize> = map.iter().map(|v| v - 1).collect();
        let conj = ga.conjugate(&perm);
        let rb = SpanReducer::new(b.n() * b.n(), gb.elements().iter().map(|m| m.as_flat().to_vec()));
        prop_assert!(conj.elements().iter().all(|m| rb.contains(m.as_flat())));

        let cfg = RankConfig::with_seed(seed);
        let va = is_prehomogeneous(&conj, &cfg).unwrap();
        let vb = is_prehomogeneous(&gb, &cfg).unwrap();
        prop_assert_eq!(va.verdict, vb.verdict);
        if let Some(w) = &va.witness {
            prop_assert_eq!(rank_at(&conj, w).unwrap(), a.n());
        }
    }

    #[test]
    fn rank_bounds_and_cubic_character(a in arrangement(8), seed in any::<u64>()) {
        let p = cubic_of(&a);
        let g = g_basis(&p).unwrap();
        let v = is_prehomogeneous(&g, &RankConfig::with_seed(seed)).unwrap();
        prop_assert!(v.generic_rank_lower_bound <= a.n().min(g.dim()));
        let r = relative_invariant_character(&p, &g).unwrap();
        prop_assert!(r.is_relative_invariant);
        prop_assert_eq!(&r.character[0], &int(3));
        prop_assert!(r.character[1..].iter().all(Zero::is_zero));
        prop_assert!(r.recheck(&g).unwrap());
    }
}

fn family_vertex() -> impl Strategy<Value = (FamilyKind, usize)> {
    (prop::sample::select(vec![Family::Daisy, Family::Chain, Family::Circular]), 0usize..3, any::<prop::sample::Index>())
        .prop_map(|(f, k, v)| {
            let kind = FamilyKind::new(f, f.min_size() + k).unwrap();
            (kind, v.index(kind.vertex_count()) + 1)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn attachment_theorem((k1, v1) in family_vertex(), (k2, v2) in family_vertex(), seed in any::<u64>()) {
        let (a1, a2) = (make(&k1).unwrap(), make(&k2).unwrap());
        let full = SubalgebraSpec::full();
        let cfg = RankConfig::with_seed(seed);
        let o = attach_and_verify(&a1, v1, &full, &a2, v2, &full, &cfg).unwrap();
        prop_assert!(o.consistent, "{}@{} + {}@{}", k1, v1, k2, v2);
        let c = o.cross_block.unwrap();
        prop_assert!(c.pairing_ok && c.support_ok);
        let swapped = attach_and_verify(&a2, v2, &full, &a1, v1, &full, &cfg).unwrap();
        prop_assert_eq!(&o.record.key, &swapped.record.key);
        prop_assert_eq!(o.record.pv, swapped.record.pv);
        prop_assert_eq!(o.hypotheses.applies, swapped.hypotheses.applies);
    }
}
