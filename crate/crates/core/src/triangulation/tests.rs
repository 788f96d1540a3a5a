use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use super::*;
use crate::arrangement::canonical_form;
use crate::exactla::RationalMatrix;
use crate::prehomog::RankConfig;
use crate::records::ClassificationRecord;
use crate::rng::task_rng;

fn binomial_catalan(k: u64) -> u64 {
    let mut b: u128 = 1;
    for i in 0..k as u128 {
        b = b * (2 * k as u128 - i) / (i + 1);
    }
    (b / (k as u128 + 1)) as u64
}

/// Plain recursive enumeration on the side (first, last).
fn brute(verts: &[usize]) -> Vec<Vec<[usize; 3]>> {
    let m = verts.len();
    if m < 3 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..m - 1 {
        for l in brute(&verts[..=k]) {
            for r in brute(&verts[k..]) {
                let mut t: Vec<[usize; 3]> = l.iter().chain(&r).copied().collect();
                let mut apex = [verts[0], verts[k], verts[m - 1]];
                apex.sort_unstable();
                t.push(apex);
                t.sort_unstable();
                out.push(t);
            }
        }
    }
    out
}

fn fan(n: usize) -> PolygonTriangulation {
    PolygonTriangulation::new(n, (2..n).map(|i| [1, i, i + 1])).unwrap()
}

#[test]
fn counts_match_catalan() {
    for n in 3..=14 {
        let k = (n - 2) as u64;
        assert_eq!(catalan(n - 2), Some(binomial_catalan(k)));
        if n <= 11 {
            assert_eq!(enumerate_triangulations(n).unwrap().count() as u64, binomial_catalan(k));
        }
    }
    assert_eq!(enumerate_triangulations(4).unwrap().count(), 2);
    assert_eq!(enumerate_triangulations(6).unwrap().count(), 14);
    assert!(enumerate_triangulations(2).is_err());
}

#[test]
fn enumeration_agrees_with_brute_force() {
    for n in 3..=9 {
        let verts: Vec<usize> = (1..=n).collect();
        let expect: BTreeSet<Vec<[usize; 3]>> = brute(&verts).into_iter().collect();
        let got: BTreeSet<Vec<[usize; 3]>> = enumerate_triangulations(n)
            .unwrap()
            .map(|t| t.triangles().to_vec())
            .collect();
        assert_eq!(got, expect);
    }
}

#[test]
fn validation() {
    assert!(PolygonTriangulation::new(4, [[1, 2, 3], [1, 3, 4]]).is_ok());
    assert!(PolygonTriangulation::new(4, [[1, 2, 3]]).is_err());
    // crossing diagonals 1-3 and 2-4
    assert!(PolygonTriangulation::new(4, [[1, 2, 3], [2, 3, 4]]).is_err());
    assert!(PolygonTriangulation::new(5, [[1, 2, 3], [1, 3, 4], [1, 3, 5]]).is_err());
    let t = fan(6);
    assert_eq!(t.diagonals(), vec![[1, 3], [1, 4], [1, 5]]);
    assert_eq!(PolygonTriangulation::from_diagonals(6, &t.diagonals()).unwrap(), t);
}

#[test]
fn dihedral_counts() {
    let expected = [(3, 1), (4, 1), (5, 1), (6, 3), (7, 4), (8, 12), (9, 27), (10, 82), (11, 228), (12, 733)];
    for (n, a) in expected {
        let reps = dihedral_classes(n).unwrap();
        assert_eq!(reps.len(), a, "n = {n}");
        if n <= 10 {
            // the incidence hypergraph of a polygon triangulation recovers the
            // boundary, so hypergraph isomorphism is dihedral equivalence
            let keys: BTreeSet<_> = enumerate_triangulations(n)
                .unwrap()
                .map(|t| canonical_form(&t.to_arrangement()).unwrap())
                .collect();
            assert_eq!(keys.len(), a, "n = {n}");
        }
    }
}

#[test]
fn hexagon_fan_reduction() {
    let r = reduce_with_shears(&fan(6));
    assert_eq!(r.arrangement.triangles(), &[[1, 2, 3], [1, 5, 6]]);
    assert_eq!(r.arrangement.black_circles(), vec![4]);
    assert_eq!(r.steps.len(), 2);
    assert!(r.is_sound());
    // x2 = z2 - z4 then x6 = z6 - z4
    let mut s = RationalMatrix::identity(6);
    s.set(1, 3, crate::exactla::int(-1));
    s.set(5, 3, crate::exactla::int(-1));
    assert_eq!(r.substitution, s);
}

#[test]
fn small_reductions() {
    for t in enumerate_triangulations(4).unwrap() {
        let r = reduce_with_shears(&t);
        assert_eq!(r.arrangement.triangle_count(), 1);
        assert_eq!(r.arrangement.black_circles().len(), 1);
        assert!(r.is_sound());
    }
    let r = reduce(&fan(5));
    assert_eq!(r.triangle_count(), 2);
    assert!(!r.has_edge_sharing());
    assert_eq!(r.black_circles().len(), 0);

    let chain = crate::arrangement::TriangleArrangement::new(7, [[1, 4, 5], [2, 5, 6], [3, 6, 7]]).unwrap();
    let r = reduce_arrangement(&chain);
    assert!(r.steps.is_empty());
    assert_eq!(r.substitution, RationalMatrix::identity(7));
    assert!(r.is_sound());
}

#[test]
fn reduction_sound_for_all_small_polygons() {
    for n in 3..=9 {
        for t in enumerate_triangulations(n).unwrap() {
            assert!(reduction_soundness_check(&t), "{t:?}");
            let r = reduce(&t);
            assert!(r.triangle_count() >= 1);
            assert_eq!(r.n(), n);
        }
    }
}

#[test]
fn classify_small_rows() {
    let cfg = RankConfig::with_seed(17);
    for n in 6..=8 {
        let c = classify(n, &cfg).unwrap();
        assert_eq!(Some(c.row), TableRow::reference(n));
        assert!(c.discrepancy.is_none());
        assert!(c.reductions_sound);
        assert_eq!(c.classes.iter().map(|k| k.members).sum::<usize>(), c.row.count_a);
    }
    assert_eq!(TableRow::reference(7).unwrap().to_string(), "7,4,2,2");
}

#[test]
fn class_verdicts_survive_relabeling() {
    let cfg = RankConfig::with_seed(23);
    for n in 6..=8 {
        let c = classify(n, &cfg).unwrap();
        for (i, class) in c.classes.iter().enumerate() {
            let mut rng = task_rng(99, (n * 1000 + i) as u64);
            for _ in 0..2 {
                let mut perm: Vec<usize> = (1..=n).collect();
                perm.shuffle(&mut rng);
                let a = class.example.relabel(&perm).unwrap();
                let r = ClassificationRecord::analyze(&a, &cfg, "relabel").unwrap();
                assert_eq!(r.key, class.key);
                assert_eq!(r.pv, class.record.pv);
                assert_eq!(r.dim_g, class.record.dim_g);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_triangulations_reduce_soundly(n in 5usize..=12, seed in any::<u64>()) {
        let total = catalan(n - 2).unwrap();
        let t = triangulation_at(n, seed % total).unwrap();
        let r = reduce_with_shears(&t);
        prop_assert!(r.is_sound());
        prop_assert_eq!(r.arrangement.triangle_count() + r.steps.len(), n - 2);
        prop_assert_eq!(t.dihedral_key(), t.transformed(seed as usize % n, seed % 2 == 0).dihedral_key());
    }
}
