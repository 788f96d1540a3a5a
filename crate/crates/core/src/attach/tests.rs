use super::*;
use crate::exactla::int;
use crate::families::{make, FamilyKind};
use crate::liealg::dim_g;

fn cfg() -> RankConfig {
    RankConfig::with_seed(17)
}

fn t_a() -> TriangleArrangement {
    TriangleArrangement::new(7, [[1, 4, 5], [2, 5, 6], [3, 6, 7]]).unwrap()
}

/// `x₁x₂x₃ + x₁x₄x₅`
fn t_d() -> TriangleArrangement {
    TriangleArrangement::new(5, [[1, 2, 3], [1, 4, 5]]).unwrap()
}

fn h2() -> SubalgebraSpec {
    SubalgebraSpec::zeros([(2, 4), (2, 5)])
}

#[test]
fn parse_zeros() {
    assert_eq!(SubalgebraSpec::parse_zeros("2,4; 2,5").unwrap(), h2());
    assert!(SubalgebraSpec::parse_zeros("").unwrap().is_full());
    assert!(SubalgebraSpec::parse_zeros("2;4").is_err());
    assert_eq!(h2().to_string(), "h[M2,4=0; M2,5=0]");
}

#[test]
fn subalgebra_dimensions() {
    let p = cubic_of(&t_d());
    let g = g_basis(&p).unwrap();
    assert_eq!(subalgebra_basis(&p, &SubalgebraSpec::full()).unwrap(), g);

    let h = subalgebra_basis(&p, &h2()).unwrap();
    assert_eq!(h.dim(), g.dim() - 2);
    assert!(h.row_is_diagonal(1));
    assert!(!g.row_is_diagonal(1));

    // on x₁x₂x₃ + x₂x₄x₅ vertex 2 is the centre and both entries already vanish
    let q = cubic_of(&TriangleArrangement::new(5, [[1, 2, 3], [2, 4, 5]]).unwrap());
    assert_eq!(subalgebra_basis(&q, &h2()).unwrap().dim(), dim_g(&q).unwrap());

    // every off-diagonal entry zeroed: the diagonal torus d₁+d₂+d₃ = d₁+d₄+d₅
    let off: Vec<(usize, usize)> = (1..=5).flat_map(|i| (1..=5).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let torus = subalgebra_basis(&p, &SubalgebraSpec::zeros(off)).unwrap();
    assert_eq!(torus.dim(), 4);
    assert!((0..5).all(|i| torus.row_is_diagonal(i)));
    assert!(bracket_closure_check(&torus));

    assert!(matches!(
        subalgebra_basis(&p, &SubalgebraSpec::zeros([(6, 1)])),
        Err(Error::VertexOutOfRange { vertex: 6, n: 5 })
    ));
}

#[test]
fn general_relations() {
    let p = cubic_of(&t_d());
    let rel = |c: i64| SubalgebraSpec {
        zeros: Vec::new(),
        relations: vec![vec![((2, 4), int(1)), ((2, 5), int(c))]],
    };
    // M₂₄ + M₂₅ = 0 is a hyperplane of g but not a subalgebra
    assert_eq!(subalgebra_basis(&p, &rel(1)), Err(Error::NotClosed));
    // M₂₄ = 0 written as a relation agrees with the zero form
    let spec = SubalgebraSpec {
        zeros: Vec::new(),
        relations: vec![vec![((2, 4), int(2))], vec![((2, 5), int(-1))]],
    };
    assert_eq!(subalgebra_basis(&p, &spec).unwrap().dim(), subalgebra_basis(&p, &h2()).unwrap().dim());
}

#[test]
fn example_hypotheses() {
    let r = check_hypotheses(&t_a(), 5, &SubalgebraSpec::full(), &t_d(), 2, &h2(), &cfg()).unwrap();
    assert!(r.applies, "{r:#?}");
    let [s1, s2] = &r.sides;
    assert!(s1.cond1 && s1.cond2 && s2.cond1 && s2.cond2);
    assert!(s2.cond3.iter().any(|q| q.isolated == 3 && q.partner == 1));
    assert_eq!(s2.dim_h, dim_g(&cubic_of(&t_d())).unwrap() - 2);

    let r = check_hypotheses(&t_a(), 5, &SubalgebraSpec::full(), &t_d(), 2, &SubalgebraSpec::full(), &cfg()).unwrap();
    assert!(!r.applies);
    assert!(r.sides[0].passes());
    assert!(r.sides[1].cond1 && !r.sides[1].cond2);
}

#[test]
fn example_attachment_is_pv() {
    let o = attach_and_verify(&t_a(), 5, &SubalgebraSpec::full(), &t_d(), 2, &h2(), &cfg()).unwrap();
    assert!(o.hypotheses.applies);
    assert!(o.record.is_pv());
    assert!(o.consistent);
    assert_eq!((o.record.n, o.record.triangle_count), (11, 5));
    let c = o.cross_block.unwrap();
    assert!(c.pairs > 0 && c.pairing_ok && c.support_ok);
}

#[test]
fn cond3_fails_without_isolated_apex() {
    // in chain(3) the star of 2 is {2,5,6}; neither 5 nor 6 is isolated
    let r = check_hypotheses(&t_a(), 2, &SubalgebraSpec::full(), &t_a(), 5, &SubalgebraSpec::full(), &cfg()).unwrap();
    assert!(r.sides[0].cond3.is_empty());
    assert!(!r.applies);
    assert!(!r.sides[1].cond3.is_empty());
}

#[test]
fn edge_sharing_is_reported() {
    let e = make(&FamilyKind::edge_gluing(2).unwrap()).unwrap();
    let o = attach_and_verify(&e, 1, &SubalgebraSpec::full(), &t_a(), 5, &SubalgebraSpec::full(), &cfg()).unwrap();
    assert!(!o.hypotheses.sides[0].no_edge_sharing);
    assert!(!o.hypotheses.applies);
    assert!(o.cross_block.is_none());
}

#[test]
fn chain_and_daisy_attachments() {
    for v in [5, 6] {
        let o = attach_and_verify(&t_a(), v, &SubalgebraSpec::full(), &t_a(), v, &SubalgebraSpec::full(), &cfg()).unwrap();
        assert!(o.hypotheses.applies, "chain at {v}: {:#?}", o.hypotheses);
        assert!(o.record.is_pv());
    }
    let d = make(&FamilyKind::daisy(2).unwrap()).unwrap();
    let o = attach_and_verify(&d, 5, &SubalgebraSpec::full(), &d, 5, &SubalgebraSpec::full(), &cfg()).unwrap();
    assert!(o.record.is_pv());
    assert!(o.consistent);
}

#[test]
fn attachment_is_symmetric() {
    let s = SubalgebraSpec::full();
    let o1 = attach_and_verify(&t_a(), 5, &s, &t_d(), 2, &h2(), &cfg()).unwrap();
    let o2 = attach_and_verify(&t_d(), 2, &h2(), &t_a(), 5, &s, &cfg()).unwrap();
    assert_eq!(o1.record.key, o2.record.key);
    assert_eq!(o1.record.pv, o2.record.pv);
    assert_eq!(o1.record.dim_g, o2.record.dim_g);
    assert_eq!(o1.hypotheses.applies, o2.hypotheses.applies);
}

#[test]
fn family_corpus() {
    // every vertex pairing among small families: whenever the hypotheses
    // hold with h = g the glued arrangement is PV, and the cross-block
    // entries obey the pairing
    let kinds = [
        FamilyKind::chain(2).unwrap(),
        FamilyKind::chain(3).unwrap(),
        FamilyKind::circular(3).unwrap(),
        FamilyKind::daisy(2).unwrap(),
    ];
    let full = SubalgebraSpec::full();
    let (mut total, mut applied) = (0, 0);
    for (x, k1) in kinds.iter().enumerate() {
        for k2 in &kinds[x..] {
            let (a1, a2) = (make(k1).unwrap(), make(k2).unwrap());
            for v1 in 1..=a1.n() {
                for v2 in (1..=a2.n()).step_by(2) {
                    let o = attach_and_verify(&a1, v1, &full, &a2, v2, &full, &cfg().for_task(total)).unwrap();
                    assert!(o.consistent, "{k1}@{v1} + {k2}@{v2}");
                    let c = o.cross_block.unwrap();
                    assert!(c.pairing_ok && c.support_ok, "{k1}@{v1} + {k2}@{v2}");
                    total += 1;
                    applied += usize::from(o.hypotheses.applies);
                }
            }
        }
    }
    assert!(total >= 20 && applied >= 5, "{total} {applied}");
}

