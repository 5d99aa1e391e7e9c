mod common;

use clterm::matgrp::{
    abelian_basis, abelian_invariants, abelianization, commutator_subgroup, conjugacy_classes,
    is_normal, minimal_generators, normal_closure, quotient, subgroup_generated, AbelianStructure,
    CycMatrix, FiniteGroup, FiniteMatrixGroup, GroupError, SubgroupHandle, SubgroupView,
};
use common::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn test_groups() -> Vec<(&'static str, FiniteMatrixGroup)> {
    vec![
        ("order six", order_six_group()),
        ("quaternion", quaternion_group()),
        ("s3", close(&s3_permutation_generators())),
        ("cyclic 7", close(&[cyclic_sl2(7)])),
        ("binary icosahedral", close(&icosahedral_generators())),
    ]
}

#[test]
fn closure_matches_naive_closure() {
    for (name, g) in test_groups() {
        let naive = naive_closure(g.generators());
        assert_eq!(g.order(), naive.len(), "{name}");
        for m in &naive {
            assert!(g.id_of(m).is_some(), "{name}: {m} missing");
        }
        assert!(g.element(0).is_identity(), "{name}");
    }
}

#[test]
fn known_orders() {
    assert_eq!(order_six_group().order(), 6);
    assert_eq!(quaternion_group().order(), 8);
    assert_eq!(close(&icosahedral_generators()).order(), 120);
    assert_eq!(close(&icosahedral_diagonal_generators()).order(), 120);
    assert_eq!(close(&s3_permutation_generators()).order(), 6);
}

#[test]
fn multiplication_table_matches_matrices() {
    for (name, g) in test_groups() {
        let n = g.order();
        for x in 0..n {
            for y in (0..n).step_by(1 + n / 12) {
                let prod = g.element(x).mul(g.element(y)).unwrap();
                assert_eq!(g.element(g.mul(x, y)), &prod, "{name}: {x}*{y}");
            }
            assert!(g.element(g.mul(x, g.inv(x))).is_identity(), "{name}");
            assert_eq!(
                g.element(x).pow(g.element_order(x) as u64),
                CycMatrix::identity(g.dim())
            );
        }
    }
}

#[test]
fn conjugacy_classes_match_brute_force() {
    for (name, g) in test_groups() {
        let n = g.order();
        let (classes, class_of) = conjugacy_classes(&g);
        for x in 0..n {
            let mut orbit: Vec<usize> = (0..n).map(|k| g.mul(g.mul(k, x), g.inv(k))).collect();
            orbit.sort_unstable();
            orbit.dedup();
            assert_eq!(classes[class_of[x]], orbit, "{name}: class of {x}");
        }
        assert_eq!(g.classes(), classes.as_slice());
    }
    assert_eq!(quaternion_group().classes().len(), 5);
    assert_eq!(close(&icosahedral_generators()).classes().len(), 9);
}

fn brute_force_commutator_order(g: &FiniteMatrixGroup) -> usize {
    let mut comms = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    subgroup_generated(g, &comms).order()
}

#[test]
fn commutator_subgroups() {
    for (name, g) in test_groups() {
        let d = commutator_subgroup(&g);
        assert_eq!(d.order(), brute_force_commutator_order(&g), "{name}");
        assert!(is_normal(&g, &d), "{name}");
    }
    assert_eq!(commutator_subgroup(&quaternion_group()).order(), 2);
    assert_eq!(
        commutator_subgroup(&close(&s3_permutation_generators())).order(),
        3
    );
    assert_eq!(
        commutator_subgroup(&close(&icosahedral_generators())).order(),
        120
    );
    assert!(commutator_subgroup(&order_six_group()).is_trivial());
}

#[test]
fn quotients() {
    let q8 = quaternion_group();
    let minus_one = q8.id_of(&diag(&["-1", "-1"])).unwrap();
    let center = subgroup_generated(&q8, &[minus_one]);
    let klein = quotient(&q8, &center).unwrap();
    assert_eq!(klein.order(), 4);
    assert!(klein.is_abelian());
    assert_eq!(
        abelian_invariants(&klein).unwrap().invariant_factors,
        vec![2, 2]
    );

    let s3 = close(&s3_permutation_generators());
    let a3 = commutator_subgroup(&s3);
    let q = quotient(&s3, &a3).unwrap();
    assert_eq!(abelian_invariants(&q).unwrap().invariant_factors, vec![2]);

    let transposition = s3.id_of(&s3_permutation_generators()[0]).unwrap();
    let not_normal = subgroup_generated(&s3, &[transposition]);
    assert!(!is_normal(&s3, &not_normal));
    assert!(matches!(
        quotient(&s3, &not_normal),
        Err(GroupError::NotNormal)
    ));
    assert_eq!(normal_closure(&s3, &[transposition]).order(), 6);

    let table = klein.table();
    for (x, row) in table.iter().enumerate() {
        for (y, &z) in row.iter().enumerate() {
            assert_eq!(z, klein.mul(x, y));
        }
    }
}

#[test]
fn abelianizations() {
    assert_eq!(
        abelianization(&quaternion_group())
            .unwrap()
            .invariant_factors,
        vec![2, 2]
    );
    assert_eq!(
        abelianization(&order_six_group())
            .unwrap()
            .invariant_factors,
        vec![6]
    );
    assert!(abelianization(&close(&icosahedral_generators()))
        .unwrap()
        .is_trivial());
    assert_eq!(
        abelianization(&close(&s3_permutation_generators()))
            .unwrap()
            .invariant_factors,
        vec![2]
    );
    assert!(matches!(
        abelian_invariants(&quaternion_group()),
        Err(GroupError::NotAbelian)
    ));
}

#[test]
fn abelian_basis_is_a_coordinate_system() {
    let g = close(&diagonal_abelian_generators(&[2, 4, 6]));
    let basis = abelian_basis(&g).unwrap();
    assert_eq!(
        basis.structure(),
        AbelianStructure::from_cyclic_factors(&[2, 4, 6])
    );
    let mut seen = basis.coords.clone();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), g.order());
    for &(e, d) in &basis.generators {
        assert_eq!(g.element_order(e) as u64, d);
    }
}

#[test]
fn invariant_factor_normal_form() {
    assert_eq!(
        AbelianStructure::from_cyclic_factors(&[2, 3]).invariant_factors,
        vec![6]
    );
    assert_eq!(
        AbelianStructure::from_cyclic_factors(&[2, 2]).invariant_factors,
        vec![2, 2]
    );
    assert_eq!(
        AbelianStructure::from_cyclic_factors(&[4, 6]).invariant_factors,
        vec![2, 12]
    );
    assert_eq!(
        AbelianStructure::from_cyclic_factors(&[1, 1]).invariant_factors,
        Vec::<u64>::new()
    );
    assert_eq!(
        AbelianStructure::from_cyclic_factors(&[2, 4, 6]).render(),
        "Z/2 + Z/2 + Z/12"
    );
    assert_eq!(AbelianStructure::trivial().render(), "0");
}

#[test]
fn subgroup_views() {
    let g = quaternion_group();
    let i = g.id_of(&quaternion_generators()[0]).unwrap();
    let sub = subgroup_generated(&g, &[i]);
    assert_eq!(sub.order(), 4);
    let view = SubgroupView::new(&g, &sub);
    assert_eq!(view.order(), 4);
    assert!(view.is_abelian());
    assert_eq!(
        abelian_invariants(&view).unwrap().invariant_factors,
        vec![4]
    );
    for local in 0..4 {
        assert_eq!(view.local_id(view.parent_id(local)), Some(local));
    }
    assert_eq!(minimal_generators(&g).len(), 2);
    let whole = SubgroupHandle::whole(8);
    assert!(whole.is_closed_in(&g));
    assert_eq!(whole.intersection(&sub).order(), 4);
}

#[test]
fn closure_errors() {
    let infinite = diag(&["2", "1/2"]);
    assert!(matches!(
        FiniteMatrixGroup::close(&[infinite], 50),
        Err(GroupError::TooLarge { max_size: 50, .. })
    ));
    assert!(matches!(
        FiniteMatrixGroup::close(&[diag(&["1", "0"])], 50),
        Err(GroupError::Singular)
    ));
    assert!(matches!(
        FiniteMatrixGroup::close(&[diag(&["1"]), diag(&["1", "1"])], 50),
        Err(GroupError::DimensionMismatch { .. })
    ));
    assert!(matches!(
        FiniteMatrixGroup::close(&[], 50),
        Err(GroupError::NoGenerators)
    ));
    assert!(matches!(
        FiniteMatrixGroup::close(&[cyclic_sl2(30)], 10),
        Err(GroupError::TooLarge { max_size: 10, .. })
    ));
}

#[test]
fn matrix_arithmetic() {
    let m = mat(&[&["1", "2"], &["3", "4"]]);
    assert_eq!(m.determinant(), clterm::parse_cyclotomic("-2").unwrap());
    assert_eq!(m.rank(), 2);
    assert_eq!(mat(&[&["1", "2"], &["2", "4"]]).rank(), 1);
    assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    assert!(matches!(
        mat(&[&["1", "2"], &["2", "4"]]).inverse(),
        Err(GroupError::Singular)
    ));
    assert!(order_six_generator().determinant().is_one());
    assert_eq!(
        order_six_generator().trace(),
        clterm::parse_cyclotomic("-1").unwrap()
    );
}

#[test]
fn random_diagonal_groups_match_naive_closure() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..15 {
        let k = rng.gen_range(1..=3);
        let cyclic: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
        let gens = diagonal_abelian_generators(&cyclic);
        let g = close(&gens);
        assert_eq!(g.order(), naive_closure(&gens).len());
        assert_eq!(g.order() as u32, cyclic.iter().product::<u32>());
    }
}
