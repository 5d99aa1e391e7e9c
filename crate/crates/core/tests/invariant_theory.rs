mod common;

use clterm::invariants::{
    act, check_congruence_lemma, check_h_membership, graded_degree, monomial_valuation,
    GradingData, InvariantContext, InvariantError, Monomial, SparsePolynomial,
};
use clterm::matgrp::{FiniteGroup, FiniteMatrixGroup};
use clterm::mckay::{junior_classes, valuation_weights, AgeTable, GaloisTwist, JuniorClasses};
use clterm::CyclotomicNumber;
use common::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn p(s: &str, n: usize) -> SparsePolynomial {
    SparsePolynomial::parse(s, n).unwrap()
}

fn random_poly(rng: &mut StdRng, nvars: usize, conductor: u32) -> SparsePolynomial {
    let mut f = SparsePolynomial::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
        let c = CyclotomicNumber::from_integer(rng.gen_range(-3..=3))
            * CyclotomicNumber::root_of_unity(conductor, rng.gen_range(0..conductor as i64));
        f = f.add(&SparsePolynomial::term(nvars, Monomial(exps), c));
    }
    if f.is_zero() {
        SparsePolynomial::var(nvars, 0)
    } else {
        f
    }
}

fn juniors_of(g: &FiniteMatrixGroup) -> JuniorClasses {
    junior_classes(g, &AgeTable::new(g).unwrap(), GaloisTwist(1)).unwrap()
}

#[test]
fn action_axiom_on_random_triples() {
    let mut rng = StdRng::seed_from_u64(11);
    for g in [
        quaternion_group(),
        order_six_group(),
        close(&icosahedral_generators()),
    ] {
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
            let f = random_poly(&mut rng, g.dim(), 4);
            let lhs = act(g.element(a), &act(g.element(b), &f).unwrap()).unwrap();
            assert_eq!(lhs, act(g.element(g.mul(a, b)), &f).unwrap());
        }
    }
}

#[test]
fn action_examples() {
    assert_eq!(
        act(&diag(&["E(3)", "E(3)^2"]), &p("x1", 2)).unwrap(),
        p("E(3)^2*x1", 2)
    );
    assert!(matches!(
        act(&diag(&["1"]), &p("x1", 2)),
        Err(InvariantError::DimensionMismatch { .. })
    ));
}

#[test]
fn valuation_is_multiplicative_and_superadditive() {
    let mut rng = StdRng::seed_from_u64(5);
    for g in [
        quaternion_group(),
        order_six_group(),
        close(&[klein_seven_generator()]),
    ] {
        let juniors = juniors_of(&g);
        for &x in &juniors.representatives {
            let entry = valuation_weights(g.element(x), GaloisTwist(1)).unwrap();
            for _ in 0..10 {
                let f = random_poly(&mut rng, g.dim(), 12);
                let h = random_poly(&mut rng, g.dim(), 12);
                let (vf, vh) = (
                    monomial_valuation(&entry, &f).unwrap(),
                    monomial_valuation(&entry, &h).unwrap(),
                );
                assert_eq!(monomial_valuation(&entry, &f.mul(&h)).unwrap(), vf + vh);
                let sum = f.add(&h);
                if !sum.is_zero() {
                    let vs = monomial_valuation(&entry, &sum).unwrap();
                    assert!(vs >= vf.min(vh));
                    if vf != vh {
                        assert_eq!(vs, vf.min(vh));
                    }
                }
            }
        }
    }
}

#[test]
fn valuation_is_compatible_with_conjugation() {
    let mut rng = StdRng::seed_from_u64(3);
    let g = quaternion_group();
    for &x in &juniors_of(&g).representatives {
        let entry = valuation_weights(g.element(x), GaloisTwist(1)).unwrap();
        for _ in 0..10 {
            let k = rng.gen_range(0..g.order());
            let conj = g.mul(g.mul(k, x), g.inv(k));
            let conj_entry = valuation_weights(g.element(conj), GaloisTwist(1)).unwrap();
            let f = random_poly(&mut rng, 2, 4);
            let transported = act(g.element(g.inv(k)), &f).unwrap();
            assert_eq!(
                monomial_valuation(&conj_entry, &f).unwrap(),
                monomial_valuation(&entry, &transported).unwrap()
            );
        }
    }
}

#[test]
fn graded_degrees() {
    let g1 = diag(&["1", "1", "E(3)^2", "E(3)"]);
    let t = GaloisTwist(1);
    assert_eq!(graded_degree(&g1, 3, &p("x3", 4), t).unwrap(), Some(2));
    assert_eq!(graded_degree(&g1, 3, &p("x3*x4", 4), t).unwrap(), Some(0));
    assert_eq!(
        graded_degree(&g1, 3, &p("x1^3 + x2*x3*x4", 4), t).unwrap(),
        Some(0)
    );
    assert_eq!(graded_degree(&g1, 3, &p("x3 + x4", 4), t).unwrap(), None);
    // under ζ' = ζ₃² the same eigenvalue ζ₃ = ζ'² has the other residue
    assert_eq!(
        graded_degree(&g1, 3, &p("x3", 4), GaloisTwist(2)).unwrap(),
        Some(1)
    );
}

#[test]
fn relative_invariants_of_the_order_six_group() {
    let g = order_six_group();
    let ctx = InvariantContext::new(&g).unwrap();
    let trivial = ctx.ab.character(&[0]).unwrap();
    assert_eq!(
        ctx.relative_invariant(&trivial, 6).unwrap().unwrap(),
        p("x1^2", 4)
    );

    let juniors = juniors_of(&g);
    let grading = GradingData::new(&g, &juniors, GaloisTwist(1)).unwrap();
    for chi in ctx.ab.characters() {
        let f = ctx
            .relative_invariant(&chi, 6)
            .unwrap()
            .expect("found within degree 6");
        for x in 0..g.order() {
            let expected = f.scale(&chi.value_at(ctx.ab.coords_of(x)));
            assert_eq!(act(g.element(x), &f).unwrap(), expected);
        }
        assert_eq!(ctx.character_of(&f).unwrap(), chi);
        let rows = check_congruence_lemma(&ctx, &grading, &f).unwrap();
        assert!(rows.iter().all(|r| r.holds), "{rows:?}");
        assert!(
            check_h_membership(&ctx, &juniors, &grading, &f)
                .unwrap()
                .agree
        );
    }
}

#[test]
fn trivial_group_invariant() {
    let g = close(&[diag(&["1", "1", "1"])]);
    let ctx = InvariantContext::new(&g).unwrap();
    let chars = ctx.ab.characters();
    assert_eq!(chars.len(), 1);
    assert_eq!(
        ctx.relative_invariant(&chars[0], 1).unwrap().unwrap(),
        p("x1", 3)
    );
}

#[test]
fn membership_examples() {
    let g = order_six_group();
    let ctx = InvariantContext::new(&g).unwrap();
    let juniors = juniors_of(&g);
    let grading = GradingData::new(&g, &juniors, GaloisTwist(1)).unwrap();

    let x3 = check_h_membership(&ctx, &juniors, &grading, &p("x3", 4)).unwrap();
    assert_eq!((x3.divisibility, x3.h_invariant), (false, false));
    let cube = check_h_membership(&ctx, &juniors, &grading, &p("x3^3", 4)).unwrap();
    assert_eq!((cube.divisibility, cube.h_invariant), (true, true));
    let inv = check_h_membership(&ctx, &juniors, &grading, &p("x1^2 + x3*x4", 4)).unwrap();
    assert_eq!((inv.divisibility, inv.h_invariant), (true, true));

    let rows = check_congruence_lemma(&ctx, &grading, &p("x3", 4)).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    let invariant_rows = check_congruence_lemma(&ctx, &grading, &p("x1^2", 4)).unwrap();
    assert!(invariant_rows.iter().all(|r| r.valuation % r.order == 0));

    assert!(matches!(
        check_congruence_lemma(&ctx, &grading, &p("x1 + x3", 4)),
        Err(InvariantError::NotHomogeneous(_))
    ));
    assert!(matches!(
        check_congruence_lemma(&ctx, &grading, &SparsePolynomial::zero(4)),
        Err(InvariantError::ZeroPolynomial)
    ));
}

#[test]
fn character_validation() {
    let g = quaternion_group();
    let ctx = InvariantContext::new(&g).unwrap();
    assert_eq!(ctx.ab.factors(), vec![2, 2]);
    assert_eq!(ctx.ab.characters().len(), 4);
    assert!(matches!(
        ctx.ab.character(&[1]),
        Err(InvariantError::IllDefinedCharacter(_))
    ));
    assert_eq!(ctx.ab.character(&[3, -1]).unwrap().exponents, vec![1, 1]);
    let bad = [
        CyclotomicNumber::root_of_unity(4, 1),
        CyclotomicNumber::one(),
    ];
    assert!(matches!(
        ctx.ab.character_from_values(&bad),
        Err(InvariantError::IllDefinedCharacter(_))
    ));
    let ok = [CyclotomicNumber::from_integer(-1), CyclotomicNumber::one()];
    assert_eq!(
        ctx.ab.character_from_values(&ok).unwrap().exponents,
        vec![1, 0]
    );
}

#[test]
fn quaternion_relative_invariants_need_a_nondiagonal_eigenbasis() {
    let g = quaternion_group();
    let ctx = InvariantContext::new(&g).unwrap();
    let juniors = juniors_of(&g);
    let grading = GradingData::new(&g, &juniors, GaloisTwist(1)).unwrap();
    assert!(grading
        .entries
        .iter()
        .any(|(_, e)| !e.eigenbasis.is_identity()));
    for chi in ctx.ab.characters() {
        let f = ctx.relative_invariant(&chi, 8).unwrap().unwrap();
        assert!(f.total_degree().unwrap() <= 6);
        assert!(check_congruence_lemma(&ctx, &grading, &f)
            .unwrap()
            .iter()
            .all(|r| r.holds));
        let m = check_h_membership(&ctx, &juniors, &grading, &f).unwrap();
        assert!(m.agree);
        // H = G, so membership in C[V]^H means G-invariance
        assert_eq!(m.h_invariant, chi.is_trivial());
    }
}
