mod common;

use clterm::cyclo::{
    cyclotomic_polynomial, parse_cyclotomic, totient, CycloError, CyclotomicNumber,
};
use common::{cmul, complex_close, to_complex};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn c(s: &str) -> CyclotomicNumber {
    parse_cyclotomic(s).unwrap()
}

const CONDUCTORS: [u32; 9] = [1, 3, 4, 5, 7, 8, 9, 12, 15];

fn arb_cyc() -> impl Strategy<Value = CyclotomicNumber> {
    (
        prop::sample::select(CONDUCTORS.to_vec()),
        prop::collection::vec((-5i64..=5, 1i64..=3, 0i64..16), 1..4),
    )
        .prop_map(|(n, terms)| {
            terms
                .into_iter()
                .fold(CyclotomicNumber::zero(), |acc, (p, q, k)| {
                    let coeff = CyclotomicNumber::from_rational(BigRational::new(
                        BigInt::from(p),
                        BigInt::from(q),
                    ));
                    acc + coeff * CyclotomicNumber::root_of_unity(n, k)
                })
        })
}

#[test]
fn canonical_identities() {
    assert_eq!(c("E(4)^2"), c("-1"));
    assert_eq!(c("E(3)+E(3)^2"), c("-1"));
    assert_eq!(c("E(5)+E(5)^2+E(5)^3+E(5)^4"), c("-1"));
    assert_eq!(c("E(8)^2"), c("E(4)"));
    assert_eq!(c("E(6)"), c("-E(3)^2"));
    assert_eq!(c("E(12)^3"), c("E(4)"));
    assert_eq!(c("(E(5)+E(5)^4-E(5)^2-E(5)^3)^2"), c("5"));
    assert_eq!(c("E(1)"), c("1"));
    assert!(c("E(7)^7").is_one());
}

#[test]
fn conductor_of_results() {
    assert_eq!((c("E(3)") * c("E(4)")).conductor(), 12);
    assert_eq!(c("E(3)").embed(12).unwrap().conductor(), 12);
    assert_eq!(
        c("E(3)").embed(10),
        Err(CycloError::NotAMultiple { from: 3, to: 10 })
    );
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
    assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    for n in 1..60 {
        assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
    }
}

#[test]
fn parse_errors_carry_positions() {
    match parse_cyclotomic("1 + E(0)") {
        Err(CycloError::Parse { position, .. }) => assert_eq!(position, 6),
        other => panic!("unexpected {other:?}"),
    }
    match parse_cyclotomic("E(3)/(1+E(3)+E(3)^2)") {
        Err(CycloError::Parse { position, .. }) => assert_eq!(position, 4),
        other => panic!("unexpected {other:?}"),
    }
    assert!(parse_cyclotomic("E(3").is_err());
    assert!(parse_cyclotomic("").is_err());
    assert!(parse_cyclotomic("1 2").is_err());
}

#[test]
fn division_and_inverse() {
    let x = c("1+E(5)");
    assert!((x.clone() * x.inverse().unwrap()).is_one());
    assert_eq!(
        CyclotomicNumber::zero().inverse(),
        Err(CycloError::DivisionByZero)
    );
    assert_eq!(c("1/2*E(3)").checked_div(&c("E(3)")).unwrap(), c("1/2"));
}

#[test]
fn roots_of_unity_recognized() {
    assert_eq!(c("-E(3)").as_root_of_unity(), Some((6, 5)));
    assert_eq!(c("E(4)").as_root_of_unity(), Some((4, 1)));
    assert_eq!(c("-1").as_root_of_unity(), Some((2, 1)));
    assert_eq!(c("1+E(5)").as_root_of_unity(), None);
    assert_eq!(c("1/2").as_root_of_unity(), None);
}

#[test]
fn minimize_descends() {
    let x = c("E(4)").embed(24).unwrap();
    assert_eq!(x.minimize().conductor(), 4);
    assert_eq!(c("E(3)+E(3)^2").minimize().conductor(), 1);
}

#[test]
fn floating_embedding_agrees_on_roots() {
    for n in 1..40u32 {
        for k in 0..n as i64 {
            let z = CyclotomicNumber::root_of_unity(n, k);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let at_lcm = to_complex(&z.embed(2 * n).unwrap());
            assert!(
                complex_close(to_complex(&z), (t.cos(), t.sin())),
                "E({n})^{k}"
            );
            assert!(
                complex_close(at_lcm, (t.cos(), t.sin())),
                "E({n})^{k} lifted"
            );
        }
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_cyc(), b in arb_cyc(), d in arb_cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &d, &a + (&b + &d));
        prop_assert_eq!((&a * &b) * &d, &a * (&b * &d));
        prop_assert_eq!(&a * (&b + &d), &a * &b + &a * &d);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CyclotomicNumber::one(), a.clone());
    }

    #[test]
    fn inverses(a in arb_cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn embedding_is_a_homomorphism(a in arb_cyc(), b in arb_cyc(), k in 1u32..4) {
        let m = (a.conductor() * b.conductor()) * k;
        let ea = a.embed(m).unwrap();
        let eb = b.embed(m).unwrap();
        prop_assert_eq!((&a + &b).embed(m).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).embed(m).unwrap(), &ea * &eb);
        prop_assert_eq!(ea.conductor(), m);
        prop_assert_eq!(ea, a.clone());
    }

    #[test]
    fn galois_is_a_ring_automorphism(a in arb_cyc(), b in arb_cyc()) {
        let n = (a.conductor() * b.conductor()) as i64;
        for t in (1..n.max(2)).filter(|t| num_integer::Integer::gcd(t, &n) == 1).take(4) {
            prop_assert_eq!((&a * &b).galois(t), a.galois(t) * b.galois(t));
            prop_assert_eq!((&a + &b).galois(t), a.galois(t) + b.galois(t));
        }
    }

    #[test]
    fn render_round_trips(a in arb_cyc()) {
        prop_assert_eq!(parse_cyclotomic(&a.render()).unwrap(), a);
    }

    #[test]
    fn float_cross_check(a in arb_cyc(), b in arb_cyc()) {
        let (fa, fb) = (to_complex(&a), to_complex(&b));
        let sum = to_complex(&(&a + &b));
        prop_assert!(complex_close(sum, (fa.0 + fb.0, fa.1 + fb.1)));
        prop_assert!(complex_close(to_complex(&(&a * &b)), cmul(fa, fb)));
        let conj = to_complex(&a.conj());
        prop_assert!(complex_close(conj, (fa.0, -fa.1)));
    }
}
