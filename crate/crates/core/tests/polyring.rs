use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use toric_cohomology::*;

fn p(s: &str) -> Polynomial {
    parse_polynomial(s, 3).unwrap()
}

fn q(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn arithmetic_examples() {
    assert_eq!(&p("x1 + x2") + &p("-x1"), p("x2"));
    assert_eq!(&p("x1") * &p("x1 + 1"), p("x1^2 + x1"));
    assert_eq!(p("2*x1").scale(&q(1, 2)), p("x1"));
    assert!((&p("x1*x2 - 3/2*x3") - &p("x1*x2 - 3/2*x3")).is_zero());
}

#[test]
fn text_format_round_trip() {
    let f = p("x1^2*x2 - 3/2*x3 + 7");
    assert_eq!(parse_polynomial(&f.to_string(), 3).unwrap(), f);
    assert!(parse_polynomial("x4", 3).is_err());
    assert!(parse_polynomial("", 3).is_err());
    assert!(parse_polynomial("x1^", 3).is_err());
}

#[test]
fn module_rank_mismatch_is_an_error() {
    let a = FreeModuleElement::new(vec![p("x1")]);
    let b = FreeModuleElement::new(vec![p("x1"), p("x2")]);
    assert!(matches!(
        a.checked_add(&b),
        Err(PolyError::RankMismatch(1, 2))
    ));
}

#[test]
fn exponent_overflow_is_checked() {
    let big = Monomial::from_exponents(vec![u32::MAX, 0, 0]);
    assert!(matches!(
        big.checked_mul(&Monomial::var(3, 0)),
        Err(PolyError::ExponentOverflow)
    ));
}

#[test]
fn fine_degrees() {
    assert_eq!(p("x1*x2").fine_degree(), Some(vec![1, 1, 0]));
    assert_eq!(p("x1 + x2").fine_degree(), None);
    let v = FreeModuleElement::new(vec![p("x1"), p("2*x2")]);
    assert_eq!(
        v.fine_degree(&[vec![0, 1, 0], vec![1, 0, 0]]),
        Some(vec![1, 1, 0])
    );
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4, 1i64..3), 0..5).prop_map(
        |terms| {
            let mut f = Polynomial::zero(3);
            for ((a, b, c), n, d) in terms {
                let t =
                    Polynomial::monomial(Monomial::from_exponents(vec![a, b, c])).scale(&q(n, d));
                f = &f + &t;
            }
            f
        },
    )
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
        prop_assert_eq!(parse_polynomial(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn products_land_in_sums_of_degrees(ea in prop::collection::vec(0u32..4, 3), eb in prop::collection::vec(0u32..4, 3)) {
        let (a, b) = (Monomial::from_exponents(ea.clone()), Monomial::from_exponents(eb.clone()));
        let prod = &a * &b;
        let want: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(prod.exponents(), want.as_slice());
        prop_assert!(a.divides(&prod));
        prop_assert_eq!(a.quotient_into(&prod), Some(b.clone()));
    }
}
