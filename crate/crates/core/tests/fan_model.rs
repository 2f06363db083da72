use std::path::PathBuf;

use proptest::prelude::*;
use toric_cohomology::fan::{validate_fan_with, ValidationOptions};
use toric_cohomology::*;

fn fan_file(name: &str) -> Fan {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fans")
        .join(name);
    parse_fan(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn names(fan: &Fan) -> Vec<String> {
    irrelevant_generators(fan)
        .iter()
        .map(|g| g.to_string().replace('*', ""))
        .collect()
}

#[test]
fn example_fans_are_complete_and_simplicial() {
    for name in ["p1.fan", "p2.fan", "p112.fan", "ex2.fan", "ex3.fan"] {
        let r = validate_fan(&fan_file(name));
        assert!(r.simplicial, "{name}");
        assert_eq!(
            r.complete,
            Completeness::Complete,
            "{name}: {:?}",
            r.messages
        );
    }
}

#[test]
fn printed_example_three_cone_fails_the_wall_condition() {
    let text = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fans/ex3.fan"),
    )
    .unwrap();
    let printed = text.replace("\n2 4 6 7 8\n", "\n2 3 6 7 8\n");
    assert_ne!(printed, text);
    let r = validate_fan(&parse_fan(&printed).unwrap());
    assert!(!r.wall_condition);
    assert_eq!(r.complete, Completeness::Incomplete);
}

#[test]
fn half_line_is_incomplete() {
    // P^1 without the cone {2}: the unused ray is rejected structurally,
    // and the remaining half-line fails the wall condition
    assert!(parse_fan("dim 1\nrays 2\n1\n-1\nmaxcones 1\n1\n").is_err());
    let fan = parse_fan("dim 1\nrays 1\n1\nmaxcones 1\n1\n").unwrap();
    let r = validate_fan(&fan);
    assert!(r.simplicial);
    assert!(!r.wall_condition);
    assert_eq!(r.complete, Completeness::Incomplete);
}

#[test]
fn sampling_can_be_skipped() {
    let opts = ValidationOptions {
        sample: false,
        ..ValidationOptions::default()
    };
    assert_eq!(
        validate_fan_with(&fan_file("p2.fan"), opts).complete,
        Completeness::Unverified
    );
}

#[test]
fn irrelevant_ideal_of_the_plane() {
    assert_eq!(names(&fan_file("p2.fan")), ["x3", "x1", "x2"]);
}

#[test]
fn irrelevant_ideal_of_example_two() {
    // generators come in cone order; the printed list uses another order
    let mut got = names(&fan_file("ex2.fan"));
    assert_eq!(got[..3], ["x6x7", "x5x7", "x4x5"]);
    let mut want = [
        "x6x7", "x4x6", "x3x6", "x2x6", "x1x6", "x5x7", "x4x5", "x3x5", "x2x5", "x1x5",
    ];
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn irrelevant_ideal_of_example_three() {
    let want = "x6x7x8 x5x7x8 x4x6x7 x4x5x7 x3x6x8 x3x5x8 x3x4x6 x3x4x5 x2x6x8 x2x5x8 \
                x2x4x6 x2x4x5 x1x6x7 x1x5x7 x1x3x6 x1x3x5 x1x2x6 x1x2x5";
    assert_eq!(names(&fan_file("ex3.fan")).join(" "), want);
}

#[test]
fn parse_errors() {
    assert!(matches!(
        parse_fan("dim 2\nrays 1\n2 0\nmaxcones 1\n1\n"),
        Err(FanError::NonPrimitiveRay { .. })
    ));
    assert!(matches!(
        parse_fan("dim 2\nrays 1\n0 0\nmaxcones 1\n1\n"),
        Err(FanError::ZeroRay { .. })
    ));
    assert!(matches!(
        parse_fan("dim 2\nrays 1\n1\nmaxcones 1\n1\n"),
        Err(FanError::Syntax { .. } | FanError::DimensionMismatch { .. })
    ));
    assert!(parse_fan("dim 1\nrays 1\n1\nmaxcones 1\n2\n").is_err());
    assert!(parse_fan("").is_err());
}

#[test]
fn generator_supports_are_cone_complements() {
    let fan = fan_file("ex3.fan");
    let n = fan.nrays();
    let gens = irrelevant_generators(&fan);
    assert!(gens.len() <= fan.max_cones().len());
    for (g, cone) in gens.iter().zip(fan.max_cones()) {
        let complement: Vec<usize> = (0..n).filter(|i| !cone.contains(i)).collect();
        assert_eq!(g.support(), complement.as_slice());
    }
    let union = gens.iter().fold(0u64, |m, g| m | g.mask());
    assert_eq!(union, (1 << n) - 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weighted_projective_round_trip(w1 in 1i64..5, w2 in 1i64..5, w3 in 1i64..4) {
        prop_assume!(num_integer::gcd(num_integer::gcd(w1, w2), w3) == 1);
        let fan = Fan::weighted_projective(&[1, w1, w2, w3]).unwrap();
        prop_assert_eq!(parse_fan(&fan.to_text()).unwrap(), fan.clone());
        let r = validate_fan(&fan);
        prop_assert!(r.simplicial);
        prop_assert_eq!(r.complete, Completeness::Complete);
        prop_assert_eq!(irrelevant_generators(&fan).len(), 4);
    }
}
