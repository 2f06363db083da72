use std::path::PathBuf;

use proptest::prelude::*;
use toric_cohomology::*;

fn fan_file(name: &str) -> Fan {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fans")
        .join(name);
    parse_fan(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const EX2_PAPER: [[i64; 2]; 7] = [[1, 0], [1, 0], [3, 0], [3, 0], [6, 1], [0, 1], [1, 0]];
const EX3_PAPER: [[i64; 3]; 8] = [
    [1, 0, 0],
    [2, 1, 0],
    [2, 1, 0],
    [3, 1, 0],
    [6, 3, 1],
    [0, 0, 1],
    [0, 1, 0],
    [1, 0, 0],
];

fn paper(rows: &[impl AsRef<[i64]>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.as_ref().to_vec()).collect()
}

/// Grading of a fan together with the basis change to stated degrees.
fn in_paper_basis(fan: &Fan, stated: &[Vec<i64>]) -> (GradingGroup, Vec<Vec<i64>>) {
    let g = GradingGroup::new(fan).unwrap();
    let t = g
        .change_of_basis_to(stated)
        .expect("unimodular change of basis exists");
    (g, t)
}

fn apply(t: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    t.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[test]
fn example_two_degrees() {
    let fan = fan_file("ex2.fan");
    let (g, t) = in_paper_basis(&fan, &paper(&EX2_PAPER));
    assert_eq!(g.free_rank(), 2);
    assert!(g.torsion().is_empty());
    for (d, want) in g.variable_degrees().iter().zip(EX2_PAPER) {
        assert_eq!(apply(&t, &d.free), want);
    }
    let x5x6 = g.degree_of(&[0, 0, 0, 0, 1, 1, 0]).unwrap();
    assert_eq!(apply(&t, &x5x6.free), [6, 2]);
    let inv = g.degree_of(&[0, 0, 0, 0, -1, -1, 0]).unwrap();
    assert_eq!(apply(&t, &inv.free), [-6, -2]);
    assert_eq!(g.degree_of(&[0; 7]).unwrap(), g.zero_class());
}

#[test]
fn example_three_degrees() {
    let (g, _) = in_paper_basis(&fan_file("ex3.fan"), &paper(&EX3_PAPER));
    assert_eq!(g.free_rank(), 3);
    assert!(g.torsion().is_empty());
}

#[test]
fn projective_line() {
    let g = GradingGroup::new(&fan_file("p1.fan")).unwrap();
    assert_eq!(
        g.variable_degrees(),
        vec![GradingClass::free(vec![1]), GradingClass::free(vec![1])]
    );
}

#[test]
fn plane_enumeration() {
    let g = GradingGroup::new(&fan_file("p2.fan")).unwrap();
    let two = GradingClass::free(vec![2]);
    assert_eq!(
        g.enumerate_degrees(&two, &SignPattern::default())
            .unwrap()
            .len(),
        6
    );
    let neg = g
        .enumerate_degrees(
            &GradingClass::free(vec![-3]),
            &SignPattern::new(vec![0, 1, 2]),
        )
        .unwrap();
    assert_eq!(neg, vec![vec![-1, -1, -1]]);
    assert_eq!(
        g.component_dimension(&GradingClass::free(vec![3])).unwrap(),
        10
    );
    assert_eq!(g.component_dimension(&g.zero_class()).unwrap(), 1);
}

#[test]
fn example_two_enumeration() {
    let fan = fan_file("ex2.fan");
    let (g, t) = in_paper_basis(&fan, &paper(&EX2_PAPER));
    let alpha = g.class_in_basis(&t, &[-6, -2]).unwrap();
    let got = g
        .enumerate_degrees(&alpha, &SignPattern::new(vec![4, 5]))
        .unwrap();
    assert_eq!(got, vec![vec![0, 0, 0, 0, -1, -1, 0]]);
    let one = g.class_in_basis(&t, &[1, 0]).unwrap();
    assert_eq!(g.component_dimension(&one).unwrap(), 3);
}

#[test]
fn torsion_is_carried() {
    // P^2 / (Z/3): rays (1,0), (1,3), (-2,-3)
    let fan = Fan::new(
        2,
        vec![vec![1, 0], vec![1, 3], vec![-2, -3]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap();
    let g = GradingGroup::new(&fan).unwrap();
    assert_eq!(g.free_rank(), 1);
    assert_eq!(g.torsion(), &[3]);
    let total: usize = (0..3)
        .map(|r| {
            g.component_dimension(&g.class_from_slice(&[3, r]).unwrap())
                .unwrap()
        })
        .sum();
    // all monomials whose free degree is 3, split over the torsion residues
    let all = (0..=9i64)
        .flat_map(|a| (0..=9i64).flat_map(move |b| (0..=9i64).map(move |c| [a, b, c])))
        .filter(|a| g.degree_of(a).unwrap().free == [3])
        .count();
    assert_eq!(total, all);
}

proptest! {
    #[test]
    fn degree_is_linear_and_kills_characters(a in prop::collection::vec(-4i64..5, 7), b in prop::collection::vec(-4i64..5, 7), m in prop::collection::vec(-3i64..4, 5)) {
        let fan = fan_file("ex2.fan");
        let g = GradingGroup::new(&fan).unwrap();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let (da, db) = (g.degree_of(&a).unwrap(), g.degree_of(&b).unwrap());
        let want: Vec<i64> = da.free.iter().zip(&db.free).map(|(x, y)| x + y).collect();
        prop_assert_eq!(g.degree_of(&sum).unwrap().free, want);
        let div = g.character_divisor(&m).unwrap();
        prop_assert_eq!(g.degree_of(&div).unwrap(), g.zero_class());
    }

    #[test]
    fn enumeration_is_exact(c0 in -8i64..4, c1 in -3i64..2, mask in 0u64..128) {
        let fan = fan_file("ex2.fan");
        let g = GradingGroup::new(&fan).unwrap();
        let class = GradingClass::free(vec![c0, c1]);
        let pattern = SignPattern::from_mask(mask);
        let points = match g.enumerate_degrees(&class, &pattern) {
            Ok(p) => p,
            Err(GradingError::UnboundedRegion { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let section = g.section(&class).unwrap();
        prop_assert_eq!(g.degree_of(&section).unwrap(), class.clone());
        for a in &points {
            prop_assert_eq!(g.degree_of(a).unwrap(), class.clone());
            prop_assert_eq!(SignPattern::of(a), pattern.clone());
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), points.len());
    }
}
