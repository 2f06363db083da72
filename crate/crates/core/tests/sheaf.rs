use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_cohomology::homalg::DegreeBox;
use toric_cohomology::*;

fn fan_file(name: &str) -> Fan {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fans")
        .join(name);
    parse_fan(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn c(v: &[i64]) -> GradingClass {
    GradingClass::free(v.to_vec())
}

#[test]
fn plane_table() {
    let t = ToricCohomology::new(fan_file("p2.fan")).unwrap();
    let degrees: Vec<GradingClass> = (-3..=3).map(|a| c(&[a])).collect();
    let rows = t.table(&degrees).unwrap();
    let h = |p: usize| {
        rows.iter()
            .filter(|e| e.p == p)
            .map(|e| e.dim)
            .collect::<Vec<_>>()
    };
    assert_eq!(h(0), vec![0, 0, 0, 1, 3, 6, 10]);
    assert_eq!(h(1), vec![0; 7]);
    assert_eq!(h(2), vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(
        sheaf_cohomology_dim(&fan_file("p2.fan"), &c(&[-4]), 2).unwrap(),
        3
    );
}

#[test]
fn projective_line_table() {
    let report =
        cohomology_table(&fan_file("p1.fan"), &[c(&[-2]), c(&[-1]), c(&[0]), c(&[1])]).unwrap();
    let h = |p: usize| {
        report
            .per_degree
            .iter()
            .filter(|e| e.p == p)
            .map(|e| e.dim)
            .collect::<Vec<_>>()
    };
    assert_eq!(h(0), vec![0, 0, 1, 2]);
    assert_eq!(h(1), vec![1, 0, 0, 0]);
}

#[test]
fn example_two_structure_sheaf() {
    let t = ToricCohomology::new(fan_file("ex2.fan")).unwrap();
    let rows = t.table(&[t.grading().zero_class()]).unwrap();
    let dims: Vec<usize> = rows.iter().map(|e| e.dim).collect();
    assert_eq!(dims[..6], [1, 0, 0, 0, 0, 0]);
    assert!(dims.iter().skip(1).all(|&d| d == 0));
}

#[test]
fn example_three_cohomology_of_u() {
    let report = cohomology_of_u(&fan_file("ex3.fan")).unwrap();
    let got: Vec<(usize, Vec<usize>)> = report
        .patterns
        .iter()
        .map(|e| (e.p, e.negative.clone()))
        .collect();
    assert_eq!(
        got,
        vec![
            (1, vec![5, 6]),
            (2, vec![2, 3, 7]),
            (2, vec![1, 4, 8]),
            (3, vec![2, 3, 5, 6, 7]),
            (3, vec![1, 4, 5, 6, 8]),
            (4, vec![1, 2, 3, 4, 7, 8]),
            (5, vec![1, 2, 3, 4, 5, 6, 7, 8]),
        ]
    );
    assert!(report.patterns.iter().all(|e| e.mult == 1));
    assert!(report.degree_zero_check);
}

#[test]
fn serre_consistency_on_random_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for name in ["p2.fan", "p112.fan", "ex2.fan", "ex3.fan"] {
        let t = ToricCohomology::new(fan_file(name)).unwrap();
        let r = t.grading().free_rank();
        assert!(
            t.summands(0).is_empty(),
            "{name}: H^1 of the limit complex is nonzero"
        );
        for _ in 0..40 {
            let alpha = c(&(0..r).map(|_| rng.random_range(-6..=6)).collect::<Vec<_>>());
            let h0 = t.sheaf_dim(&alpha, 0).unwrap();
            assert_eq!(
                h0,
                t.grading().component_dimension(&alpha).unwrap(),
                "{name} at {alpha}"
            );
            for p in 0..=t.nvars() {
                t.sheaf_dim(&alpha, p).unwrap();
            }
        }
    }
}

/// Sum over a box of classes equals a direct count of lattice points of the
/// reported patterns whose degree lies in that box.
#[test]
fn pushforward_double_count() {
    for (name, lo, hi) in [("p1.fan", -5, 5), ("p2.fan", -7, 4), ("p112.fan", -8, 4)] {
        let t = ToricCohomology::new(fan_file(name)).unwrap();
        let g = t.grading();
        let n = t.nvars();
        for p in 0..n {
            let by_class: usize = (lo..=hi).map(|a| t.sheaf_dim(&c(&[a]), p).unwrap()).sum();
            let mut patterns = t.summands(p);
            if p == 0 {
                patterns.push((SignPattern::default(), 1));
            }
            let mut direct = 0;
            for a in DegreeBox::cube(n, 10).degrees() {
                let deg = g.degree_of(&a).unwrap().free[0];
                if deg < lo || deg > hi {
                    continue;
                }
                let neg = SignPattern::of(&a);
                direct += patterns
                    .iter()
                    .filter(|(j, _)| *j == neg)
                    .map(|(_, m)| m)
                    .sum::<usize>();
            }
            assert_eq!(by_class, direct, "{name}, p = {p}");
        }
    }
}

#[test]
fn modular_backend_is_labelled() {
    let t = ToricCohomology::with_backend(
        fan_file("p2.fan"),
        linalg::RankBackend::ModPrime(2_147_483_647),
    )
    .unwrap();
    let report = t.report(&[]).unwrap();
    assert!(!report.exact);
    assert_eq!(report.patterns.len(), 1);
}

#[test]
fn non_complete_fans_are_rejected() {
    let fan = parse_fan("dim 2\nrays 2\n1 0\n0 1\nmaxcones 1\n1 2\n").unwrap();
    assert!(matches!(
        cohomology_of_u(&fan),
        Err(CohomologyError::Fan(_))
    ));
}
