//! Complete simplicial fans: parsing, validation, and the irrelevant ideal.
//!
//! Fan files are plain text:
//!
//! ```text
//! # projective plane
//! dim 2
//! rays 3
//! 1 0
//! 0 1
//! -1 -1
//! maxcones 3
//! 1 2
//! 2 3
//! 1 3
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::FanError;
use crate::linalg;
use crate::poly::coeff;

/// Default seed for the completeness sampling certificate.
pub const DEFAULT_SEED: u64 = 42;
/// Number of random points used by the completeness certificate.
pub const SAMPLE_POINTS: usize = 1000;

/// A fan given by its primitive ray generators and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    /// 0-based ray indices, in file order.
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan from 0-based cone indices, enforcing the structural
    /// invariants (primitive distinct nonzero rays, simplicial cones, every
    /// ray used).
    pub fn new(
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::Invalid("dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::Invalid(format!(
                    "ray {} has length {}, expected {dim}",
                    i + 1,
                    r.len()
                )));
            }
            let g = linalg::gcd_all(r);
            if g == 0 {
                return Err(FanError::Invalid(format!("ray {} is zero", i + 1)));
            }
            if g != 1 {
                return Err(FanError::Invalid(format!(
                    "non-primitive ray {} {:?}",
                    i + 1,
                    r
                )));
            }
        }
        let mut seen = HashMap::new();
        for (i, r) in rays.iter().enumerate() {
            if let Some(j) = seen.insert(r.clone(), i) {
                return Err(FanError::Invalid(format!(
                    "rays {} and {} coincide",
                    j + 1,
                    i + 1
                )));
            }
        }
        let mut used = vec![false; rays.len()];
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.len() != dim {
                return Err(FanError::Invalid(format!(
                    "cone {} has {} rays, expected {dim}",
                    c + 1,
                    cone.len()
                )));
            }
            let distinct: BTreeSet<_> = cone.iter().collect();
            if distinct.len() != cone.len() {
                return Err(FanError::Invalid(format!("cone {} repeats a ray", c + 1)));
            }
            for &i in cone {
                if i >= rays.len() {
                    return Err(FanError::Invalid(format!(
                        "cone {} uses ray {} of {}",
                        c + 1,
                        i + 1,
                        rays.len()
                    )));
                }
                used[i] = true;
            }
            let m: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i].clone()).collect();
            if linalg::rank_i64(&m) != dim {
                return Err(FanError::Invalid(format!(
                    "cone {} is not simplicial",
                    c + 1
                )));
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(FanError::Invalid(format!(
                "ray {} lies in no maximal cone",
                i + 1
            )));
        }
        Ok(Fan {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of rays, i.e. of Cox ring variables.
    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Maximal cones as 0-based ray index lists.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Serializes back to the fan file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "dim {}", self.dim).unwrap();
        writeln!(s, "rays {}", self.rays.len()).unwrap();
        for r in &self.rays {
            writeln!(s, "{}", join(r.iter())).unwrap();
        }
        writeln!(s, "maxcones {}", self.max_cones.len()).unwrap();
        for c in &self.max_cones {
            writeln!(s, "{}", join(c.iter().map(|i| i + 1))).unwrap();
        }
        s
    }

    /// The weighted projective space fan on rays `v_0..v_d` with
    /// `sum w_i v_i = 0`, realized with `v_i = e_i` for `i >= 1`.
    /// Requires `w_0 = 1` so that the lattice is generated by the rays.
    pub fn weighted_projective(weights: &[i64]) -> Result<Self, FanError> {
        let d = weights
            .len()
            .checked_sub(1)
            .filter(|&d| d > 0)
            .ok_or_else(|| FanError::Invalid("need at least two weights".into()))?;
        if weights[0] != 1 || weights.iter().any(|&w| w <= 0) {
            return Err(FanError::Invalid(
                "weights must be positive with w_0 = 1".into(),
            ));
        }
        let mut rays = vec![weights[1..].iter().map(|w| -w).collect::<Vec<_>>()];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            rays.push(e);
        }
        let cones = (0..=d)
            .map(|skip| (0..=d).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(d, rays, cones)
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses the fan file format. Line numbers in errors are 1-based.
pub fn parse_fan(text: &str) -> Result<Fan, FanError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut eof_line = text.lines().count() + 1;
    let mut next = |what: &str| -> Result<(usize, Vec<&str>), FanError> {
        match lines.next() {
            Some((n, l)) => {
                eof_line = n + 1;
                Ok((n, l.split_whitespace().collect()))
            }
            None => Err(FanError::Syntax {
                line: eof_line,
                msg: format!("unexpected end of file, expected {what}"),
            }),
        }
    };

    let keyword = |line: usize, toks: &[&str], kw: &str| -> Result<usize, FanError> {
        match toks {
            [k, v] if *k == kw => v.parse::<usize>().map_err(|_| FanError::Syntax {
                line,
                msg: format!("expected a nonnegative count after '{kw}', found '{v}'"),
            }),
            _ => Err(FanError::Syntax {
                line,
                msg: format!("expected '{kw} <count>'"),
            }),
        }
    };

    let (l, toks) = next("'dim <d>'")?;
    let dim = keyword(l, &toks, "dim")?;
    if dim == 0 {
        return Err(FanError::Syntax {
            line: l,
            msg: "dimension must be positive".into(),
        });
    }
    let (l, toks) = next("'rays <n>'")?;
    let n = keyword(l, &toks, "rays")?;
    let mut rays = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, toks) = next("a ray")?;
        if toks.len() != dim {
            return Err(FanError::DimensionMismatch {
                line: l,
                expected: dim,
                found: toks.len(),
            });
        }
        let ray = toks
            .iter()
            .map(|t| {
                t.parse::<i64>().map_err(|_| FanError::Syntax {
                    line: l,
                    msg: format!("bad integer '{t}'"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        match linalg::gcd_all(&ray) {
            0 => return Err(FanError::ZeroRay { line: l }),
            1 => {}
            _ => return Err(FanError::NonPrimitiveRay { line: l, ray }),
        }
        rays.push(ray);
    }
    let (l, toks) = next("'maxcones <t>'")?;
    let t = keyword(l, &toks, "maxcones")?;
    let mut cones = Vec::with_capacity(t);
    for _ in 0..t {
        let (l, toks) = next("a maximal cone")?;
        if toks.len() != dim {
            return Err(FanError::DimensionMismatch {
                line: l,
                expected: dim,
                found: toks.len(),
            });
        }
        let mut cone = Vec::with_capacity(dim);
        for tok in toks {
            let idx: i64 = tok.parse().map_err(|_| FanError::Syntax {
                line: l,
                msg: format!("bad index '{tok}'"),
            })?;
            if idx < 1 || idx as usize > n {
                return Err(FanError::IndexOutOfRange {
                    line: l,
                    index: idx,
                    n,
                });
            }
            cone.push(idx as usize - 1);
        }
        cones.push(cone);
    }
    if let Some((l, _)) = lines.next() {
        return Err(FanError::Syntax {
            line: l,
            msg: "trailing content after the last cone".into(),
        });
    }
    Fan::new(dim, rays, cones)
}

/// Outcome of the completeness certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    Complete,
    Incomplete,
    /// Walls check out but point sampling was skipped.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub simplicial: bool,
    pub complete: Completeness,
    pub wall_condition: bool,
    pub messages: Vec<String>,
}

impl FanReport {
    pub fn is_complete(&self) -> bool {
        self.complete == Completeness::Complete
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Run the random point-membership check.
    pub sample: bool,
    pub seed: u64,
    pub points: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            sample: true,
            seed: DEFAULT_SEED,
            points: SAMPLE_POINTS,
        }
    }
}

pub fn validate_fan(fan: &Fan) -> FanReport {
    validate_fan_with(fan, ValidationOptions::default())
}

/// Checks simpliciality, the wall condition (every facet of a maximal cone
/// lies in exactly two maximal cones), and point coverage.
pub fn validate_fan_with(fan: &Fan, opts: ValidationOptions) -> FanReport {
    let mut messages = Vec::new();
    let d = fan.dim;

    let simplicial = fan.max_cones.iter().all(|c| {
        let m: Vec<Vec<i64>> = c.iter().map(|&i| fan.rays[i].clone()).collect();
        linalg::rank_i64(&m) == d
    });
    if !simplicial {
        messages.push("some maximal cone is not simplicial".into());
    }

    let mut walls: HashMap<Vec<usize>, usize> = HashMap::new();
    for cone in &fan.max_cones {
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        for skip in 0..d {
            let facet: Vec<usize> = sorted
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &i)| i)
                .collect();
            *walls.entry(facet).or_default() += 1;
        }
    }
    // every facet of a simplicial cone spans a (d-1)-space, so it is a wall
    let mut bad: Vec<_> = walls.iter().filter(|(_, &c)| c != 2).collect();
    bad.sort();
    let wall_condition = bad.is_empty();
    for (facet, count) in bad.iter().take(5) {
        let f: Vec<usize> = facet.iter().map(|i| i + 1).collect();
        messages.push(format!("wall {f:?} lies in {count} maximal cones"));
    }

    let complete = if !wall_condition || !simplicial {
        Completeness::Incomplete
    } else if !opts.sample {
        messages.push("completeness unverified: point sampling skipped".into());
        Completeness::Unverified
    } else {
        match uncovered_point(fan, opts.seed, opts.points) {
            None => {
                messages.push(format!(
                    "completeness certified by the wall condition and {} sampled points (seed {})",
                    opts.points, opts.seed
                ));
                Completeness::Complete
            }
            Some(p) => {
                messages.push(format!("sample point {p:?} lies in no maximal cone"));
                Completeness::Incomplete
            }
        }
    };
    FanReport {
        simplicial,
        complete,
        wall_condition,
        messages,
    }
}

fn uncovered_point(fan: &Fan, seed: u64, points: usize) -> Option<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = fan.dim;
    let cone_mats: Vec<Vec<Vec<BigRational>>> = fan
        .max_cones
        .iter()
        .map(|c| {
            (0..d)
                .map(|row| c.iter().map(|&i| coeff(fan.rays[i][row])).collect())
                .collect()
        })
        .collect();
    (0..points).find_map(|_| {
        let p: Vec<i64> = (0..d).map(|_| rng.random_range(-1000..=1000)).collect();
        let rhs: Vec<BigRational> = p.iter().map(|&v| coeff(v)).collect();
        let covered = cone_mats.iter().any(|m| {
            linalg::solve(m, &rhs).is_some_and(|lambda| lambda.iter().all(|l| !l.is_negative()))
        });
        (!covered).then_some(p)
    })
}

/// A squarefree monomial given by its support (0-based variable indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SquarefreeMonomial {
    support: Vec<usize>,
}

impl SquarefreeMonomial {
    pub fn new(mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        SquarefreeMonomial { support }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Support as a bitmask (requires at most 64 variables).
    pub fn mask(&self) -> u64 {
        self.support.iter().fold(0u64, |m, &i| m | (1 << i))
    }

    pub fn to_monomial(&self, nvars: usize) -> crate::poly::Monomial {
        let mut e = vec![0; nvars];
        for &i in &self.support {
            e[i] = 1;
        }
        crate::poly::Monomial::from_exponents(e)
    }
}

impl std::fmt::Display for SquarefreeMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.support.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.support.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Minimal monomial basis of the irrelevant ideal: one generator
/// `prod_{i not in sigma} x_i` per maximal cone, first occurrence kept.
pub fn irrelevant_generators(fan: &Fan) -> Vec<SquarefreeMonomial> {
    let n = fan.nrays();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for cone in &fan.max_cones {
        let complement: Vec<usize> = (0..n).filter(|i| !cone.contains(i)).collect();
        let g = SquarefreeMonomial::new(complement);
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    out
}
