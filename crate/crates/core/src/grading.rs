//! The class group grading of the Cox ring.
//!
//! The exact sequence `0 -> Z^d -> Z^n -> A -> 0`, with the first map
//! `m -> (<m, e_1>, ..., <m, e_n>)`, is split by a Smith normal form of the
//! ray matrix. The free part of `A` is expressed in the Hermite-normalized
//! basis of the resulting projection so that the basis is canonical.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::GradingError;
use crate::fan::Fan;
use crate::linalg::{self, SmithForm};
use crate::poly::{coeff, Coeff};

/// A class in `Z^r (+) prod Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradingClass {
    pub free: Vec<i64>,
    /// Residues in `[0, t_k)`.
    pub torsion: Vec<i64>,
}

impl GradingClass {
    pub fn free(free: Vec<i64>) -> Self {
        GradingClass {
            free,
            torsion: Vec::new(),
        }
    }

    /// Free coordinates followed by torsion residues.
    pub fn to_vec(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }
}

impl fmt::Display for GradingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coordinates forced negative; all others are forced nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct SignPattern {
    negative: Vec<usize>,
}

impl SignPattern {
    /// 0-based indices; sorted and deduplicated.
    pub fn new(mut negative: Vec<usize>) -> Self {
        negative.sort_unstable();
        negative.dedup();
        SignPattern { negative }
    }

    pub fn from_mask(mask: u64) -> Self {
        SignPattern {
            negative: (0..64).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    /// Negative support of a Laurent exponent vector.
    pub fn of(a: &[i64]) -> Self {
        SignPattern {
            negative: (0..a.len()).filter(|&i| a[i] < 0).collect(),
        }
    }

    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    pub fn mask(&self) -> u64 {
        self.negative.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.negative.binary_search(&i).is_ok()
    }

    /// 1-based indices, for reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.negative.iter().map(|i| i + 1).collect()
    }
}

/// The grading group `A` together with the degree map `Z^n -> A`.
#[derive(Clone, Debug)]
pub struct GradingGroup {
    nvars: usize,
    dim: usize,
    /// Ray matrix, `n x d`.
    rays: Vec<Vec<i64>>,
    torsion: Vec<i64>,
    /// Rows of the free projection, `free_rank x n`.
    free_projection: Vec<Vec<i64>>,
    /// Rows of the torsion projection (reduce mod the matching factor).
    torsion_projection: Vec<Vec<i64>>,
    /// Maps free coordinates back to `U`-coordinates `d..n`.
    free_section: Vec<Vec<i64>>,
    /// `U`-coordinate index of each torsion factor.
    torsion_slots: Vec<usize>,
    smith: SmithForm,
}

impl GradingGroup {
    pub fn new(fan: &Fan) -> Result<Self, GradingError> {
        let n = fan.nrays();
        let d = fan.dim();
        let rays = fan.rays().to_vec();
        let smith = linalg::smith_normal_form(&rays)?;
        let rank = smith.diagonal.iter().filter(|&&x| x != 0).count();
        if rank < d {
            return Err(GradingError::RankDeficient { rank, dim: d });
        }
        let mut torsion = Vec::new();
        let mut torsion_projection = Vec::new();
        let mut torsion_slots = Vec::new();
        for (k, &dk) in smith.diagonal.iter().enumerate() {
            if dk > 1 {
                torsion.push(dk);
                torsion_projection.push(smith.u[k].iter().map(|x| x.rem_euclid(dk)).collect());
                torsion_slots.push(k);
            }
        }
        let raw_free: Vec<Vec<i64>> = smith.u[d..].to_vec();
        let (free_projection, transform) = linalg::hermite_rows(&raw_free)?;
        let free_section = integer_inverse(&transform).ok_or(GradingError::Overflow)?;
        Ok(GradingGroup {
            nvars: n,
            dim: d,
            rays,
            torsion,
            free_projection,
            torsion_projection,
            free_section,
            torsion_slots,
            smith,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn free_rank(&self) -> usize {
        self.free_projection.len()
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Projection matrix rows: free coordinates, then torsion coordinates
    /// (the latter to be read modulo the invariant factors).
    pub fn projection(&self) -> Vec<Vec<i64>> {
        self.free_projection
            .iter()
            .chain(&self.torsion_projection)
            .cloned()
            .collect()
    }

    pub fn free_projection(&self) -> &[Vec<i64>] {
        &self.free_projection
    }

    pub fn degree_of(&self, a: &[i64]) -> Result<GradingClass, GradingError> {
        if a.len() != self.nvars {
            return Err(GradingError::LengthMismatch {
                expected: self.nvars,
                found: a.len(),
            });
        }
        let free = self
            .free_projection
            .iter()
            .map(|row| dot(row, a))
            .collect::<Result<_, _>>()?;
        let torsion = self
            .torsion_projection
            .iter()
            .zip(&self.torsion)
            .map(|(row, &t)| dot(row, a).map(|v| v.rem_euclid(t)))
            .collect::<Result<_, _>>()?;
        Ok(GradingClass { free, torsion })
    }

    /// `deg x_i` for every variable.
    pub fn variable_degrees(&self) -> Vec<GradingClass> {
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.degree_of(&e).expect("length matches")
            })
            .collect()
    }

    pub fn zero_class(&self) -> GradingClass {
        GradingClass {
            free: vec![0; self.free_rank()],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Validates the shape of a class and reduces its torsion residues.
    pub fn normalize(&self, class: &GradingClass) -> Result<GradingClass, GradingError> {
        if class.free.len() != self.free_rank() || class.torsion.len() != self.torsion.len() {
            return Err(GradingError::ClassShape {
                free: class.free.len(),
                torsion: class.torsion.len(),
                want_free: self.free_rank(),
                want_torsion: self.torsion.len(),
            });
        }
        Ok(GradingClass {
            free: class.free.clone(),
            torsion: class
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(r, t)| r.rem_euclid(*t))
                .collect(),
        })
    }

    /// Splits a flat coordinate list (free then torsion) into a class.
    pub fn class_from_slice(&self, v: &[i64]) -> Result<GradingClass, GradingError> {
        let r = self.free_rank();
        if v.len() != r + self.torsion.len() {
            return Err(GradingError::ClassShape {
                free: v.len().min(r),
                torsion: v.len().saturating_sub(r),
                want_free: r,
                want_torsion: self.torsion.len(),
            });
        }
        self.normalize(&GradingClass {
            free: v[..r].to_vec(),
            torsion: v[r..].to_vec(),
        })
    }

    /// Some exponent vector of the given class.
    pub fn section(&self, class: &GradingClass) -> Result<Vec<i64>, GradingError> {
        let class = self.normalize(class)?;
        let mut y = vec![0i64; self.nvars];
        for (slot, &r) in self.torsion_slots.iter().zip(&class.torsion) {
            y[*slot] = r;
        }
        for (k, row) in self.free_section.iter().enumerate() {
            y[self.dim + k] = dot(row, &class.free)?;
        }
        self.smith.u_inv.iter().map(|row| dot(row, &y)).collect()
    }

    /// The vector `(<m, e_1>, ..., <m, e_n>)`.
    pub fn character_divisor(&self, m: &[i64]) -> Result<Vec<i64>, GradingError> {
        self.rays.iter().map(|r| dot(r, m)).collect()
    }

    /// All exponent vectors of class `class` with negative support exactly
    /// `pattern`, sorted lexicographically.
    pub fn enumerate_degrees(
        &self,
        class: &GradingClass,
        pattern: &SignPattern,
    ) -> Result<Vec<Vec<i64>>, GradingError> {
        let a0 = self.section(class)?;
        let d = self.dim;
        // constraints g_i . m >= h_i on the character lattice Z^d
        let mut g: Vec<Vec<i64>> = Vec::with_capacity(self.nvars);
        let mut h: Vec<i64> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            if pattern.contains(i) {
                g.push(self.rays[i].iter().map(|x| -x).collect());
                h.push(a0[i] + 1);
            } else {
                g.push(self.rays[i].clone());
                h.push(-a0[i]);
            }
        }
        let vertices = polytope_vertices(&g, &h, d);
        if vertices.is_empty() {
            return Ok(Vec::new());
        }
        if has_recession_direction(&g, d) {
            return Err(GradingError::UnboundedRegion {
                pattern: pattern.one_based(),
            });
        }
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &vertices {
            for k in 0..d {
                let fl = v[k]
                    .floor()
                    .to_integer()
                    .to_i64()
                    .ok_or(GradingError::Overflow)?;
                let ce = v[k]
                    .ceil()
                    .to_integer()
                    .to_i64()
                    .ok_or(GradingError::Overflow)?;
                lo[k] = lo[k].min(fl);
                hi[k] = hi[k].max(ce);
            }
        }
        let mut out = Vec::new();
        let mut m = lo.clone();
        loop {
            let a: Vec<i64> = (0..self.nvars)
                .map(|i| dot(&self.rays[i], &m).map(|v| v + a0[i]))
                .collect::<Result<_, _>>()?;
            if a.iter()
                .enumerate()
                .all(|(i, &ai)| if pattern.contains(i) { ai < 0 } else { ai >= 0 })
            {
                out.push(a);
            }
            // odometer over the bounding box
            let mut k = 0;
            loop {
                if k == d {
                    out.sort();
                    return Ok(out);
                }
                if m[k] < hi[k] {
                    m[k] += 1;
                    break;
                }
                m[k] = lo[k];
                k += 1;
            }
        }
    }

    /// dim of the graded piece `S_class`.
    pub fn component_dimension(&self, class: &GradingClass) -> Result<usize, GradingError> {
        Ok(self
            .enumerate_degrees(class, &SignPattern::default())?
            .len())
    }

    /// The class whose coordinates in the basis given by `t` (as returned
    /// by [`GradingGroup::change_of_basis_to`]) are `v`.
    pub fn class_in_basis(&self, t: &[Vec<i64>], v: &[i64]) -> Option<GradingClass> {
        let a: Vec<Vec<Coeff>> = t
            .iter()
            .map(|row| row.iter().map(|&x| coeff(x)).collect())
            .collect();
        let b: Vec<Coeff> = v.iter().map(|&x| coeff(x)).collect();
        let sol = linalg::solve(&a, &b)?;
        let free = sol
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i64>>>()?;
        Some(GradingClass::free(free))
    }

    /// Finds an integer automorphism `T` of the free part with
    /// `T deg(x_i) = target_i` for all `i`; `None` if none exists or the
    /// group has torsion.
    pub fn change_of_basis_to(&self, target: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
        if !self.torsion.is_empty() || target.len() != self.nvars {
            return None;
        }
        let r = self.free_rank();
        let ours: Vec<Vec<i64>> = self
            .variable_degrees()
            .into_iter()
            .map(|c| c.free)
            .collect();
        // pick r independent variables
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..self.nvars {
            let mut trial: Vec<Vec<i64>> = chosen.iter().map(|&j| ours[j].clone()).collect();
            trial.push(ours[i].clone());
            if linalg::rank_i64(&trial) == trial.len() {
                chosen.push(i);
            }
            if chosen.len() == r {
                break;
            }
        }
        if chosen.len() < r {
            return None;
        }
        // T * M = N where M has columns ours[chosen], N columns target[chosen];
        // solve M^T t_row = n_row for each row of T
        let mt: Vec<Vec<Coeff>> = chosen
            .iter()
            .map(|&j| ours[j].iter().map(|&x| coeff(x)).collect())
            .collect();
        let mut t = Vec::with_capacity(r);
        for row in 0..r {
            let rhs: Vec<Coeff> = chosen
                .iter()
                .map(|&j| target[j].get(row).map(|&x| coeff(x)))
                .collect::<Option<_>>()?;
            let sol = linalg::solve(&mt, &rhs)?;
            let ints = sol
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        c.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()?;
            t.push(ints);
        }
        let det = integer_det(&t);
        if det.abs() != 1 {
            return None;
        }
        let ok = ours.iter().zip(target).all(|(o, tg)| {
            t.iter()
                .map(|row| row.iter().zip(o).map(|(a, b)| a * b).sum::<i64>())
                .collect::<Vec<_>>()
                == *tg
        });
        ok.then_some(t)
    }

    /// Human-readable description of the basis in use.
    pub fn basis_note(&self) -> String {
        let degs: Vec<String> = self
            .variable_degrees()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("deg x{} = {}", i + 1, c))
            .collect();
        let tors = if self.torsion.is_empty() {
            String::new()
        } else {
            format!(" plus torsion Z/{:?}", self.torsion)
        };
        format!(
            "class group Z^{}{} in the Hermite-normalized Smith basis: {}",
            self.free_rank(),
            tors,
            degs.join(", ")
        )
    }
}

fn dot(row: &[i64], v: &[i64]) -> Result<i64, GradingError> {
    row.iter().zip(v).try_fold(0i64, |acc, (a, b)| {
        a.checked_mul(*b)
            .and_then(|p| acc.checked_add(p))
            .ok_or(GradingError::Overflow)
    })
}

fn integer_det(m: &[Vec<i64>]) -> i64 {
    let rows: Vec<Vec<Coeff>> = m
        .iter()
        .map(|r| r.iter().map(|&x| coeff(x)).collect())
        .collect();
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut a = rows;
    let mut det = coeff(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in (c + 1)..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let delta = &f * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    det.to_integer().to_i64().unwrap_or(0)
}

fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let a: Vec<Vec<Coeff>> = m
        .iter()
        .map(|r| r.iter().map(|&x| coeff(x)).collect())
        .collect();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Coeff> = (0..n).map(|i| coeff(i64::from(i == j))).collect();
        let x = linalg::solve(&a, &e)?;
        cols.push(
            x.iter()
                .map(|c| {
                    if c.is_integer() {
                        c.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()?,
        );
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i]).collect())
            .collect(),
    )
}

/// Vertices of `{m : g_i . m >= h_i}` by exhaustive `d`-subsets of tight
/// constraints.
fn polytope_vertices(g: &[Vec<i64>], h: &[i64], d: usize) -> Vec<Vec<Coeff>> {
    let mut out: Vec<Vec<Coeff>> = Vec::new();
    for subset in subsets(g.len(), d) {
        let a: Vec<Vec<Coeff>> = subset
            .iter()
            .map(|&i| g[i].iter().map(|&x| coeff(x)).collect())
            .collect();
        let b: Vec<Coeff> = subset.iter().map(|&i| coeff(h[i])).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        let feasible = g.iter().zip(h).all(|(row, &hi)| {
            let lhs: Coeff = row.iter().zip(&x).map(|(&r, xi)| coeff(r) * xi).sum();
            lhs >= coeff(hi)
        });
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Whether `{m : g_i . m >= 0}` contains a nonzero vector, assuming the
/// rows of `g` span (so the cone is pointed and generated by extreme rays).
fn has_recession_direction(g: &[Vec<i64>], d: usize) -> bool {
    for subset in subsets(g.len(), d - 1) {
        let rows: Vec<Vec<Coeff>> = subset
            .iter()
            .map(|&i| g[i].iter().map(|&x| coeff(x)).collect())
            .collect();
        let ns = linalg::nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let r = &ns[0];
        for sign in [1i64, -1] {
            let ok = g.iter().all(|row| {
                let v: Coeff = row.iter().zip(r).map(|(&x, ri)| coeff(x * sign) * ri).sum();
                !v.is_negative()
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn p2() -> GradingGroup {
        GradingGroup::new(
            &parse_fan("dim 2\nrays 3\n1 0\n0 1\n-1 -1\nmaxcones 3\n1 2\n2 3\n1 3\n").unwrap(),
        )
        .unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn p2_degrees_are_positive_ones() {
        let g = p2();
        assert_eq!(g.free_rank(), 1);
        assert!(g.torsion().is_empty());
        assert_eq!(g.variable_degrees(), vec![GradingClass::free(vec![1]); 3]);
    }

    #[test]
    fn p1_degrees() {
        let g = GradingGroup::new(&parse_fan("dim 1\nrays 2\n1\n-1\nmaxcones 2\n1\n2\n").unwrap())
            .unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.variable_degrees(), vec![GradingClass::free(vec![1]); 2]);
    }

    #[test]
    fn characters_have_degree_zero() {
        let g = p2();
        for m in [[1, 0], [0, 1], [3, -7]] {
            let a = g.character_divisor(&m).unwrap();
            assert_eq!(g.degree_of(&a).unwrap(), g.zero_class());
        }
    }

    #[test]
    fn degree_is_linear() {
        let g = p2();
        let a = [2, -1, 5];
        let b = [-3, 4, 0];
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let da = g.degree_of(&a).unwrap();
        let db = g.degree_of(&b).unwrap();
        assert_eq!(g.degree_of(&s).unwrap().free[0], da.free[0] + db.free[0]);
        assert!(g.degree_of(&[1, 2]).is_err());
    }

    #[test]
    fn stars_and_bars() {
        let g = p2();
        for k in 0..6i64 {
            let found = g
                .enumerate_degrees(&GradingClass::free(vec![k]), &SignPattern::default())
                .unwrap();
            assert_eq!(found.len() as u64, binomial(k as u64 + 2, 2));
            assert!(found
                .iter()
                .all(|a| a.iter().sum::<i64>() == k && a.iter().all(|&x| x >= 0)));
        }
    }

    #[test]
    fn all_negative_pattern_on_p2() {
        let g = p2();
        let all = SignPattern::new(vec![0, 1, 2]);
        assert_eq!(
            g.enumerate_degrees(&GradingClass::free(vec![-3]), &all)
                .unwrap(),
            vec![vec![-1, -1, -1]]
        );
        assert_eq!(
            g.enumerate_degrees(&GradingClass::free(vec![-4]), &all)
                .unwrap()
                .len(),
            3
        );
        assert!(g
            .enumerate_degrees(&GradingClass::free(vec![-2]), &all)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn unbounded_pattern_is_reported() {
        let g = p2();
        let err = g
            .enumerate_degrees(&GradingClass::free(vec![0]), &SignPattern::new(vec![0]))
            .unwrap_err();
        assert!(matches!(err, GradingError::UnboundedRegion { .. }));
    }

    #[test]
    fn torsion_is_carried() {
        // P^2 / (Z/3): rays (1,0), (0,1), (-1,-1) in a coarser lattice
        // realized via rays (1,0),(1,3),(-2,-3)
        let fan = crate::fan::Fan::new(
            2,
            vec![vec![1, 0], vec![1, 3], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let g = GradingGroup::new(&fan).unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[3]);
        for m in [[1, 0], [0, 1]] {
            let a = g.character_divisor(&m).unwrap();
            assert_eq!(g.degree_of(&a).unwrap(), g.zero_class());
        }
        // sections round-trip through the degree map
        for a in [[1, 0, 0], [0, 1, 0], [2, 0, 1]] {
            let c = g.degree_of(&a).unwrap();
            assert_eq!(g.degree_of(&g.section(&c).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn change_of_basis_identity() {
        let g = p2();
        assert_eq!(
            g.change_of_basis_to(&[vec![1], vec![1], vec![1]]),
            Some(vec![vec![1]])
        );
        assert_eq!(
            g.change_of_basis_to(&[vec![-1], vec![-1], vec![-1]]),
            Some(vec![vec![-1]])
        );
        assert_eq!(g.change_of_basis_to(&[vec![2], vec![2], vec![2]]), None);
        assert_eq!(
            g.class_in_basis(&[vec![-1]], &[3]),
            Some(GradingClass::free(vec![-3]))
        );
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
