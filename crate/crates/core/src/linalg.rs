//! Exact linear algebra: dense rational elimination, integer Smith normal
//! form, and sparse column reduction for large 0/±1 matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::GradingError;
use crate::poly::Coeff;

/// Rank of a dense rational matrix given by rows. Consumes the rows.
pub fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].recip();
        for j in c..ncols {
            let v = &rows[r][j] * &inv;
            rows[r][j] = v;
        }
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Coeff>], b: &[Coeff]) -> Option<Vec<Coeff>> {
    let n = a.len();
    let mut m: Vec<Vec<Coeff>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of the right null space of a dense rational matrix given by rows.
pub fn nullspace(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..ncols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Coeff::zero(); ncols];
            v[f] = Coeff::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a small integer matrix.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(
        rows.iter()
            .map(|r| r.iter().map(|&v| crate::poly::coeff(v)).collect())
            .collect(),
    )
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Smith normal form `U A V = D` of an integer matrix, with `U^{-1}` kept
/// so that cokernel sections can be lifted back.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next.
    pub diagonal: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn ck(v: Option<i64>) -> Result<i64, GradingError> {
    v.ok_or(GradingError::Overflow)
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm, GradingError> {
    let n = a.len();
    let d = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(n);
    let mut u_inv = identity(n);
    let mut v = identity(d);

    // row_i -= q * row_t, mirrored on U and U^{-1}
    fn row_axpy(
        m: &mut [Vec<i64>],
        u: &mut [Vec<i64>],
        u_inv: &mut [Vec<i64>],
        i: usize,
        t: usize,
        q: i64,
    ) -> Result<(), GradingError> {
        for j in 0..m[i].len() {
            m[i][j] = ck(m[i][j].checked_sub(ck(q.checked_mul(m[t][j]))?))?;
        }
        for j in 0..u[i].len() {
            u[i][j] = ck(u[i][j].checked_sub(ck(q.checked_mul(u[t][j]))?))?;
        }
        for row in u_inv.iter_mut() {
            row[t] = ck(row[t].checked_add(ck(q.checked_mul(row[i]))?))?;
        }
        Ok(())
    }

    fn col_axpy(
        m: &mut [Vec<i64>],
        v: &mut [Vec<i64>],
        j: usize,
        t: usize,
        q: i64,
    ) -> Result<(), GradingError> {
        for row in m.iter_mut() {
            row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
        }
        for row in v.iter_mut() {
            row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
        }
        Ok(())
    }

    for t in 0..n.min(d) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..d {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                m.swap(bi, t);
                u.swap(bi, t);
                for row in u_inv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in m.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let p = m[t][t];
            let mut clean = true;
            for i in (t + 1)..n {
                let q = Integer::div_floor(&m[i][t], &p);
                if q != 0 {
                    row_axpy(&mut m, &mut u, &mut u_inv, i, t, q)?;
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..d {
                let q = Integer::div_floor(&m[t][j], &p);
                if q != 0 {
                    col_axpy(&mut m, &mut v, j, t, q)?;
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..n).find(|&i| (t + 1..d).any(|j| m[i][j] % p != 0));
            match offending {
                Some(i) => row_axpy(&mut m, &mut u, &mut u_inv, t, i, -1)?,
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    let diagonal = (0..n.min(d)).map(|i| m[i][i]).collect();
    Ok(SmithForm {
        diagonal,
        u,
        u_inv,
        v,
    })
}

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

/// Row-style Hermite normal form of an integer matrix: returns `(H, T)` with
/// `H = T M`, `T` unimodular, `H` in reduced echelon form with positive pivots.
pub fn hermite_rows(mat: &[Vec<i64>]) -> Result<(IntMatrix, IntMatrix), GradingError> {
    let r = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut h = mat.to_vec();
    let mut t = identity(r);
    let sub = |h: &mut Vec<Vec<i64>>,
               t: &mut Vec<Vec<i64>>,
               i: usize,
               k: usize,
               q: i64|
     -> Result<(), GradingError> {
        for j in 0..ncols {
            h[i][j] = ck(h[i][j].checked_sub(ck(q.checked_mul(h[k][j]))?))?;
        }
        for j in 0..r {
            t[i][j] = ck(t[i][j].checked_sub(ck(q.checked_mul(t[k][j]))?))?;
        }
        Ok(())
    };
    let mut row = 0;
    for c in 0..ncols {
        if row == r {
            break;
        }
        loop {
            let nz: Vec<usize> = (row..r).filter(|&i| h[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(best, row);
            t.swap(best, row);
            let mut done = true;
            for i in (row + 1)..r {
                let q = Integer::div_floor(&h[i][c], &h[row][c]);
                if q != 0 {
                    sub(&mut h, &mut t, i, row, q)?;
                }
                if h[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row][c] == 0 {
            continue;
        }
        if h[row][c] < 0 {
            for x in h[row].iter_mut() {
                *x = -*x;
            }
            for x in t[row].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..row {
            let q = Integer::div_floor(&h[i][c], &h[row][c]);
            if q != 0 {
                sub(&mut h, &mut t, i, row, q)?;
            }
        }
        row += 1;
    }
    Ok((h, t))
}

/// Backend for sparse rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankBackend {
    /// Fraction-free elimination over the integers (exact over Q).
    Exact,
    /// Elimination modulo a prime; agrees with the rational rank with high
    /// probability only.
    ModPrime(u64),
}

/// Sparse column in increasing row order.
pub type SparseColumn = Vec<(usize, i64)>;

struct Overflow;

trait ColumnRing {
    type V: Clone;
    fn lift(&self, v: i64) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
    /// Eliminates the pivot entry of `target` using `src` (same low row).
    fn eliminate(
        &self,
        target: &[(usize, Self::V)],
        src: &[(usize, Self::V)],
    ) -> Result<Vec<(usize, Self::V)>, Overflow>;
}

struct SmallInt;

impl ColumnRing for SmallInt {
    type V = i64;

    fn lift(&self, v: i64) -> i64 {
        v
    }

    fn is_zero(&self, v: &i64) -> bool {
        *v == 0
    }

    fn eliminate(
        &self,
        target: &[(usize, i64)],
        src: &[(usize, i64)],
    ) -> Result<Vec<(usize, i64)>, Overflow> {
        let a = src.last().unwrap().1;
        let b = target.last().unwrap().1;
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        // a * target - b * src
        let out = merge(
            target,
            src,
            |x| x.checked_mul(a).ok_or(Overflow),
            |y| y.checked_mul(b).ok_or(Overflow),
            |x, y| x.checked_sub(y).ok_or(Overflow),
            |x| x.checked_neg().ok_or(Overflow),
        )?;
        Ok(normalize_int(
            out,
            |v| *v == 0,
            |vs| {
                let g = vs.iter().fold(0i64, |g, x| g.gcd(x));
                if g > 1 {
                    vs.iter_mut().for_each(|x| *x /= g);
                }
            },
        ))
    }
}

struct Big;

impl ColumnRing for Big {
    type V = BigInt;

    fn lift(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn is_zero(&self, v: &BigInt) -> bool {
        v.is_zero()
    }

    fn eliminate(
        &self,
        target: &[(usize, BigInt)],
        src: &[(usize, BigInt)],
    ) -> Result<Vec<(usize, BigInt)>, Overflow> {
        let a = &src.last().unwrap().1;
        let b = &target.last().unwrap().1;
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let out = merge(
            target,
            src,
            |x| Ok(x * &a),
            |y| Ok(y * &b),
            |x, y| Ok(x - y),
            |x| Ok(-x),
        )?;
        Ok(normalize_int(out, BigInt::is_zero, |vs| {
            let g = vs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::one() {
                vs.iter_mut().for_each(|x| *x = &*x / &g);
            }
        }))
    }
}

struct ModP(u64);

impl ModP {
    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let p = self.0;
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, p);
            }
            base = mulmod(base, base, p);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl ColumnRing for ModP {
    type V = u64;

    fn lift(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    fn is_zero(&self, v: &u64) -> bool {
        *v == 0
    }

    fn eliminate(
        &self,
        target: &[(usize, u64)],
        src: &[(usize, u64)],
    ) -> Result<Vec<(usize, u64)>, Overflow> {
        let p = self.0;
        let f = mulmod(target.last().unwrap().1, self.inv(src.last().unwrap().1), p);
        let out = merge(
            target,
            src,
            |x| Ok(*x),
            |y| Ok(mulmod(*y, f, p)),
            |x, y| Ok((x + p - y) % p),
            |x| Ok((p - x) % p),
        )?;
        Ok(out.into_iter().filter(|(_, v)| *v != 0).collect())
    }
}

fn normalize_int<V>(
    col: Vec<(usize, V)>,
    is_zero: impl Fn(&V) -> bool,
    reduce: impl Fn(&mut Vec<V>),
) -> Vec<(usize, V)> {
    let (rows, mut vals): (Vec<usize>, Vec<V>) =
        col.into_iter().filter(|(_, v)| !is_zero(v)).unzip();
    reduce(&mut vals);
    rows.into_iter().zip(vals).collect()
}

/// Sparse merge computing `fa(target) - fb(src)` row by row.
fn merge<V: Clone>(
    target: &[(usize, V)],
    src: &[(usize, V)],
    fa: impl Fn(&V) -> Result<V, Overflow>,
    fb: impl Fn(&V) -> Result<V, Overflow>,
    sub: impl Fn(V, V) -> Result<V, Overflow>,
    neg: impl Fn(V) -> Result<V, Overflow>,
) -> Result<Vec<(usize, V)>, Overflow> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ri = target.get(i).map_or(usize::MAX, |e| e.0);
        let rj = src.get(j).map_or(usize::MAX, |e| e.0);
        match ri.cmp(&rj) {
            std::cmp::Ordering::Less => {
                out.push((ri, fa(&target[i].1)?));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((rj, neg(fb(&src[j].1)?)?));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((ri, sub(fa(&target[i].1)?, fb(&src[j].1)?)?));
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

/// Result of a low-pivot column reduction.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    pub rank: usize,
    /// Pivot rows of the nonzero reduced columns.
    pub pivot_rows: Vec<usize>,
}

fn reduce_with<R: ColumnRing>(
    ring: &R,
    cols: &[SparseColumn],
    skip: &dyn Fn(usize) -> bool,
) -> Result<Reduction, Overflow> {
    let mut reduced: Vec<Vec<(usize, R::V)>> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut out = Reduction::default();
    for (j, col) in cols.iter().enumerate() {
        if skip(j) {
            continue;
        }
        let mut c: Vec<(usize, R::V)> = col
            .iter()
            .map(|&(r, v)| (r, ring.lift(v)))
            .filter(|(_, v)| !ring.is_zero(v))
            .collect();
        while let Some(&(low, _)) = c.last() {
            match pivot_of.get(&low) {
                Some(&k) => c = ring.eliminate(&c, &reduced[k])?,
                None => break,
            }
        }
        if let Some(&(low, _)) = c.last() {
            pivot_of.insert(low, reduced.len());
            out.pivot_rows.push(low);
            reduced.push(c);
            out.rank += 1;
        }
    }
    Ok(out)
}

/// Column-reduces a sparse matrix (columns with increasing row indices) and
/// returns its rank and pivot rows. Columns for which `skip` holds are
/// treated as known to reduce to zero.
pub fn reduce_sparse(
    cols: &[SparseColumn],
    backend: RankBackend,
    skip: &dyn Fn(usize) -> bool,
) -> Reduction {
    match backend {
        RankBackend::Exact => match reduce_with(&SmallInt, cols, skip) {
            Ok(r) => r,
            Err(Overflow) => match reduce_with(&Big, cols, skip) {
                Ok(r) => r,
                Err(Overflow) => unreachable!("big integers do not overflow"),
            },
        },
        RankBackend::ModPrime(p) => match reduce_with(&ModP(p), cols, skip) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("modular arithmetic does not overflow"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let k = b.len();
        let m = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..m)
                    .map(|j| (0..k).map(|t| row[t] * b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn dense_rank() {
        let rows = vec![
            vec![coeff(1), coeff(2), coeff(3)],
            vec![coeff(2), coeff(4), coeff(6)],
            vec![coeff(0), coeff(1), coeff(1)],
        ];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn smith_form_of_p2_rays() {
        let a = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diagonal, vec![1, 1]);
        let uav = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(uav, vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(3));
    }

    #[test]
    fn smith_form_with_torsion() {
        let a = vec![vec![2, 4], vec![6, 8]];
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diagonal, vec![2, 4]);
        let uav = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(uav, vec![vec![2, 0], vec![0, 4]]);
        assert_eq!(mat_mul(&s.u_inv, &s.u), identity(2));
    }

    #[test]
    fn hermite_is_unimodular_transform() {
        let m = vec![vec![-1, -1, -1]];
        let (h, t) = hermite_rows(&m).unwrap();
        assert_eq!(h, vec![vec![1, 1, 1]]);
        assert_eq!(mat_mul(&t, &m), h);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        // boundary-like matrix of a triangle's edges -> vertices, rank 2
        let cols: Vec<SparseColumn> = vec![
            vec![(0, -1), (1, 1)],
            vec![(0, -1), (2, 1)],
            vec![(1, -1), (2, 1)],
        ];
        for backend in [RankBackend::Exact, RankBackend::ModPrime(2_147_483_647)] {
            assert_eq!(reduce_sparse(&cols, backend, &|_| false).rank, 2);
        }
        let cols: Vec<SparseColumn> =
            vec![vec![(0, 2), (1, 3)], vec![(0, 4), (1, 6)], vec![(1, 5)]];
        assert_eq!(reduce_sparse(&cols, RankBackend::Exact, &|_| false).rank, 2);
    }

    #[test]
    fn exact_reduction_survives_large_entries() {
        let big = i64::MAX / 3;
        let cols: Vec<SparseColumn> =
            vec![vec![(0, big), (1, big - 1)], vec![(0, big - 2), (1, big)]];
        assert_eq!(reduce_sparse(&cols, RankBackend::Exact, &|_| false).rank, 2);
    }
}
