//! Gröbner bases of submodules of free modules `R^r`, with transformation
//! matrices, syzygies and kernels of maps onto quotient modules.
//!
//! Module orders are position-over-term: a term in a lower component is
//! always larger, ties are broken by the monomial order.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use num_traits::{One, Zero};

use crate::error::PolyError;
use crate::poly::{Coeff, FreeModuleElement, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
        }
    }

    /// Compares module terms `a e_i` and `b e_j`.
    pub fn cmp_terms(&self, (i, a): (usize, &Monomial), (j, b): (usize, &Monomial)) -> Ordering {
        j.cmp(&i).then_with(|| self.cmp_monomials(a, b))
    }

    /// Leading term `(position, monomial, coefficient)` of a nonzero element.
    pub fn leading_term(&self, f: &FreeModuleElement) -> Option<(usize, Monomial, Coeff)> {
        let (pos, p) = f.entries().iter().enumerate().find(|(_, p)| !p.is_zero())?;
        let (m, c) = p.terms().max_by(|x, y| self.cmp_monomials(x.0, y.0))?;
        Some((pos, m.clone(), c.clone()))
    }
}

/// Shape of a free module `R^rank` over `Q[x_1..x_nvars]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    pub rank: usize,
    pub nvars: usize,
}

impl Space {
    pub fn new(rank: usize, nvars: usize) -> Self {
        Space { rank, nvars }
    }

    fn of(gens: &[FreeModuleElement]) -> Result<Space, PolyError> {
        let first = gens
            .first()
            .ok_or_else(|| PolyError::Parse("empty generator list".into()))?;
        let nvars = first
            .entries()
            .first()
            .map(Polynomial::nvars)
            .ok_or_else(|| PolyError::Parse("generators of rank 0".into()))?;
        Ok(Space {
            rank: first.rank(),
            nvars,
        })
    }

    fn check(&self, gens: &[FreeModuleElement]) -> Result<(), PolyError> {
        for g in gens {
            if g.rank() != self.rank {
                return Err(PolyError::RankMismatch(self.rank, g.rank()));
            }
            if let Some(p) = g.entries().iter().find(|p| p.nvars() != self.nvars) {
                return Err(PolyError::VariableMismatch(self.nvars, p.nvars()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Term {
    pos: usize,
    mono: Monomial,
    coef: Coeff,
}

/// Sparse module element with terms in ascending order (leading term last).
#[derive(Clone, Debug, Default)]
struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    fn from_element(f: &FreeModuleElement, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = f
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term {
                    pos,
                    mono: m.clone(),
                    coef: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| order.cmp_terms((a.pos, &a.mono), (b.pos, &b.mono)));
        Vector { terms }
    }

    fn to_element(&self, space: Space) -> FreeModuleElement {
        let mut out = FreeModuleElement::zero(space.rank, space.nvars);
        for t in &self.terms {
            out.entries_mut()[t.pos].add_term(t.mono.clone(), t.coef.clone());
        }
        out
    }

    fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&mut self, c: &Coeff) {
        for t in &mut self.terms {
            t.coef *= c;
        }
    }

    /// `self - c * m * g`, merging two ordered term lists.
    fn sub_scaled(&self, c: &Coeff, m: &Monomial, g: &Vector, order: MonomialOrder) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|t| Term {
                pos: t.pos,
                mono: &t.mono * m,
                coef: -(&t.coef * c),
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().cloned().expect("peeked")),
                (None, Some(_)) => out.push(b.next().expect("peeked")),
                (Some(x), Some(y)) => match order.cmp_terms((x.pos, &x.mono), (y.pos, &y.mono)) {
                    Ordering::Less => out.push(a.next().cloned().expect("peeked")),
                    Ordering::Greater => out.push(b.next().expect("peeked")),
                    Ordering::Equal => {
                        let x = a.next().expect("peeked");
                        let y = b.next().expect("peeked");
                        let coef = &x.coef + &y.coef;
                        if !coef.is_zero() {
                            out.push(Term {
                                pos: x.pos,
                                mono: x.mono.clone(),
                                coef,
                            });
                        }
                    }
                },
            }
        }
        Vector { terms: out }
    }
}

/// Quotients `q_k` and remainder `r` with `f = sum_k q_k g_k + r`.
struct Division {
    quotients: Vec<Polynomial>,
    remainder: Vector,
}

fn find_divisor(basis: &[Vector], pos: usize, mono: &Monomial) -> Option<usize> {
    basis.iter().position(|g| {
        g.lead()
            .is_some_and(|l| l.pos == pos && l.mono.divides(mono))
    })
}

/// Full reduction of `f` modulo `basis` (all of whose leading coefficients
/// must be 1).
fn reduce(f: Vector, basis: &[Vector], nvars: usize, order: MonomialOrder) -> Division {
    let mut quotients = vec![Polynomial::zero(nvars); basis.len()];
    let mut p = f;
    let mut rem_rev: Vec<Term> = Vec::new();
    while let Some(lt) = p.lead().cloned() {
        match find_divisor(basis, lt.pos, &lt.mono) {
            Some(k) => {
                let lead_k = basis[k].lead().expect("nonzero basis element");
                let m = lead_k.mono.quotient_into(&lt.mono).expect("divides");
                let c = &lt.coef / &lead_k.coef;
                p = p.sub_scaled(&c, &m, &basis[k], order);
                quotients[k].add_term(m, c);
            }
            None => {
                p.terms.pop();
                rem_rev.push(lt);
            }
        }
    }
    rem_rev.reverse();
    Division {
        quotients,
        remainder: Vector { terms: rem_rev },
    }
}

/// Division of `f` by the list `g`: `f = sum q_i g_i + r` with no term of
/// `r` divisible by a leading term of `g` in the same position.
pub fn divide(
    f: &FreeModuleElement,
    g: &[FreeModuleElement],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, FreeModuleElement), PolyError> {
    let space = Space::of(std::slice::from_ref(f))?;
    space.check(g)?;
    // normalise divisors to monic form, then rescale the quotients
    let mut basis = Vec::with_capacity(g.len());
    let mut leads = Vec::with_capacity(g.len());
    for gi in g {
        let mut v = Vector::from_element(gi, order);
        let lc = v.lead().map_or_else(Coeff::one, |t| t.coef.clone());
        v.scale(&lc.recip());
        basis.push(v);
        leads.push(lc);
    }
    let div = reduce(Vector::from_element(f, order), &basis, space.nvars, order);
    let quotients = div
        .quotients
        .iter()
        .zip(&leads)
        .map(|(q, lc)| q.scale(&lc.recip()))
        .collect();
    Ok((quotients, div.remainder.to_element(space)))
}

/// A Gröbner basis `G` of the submodule generated by `F`, with `F = G A`
/// and `G = F B`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    space: Space,
    order: MonomialOrder,
    generators: Vec<FreeModuleElement>,
    vectors: Vec<Vector>,
    /// `a[i][k]`: coefficient of `g_k` in `f_i`.
    a: Vec<Vec<Polynomial>>,
    /// `b[k][i]`: coefficient of `f_i` in `g_k`.
    b: Vec<Vec<Polynomial>>,
    input_len: usize,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Matrix `A` (|G| x |F|) with `F = G A`.
    pub fn a_matrix(&self) -> Vec<Vec<Polynomial>> {
        (0..self.generators.len())
            .map(|k| self.a.iter().map(|col| col[k].clone()).collect())
            .collect()
    }

    /// Matrix `B` (|F| x |G|) with `G = F B`.
    pub fn b_matrix(&self) -> Vec<Vec<Polynomial>> {
        (0..self.input_len)
            .map(|i| self.b.iter().map(|col| col[i].clone()).collect())
            .collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &FreeModuleElement) -> FreeModuleElement {
        reduce(
            Vector::from_element(f, self.order),
            &self.vectors,
            self.space.nvars,
            self.order,
        )
        .remainder
        .to_element(self.space)
    }

    pub fn contains(&self, f: &FreeModuleElement) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `S(g_i, g_j)` for basis elements sharing a leading position.
    pub fn s_vector(&self, i: usize, j: usize) -> Option<FreeModuleElement> {
        s_parts(&self.vectors[i], &self.vectors[j], self.order)
            .map(|(s, _, _)| s.to_element(self.space))
    }
}

/// `S(g, h) = (L / lm g) g - (L / lm h) h` for monic `g, h` with equal
/// leading positions, together with the two multipliers.
fn s_parts(g: &Vector, h: &Vector, order: MonomialOrder) -> Option<(Vector, Monomial, Monomial)> {
    let (lg, lh) = (g.lead()?, h.lead()?);
    if lg.pos != lh.pos {
        return None;
    }
    let l = lg.mono.lcm(&lh.mono);
    let mg = lg.mono.quotient_into(&l).expect("lcm");
    let mh = lh.mono.quotient_into(&l).expect("lcm");
    let lifted = Vector::default().sub_scaled(&-Coeff::one(), &mg, g, order);
    Some((lifted.sub_scaled(&Coeff::one(), &mh, h, order), mg, mh))
}

/// `sum_k c_k * cols[k]` for polynomial coefficient vectors.
fn combine_columns(
    coeffs: &[Polynomial],
    cols: &[Vec<Polynomial>],
    len: usize,
    nvars: usize,
) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(nvars); len];
    for (c, col) in coeffs.iter().zip(cols) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(col) {
            if !e.is_zero() {
                *o = &*o + &(c * e);
            }
        }
    }
    out
}

fn pair_degree(g: &[Vector], i: usize, j: usize) -> u64 {
    let (a, b) = (g[i].lead().expect("nonzero"), g[j].lead().expect("nonzero"));
    a.mono.lcm(&b.mono).total_degree()
}

/// Buchberger's algorithm with transformation matrices, normal selection
/// strategy and the coprime (rank one only) and chain criteria. The result
/// is reduced: minimal leading terms, monic, tails fully reduced.
pub fn buchberger(
    gens: &[FreeModuleElement],
    order: MonomialOrder,
) -> Result<GroebnerBasis, PolyError> {
    buchberger_in(Space::of(gens)?, gens, order)
}

pub fn buchberger_in(
    space: Space,
    gens: &[FreeModuleElement],
    order: MonomialOrder,
) -> Result<GroebnerBasis, PolyError> {
    space.check(gens)?;
    let nvars = space.nvars;
    let nf = gens.len();
    let mut basis: Vec<Vector> = Vec::new();
    let mut bcols: Vec<Vec<Polynomial>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let insert = |v: Vector,
                  bcol: Vec<Polynomial>,
                  basis: &mut Vec<Vector>,
                  bcols: &mut Vec<Vec<Polynomial>>,
                  heap: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                  pending: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        let pos = v.lead().expect("nonzero").pos;
        basis.push(v);
        bcols.push(bcol);
        for i in 0..k {
            if basis[i].lead().is_some_and(|l| l.pos == pos) {
                heap.push(Reverse((pair_degree(basis, i, k), i, k)));
                pending.insert((i, k));
            }
        }
    };

    for (i, f) in gens.iter().enumerate() {
        let v = Vector::from_element(f, order);
        let div = reduce(v, &basis, nvars, order);
        if div.remainder.is_zero() {
            continue;
        }
        let mut bcol = vec![Polynomial::zero(nvars); nf];
        bcol[i] = Polynomial::one(nvars);
        let adj = combine_columns(&div.quotients, &bcols, nf, nvars);
        let mut bcol: Vec<Polynomial> = bcol.iter().zip(&adj).map(|(x, y)| x - y).collect();
        let mut rem = div.remainder;
        let lc = rem.lead().expect("nonzero").coef.recip();
        rem.scale(&lc);
        bcol = bcol.iter().map(|p| p.scale(&lc)).collect();
        insert(rem, bcol, &mut basis, &mut bcols, &mut heap, &mut pending);
    }

    while let Some(Reverse((_, i, j))) = heap.pop() {
        pending.remove(&(i, j));
        let (li, lj) = (
            basis[i].lead().expect("nonzero"),
            basis[j].lead().expect("nonzero"),
        );
        if space.rank == 1 && li.mono.is_coprime(&lj.mono) {
            continue;
        }
        let lcm = li.mono.lcm(&lj.mono);
        let pos = li.pos;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k]
                    .lead()
                    .is_some_and(|l| l.pos == pos && l.mono.divides(&lcm))
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let (s, mi, mj) = s_parts(&basis[i], &basis[j], order).expect("same position");
        let div = reduce(s, &basis, nvars, order);
        if div.remainder.is_zero() {
            continue;
        }
        let mut bcol: Vec<Polynomial> = (0..nf)
            .map(|t| {
                &(&bcols[i][t] * &Polynomial::monomial(mi.clone()))
                    - &(&bcols[j][t] * &Polynomial::monomial(mj.clone()))
            })
            .collect();
        let adj = combine_columns(&div.quotients, &bcols, nf, nvars);
        bcol = bcol.iter().zip(&adj).map(|(x, y)| x - y).collect();
        let mut rem = div.remainder;
        let lc = rem.lead().expect("nonzero").coef.recip();
        rem.scale(&lc);
        bcol = bcol.iter().map(|p| p.scale(&lc)).collect();
        insert(rem, bcol, &mut basis, &mut bcols, &mut heap, &mut pending);
    }

    // minimalise: drop elements whose leading term is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let lk = basis[k].lead().expect("nonzero");
        let redundant = (0..basis.len()).any(|t| {
            let lt = basis[t].lead().expect("nonzero");
            t != k && lt.pos == lk.pos && lt.mono.divides(&lk.mono) && (lt.mono != lk.mono || t < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let mut vectors: Vec<Vector> = keep.iter().map(|&k| basis[k].clone()).collect();
    let mut b: Vec<Vec<Polynomial>> = keep.iter().map(|&k| bcols[k].clone()).collect();

    // tail reduction
    for k in 0..vectors.len() {
        let mut v = vectors[k].clone();
        let lead = v.terms.pop().expect("nonzero");
        let others: Vec<Vector> = vectors
            .iter()
            .enumerate()
            .map(|(t, w)| if t == k { Vector::default() } else { w.clone() })
            .collect();
        let div = reduce(v, &others, nvars, order);
        if div.quotients.iter().all(Polynomial::is_zero) {
            continue;
        }
        let adj = combine_columns(&div.quotients, &b, nf, nvars);
        b[k] = b[k].iter().zip(&adj).map(|(x, y)| x - y).collect();
        let mut tail = div.remainder;
        tail.terms.push(lead);
        vectors[k] = tail;
    }

    // sort by leading term, largest first, for a canonical output
    let mut idx: Vec<usize> = (0..vectors.len()).collect();
    idx.sort_by(|&x, &y| {
        let (lx, ly) = (
            vectors[x].lead().expect("nonzero"),
            vectors[y].lead().expect("nonzero"),
        );
        order.cmp_terms((ly.pos, &ly.mono), (lx.pos, &lx.mono))
    });
    let vectors: Vec<Vector> = idx.iter().map(|&k| vectors[k].clone()).collect();
    let b: Vec<Vec<Polynomial>> = idx.iter().map(|&k| b[k].clone()).collect();

    let a: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|f| {
            let div = reduce(Vector::from_element(f, order), &vectors, nvars, order);
            debug_assert!(div.remainder.is_zero(), "input must reduce to zero");
            div.quotients
        })
        .collect();
    let generators = vectors.iter().map(|v| v.to_element(space)).collect();
    Ok(GroebnerBasis {
        space,
        order,
        generators,
        vectors,
        a,
        b,
        input_len: nf,
    })
}

/// Generators of the syzygy module of `gens` (Theorem F): the columns of
/// `1 - B A` together with `B s_ij` for every pair of basis elements with a
/// common leading position. Zero vectors and duplicates are dropped.
pub fn syzygy(gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>, PolyError> {
    syzygy_in(Space::of(gens)?, gens)
}

pub fn syzygy_in(
    space: Space,
    gens: &[FreeModuleElement],
) -> Result<Vec<FreeModuleElement>, PolyError> {
    let order = MonomialOrder::default();
    let gb = buchberger_in(space, gens, order)?;
    let nvars = space.nvars;
    let nf = gens.len();
    let mut out: Vec<FreeModuleElement> = Vec::new();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut push = |v: Vec<Polynomial>, out: &mut Vec<FreeModuleElement>| {
        let v = monic(FreeModuleElement::new(v), order);
        if !v.is_zero() && seen.insert(v.entries().iter().map(ToString::to_string).collect()) {
            out.push(v);
        }
    };
    for i in 0..nf {
        let ba = combine_columns(&gb.a[i], &gb.b, nf, nvars);
        let mut col: Vec<Polynomial> = ba.iter().map(|p| -p).collect();
        col[i] = &col[i] + &Polynomial::one(nvars);
        push(col, &mut out);
    }
    let g = &gb.vectors;
    for j in 0..g.len() {
        for i in 0..j {
            let Some((s, mi, mj)) = s_parts(&g[i], &g[j], order) else {
                continue;
            };
            let div = reduce(s, g, nvars, order);
            debug_assert!(
                div.remainder.is_zero(),
                "S-vector of a Gröbner basis reduces to zero"
            );
            let mut sij: Vec<Polynomial> = div.quotients.iter().map(|q| -q).collect();
            sij[i] = &sij[i] + &Polynomial::monomial(mi);
            sij[j] = &sij[j] - &Polynomial::monomial(mj);
            push(combine_columns(&sij, &gb.b, nf, nvars), &mut out);
        }
    }
    Ok(out)
}

/// Scales a nonzero element so that its leading coefficient is 1.
pub fn monic(v: FreeModuleElement, order: MonomialOrder) -> FreeModuleElement {
    match order.leading_term(&v) {
        Some((_, _, c)) if !c.is_one() => v.scale(&c.recip()),
        _ => v,
    }
}

/// Generators of the kernel of `R^p -> M / N`, `e_i -> f_i`, where `f` and
/// `n` live in a common free module.
pub fn kernel_of_quotient_map(
    f: &[FreeModuleElement],
    n: &[FreeModuleElement],
) -> Result<Vec<FreeModuleElement>, PolyError> {
    let all: Vec<FreeModuleElement> = f.iter().chain(n).cloned().collect();
    kernel_of_quotient_map_in(Space::of(&all)?, f, n)
}

pub fn kernel_of_quotient_map_in(
    space: Space,
    f: &[FreeModuleElement],
    n: &[FreeModuleElement],
) -> Result<Vec<FreeModuleElement>, PolyError> {
    let p = f.len();
    if p == 0 {
        return Ok(Vec::new());
    }
    if space.rank == 0 {
        // everything maps to zero
        return Ok((0..p)
            .map(|i| FreeModuleElement::basis(p, space.nvars, i))
            .collect());
    }
    let all: Vec<FreeModuleElement> = f.iter().chain(n).cloned().collect();
    let mut out: Vec<FreeModuleElement> = Vec::new();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    for s in syzygy_in(space, &all)? {
        let t = monic(s.truncate(p), MonomialOrder::default());
        if !t.is_zero() && seen.insert(t.entries().iter().map(ToString::to_string).collect()) {
            out.push(t);
        }
    }
    Ok(out)
}

/// `sum_k coeffs[k] * gens[k]`.
pub fn apply(coeffs: &[Polynomial], gens: &[FreeModuleElement], space: Space) -> FreeModuleElement {
    FreeModuleElement::combine(coeffs, gens, space.rank, space.nvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn el(nvars: usize, entries: &[&str]) -> FreeModuleElement {
        FreeModuleElement::new(
            entries
                .iter()
                .map(|s| parse_polynomial(s, nvars).unwrap())
                .collect(),
        )
    }

    fn p(nvars: usize, s: &str) -> Polynomial {
        parse_polynomial(s, nvars).unwrap()
    }

    #[test]
    fn divide_simple() {
        let (q, r) = divide(
            &el(2, &["x1^2+x1*x2"]),
            &[el(2, &["x1"])],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(q, vec![p(2, "x1+x2")]);
        assert!(r.is_zero());
        let (q, r) = divide(&el(2, &["x2"]), &[el(2, &["x1"])], MonomialOrder::Grevlex).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(r, el(2, &["x2"]));
    }

    #[test]
    fn divide_three_variables() {
        let g = [el(3, &["x1*x2"]), el(3, &["x2*x3"])];
        let (q, r) = divide(&el(3, &["x1*x2*x3"]), &g, MonomialOrder::Grevlex).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, vec![p(3, "x3"), Polynomial::zero(3)]);
    }

    #[test]
    fn divide_rescales_non_monic() {
        let (q, r) = divide(&el(1, &["x1^2"]), &[el(1, &["2*x1"])], MonomialOrder::Lex).unwrap();
        assert_eq!(q, vec![p(1, "1/2*x1")]);
        assert!(r.is_zero());
    }

    #[test]
    fn single_generator() {
        let gb = buchberger(&[el(1, &["x1"])], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.generators(), &[el(1, &["x1"])]);
        assert_eq!(gb.a_matrix(), vec![vec![Polynomial::one(1)]]);
        assert_eq!(gb.b_matrix(), vec![vec![Polynomial::one(1)]]);
    }

    #[test]
    fn monomial_generators_are_a_basis() {
        let gb = buchberger(
            &[el(3, &["x1*x2"]), el(3, &["x2*x3"])],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(gb.generators().len(), 2);
    }

    #[test]
    fn nontrivial_basis() {
        // <x^2 - y, x y - 1> needs new elements
        let f = [el(2, &["x1^2-x2"]), el(2, &["x1*x2-1"])];
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = buchberger(&f, order).unwrap();
            check_invariants(&f, &gb);
            assert!(gb.contains(&el(2, &["x2^2-x1"])));
            assert!(!gb.contains(&el(2, &["x1"])));
        }
    }

    fn check_invariants(f: &[FreeModuleElement], gb: &GroebnerBasis) {
        let g = gb.generators();
        for i in 0..g.len() {
            assert_eq!(gb.order().leading_term(&g[i]).unwrap().2, Coeff::one());
            for j in 0..i {
                if let Some(s) = gb.s_vector(j, i) {
                    assert!(gb.contains(&s));
                }
            }
        }
        let a = gb.a_matrix();
        let b = gb.b_matrix();
        for (i, fi) in f.iter().enumerate() {
            let coeffs: Vec<Polynomial> = a.iter().map(|row| row[i].clone()).collect();
            assert_eq!(&apply(&coeffs, g, gb.space()), fi);
        }
        for (k, gk) in g.iter().enumerate() {
            let coeffs: Vec<Polynomial> = b.iter().map(|row| row[k].clone()).collect();
            assert_eq!(&apply(&coeffs, f, gb.space()), gk);
        }
    }

    #[test]
    fn module_basis() {
        let f = [
            el(2, &["x1", "x2"]),
            el(2, &["x2", "x1"]),
            el(2, &["0", "x1*x2"]),
        ];
        let gb = buchberger(&f, MonomialOrder::Grevlex).unwrap();
        check_invariants(&f, &gb);
    }

    #[test]
    fn syzygies_of_pair() {
        let f = [el(3, &["x1*x2"]), el(3, &["x2*x3"])];
        let syz = syzygy(&f).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        assert!(s == &el(3, &["x3", "-x1"]) || s == &el(3, &["-x3", "x1"]));
    }

    #[test]
    fn syzygies_of_unit_vector_are_empty() {
        assert!(syzygy(&[el(1, &["x1"])]).unwrap().is_empty());
    }

    #[test]
    fn koszul_syzygies() {
        let f = [el(3, &["x1"]), el(3, &["x2"]), el(3, &["x3"])];
        let syz = syzygy(&f).unwrap();
        assert_eq!(syz.len(), 3);
        for s in &syz {
            assert!(apply(s.entries(), &f, Space::new(1, 3)).is_zero());
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_of_quotient_map(&[el(1, &["1"])], &[el(1, &["x1"])]).unwrap();
        assert_eq!(k, vec![el(1, &["x1"])]);
        let k = kernel_of_quotient_map(&[el(1, &["x1"])], &[el(1, &["x1^2"])]).unwrap();
        assert_eq!(k, vec![el(1, &["x1"])]);
        let k = kernel_of_quotient_map(&[el(2, &["x1"])], &[el(2, &["x2"])]).unwrap();
        assert_eq!(k, vec![el(2, &["x2"])]);
    }

    #[test]
    fn zero_generators_are_their_own_syzygies() {
        let f = [el(1, &["0"]), el(1, &["x1"])];
        let syz = syzygy(&f).unwrap();
        assert_eq!(syz, vec![el(1, &["1", "0"])]);
    }

    #[test]
    fn term_order_is_position_over_term() {
        let o = MonomialOrder::Grevlex;
        let one = Monomial::one(2);
        let x = Monomial::var(2, 0);
        assert_eq!(o.cmp_terms((0, &one), (1, &x)), Ordering::Greater);
        assert_eq!(o.cmp_terms((1, &x), (1, &one)), Ordering::Greater);
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let err = buchberger(
            &[el(1, &["x1"]), el(1, &["x1", "1"])],
            MonomialOrder::Grevlex,
        )
        .unwrap_err();
        assert_eq!(err, PolyError::RankMismatch(1, 2));
    }
}
