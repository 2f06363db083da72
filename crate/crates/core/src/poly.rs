//! Exact multivariate polynomials over the rationals and vectors of them.
//!
//! The ring is `Q[x_1, ..., x_n]`; every graded dimension over `C` agrees with
//! the one computed here. Monomials are dense exponent vectors, polynomials
//! are canonical sparse maps with no zero coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Scalar field of every computation.
pub type Coeff = BigRational;

/// Degree vector in `Z^n`.
pub type Degree = Vec<i64>;

pub(crate) fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The variable `x_i`, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Builds `x^a` from a nonnegative degree vector.
    pub fn from_degree(a: &[i64]) -> Option<Self> {
        a.iter()
            .map(|&e| u32::try_from(e).ok())
            .collect::<Option<Vec<_>>>()
            .map(Monomial::from_exponents)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn degree_vector(&self) -> Degree {
        self.exps.iter().map(|&e| e as i64).collect()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(b.checked_sub(*a)?);
        }
        Some(Monomial { exps })
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.exps.len() != other.exps.len() {
            return Err(PolyError::VariableMismatch(
                self.exps.len(),
                other.exps.len(),
            ));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Raises every exponent to the `m`-th multiple.
    pub fn pow(&self, m: u32) -> Result<Monomial, PolyError> {
        let exps = self
            .exps
            .iter()
            .map(|e| e.checked_mul(m).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable is larger
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        self.checked_mul(rhs).expect("monomial product overflow")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Coeff::one())
    }

    /// The variable `x_i`, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Adds `c * m` in place, keeping the representation canonical.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (k, a) in &self.terms {
            terms.insert(k.checked_mul(m)?, a.clone());
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// `self + c * m * other` in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Coeff, m: &Monomial) {
        for (k, a) in &other.terms {
            self.add_term(k * m, a * c);
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The `Z^n` degree shared by all terms, if the polynomial is a nonzero
    /// fine-homogeneous element (a scalar multiple of a monomial).
    pub fn fine_degree(&self) -> Option<Degree> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(first.degree_vector())
    }

    /// Degree under an arbitrary weight matrix (rows = grading coordinates),
    /// if every term has the same weight.
    pub fn weighted_degree(&self, weights: &[Vec<i64>]) -> Option<Degree> {
        let mut out: Option<Degree> = None;
        for m in self.terms.keys() {
            let d: Degree = weights
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(m.exponents())
                        .map(|(w, &e)| w * e as i64)
                        .sum()
                })
                .collect();
            match &out {
                None => out = Some(d),
                Some(prev) if *prev != d => return None,
                _ => {}
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial product overflow")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An element of the free module `R^r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModuleElement {
    entries: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        FreeModuleElement { entries }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        FreeModuleElement {
            entries: vec![Polynomial::zero(nvars); rank],
        }
    }

    /// The canonical basis vector `e_i`, 0-based.
    pub fn basis(rank: usize, nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.entries[i] = Polynomial::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn entries_mut(&mut self) -> &mut [Polynomial] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_rank(other)?;
        Ok(FreeModuleElement {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_rank(other)?;
        Ok(FreeModuleElement {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        FreeModuleElement {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        FreeModuleElement {
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self, PolyError> {
        Ok(FreeModuleElement {
            entries: self
                .entries
                .iter()
                .map(|e| e.mul_monomial(m))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Keeps the first `k` components.
    pub fn truncate(&self, k: usize) -> Self {
        FreeModuleElement {
            entries: self.entries[..k].to_vec(),
        }
    }

    /// Fine `Z^n` degree of a homogeneous element whose basis vector `e_j`
    /// sits in degree `shifts[j]`; `None` for zero or inhomogeneous elements.
    pub fn fine_degree(&self, shifts: &[Degree]) -> Option<Degree> {
        let mut out: Option<Degree> = None;
        for (p, s) in self.entries.iter().zip(shifts) {
            for m in p.terms.keys() {
                let d: Degree = m
                    .exponents()
                    .iter()
                    .zip(s)
                    .map(|(&e, &t)| e as i64 + t)
                    .collect();
                match &out {
                    None => out = Some(d),
                    Some(prev) if *prev != d => return None,
                    _ => {}
                }
            }
        }
        out
    }

    /// `sum_j self_j * cols[j]` for a matrix given by its columns.
    pub fn combine(
        coeffs: &[Polynomial],
        cols: &[FreeModuleElement],
        rank: usize,
        nvars: usize,
    ) -> Self {
        let mut out = FreeModuleElement::zero(rank, nvars);
        for (c, col) in coeffs.iter().zip(cols) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.entries.iter_mut().zip(&col.entries) {
                if !e.is_zero() {
                    *o = &*o + &(c * e);
                }
            }
        }
        out
    }

    fn check_rank(&self, other: &Self) -> Result<(), PolyError> {
        if self.rank() != other.rank() {
            Err(PolyError::RankMismatch(self.rank(), other.rank()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Parses `x1^2*x2 - 3/2*x3` style text over `nvars` variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    let mut out = Polynomial::zero(nvars);
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut i = 0;
    let mut terms = Vec::new();
    while i <= bytes.len() {
        let at_split = i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
        if at_split {
            terms.push(&s[start..i]);
            start = i;
        }
        i += 1;
    }
    for t in terms {
        let (m, c) = parse_term(t, nvars)?;
        out.add_term(m, c);
    }
    Ok(out)
}

fn parse_term(t: &str, nvars: usize) -> Result<(Monomial, Coeff), PolyError> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1, &t[1..]),
        Some(b'+') => (1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return Err(PolyError::Parse(format!("dangling sign in '{t}'")));
    }
    let mut c = coeff(sign);
    let mut exps = vec![0u32; nvars];
    for factor in body.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, e) = match var.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad(factor))?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad(factor))?;
            if idx == 0 || idx > nvars {
                return Err(PolyError::Parse(format!(
                    "variable x{idx} outside x1..x{nvars}"
                )));
            }
            exps[idx - 1] = exps[idx - 1]
                .checked_add(e)
                .ok_or(PolyError::ExponentOverflow)?;
        } else {
            c *= parse_rational(factor)?;
        }
    }
    Ok((Monomial::from_exponents(exps), c))
}

fn parse_rational(s: &str) -> Result<Coeff, PolyError> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad(s))?;
    let den: BigInt = den.parse().map_err(|_| bad(s))?;
    if den.is_zero() {
        return Err(PolyError::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

fn bad(s: &str) -> PolyError {
    PolyError::Parse(format!("cannot parse factor '{s}'"))
}
