//! Finitely presented modules, free resolutions, Hom and Ext.
//!
//! A module is the cokernel of a relation matrix acting on `R^r`. When the
//! generators carry fine `Z^n` degrees every homogeneous vector has at most
//! one term per component, so graded pieces reduce to small linear algebra
//! over coefficient vectors; minimalization and Hilbert functions use this.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::error::ModuleError;
use crate::groebner::{self, MonomialOrder, Space};
use crate::linalg;
use crate::poly::{Coeff, Degree, FreeModuleElement, Polynomial};

/// An axis-aligned box of `Z^n` degrees, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl DegreeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box bounds must have equal length");
        DegreeBox { lo, hi }
    }

    /// `[-radius, radius]^n`.
    pub fn cube(n: usize, radius: i64) -> Self {
        DegreeBox {
            lo: vec![-radius; n],
            hi: vec![radius; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.dim()
            && a.iter()
                .zip(&self.lo)
                .zip(&self.hi)
                .all(|((x, l), h)| l <= x && x <= h)
    }

    /// Number of degrees in the box.
    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1).max(0) as usize)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All degrees in lexicographic order.
    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        let mut cur = if self.is_empty() {
            None
        } else {
            Some(self.lo.clone())
        };
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut i = next.len();
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                if next[i] < self.hi[i] {
                    next[i] += 1;
                    cur = Some(next);
                    break;
                }
                next[i] = self.lo[i];
            }
            Some(out)
        })
    }
}

/// Dimensions of graded pieces on a box; only nonzero values are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub domain: DegreeBox,
    pub values: BTreeMap<Degree, usize>,
}

impl HilbertFunction {
    pub fn zero(domain: DegreeBox) -> Self {
        HilbertFunction {
            domain,
            values: BTreeMap::new(),
        }
    }

    pub fn dim(&self, a: &[i64]) -> usize {
        self.values.get(a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise sum (direct sum of modules).
    pub fn add(&self, other: &HilbertFunction) -> HilbertFunction {
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            *values.entry(k.clone()).or_insert(0) += v;
        }
        HilbertFunction {
            domain: self.domain.clone(),
            values,
        }
    }
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The coefficient of the single term in each entry of a fine-homogeneous
/// vector.
pub(crate) fn coefficient_vector(v: &FreeModuleElement) -> Vec<Coeff> {
    v.entries()
        .iter()
        .map(|p| {
            p.terms()
                .next()
                .map_or_else(Coeff::zero, |(_, c)| c.clone())
        })
        .collect()
}

/// Keeps a minimal generating subset of homogeneous vectors in a free
/// module whose basis vectors have degrees `shifts`. Each vector is kept iff
/// it is not in the span of the previously kept ones in its own degree.
pub fn minimalize(
    vectors: &[FreeModuleElement],
    shifts: &[Degree],
) -> Result<Vec<FreeModuleElement>, ModuleError> {
    let mut items: Vec<(Degree, &FreeModuleElement)> = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let d = v.fine_degree(shifts).ok_or(ModuleError::Inhomogeneous(k))?;
        items.push((d, v));
    }
    items.sort_by_key(|(d, _)| d.iter().sum::<i64>());
    let mut kept: Vec<(Degree, Vec<Coeff>, &FreeModuleElement)> = Vec::new();
    for (d, v) in items {
        let c = coefficient_vector(v);
        let mut rows: Vec<Vec<Coeff>> = kept
            .iter()
            .filter(|(e, _, _)| leq(e, &d))
            .map(|(_, c, _)| c.clone())
            .collect();
        let before = linalg::rank(rows.clone());
        rows.push(c.clone());
        if linalg::rank(rows) > before {
            kept.push((d, c, v));
        }
    }
    Ok(kept.into_iter().map(|(_, _, v)| v.clone()).collect())
}

/// The cokernel of `relations` acting on `R^ambient_rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule {
    nvars: usize,
    ambient_rank: usize,
    relations: Vec<FreeModuleElement>,
    shifts: Option<Vec<Degree>>,
}

impl PresentedModule {
    pub fn new(
        nvars: usize,
        ambient_rank: usize,
        relations: Vec<FreeModuleElement>,
        shifts: Option<Vec<Degree>>,
    ) -> Result<Self, ModuleError> {
        for r in &relations {
            if r.rank() != ambient_rank {
                return Err(ModuleError::Poly(crate::error::PolyError::RankMismatch(
                    ambient_rank,
                    r.rank(),
                )));
            }
        }
        if let Some(s) = &shifts {
            if s.len() != ambient_rank || s.iter().any(|d| d.len() != nvars) {
                return Err(ModuleError::Invalid(
                    "generator shifts do not match the ambient module".into(),
                ));
            }
            for (k, r) in relations.iter().enumerate() {
                if !r.is_zero() && r.fine_degree(s).is_none() {
                    return Err(ModuleError::Inhomogeneous(k));
                }
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedModule {
            nvars,
            ambient_rank,
            relations,
            shifts,
        })
    }

    /// The free module `R^r` with generators in the given degrees.
    pub fn free(nvars: usize, shifts: Vec<Degree>) -> Self {
        PresentedModule {
            nvars,
            ambient_rank: shifts.len(),
            relations: Vec::new(),
            shifts: Some(shifts),
        }
    }

    /// `R / <gens>`; graded with generator in degree 0 when every generator
    /// is a monomial multiple of a scalar.
    pub fn quotient_ring(nvars: usize, gens: &[Polynomial]) -> Self {
        let relations: Vec<FreeModuleElement> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| FreeModuleElement::new(vec![g.clone()]))
            .collect();
        let graded = relations
            .iter()
            .all(|r| r.fine_degree(&[vec![0; nvars]]).is_some());
        PresentedModule {
            nvars,
            ambient_rank: 1,
            relations,
            shifts: graded.then(|| vec![vec![0; nvars]]),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &[FreeModuleElement] {
        &self.relations
    }

    pub fn shifts(&self) -> Option<&[Degree]> {
        self.shifts.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.shifts.is_some()
    }

    fn space(&self) -> Space {
        Space::new(self.ambient_rank, self.nvars)
    }

    /// Generator degrees moved by `delta` (the module `M(-delta)`).
    pub fn shifted(&self, delta: &[i64]) -> Result<Self, ModuleError> {
        let shifts = self.shifts.as_ref().ok_or(ModuleError::Ungraded)?;
        let shifts = shifts
            .iter()
            .map(|s| s.iter().zip(delta).map(|(a, b)| a + b).collect())
            .collect();
        Ok(PresentedModule {
            shifts: Some(shifts),
            ..self.clone()
        })
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<Self, ModuleError> {
        if self.nvars != other.nvars {
            return Err(ModuleError::Invalid(
                "direct sum of modules over different rings".into(),
            ));
        }
        let r = self.ambient_rank + other.ambient_rank;
        let pad = |v: &FreeModuleElement, before: usize| {
            let mut e = vec![Polynomial::zero(self.nvars); r];
            for (k, p) in v.entries().iter().enumerate() {
                e[before + k] = p.clone();
            }
            FreeModuleElement::new(e)
        };
        let relations = self
            .relations
            .iter()
            .map(|v| pad(v, 0))
            .chain(other.relations.iter().map(|v| pad(v, self.ambient_rank)))
            .collect();
        let shifts = match (&self.shifts, &other.shifts) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(PresentedModule {
            nvars: self.nvars,
            ambient_rank: r,
            relations,
            shifts,
        })
    }

    /// Whether the module is zero, decided by a Gröbner basis of the
    /// relations.
    pub fn is_zero(&self) -> Result<bool, ModuleError> {
        if self.ambient_rank == 0 {
            return Ok(true);
        }
        if self.relations.is_empty() {
            return Ok(false);
        }
        let gb = groebner::buchberger_in(self.space(), &self.relations, MonomialOrder::default())?;
        Ok((0..self.ambient_rank)
            .all(|j| gb.contains(&FreeModuleElement::basis(self.ambient_rank, self.nvars, j))))
    }

    /// Removes generators killed by relations with a unit entry, then drops
    /// redundant relations. The result presents an isomorphic module.
    pub fn pruned(&self) -> Result<Self, ModuleError> {
        let mut rank = self.ambient_rank;
        let mut rels: Vec<FreeModuleElement> = self.relations.clone();
        let mut shifts = self.shifts.clone();
        loop {
            let hit = rels.iter().enumerate().find_map(|(k, r)| {
                r.entries()
                    .iter()
                    .position(|p| !p.is_zero() && p.is_constant())
                    .map(|j| (k, j))
            });
            let Some((k, j)) = hit else { break };
            let pivot = rels.swap_remove(k);
            let c = pivot
                .entry(j)
                .coefficient(&crate::poly::Monomial::one(self.nvars));
            let inv = c.recip();
            rels = rels
                .into_iter()
                .map(|s| {
                    let f = s.entry(j).scale(&inv);
                    let t = if f.is_zero() {
                        s
                    } else {
                        s.checked_sub(&pivot.mul_poly(&f)).expect("equal ranks")
                    };
                    let mut e = t.into_entries();
                    e.remove(j);
                    FreeModuleElement::new(e)
                })
                .filter(|s| !s.is_zero())
                .collect();
            rank -= 1;
            if let Some(s) = shifts.as_mut() {
                s.remove(j);
            }
        }
        let rels = match &shifts {
            Some(s) => minimalize(&rels, s)?,
            None => dedup(rels),
        };
        Ok(PresentedModule {
            nvars: self.nvars,
            ambient_rank: rank,
            relations: rels,
            shifts,
        })
    }

    /// Degrees of the relations (graded presentations only).
    fn relation_degrees(&self) -> Result<Vec<Degree>, ModuleError> {
        let shifts = self.shifts.as_ref().ok_or(ModuleError::Ungraded)?;
        self.relations
            .iter()
            .enumerate()
            .map(|(k, r)| r.fine_degree(shifts).ok_or(ModuleError::Inhomogeneous(k)))
            .collect()
    }

    /// Dimension of each graded piece on the box: active generators minus
    /// the rank of the relations that land in that degree.
    pub fn hilbert_function_box(&self, domain: &DegreeBox) -> Result<HilbertFunction, ModuleError> {
        let shifts = self.shifts.as_ref().ok_or(ModuleError::Ungraded)?;
        if domain.dim() != self.nvars {
            return Err(ModuleError::Invalid(
                "box dimension differs from the number of variables".into(),
            ));
        }
        let rel_degrees = self.relation_degrees()?;
        let coeffs: Vec<Vec<Coeff>> = self.relations.iter().map(coefficient_vector).collect();
        let words = coeffs.len().div_ceil(64);
        let mut memo: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut values = BTreeMap::new();
        // only degrees above some generator can be nonzero
        let mut lo = domain.hi.clone();
        for s in shifts {
            for (l, x) in lo.iter_mut().zip(s) {
                *l = (*l).min(*x);
            }
        }
        let lo: Vec<i64> = lo.iter().zip(&domain.lo).map(|(a, b)| *a.max(b)).collect();
        let sub = DegreeBox::new(lo, domain.hi.clone());
        for a in sub.degrees() {
            let active = shifts.iter().filter(|s| leq(s, &a)).count();
            if active == 0 {
                continue;
            }
            let mut key = vec![0u64; words];
            for (k, d) in rel_degrees.iter().enumerate() {
                if leq(d, &a) {
                    key[k / 64] |= 1 << (k % 64);
                }
            }
            let rank = *memo.entry(key).or_insert_with_key(|key| {
                let rows: Vec<Vec<Coeff>> = (0..coeffs.len())
                    .filter(|k| key[k / 64] >> (k % 64) & 1 == 1)
                    .map(|k| coeffs[k].clone())
                    .collect();
                linalg::rank(rows)
            });
            if active > rank {
                values.insert(a, active - rank);
            }
        }
        Ok(HilbertFunction {
            domain: domain.clone(),
            values,
        })
    }
}

fn dedup(vs: Vec<FreeModuleElement>) -> Vec<FreeModuleElement> {
    let mut seen = HashSet::new();
    vs.into_iter()
        .filter(|v| !v.is_zero() && seen.insert(v.to_string()))
        .collect()
}

/// A homomorphism `R^src -> R^dst` given by the images of the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeMap {
    pub src: usize,
    pub dst: usize,
    pub columns: Vec<FreeModuleElement>,
}

impl FreeMap {
    pub fn new(dst: usize, columns: Vec<FreeModuleElement>) -> Self {
        FreeMap {
            src: columns.len(),
            dst,
            columns,
        }
    }

    pub fn apply(&self, v: &FreeModuleElement, nvars: usize) -> FreeModuleElement {
        FreeModuleElement::combine(v.entries(), &self.columns, self.dst, nvars)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeMap, nvars: usize) -> FreeMap {
        FreeMap::new(
            self.dst,
            other.columns.iter().map(|c| self.apply(c, nvars)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(FreeModuleElement::is_zero)
    }
}

/// One position of a complex of presented modules
/// `coker(rel_in) --in--> coker(rel_mid) --out--> coker(rel_out)`.
pub struct ComplexSpot<'a> {
    pub nvars: usize,
    pub mid_rank: usize,
    pub mid_shifts: Option<Vec<Degree>>,
    pub incoming: Option<&'a FreeMap>,
    pub outgoing: Option<&'a FreeMap>,
    pub mid_relations: &'a [FreeModuleElement],
    pub out_relations: &'a [FreeModuleElement],
}

/// Presentation of `ker(out) / (im(in) + rel_mid)` as `R^K / relations`,
/// with `K` generators of the kernel.
pub fn homology_at(spot: &ComplexSpot<'_>) -> Result<PresentedModule, ModuleError> {
    let nvars = spot.nvars;
    let mid = Space::new(spot.mid_rank, nvars);
    let kernel: Vec<FreeModuleElement> = match spot.outgoing {
        Some(out) if spot.mid_rank > 0 => groebner::kernel_of_quotient_map_in(
            Space::new(out.dst, nvars),
            &out.columns,
            spot.out_relations,
        )?,
        _ => (0..spot.mid_rank)
            .map(|j| FreeModuleElement::basis(spot.mid_rank, nvars, j))
            .collect(),
    };
    let kernel = match &spot.mid_shifts {
        Some(s) => minimalize(&kernel, s)?,
        None => dedup(kernel),
    };
    if kernel.is_empty() {
        return PresentedModule::new(
            nvars,
            0,
            Vec::new(),
            spot.mid_shifts.as_ref().map(|_| Vec::new()),
        );
    }
    let mut image: Vec<FreeModuleElement> = spot.mid_relations.to_vec();
    if let Some(inc) = spot.incoming {
        image.extend(inc.columns.iter().filter(|c| !c.is_zero()).cloned());
    }
    let relations = groebner::kernel_of_quotient_map_in(mid, &kernel, &image)?;
    let shifts = match &spot.mid_shifts {
        Some(s) => Some(
            kernel
                .iter()
                .enumerate()
                .map(|(k, v)| v.fine_degree(s).ok_or(ModuleError::Inhomogeneous(k)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    PresentedModule::new(nvars, kernel.len(), relations, shifts)?.pruned()
}

/// A free resolution `0 <- F_0 <- F_1 <- ... <- F_L <- 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub nvars: usize,
    /// Ranks `r_0 .. r_L`.
    pub ranks: Vec<usize>,
    /// `differentials[k]` maps `F_{k+1} -> F_k`.
    pub differentials: Vec<FreeMap>,
    /// Generator degrees of every `F_k` (graded resolutions only).
    pub shifts: Option<Vec<Vec<Degree>>>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// A minimal free resolution by iterated syzygies. The presentation is
/// pruned first, so for graded modules every differential has entries in
/// the maximal ideal.
pub fn free_resolution(m: &PresentedModule) -> Result<FreeResolution, ModuleError> {
    let m = m.pruned()?;
    let nvars = m.nvars;
    let mut ranks = vec![m.ambient_rank];
    let mut differentials = Vec::new();
    let mut shifts: Option<Vec<Vec<Degree>>> = m.shifts.clone().map(|s| vec![s]);
    let mut current = FreeMap::new(m.ambient_rank, m.relations.clone());
    let bound = nvars + 2;
    while current.src > 0 {
        if differentials.len() > bound {
            return Err(ModuleError::NoTermination(bound));
        }
        let next_shifts = match &shifts {
            Some(all) => {
                let prev = all.last().expect("nonempty");
                Some(
                    current
                        .columns
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c.fine_degree(prev).ok_or(ModuleError::Inhomogeneous(k)))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
            None => None,
        };
        let syz = if current.dst == 0 {
            (0..current.src)
                .map(|j| FreeModuleElement::basis(current.src, nvars, j))
                .collect()
        } else {
            groebner::syzygy_in(Space::new(current.dst, nvars), &current.columns)?
        };
        let syz = match &next_shifts {
            Some(s) => minimalize(&syz, s)?,
            None => dedup(syz),
        };
        ranks.push(current.src);
        if let (Some(all), Some(s)) = (shifts.as_mut(), next_shifts) {
            all.push(s);
        }
        let src = current.src;
        differentials.push(current);
        current = FreeMap {
            src: syz.len(),
            dst: src,
            columns: syz,
        };
    }
    Ok(FreeResolution {
        nvars,
        ranks,
        differentials,
        shifts,
    })
}

/// Generator degrees of `Hom(R^p, R^k)` flattened column-major: entry
/// `(i, j)` sits at index `j * k + i` in degree `tgt_i - src_j`.
fn hom_shifts(src: &[Degree], tgt: &[Degree]) -> Vec<Degree> {
    let mut out = Vec::with_capacity(src.len() * tgt.len());
    for s in src {
        for t in tgt {
            out.push(t.iter().zip(s).map(|(a, b)| a - b).collect());
        }
    }
    out
}

/// The map `Hom(R^p, R^k) -> Hom(R^s, R^k)`, `phi -> phi ∘ a`, for a map
/// `a: R^s -> R^p`, in flattened coordinates.
fn precompose(a: &FreeMap, k: usize, nvars: usize) -> FreeMap {
    let (p, s) = (a.dst, a.src);
    let mut columns = Vec::with_capacity(p * k);
    for j in 0..p {
        for i in 0..k {
            let mut e = vec![Polynomial::zero(nvars); s * k];
            for (l, col) in a.columns.iter().enumerate() {
                e[l * k + i] = col.entry(j).clone();
            }
            columns.push(FreeModuleElement::new(e));
        }
    }
    FreeMap::new(s * k, columns)
}

/// Relations of `N^p = Hom(R^p, N)` in flattened coordinates.
fn power_relations(n: &PresentedModule, p: usize) -> Vec<FreeModuleElement> {
    let k = n.ambient_rank;
    let mut out = Vec::with_capacity(p * n.relations.len());
    for j in 0..p {
        for r in &n.relations {
            let mut e = vec![Polynomial::zero(n.nvars); p * k];
            for (i, q) in r.entries().iter().enumerate() {
                e[j * k + i] = q.clone();
            }
            out.push(FreeModuleElement::new(e));
        }
    }
    out
}

fn combined_shifts(src: Option<&[Degree]>, n: &PresentedModule) -> Option<Vec<Degree>> {
    Some(hom_shifts(src?, n.shifts.as_deref()?))
}

/// `Hom(M, N) = ker(Hom(R^p, N) -> Hom(R^s, N))` for `M = coker(R^s -> R^p)`.
pub fn hom_presentation(
    m: &PresentedModule,
    n: &PresentedModule,
) -> Result<PresentedModule, ModuleError> {
    check_ring(m, n)?;
    let alpha = FreeMap::new(m.ambient_rank, m.relations.clone());
    let out = precompose(&alpha, n.ambient_rank, m.nvars);
    let mid_rel = power_relations(n, m.ambient_rank);
    let out_rel = power_relations(n, alpha.src);
    homology_at(&ComplexSpot {
        nvars: m.nvars,
        mid_rank: m.ambient_rank * n.ambient_rank,
        mid_shifts: combined_shifts(m.shifts.as_deref(), n),
        incoming: None,
        outgoing: Some(&out),
        mid_relations: &mid_rel,
        out_relations: &out_rel,
    })
}

fn check_ring(m: &PresentedModule, n: &PresentedModule) -> Result<(), ModuleError> {
    if m.nvars != n.nvars {
        return Err(ModuleError::Invalid("modules over different rings".into()));
    }
    Ok(())
}

/// `Ext^i(M, N)` as the `i`-th cohomology of `Hom(F_., N)` for a minimal
/// free resolution `F_.` of `M`.
pub fn ext_presentation(
    i: usize,
    m: &PresentedModule,
    n: &PresentedModule,
) -> Result<PresentedModule, ModuleError> {
    check_ring(m, n)?;
    let res = free_resolution(m)?;
    ext_from_resolution(i, &res, n)
}

/// As [`ext_presentation`], reusing a precomputed resolution.
pub fn ext_from_resolution(
    i: usize,
    res: &FreeResolution,
    n: &PresentedModule,
) -> Result<PresentedModule, ModuleError> {
    let nvars = res.nvars;
    let k = n.ambient_rank;
    let empty_shifts = (res.shifts.is_some() && n.is_graded()).then(Vec::new);
    if i > res.length() {
        return PresentedModule::new(nvars, 0, Vec::new(), empty_shifts);
    }
    let outgoing = res.differentials.get(i).map(|d| precompose(d, k, nvars));
    let incoming = if i == 0 {
        None
    } else {
        Some(precompose(&res.differentials[i - 1], k, nvars))
    };
    let mid_rel = power_relations(n, res.ranks[i]);
    let out_rel = power_relations(n, res.ranks.get(i + 1).copied().unwrap_or(0));
    let mid_shifts = res
        .shifts
        .as_ref()
        .and_then(|s| combined_shifts(Some(&s[i]), n));
    homology_at(&ComplexSpot {
        nvars,
        mid_rank: res.ranks[i] * k,
        mid_shifts,
        incoming: incoming.as_ref(),
        outgoing: outgoing.as_ref(),
        mid_relations: &mid_rel,
        out_relations: &out_rel,
    })
}

/// A fine-graded complex of free modules with each term presented by
/// relations, evaluated degree by degree without Gröbner bases.
pub struct GradedComplex {
    pub nvars: usize,
    /// Generator degrees of each term.
    pub shifts: Vec<Vec<Degree>>,
    /// Relations of each term (the term is their cokernel).
    pub relations: Vec<Vec<FreeModuleElement>>,
    /// `maps[k]` goes from term `k` to term `k + 1`.
    pub maps: Vec<FreeMap>,
}

impl GradedComplex {
    /// `dim H_a` at term `k`, by linear algebra in degree `a`:
    /// `dim{v : d v in Rel'} - rank(im d_prev + Rel)`.
    pub fn homology_dim(&self, k: usize, a: &[i64]) -> Result<usize, ModuleError> {
        let Some(shifts) = self.shifts.get(k) else {
            return Ok(0);
        };
        let active: Vec<usize> = (0..shifts.len()).filter(|&j| leq(&shifts[j], a)).collect();
        if active.is_empty() {
            return Ok(0);
        }
        let rel_rows =
            |rels: &[FreeModuleElement], sh: &[Degree]| -> Result<Vec<Vec<Coeff>>, ModuleError> {
                let mut rows = Vec::new();
                for (t, r) in rels.iter().enumerate() {
                    let d = r.fine_degree(sh).ok_or(ModuleError::Inhomogeneous(t))?;
                    if leq(&d, a) {
                        rows.push(coefficient_vector(r));
                    }
                }
                Ok(rows)
            };
        // kernel of the induced map on degree-a pieces
        let ker_dim = match self.maps.get(k) {
            Some(d) => {
                let tgt_rel = rel_rows(&self.relations[k + 1], &self.shifts[k + 1])?;
                let images: Vec<Vec<Coeff>> = active
                    .iter()
                    .map(|&j| coefficient_vector(&d.columns[j]))
                    .collect();
                let base = linalg::rank(tgt_rel.clone());
                let mut all = tgt_rel;
                all.extend(images);
                active.len() - (linalg::rank(all) - base)
            }
            None => active.len(),
        };
        let mut span = rel_rows(&self.relations[k], shifts)?;
        if k > 0 {
            let prev = &self.shifts[k - 1];
            let d = &self.maps[k - 1];
            for (j, s) in prev.iter().enumerate() {
                if leq(s, a) {
                    span.push(coefficient_vector(&d.columns[j]));
                }
            }
        }
        Ok(ker_dim - linalg::rank(span))
    }

    pub fn homology_hilbert(
        &self,
        k: usize,
        domain: &DegreeBox,
    ) -> Result<HilbertFunction, ModuleError> {
        let mut values = BTreeMap::new();
        for a in domain.degrees() {
            let d = self.homology_dim(k, &a)?;
            if d > 0 {
                values.insert(a, d);
            }
        }
        Ok(HilbertFunction {
            domain: domain.clone(),
            values,
        })
    }
}

/// The dual complex `Hom(F_., N)` of a graded resolution, as a
/// [`GradedComplex`] (term `k` is `Hom(F_k, N)`).
pub fn dual_complex(
    res: &FreeResolution,
    n: &PresentedModule,
) -> Result<GradedComplex, ModuleError> {
    let all = res.shifts.as_ref().ok_or(ModuleError::Ungraded)?;
    let nsh = n.shifts.as_ref().ok_or(ModuleError::Ungraded)?;
    let k = n.ambient_rank;
    Ok(GradedComplex {
        nvars: res.nvars,
        shifts: all.iter().map(|s| hom_shifts(s, nsh)).collect(),
        relations: res.ranks.iter().map(|&r| power_relations(n, r)).collect(),
        maps: res
            .differentials
            .iter()
            .map(|d| precompose(d, k, res.nvars))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(n: usize, s: &str) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn quotient(n: usize, gens: &[&str]) -> PresentedModule {
        PresentedModule::quotient_ring(n, &gens.iter().map(|g| poly(n, g)).collect::<Vec<_>>())
    }

    #[test]
    fn box_iteration() {
        let b = DegreeBox::new(vec![0, -1], vec![1, 0]);
        let all: Vec<Degree> = b.degrees().collect();
        assert_eq!(all, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn hilbert_of_simple_quotient() {
        let m = quotient(1, &["x1"]);
        let h = m
            .hilbert_function_box(&DegreeBox::new(vec![0], vec![3]))
            .unwrap();
        assert_eq!(h.values, BTreeMap::from([(vec![0], 1)]));
    }

    #[test]
    fn hilbert_of_shifted_free_module() {
        let m = PresentedModule::free(2, vec![vec![1, 0]]);
        let h = m.hilbert_function_box(&DegreeBox::cube(2, 1)).unwrap();
        assert_eq!(h.values, BTreeMap::from([(vec![1, 0], 1), (vec![1, 1], 1)]));
    }

    #[test]
    fn ungraded_hilbert_is_an_error() {
        let m = quotient(1, &["x1+1"]);
        assert_eq!(
            m.hilbert_function_box(&DegreeBox::cube(1, 1)),
            Err(ModuleError::Ungraded)
        );
    }

    #[test]
    fn resolution_of_variable() {
        let res = free_resolution(&quotient(1, &["x1"])).unwrap();
        assert_eq!(res.ranks, vec![1, 1]);
    }

    #[test]
    fn koszul_resolution_ranks() {
        let res = free_resolution(&quotient(3, &["x1", "x2", "x3"])).unwrap();
        assert_eq!(res.ranks, vec![1, 3, 3, 1]);
        for w in res.differentials.windows(2) {
            assert!(w[0].compose(&w[1], 3).is_zero());
        }
    }

    #[test]
    fn hom_examples() {
        let r = PresentedModule::free(1, vec![vec![0]]);
        let q = quotient(1, &["x1"]);
        let box1 = DegreeBox::cube(1, 3);
        let h = hom_presentation(&r, &q).unwrap();
        assert_eq!(
            h.hilbert_function_box(&box1).unwrap(),
            q.hilbert_function_box(&box1).unwrap()
        );
        assert!(hom_presentation(&q, &r).unwrap().is_zero().unwrap());
        let h = hom_presentation(&q, &q).unwrap();
        assert_eq!(
            h.hilbert_function_box(&box1).unwrap(),
            q.hilbert_function_box(&box1).unwrap()
        );
    }

    #[test]
    fn ext_of_cyclic_module() {
        let r = PresentedModule::free(1, vec![vec![0]]);
        let q = quotient(1, &["x1"]);
        assert!(ext_presentation(0, &q, &r).unwrap().is_zero().unwrap());
        let e1 = ext_presentation(1, &q, &r).unwrap();
        let h = e1.hilbert_function_box(&DegreeBox::cube(1, 3)).unwrap();
        // generator of Ext^1 sits in degree -1
        assert_eq!(h.values, BTreeMap::from([(vec![-1], 1)]));
        assert!(ext_presentation(2, &q, &r).unwrap().is_zero().unwrap());
    }

    #[test]
    fn ext_agrees_with_degreewise_complex() {
        let m = quotient(3, &["x1*x2", "x2*x3", "x1^2"]);
        let r = PresentedModule::free(3, vec![vec![0; 3]]);
        let res = free_resolution(&m).unwrap();
        let dual = dual_complex(&res, &r).unwrap();
        let b = DegreeBox::cube(3, 2);
        for i in 0..=3 {
            let e = ext_from_resolution(i, &res, &r).unwrap();
            assert_eq!(
                e.hilbert_function_box(&b).unwrap(),
                dual.homology_hilbert(i, &b).unwrap(),
                "Ext^{i}"
            );
        }
    }

    #[test]
    fn pruning_removes_unit_relations() {
        let one = Polynomial::one(1);
        let x = poly(1, "x1");
        let m = PresentedModule::new(
            1,
            2,
            vec![
                FreeModuleElement::new(vec![one.clone(), x.clone()]),
                FreeModuleElement::new(vec![x.clone(), Polynomial::zero(1)]),
            ],
            None,
        )
        .unwrap();
        let p = m.pruned().unwrap();
        assert_eq!(p.ambient_rank(), 1);
        // e1 = -x e2, so x e1 = -x^2 e2 = 0
        assert_eq!(
            p.relations(),
            &[FreeModuleElement::new(vec![poly(1, "-x1^2")])]
        );
    }

    #[test]
    fn minimalize_drops_multiples() {
        let sh = vec![vec![0, 0]];
        let v = |s: &str| FreeModuleElement::new(vec![poly(2, s)]);
        let kept = minimalize(&[v("x1*x2"), v("x1"), v("2*x1"), v("x2^2")], &sh).unwrap();
        assert_eq!(kept, vec![v("x1"), v("x2^2")]);
    }
}
