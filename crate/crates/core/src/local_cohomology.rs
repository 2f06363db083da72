//! Koszul complexes and the limit complex `K^.(a^inf, S)`.
//!
//! For monomial generators `a_1..a_t` the limit complex is `Z^n`-graded and
//! its piece in a degree with negative support `J` has one basis vector per
//! subset `T` of generators whose supports cover `J`, with Koszul signs.
//! The homology therefore depends only on `J` and is computed by sparse
//! exact (or modular) elimination.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;
use serde::Serialize;

use crate::error::ModuleError;
use crate::fan::SquarefreeMonomial;
use crate::grading::{subsets, SignPattern};
use crate::groebner::{self, MonomialOrder, Space};
use crate::homalg::{
    self, ComplexSpot, DegreeBox, FreeMap, FreeResolution, GradedComplex, HilbertFunction,
    PresentedModule,
};
use crate::linalg::{self, RankBackend, SparseColumn};
use crate::poly::{Degree, FreeModuleElement, Polynomial};

/// `K_.(a, M)` and its dual `K^.(a, M)` for `M = coker(relations)`.
///
/// Level `p` has basis `e_T (x) g_j` for `p`-subsets `T` (increasing index
/// tuples, in lexicographic order) and generators `g_j` of `M`, flattened
/// as `t * r + j`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    generators: Vec<Polynomial>,
    module: PresentedModule,
    /// Subsets of each size, lexicographic.
    levels: Vec<Vec<Vec<usize>>>,
}

impl KoszulComplex {
    pub fn new(generators: Vec<Polynomial>, module: PresentedModule) -> Result<Self, ModuleError> {
        if generators.iter().any(|g| g.nvars() != module.nvars()) {
            return Err(ModuleError::Invalid(
                "sequence and module live over different rings".into(),
            ));
        }
        let d = generators.len();
        let levels = (0..=d).map(|p| subsets(d, p)).collect();
        Ok(KoszulComplex {
            generators,
            module,
            levels,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    /// Rank of level `p` as a free module: `C(d, p) * r`.
    pub fn level_rank(&self, p: usize) -> usize {
        self.levels.get(p).map_or(0, Vec::len) * self.module.ambient_rank()
    }

    fn index(&self, p: usize, t: &[usize]) -> usize {
        self.levels[p]
            .binary_search_by(|s| s.as_slice().cmp(t))
            .expect("subset of the right size")
    }

    fn nvars(&self) -> usize {
        self.module.nvars()
    }

    /// `d_p: K_p -> K_{p-1}`, `e_T -> sum_k (-1)^k a_{T_k} e_{T - T_k}`.
    pub fn differential(&self, p: usize) -> FreeMap {
        let r = self.module.ambient_rank();
        let n = self.nvars();
        let dst = self.level_rank(p - 1);
        let mut cols = Vec::with_capacity(self.level_rank(p));
        for t in &self.levels[p] {
            for j in 0..r {
                let mut e = vec![Polynomial::zero(n); dst];
                for k in 0..t.len() {
                    let mut s = t.clone();
                    let i = s.remove(k);
                    let a = if k % 2 == 0 {
                        self.generators[i].clone()
                    } else {
                        -&self.generators[i]
                    };
                    e[self.index(p - 1, &s) * r + j] = a;
                }
                cols.push(FreeModuleElement::new(e));
            }
        }
        FreeMap::new(dst, cols)
    }

    /// `d^p: K^p -> K^{p+1}`, the transpose of `d_{p+1}`.
    pub fn codifferential(&self, p: usize) -> FreeMap {
        let r = self.module.ambient_rank();
        let n = self.nvars();
        let dst = self.level_rank(p + 1);
        let mut cols = Vec::with_capacity(self.level_rank(p));
        for t in &self.levels[p] {
            for j in 0..r {
                let mut e = vec![Polynomial::zero(n); dst];
                for i in (0..self.len()).filter(|i| !t.contains(i)) {
                    let k = t.iter().filter(|&&x| x < i).count();
                    let mut s = t.clone();
                    s.insert(k, i);
                    let a = if k % 2 == 0 {
                        self.generators[i].clone()
                    } else {
                        -&self.generators[i]
                    };
                    e[self.index(p + 1, &s) * r + j] = a;
                }
                cols.push(FreeModuleElement::new(e));
            }
        }
        FreeMap::new(dst, cols)
    }

    fn relations(&self, p: usize) -> Vec<FreeModuleElement> {
        let r = self.module.ambient_rank();
        let count = self.levels.get(p).map_or(0, Vec::len);
        let total = count * r;
        let mut out = Vec::new();
        for t in 0..count {
            for rel in self.module.relations() {
                let mut e = vec![Polynomial::zero(self.nvars()); total];
                for (j, q) in rel.entries().iter().enumerate() {
                    e[t * r + j] = q.clone();
                }
                out.push(FreeModuleElement::new(e));
            }
        }
        out
    }

    fn generator_degrees(&self) -> Option<Vec<Degree>> {
        self.generators
            .iter()
            .map(Polynomial::fine_degree)
            .collect()
    }

    /// Generator degrees at level `p`; `sign = 1` for `K_p`, `-1` for `K^p`.
    fn level_shifts(&self, p: usize, sign: i64) -> Option<Vec<Degree>> {
        let gd = self.generator_degrees()?;
        let ms = self.module.shifts()?;
        let mut out = Vec::new();
        for t in &self.levels[p] {
            for s in ms {
                let mut d = s.clone();
                for &i in t {
                    for (x, y) in d.iter_mut().zip(&gd[i]) {
                        *x += sign * y;
                    }
                }
                out.push(d);
            }
        }
        Some(out)
    }

    /// Total degree of the sequence, `sum_i deg a_i`.
    pub fn total_degree(&self) -> Option<Degree> {
        let gd = self.generator_degrees()?;
        let mut out = vec![0; self.nvars()];
        for d in gd {
            for (x, y) in out.iter_mut().zip(d) {
                *x += y;
            }
        }
        Some(out)
    }

    /// `H_p(a, M)`.
    pub fn homology(&self, p: usize) -> Result<PresentedModule, ModuleError> {
        let d = self.len();
        if p > d {
            return Err(ModuleError::Invalid(format!(
                "Koszul index {p} exceeds sequence length {d}"
            )));
        }
        let incoming = (p < d).then(|| self.differential(p + 1));
        let outgoing = (p > 0).then(|| self.differential(p));
        let mid_rel = self.relations(p);
        let out_rel = if p > 0 {
            self.relations(p - 1)
        } else {
            Vec::new()
        };
        homalg::homology_at(&ComplexSpot {
            nvars: self.nvars(),
            mid_rank: self.level_rank(p),
            mid_shifts: self.level_shifts(p, 1),
            incoming: incoming.as_ref(),
            outgoing: outgoing.as_ref(),
            mid_relations: &mid_rel,
            out_relations: &out_rel,
        })
    }

    /// `H^p(a, M)`.
    pub fn cohomology(&self, p: usize) -> Result<PresentedModule, ModuleError> {
        let d = self.len();
        if p > d {
            return Err(ModuleError::Invalid(format!(
                "Koszul index {p} exceeds sequence length {d}"
            )));
        }
        let incoming = (p > 0).then(|| self.codifferential(p - 1));
        let outgoing = (p < d).then(|| self.codifferential(p));
        let mid_rel = self.relations(p);
        let out_rel = if p < d {
            self.relations(p + 1)
        } else {
            Vec::new()
        };
        homalg::homology_at(&ComplexSpot {
            nvars: self.nvars(),
            mid_rank: self.level_rank(p),
            mid_shifts: self.level_shifts(p, -1),
            incoming: incoming.as_ref(),
            outgoing: outgoing.as_ref(),
            mid_relations: &mid_rel,
            out_relations: &out_rel,
        })
    }

    /// The cohomological complex as a degreewise-evaluable graded complex
    /// (term `p` is `K^p`); an oracle independent of Gröbner bases.
    pub fn cochain_complex(&self) -> Result<GradedComplex, ModuleError> {
        let d = self.len();
        let shifts = (0..=d)
            .map(|p| self.level_shifts(p, -1))
            .collect::<Option<Vec<_>>>()
            .ok_or(ModuleError::Ungraded)?;
        Ok(GradedComplex {
            nvars: self.nvars(),
            shifts,
            relations: (0..=d).map(|p| self.relations(p)).collect(),
            maps: (0..d).map(|p| self.codifferential(p)).collect(),
        })
    }

    /// The homological complex with term `k` equal to `K_{d-k}`.
    pub fn chain_complex(&self) -> Result<GradedComplex, ModuleError> {
        let d = self.len();
        let shifts = (0..=d)
            .rev()
            .map(|p| self.level_shifts(p, 1))
            .collect::<Option<Vec<_>>>()
            .ok_or(ModuleError::Ungraded)?;
        Ok(GradedComplex {
            nvars: self.nvars(),
            shifts,
            relations: (0..=d).rev().map(|p| self.relations(p)).collect(),
            maps: (1..=d).rev().map(|p| self.differential(p)).collect(),
        })
    }

    /// Whether `<a> = R`.
    pub fn generates_unit_ideal(&self) -> Result<bool, ModuleError> {
        let gens: Vec<FreeModuleElement> = self
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| FreeModuleElement::new(vec![g.clone()]))
            .collect();
        if gens.is_empty() {
            return Ok(false);
        }
        let gb =
            groebner::buchberger_in(Space::new(1, self.nvars()), &gens, MonomialOrder::default())?;
        Ok(gb.contains(&FreeModuleElement::new(vec![Polynomial::one(self.nvars())])))
    }
}

/// Verdict of the regular-sequence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Regularity {
    Regular,
    /// `<a> M = M` (in particular when `<a> = R`): excluded by definition.
    UnitIdeal,
    /// `H_p(a, M) != 0` for the listed `p >= 1`.
    NotRegular {
        nonzero: Vec<usize>,
    },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Koszul criterion: `a` is `M`-regular iff `M / <a> M != 0` and
/// `H_p(a, M) = 0` for every `p >= 1`.
pub fn is_regular_sequence(
    a: &[Polynomial],
    m: &PresentedModule,
) -> Result<Regularity, ModuleError> {
    let k = KoszulComplex::new(a.to_vec(), m.clone())?;
    if k.generates_unit_ideal()? || k.homology(0)?.is_zero()? {
        return Ok(Regularity::UnitIdeal);
    }
    let mut nonzero = Vec::new();
    for p in 1..=k.len() {
        if !k.homology(p)?.is_zero()? {
            nonzero.push(p);
        }
    }
    Ok(if nonzero.is_empty() {
        Regularity::Regular
    } else {
        Regularity::NotRegular { nonzero }
    })
}

/// Smallest `p` with `H^p(a, M) != 0`: the length of a maximal `M`-regular
/// sequence in `<a>`; `None` when all vanish (`<a> M = M`).
pub fn koszul_grade(a: &[Polynomial], m: &PresentedModule) -> Result<Option<usize>, ModuleError> {
    let k = KoszulComplex::new(a.to_vec(), m.clone())?;
    for p in 0..=k.len() {
        if !k.cohomology(p)?.is_zero()? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Compares `H_p(a, M)` with `H^{d-p}(a, M)` on a box. The isomorphism
/// shifts degrees by `sum_i deg a_i`: `H_p` in degree `b` matches `H^{d-p}`
/// in degree `b - sum_i deg a_i`.
pub fn self_duality_check(
    a: &[Polynomial],
    m: &PresentedModule,
    p: usize,
    domain: &DegreeBox,
) -> Result<bool, ModuleError> {
    let k = KoszulComplex::new(a.to_vec(), m.clone())?;
    if p > k.len() {
        return Err(ModuleError::Invalid(format!(
            "Koszul index {p} exceeds sequence length {}",
            k.len()
        )));
    }
    let delta = k.total_degree().ok_or(ModuleError::Ungraded)?;
    let lhs = k.homology(p)?.hilbert_function_box(domain)?;
    let moved = DegreeBox::new(
        domain.lo.iter().zip(&delta).map(|(x, y)| x - y).collect(),
        domain.hi.iter().zip(&delta).map(|(x, y)| x - y).collect(),
    );
    let rhs = k.cohomology(k.len() - p)?.hilbert_function_box(&moved)?;
    let rhs_back = rhs
        .values
        .iter()
        .map(|(b, v)| {
            (
                b.iter().zip(&delta).map(|(x, y)| x + y).collect::<Degree>(),
                *v,
            )
        })
        .collect();
    Ok(lhs.values == rhs_back)
}

/// Dimensions of `H^p(a^inf, S)` in any degree with a given negative support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignPatternCohomology {
    pub pattern: SignPattern,
    /// `dims[p]` for `p = 0..=t`.
    pub dims: Vec<usize>,
    /// False when computed with a modular backend.
    pub exact: bool,
}

impl SignPatternCohomology {
    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Number of `p`-subsets `T` with `J` inside the union of their supports.
pub fn pattern_cell_counts(gens: &[SquarefreeMonomial], pattern: &SignPattern) -> Vec<usize> {
    let j = pattern.mask();
    let masks: Vec<u64> = gens.iter().map(SquarefreeMonomial::mask).collect();
    let t = gens.len();
    let mut counts = vec![0; t + 1];
    for_each_covering(&masks, j, |set| counts[set.count_ones() as usize] += 1);
    counts
}

fn for_each_covering(masks: &[u64], j: u64, mut f: impl FnMut(u64)) {
    let t = masks.len();
    assert!(t < 64, "at most 63 generators are supported");
    for set in 0u64..(1u64 << t) {
        let mut union = 0;
        let mut rest = set;
        while rest != 0 {
            union |= masks[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        if union & j == j {
            f(set);
        }
    }
}

/// Cohomology of the degreewise limit complex for a single sign pattern.
pub fn pattern_cohomology(
    gens: &[SquarefreeMonomial],
    pattern: &SignPattern,
    n: usize,
) -> SignPatternCohomology {
    pattern_cohomology_with(gens, pattern, n, RankBackend::Exact)
}

pub fn pattern_cohomology_with(
    gens: &[SquarefreeMonomial],
    pattern: &SignPattern,
    n: usize,
    backend: RankBackend,
) -> SignPatternCohomology {
    let traces = canonical_traces(gens, pattern, n);
    let dims = match traces {
        Some(tr) => trace_cohomology(&tr, backend),
        None => vec![0; gens.len() + 1],
    };
    let mut dims = dims;
    dims.resize(gens.len() + 1, 0);
    SignPatternCohomology {
        pattern: pattern.clone(),
        dims,
        exact: backend == RankBackend::Exact,
    }
}

/// The restriction of every generator support to `J`, re-indexed to
/// `0..|J|` and sorted; `None` when the complex is trivially acyclic.
fn canonical_traces(
    gens: &[SquarefreeMonomial],
    pattern: &SignPattern,
    n: usize,
) -> Option<Vec<u64>> {
    let jset = pattern.negative();
    if jset.is_empty() || jset.iter().any(|&i| i >= n) {
        return None;
    }
    let mut traces: Vec<u64> = gens
        .iter()
        .map(|g| {
            jset.iter()
                .enumerate()
                .filter(|(_, &i)| g.support().contains(&i))
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .collect();
    // a generator missing J entirely splits off an exact two-term factor
    if traces.contains(&0) {
        return None;
    }
    let full = (1u64 << jset.len()) - 1;
    if traces.iter().fold(0, |m, t| m | t) != full {
        return None;
    }
    traces.sort_unstable();
    Some(traces)
}

/// Cohomology dims of the covering complex on generators with the given
/// supports inside the full set `0..k` (the union of all traces).
fn trace_cohomology(traces: &[u64], backend: RankBackend) -> Vec<usize> {
    let t = traces.len();
    let full = traces.iter().fold(0, |m, x| m | x);
    // cells per level, and their indices
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); t + 1];
    for_each_covering(traces, full, |set| {
        levels[set.count_ones() as usize].push(set)
    });
    let index: Vec<HashMap<u64, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut ranks = vec![0usize; t + 1];
    let mut cleared: Vec<usize> = Vec::new();
    for p in 0..t {
        let cols: Vec<SparseColumn> = levels[p]
            .iter()
            .map(|&set| {
                let mut col: SparseColumn = (0..t)
                    .filter(|i| set >> i & 1 == 0)
                    .map(|i| {
                        let below = (set & ((1u64 << i) - 1)).count_ones();
                        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
                        (index[p + 1][&(set | 1 << i)], sign)
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        let skip: std::collections::HashSet<usize> = cleared.iter().copied().collect();
        let red = linalg::reduce_sparse(&cols, backend, &|j| skip.contains(&j));
        ranks[p] = red.rank;
        cleared = red.pivot_rows;
    }
    (0..=t)
        .map(|p| {
            let incoming = if p > 0 { ranks[p - 1] } else { 0 };
            levels[p].len() - ranks[p] - incoming
        })
        .collect()
}

/// Canonical trace family and whether ranks are exact.
type MemoKey = (Vec<u64>, bool);

/// Memoizing driver over many patterns; safe to share between threads.
#[derive(Debug, Default)]
pub struct PatternCache {
    memo: Mutex<HashMap<MemoKey, Vec<usize>>>,
}

impl PatternCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn compute(
        &self,
        gens: &[SquarefreeMonomial],
        pattern: &SignPattern,
        n: usize,
        backend: RankBackend,
    ) -> SignPatternCohomology {
        let exact = backend == RankBackend::Exact;
        let mut dims = match canonical_traces(gens, pattern, n) {
            None => vec![0; gens.len() + 1],
            Some(tr) => {
                let key = (tr, exact);
                let hit = self.memo.lock().expect("memo lock").get(&key).cloned();
                match hit {
                    Some(d) => d,
                    None => {
                        let d = trace_cohomology(&key.0, backend);
                        self.memo.lock().expect("memo lock").insert(key, d.clone());
                        d
                    }
                }
            }
        };
        dims.resize(gens.len() + 1, 0);
        SignPatternCohomology {
            pattern: pattern.clone(),
            dims,
            exact,
        }
    }

    /// Number of distinct complexes actually computed.
    pub fn distinct(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }
}

/// Reduced cohomology dims `H~^q` (`q = -1..`) of the simplicial complex
/// whose faces are the given sets (closed under subsets, containing the
/// empty face), as a vector indexed by `q + 1`.
pub fn reduced_cohomology(faces: &[u64]) -> Vec<usize> {
    let maxdim = faces
        .iter()
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); maxdim + 1];
    for &f in faces {
        levels[f.count_ones() as usize].push(f);
    }
    for l in &mut levels {
        l.sort_unstable();
        l.dedup();
    }
    let index: Vec<HashMap<u64, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut ranks = vec![0usize; maxdim + 1];
    for k in 0..maxdim {
        let cols: Vec<SparseColumn> = levels[k]
            .iter()
            .map(|&f| {
                let mut col: SparseColumn = (0..64)
                    .filter(|i| f >> i & 1 == 0)
                    .filter_map(|i| {
                        let g = f | 1u64 << i;
                        index[k + 1].get(&g).map(|&r| {
                            let below = (f & ((1u64 << i) - 1)).count_ones();
                            (r, if below.is_multiple_of(2) { 1 } else { -1 })
                        })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = linalg::reduce_sparse(&cols, RankBackend::Exact, &|_| false).rank;
    }
    (0..=maxdim)
        .map(|k| levels[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// Independent nerve formula: `H^p(a^inf, S)_J = H~^{p-2}(Delta_J)` where
/// `Delta_J` is the complex of subsets of `J` contained in a maximal cone.
pub fn nerve_pattern_dims(max_cones: &[Vec<usize>], pattern: &SignPattern, t: usize) -> Vec<usize> {
    let mut dims = vec![0; t + 1];
    let j = pattern.mask();
    if j == 0 {
        return dims;
    }
    let mut faces = Vec::new();
    // enumerate subsets of J
    let mut sub = j;
    loop {
        let in_cone = max_cones.iter().any(|c| {
            let cm = c.iter().fold(0u64, |m, &i| m | 1 << i);
            sub & !cm == 0
        });
        if in_cone {
            faces.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & j;
    }
    let red = reduced_cohomology(&faces);
    for (k, &d) in red.iter().enumerate() {
        // k = q + 1, p = q + 2 = k + 1
        if k < t {
            dims[k + 1] = d;
        }
    }
    dims
}

/// `Ext^p(S / <g_i^m>, S)` for squarefree monomials `g_i`, via a minimal
/// free resolution and the Hom/Ext pipeline, with Hilbert functions on
/// boxes. In the natural grading of `Hom(F_., S)` every stage of the
/// directed system already lives in limit degrees: the summand the paper
/// writes `S / <x_J^m>` has its generator in degree `-m e_J`.
#[derive(Clone, Debug)]
pub struct ExtOracle {
    pub m: u32,
    pub resolution: FreeResolution,
    n: usize,
}

impl ExtOracle {
    pub fn new(gens: &[SquarefreeMonomial], n: usize, m: u32) -> Result<Self, ModuleError> {
        if m == 0 {
            return Err(ModuleError::Invalid(
                "bracket power m must be positive".into(),
            ));
        }
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|g| Ok(Polynomial::monomial(g.to_monomial(n).pow(m)?)))
            .collect::<Result<_, crate::error::PolyError>>()?;
        let quotient = PresentedModule::quotient_ring(n, &polys);
        Ok(ExtOracle {
            m,
            resolution: homalg::free_resolution(&quotient)?,
            n,
        })
    }

    pub fn ext(&self, p: usize) -> Result<PresentedModule, ModuleError> {
        homalg::ext_from_resolution(
            p,
            &self.resolution,
            &PresentedModule::free(self.n, vec![vec![0; self.n]]),
        )
    }

    pub fn hilbert(&self, p: usize, domain: &DegreeBox) -> Result<HilbertFunction, ModuleError> {
        self.ext(p)?.hilbert_function_box(domain)
    }
}

/// Hilbert function of `Ext^p(S/<g^m>, S)` on a box (see [`ExtOracle`]).
pub fn ext_limit_oracle(
    gens: &[SquarefreeMonomial],
    n: usize,
    m: u32,
    p: usize,
    domain: &DegreeBox,
) -> Result<HilbertFunction, ModuleError> {
    ExtOracle::new(gens, n, m)?.hilbert(p, domain)
}

/// `S / <x_i^m : i in vars>` with its generator in degree `-m e_vars`:
/// the paper's Ext summands placed in limit degrees.
pub fn limit_quotient(n: usize, vars: &[usize], m: u32) -> Result<PresentedModule, ModuleError> {
    let gens: Vec<Polynomial> = vars
        .iter()
        .map(|&i| {
            Ok(Polynomial::monomial(
                crate::poly::Monomial::var(n, i).pow(m)?,
            ))
        })
        .collect::<Result<_, crate::error::PolyError>>()?;
    let mut shift = vec![0i64; n];
    for &i in vars {
        shift[i] = -(m as i64);
    }
    PresentedModule::quotient_ring(n, &gens).shifted(&shift)
}

/// Unit polynomial helper for sequences such as `(1, x)`.
pub fn unit(nvars: usize) -> Polynomial {
    Polynomial::constant(nvars, crate::poly::Coeff::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn polys(n: usize, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(x, n).unwrap()).collect()
    }

    fn ring(n: usize) -> PresentedModule {
        PresentedModule::free(n, vec![vec![0; n]])
    }

    fn sq(supp: &[usize]) -> SquarefreeMonomial {
        SquarefreeMonomial::new(supp.to_vec())
    }

    #[test]
    fn koszul_of_two_variables() {
        let k = KoszulComplex::new(polys(2, &["x1", "x2"]), ring(2)).unwrap();
        let b = DegreeBox::cube(2, 2);
        let h0 = k.homology(0).unwrap().hilbert_function_box(&b).unwrap();
        assert_eq!(h0.values.len(), 1);
        assert_eq!(h0.dim(&[0, 0]), 1);
        assert!(k.homology(1).unwrap().is_zero().unwrap());
        assert!(k.homology(2).unwrap().is_zero().unwrap());
    }

    #[test]
    fn top_homology_is_annihilator() {
        let m = PresentedModule::quotient_ring(1, &polys(1, &["x1"]));
        let k = KoszulComplex::new(polys(1, &["x1"]), m.clone()).unwrap();
        let h1 = k.homology(1).unwrap();
        let b = DegreeBox::cube(1, 3);
        // H_1 = M shifted by deg x1
        assert_eq!(
            h1.hilbert_function_box(&b).unwrap().values,
            BTreeMapLit::of(&[(vec![1], 1)])
        );
    }

    struct BTreeMapLit;
    impl BTreeMapLit {
        fn of(items: &[(Degree, usize)]) -> std::collections::BTreeMap<Degree, usize> {
            items.iter().cloned().collect()
        }
    }

    #[test]
    fn unit_ideal_is_acyclic() {
        let mut a = vec![unit(1)];
        a.extend(polys(1, &["x1"]));
        let k = KoszulComplex::new(a, ring(1)).unwrap();
        for p in 0..=2 {
            assert!(k.homology(p).unwrap().is_zero().unwrap(), "H_{p}");
        }
    }

    #[test]
    fn regular_sequences() {
        let s3 = ring(3);
        assert!(is_regular_sequence(&polys(3, &["x1", "x2", "x3"]), &s3)
            .unwrap()
            .is_regular());
        assert_eq!(
            is_regular_sequence(&polys(1, &["x1", "x1"]), &ring(1)).unwrap(),
            Regularity::NotRegular { nonzero: vec![1] }
        );
        assert_eq!(
            is_regular_sequence(&[unit(1)], &ring(1)).unwrap(),
            Regularity::UnitIdeal
        );
    }

    #[test]
    fn grade_of_non_regular_ideal() {
        // <xy, xz> = x <y, z> has grade 1
        assert_eq!(
            koszul_grade(&polys(3, &["x1*x2", "x1*x3"]), &ring(3)).unwrap(),
            Some(1)
        );
        assert_eq!(
            koszul_grade(&polys(3, &["x1", "x2", "x3"]), &ring(3)).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn duality_examples() {
        let b = DegreeBox::cube(2, 3);
        assert!(self_duality_check(&polys(2, &["x1", "x2"]), &ring(2), 0, &b).unwrap());
        let m = PresentedModule::quotient_ring(1, &polys(1, &["x1"]));
        assert!(self_duality_check(&polys(1, &["x1"]), &m, 1, &DegreeBox::cube(1, 3)).unwrap());
    }

    #[test]
    fn degreewise_complex_matches_presentations() {
        let k = KoszulComplex::new(polys(3, &["x1*x2", "x2*x3", "x1"]), ring(3)).unwrap();
        let b = DegreeBox::cube(3, 2);
        let chain = k.chain_complex().unwrap();
        let cochain = k.cochain_complex().unwrap();
        for p in 0..=3 {
            assert_eq!(
                k.homology(p).unwrap().hilbert_function_box(&b).unwrap(),
                chain.homology_hilbert(3 - p, &b).unwrap()
            );
            assert_eq!(
                k.cohomology(p).unwrap().hilbert_function_box(&b).unwrap(),
                cochain.homology_hilbert(p, &b).unwrap()
            );
        }
    }

    #[test]
    fn differentials_compose_to_zero() {
        let k = KoszulComplex::new(polys(3, &["x1", "x2*x3", "x3^2"]), ring(3)).unwrap();
        for p in 2..=3 {
            assert!(k
                .differential(p - 1)
                .compose(&k.differential(p), 3)
                .is_zero());
        }
        for p in 0..2 {
            assert!(k
                .codifferential(p + 1)
                .compose(&k.codifferential(p), 3)
                .is_zero());
        }
    }

    #[test]
    fn projective_plane_patterns() {
        let gens = [sq(&[2]), sq(&[0]), sq(&[1])];
        let top = pattern_cohomology(&gens, &SignPattern::new(vec![0, 1, 2]), 3);
        assert_eq!(top.dims, vec![0, 0, 0, 1]);
        for mask in 0..7u64 {
            assert!(pattern_cohomology(&gens, &SignPattern::from_mask(mask), 3).is_zero());
        }
    }

    #[test]
    fn empty_pattern_is_zero() {
        let gens = [sq(&[0]), sq(&[0, 1])];
        assert!(pattern_cohomology(&gens, &SignPattern::default(), 2).is_zero());
    }

    #[test]
    fn modular_backend_agrees() {
        let gens = [sq(&[2]), sq(&[0]), sq(&[1])];
        let j = SignPattern::new(vec![0, 1, 2]);
        let m = pattern_cohomology_with(&gens, &j, 3, RankBackend::ModPrime(2_147_483_647));
        assert_eq!(m.dims, vec![0, 0, 0, 1]);
        assert!(!m.exact);
    }

    #[test]
    fn reduced_cohomology_of_circle() {
        // boundary of a triangle
        let faces = [0b000, 0b001, 0b010, 0b100, 0b011, 0b110, 0b101];
        assert_eq!(reduced_cohomology(&faces), vec![0, 0, 1]);
        // a point: contractible
        assert_eq!(reduced_cohomology(&[0, 1]), vec![0, 0]);
        // the empty complex {empty}: H~^{-1} = 1
        assert_eq!(reduced_cohomology(&[0]), vec![1]);
    }

    #[test]
    fn ext_oracle_on_projective_line() {
        let gens = [sq(&[1]), sq(&[0])];
        let h = ext_limit_oracle(&gens, 2, 1, 2, &DegreeBox::cube(2, 2)).unwrap();
        // Ext^2(S/<x1,x2>, S) = Q in degree (-1,-1)
        assert_eq!(h.values.len(), 1);
        assert_eq!(h.dim(&[-1, -1]), 1);
        let q = limit_quotient(2, &[0, 1], 1).unwrap();
        assert_eq!(q.hilbert_function_box(&DegreeBox::cube(2, 2)).unwrap(), h);
    }
}
