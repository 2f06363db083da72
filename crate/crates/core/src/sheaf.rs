//! Cohomology of `U = A^n \ V(I)` and of the twisting sheaves `O(alpha)`.
//!
//! `H^p(U, O) = H^{p+1}_I(S)` for `p >= 1` and `H^0(U, O) = S (+) H^1_I(S)`;
//! each is a direct sum of sign-pattern cones `{x^a : a_i < 0 iff i in J}`.
//! Since `U -> X` is affine with `pi_* O_U = (+)_alpha O(alpha)`, the
//! dimension of `H^p(X, O(alpha))` counts the lattice points of class
//! `alpha` in those cones.

use serde::Serialize;

use crate::error::{CohomologyError, FanError};
use crate::fan::{
    irrelevant_generators, validate_fan, Completeness, Fan, FanReport, SquarefreeMonomial,
};
use crate::grading::{GradingClass, GradingGroup, SignPattern};
use crate::linalg::RankBackend;
use crate::local_cohomology::{PatternCache, SignPatternCohomology};

/// One cone summand of `H^p(U, O)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternEntry {
    /// Negative support, 1-based.
    pub negative: Vec<usize>,
    /// Cohomological degree on `U`.
    pub p: usize,
    pub mult: usize,
}

/// `dim H^p(X, O(alpha))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub alpha: Vec<i64>,
    pub p: usize,
    pub dim: usize,
}

/// Human-readable description of `H^p(U, O)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub p: usize,
    pub summands: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanSummary {
    pub dim: usize,
    pub rays: usize,
    pub max_cones: usize,
    pub simplicial: bool,
    pub complete: Completeness,
    pub class_group_rank: usize,
    pub torsion: Vec<i64>,
    pub variable_degrees: Vec<Vec<i64>>,
    pub irrelevant_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub fan: FanSummary,
    pub patterns: Vec<PatternEntry>,
    pub closed_forms: Vec<ClosedForm>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_degree: Vec<DegreeEntry>,
    pub basis_note: String,
    /// False when pattern ranks were computed modulo a prime.
    pub exact: bool,
    /// `h^0(O) = 1` and `h^p(O) = 0` for `p > 0`.
    pub degree_zero_check: bool,
    pub notes: Vec<String>,
}

/// A validated fan with its grading, irrelevant ideal and pattern table.
#[derive(Debug)]
pub struct ToricCohomology {
    fan: Fan,
    validation: FanReport,
    grading: GradingGroup,
    generators: Vec<SquarefreeMonomial>,
    /// Patterns with a nonzero limit cohomology dimension.
    table: Vec<SignPatternCohomology>,
    exact: bool,
}

const ERRATUM_NOTE: &str = "every summand of H^p(U,O), p >= 1, is a sign-pattern cone; no polynomial \
summands such as C[x_i : i not in J] occur, since those would give h^p(O) != 0 in degree 0 for p > 0";

impl ToricCohomology {
    pub fn new(fan: Fan) -> Result<Self, CohomologyError> {
        Self::with_backend(fan, RankBackend::Exact)
    }

    pub fn with_backend(fan: Fan, backend: RankBackend) -> Result<Self, CohomologyError> {
        let validation = validate_fan(&fan);
        Self::from_validated(fan, validation, backend)
    }

    /// Uses a caller-supplied validation report (e.g. with sampling off).
    pub fn from_validated(
        fan: Fan,
        validation: FanReport,
        backend: RankBackend,
    ) -> Result<Self, CohomologyError> {
        if !validation.simplicial {
            return Err(FanError::Invalid("fan is not simplicial".into()).into());
        }
        if validation.complete == Completeness::Incomplete {
            return Err(FanError::Invalid(format!(
                "fan is not complete: {}",
                validation.messages.join("; ")
            ))
            .into());
        }
        let grading = GradingGroup::new(&fan)?;
        let generators = irrelevant_generators(&fan);
        let n = fan.nrays();
        if n >= 64 {
            return Err(FanError::Invalid("at most 63 rays are supported".into()).into());
        }
        let cache = PatternCache::new();
        let mut table = Vec::new();
        for mask in 0..(1u64 << n) {
            let pc = cache.compute(&generators, &SignPattern::from_mask(mask), n, backend);
            if pc.dims.first().copied().unwrap_or(0) != 0 {
                return Err(CohomologyError::Consistency(format!(
                    "H^0 of the limit complex is nonzero for pattern {:?}",
                    pc.pattern.one_based()
                )));
            }
            if let Some(p) = (n + 1..pc.dims.len()).find(|&p| pc.dims[p] != 0) {
                return Err(CohomologyError::Consistency(format!(
                    "local cohomology in degree {p} > {n}"
                )));
            }
            if !pc.is_zero() {
                table.push(pc);
            }
        }
        Ok(ToricCohomology {
            fan,
            validation,
            grading,
            generators,
            table,
            exact: backend == RankBackend::Exact,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn grading(&self) -> &GradingGroup {
        &self.grading
    }

    pub fn generators(&self) -> &[SquarefreeMonomial] {
        &self.generators
    }

    /// Nonzero pattern cohomology, patterns in increasing mask order.
    pub fn pattern_table(&self) -> &[SignPatternCohomology] {
        &self.table
    }

    pub fn nvars(&self) -> usize {
        self.fan.nrays()
    }

    /// `(pattern, multiplicity)` of the cone summands of `H^p(U, O)`
    /// (for `p = 0` only the part beyond `S`).
    pub fn summands(&self, p: usize) -> Vec<(SignPattern, usize)> {
        self.table
            .iter()
            .filter_map(|pc| {
                let m = pc.dim(p + 1);
                (m > 0).then(|| (pc.pattern.clone(), m))
            })
            .collect()
    }

    /// `dim H^p(X, O(alpha))`.
    pub fn sheaf_dim(&self, alpha: &GradingClass, p: usize) -> Result<usize, CohomologyError> {
        let n = self.nvars();
        if p > n {
            return Err(CohomologyError::IndexOutOfRange { p, n });
        }
        let count = |pattern: &SignPattern| -> Result<usize, CohomologyError> {
            self.grading.enumerate_degrees(alpha, pattern).map(|v| v.len()).map_err(|e| match e {
                crate::error::GradingError::UnboundedRegion { pattern } => CohomologyError::Consistency(format!(
                    "unbounded degree region for pattern {:?} in class {alpha}; the fan is not complete",
                    pattern.iter().map(|i| i + 1).collect::<Vec<_>>()
                )),
                other => other.into(),
            })
        };
        let mut total = 0;
        if p == 0 {
            total += count(&SignPattern::default())?;
        }
        for (pattern, mult) in self.summands(p) {
            total += mult * count(&pattern)?;
        }
        Ok(total)
    }

    /// All `h^p(alpha)` for `p = 0..=n`, degrees in the given order.
    pub fn table(&self, degrees: &[GradingClass]) -> Result<Vec<DegreeEntry>, CohomologyError> {
        let mut out = Vec::new();
        for alpha in degrees {
            let alpha = self.grading.normalize(alpha)?;
            for p in 0..=self.nvars() {
                out.push(DegreeEntry {
                    alpha: alpha.to_vec(),
                    p,
                    dim: self.sheaf_dim(&alpha, p)?,
                });
            }
        }
        Ok(out)
    }

    /// `h^0(O) = 1` and `h^p(O) = 0` for all `p > 0`.
    pub fn degree_zero_check(&self) -> Result<bool, CohomologyError> {
        let zero = self.grading.zero_class();
        for p in 0..=self.nvars() {
            let want = usize::from(p == 0);
            if self.sheaf_dim(&zero, p)? != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self, degrees: &[GradingClass]) -> Result<CohomologyReport, CohomologyError> {
        let n = self.nvars();
        let mut patterns = Vec::new();
        let mut closed_forms = Vec::new();
        for p in 0..n {
            let summands = self.summands(p);
            let mut text: Vec<String> = Vec::new();
            if p == 0 {
                text.push("S".into());
            }
            for (pattern, mult) in &summands {
                patterns.push(PatternEntry {
                    negative: pattern.one_based(),
                    p,
                    mult: *mult,
                });
                text.push(cone_text(pattern, *mult, n));
            }
            if !text.is_empty() {
                closed_forms.push(ClosedForm { p, summands: text });
            }
        }
        let degree_zero_check = self.degree_zero_check()?;
        let mut notes = vec![ERRATUM_NOTE.to_string()];
        if self.validation.complete == Completeness::Unverified {
            notes.push("completeness was checked by the wall condition only".into());
        }
        if !self.exact {
            notes.push("ranks computed modulo a prime: results are probabilistic".into());
        }
        if !self.summands(0).is_empty() {
            notes.push("H^1 of the limit complex is nonzero: H^0(U,O) is larger than S".into());
        }
        Ok(CohomologyReport {
            fan: FanSummary {
                dim: self.fan.dim(),
                rays: n,
                max_cones: self.fan.max_cones().len(),
                simplicial: self.validation.simplicial,
                complete: self.validation.complete,
                class_group_rank: self.grading.free_rank(),
                torsion: self.grading.torsion().to_vec(),
                variable_degrees: self
                    .grading
                    .variable_degrees()
                    .iter()
                    .map(GradingClass::to_vec)
                    .collect(),
                irrelevant_generators: self.generators.iter().map(ToString::to_string).collect(),
            },
            patterns,
            closed_forms,
            per_degree: self.table(degrees)?,
            basis_note: self.grading.basis_note(),
            exact: self.exact,
            degree_zero_check,
            notes,
        })
    }
}

fn cone_text(pattern: &SignPattern, mult: usize, n: usize) -> String {
    let neg: Vec<String> = pattern
        .one_based()
        .iter()
        .map(|i| format!("x{i}"))
        .collect();
    let pos: Vec<String> = (0..n)
        .filter(|&i| !pattern.contains(i))
        .map(|i| format!("x{}", i + 1))
        .collect();
    let coeff = if mult == 1 {
        "C".to_string()
    } else {
        format!("C^{mult}")
    };
    if pos.is_empty() {
        format!("{coeff}.x^a, a < 0 in {}", neg.join(","))
    } else {
        format!(
            "{coeff}.x^a, a < 0 in {}; a >= 0 in {}",
            neg.join(","),
            pos.join(",")
        )
    }
}

/// `H^p(U, O)` for all `p`, without per-degree data.
pub fn cohomology_of_u(fan: &Fan) -> Result<CohomologyReport, CohomologyError> {
    ToricCohomology::new(fan.clone())?.report(&[])
}

/// `dim H^p(X, O(alpha))`.
pub fn sheaf_cohomology_dim(
    fan: &Fan,
    alpha: &GradingClass,
    p: usize,
) -> Result<usize, CohomologyError> {
    ToricCohomology::new(fan.clone())?.sheaf_dim(alpha, p)
}

/// A report with `per_degree` filled for the given classes.
pub fn cohomology_table(
    fan: &Fan,
    degrees: &[GradingClass],
) -> Result<CohomologyReport, CohomologyError> {
    ToricCohomology::new(fan.clone())?.report(degrees)
}
