//! Cohomology of twisting sheaves on complete simplicial toric varieties.
//!
//! Starting from a fan, the crate builds the Cox ring `S = Q[x_1..x_n]`, its
//! class-group grading and irrelevant ideal `I`, and computes
//! `H^p(U, O_U)` for `U = A^n \ V(I)` as local cohomology `H^{p+1}_I(S)`.
//! Pushing forward along `U -> X` splits this into `H^p(X, O(alpha))` for
//! every class `alpha`. An independent route through Gröbner bases, free
//! resolutions and `Ext^p(S/I^[m], S)` cross-checks the limit computation.
// Dense matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fan;
pub mod grading;
pub mod groebner;
pub mod homalg;
pub mod linalg;
pub mod local_cohomology;
pub mod poly;
pub mod sheaf;

pub use error::{CohomologyError, FanError, GradingError, ModuleError, PolyError};
pub use fan::{
    irrelevant_generators, parse_fan, validate_fan, Completeness, Fan, FanReport,
    SquarefreeMonomial,
};
pub use grading::{GradingClass, GradingGroup, SignPattern};
pub use poly::{parse_polynomial, Coeff, FreeModuleElement, Monomial, Polynomial};
pub use sheaf::{
    cohomology_of_u, cohomology_table, sheaf_cohomology_dim, CohomologyReport, ToricCohomology,
};
