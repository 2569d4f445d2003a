//! Classical polar spaces over small finite fields: construction of the
//! standard sesquilinear/quadratic forms, enumeration of totally isotropic
//! subspaces, dual polar and collinearity graphs, exact rational linear
//! algebra on the point–generator incidence matrix, closed-form parameter
//! evaluation, and resolving-set extraction for the dual polar graph metric.
//!
//! All computation is exact: finite-field arithmetic uses full lookup
//! tables, matrix ranks are computed fraction-free over the integers, and
//! half-integer powers of `q` are handled as rationals in the base `sqrt(q)`.

pub mod error;
pub mod exactla;
pub mod formulas;
pub mod forms;
pub mod fqlin;
pub mod gf;
pub mod graphs;
pub mod isotropic;
pub mod resolving;
pub mod serialize;

pub use error::{Error, Result};
pub use exactla::{incidence_matrix, rank_exact, ExactMatrix, IncidenceMatrix};
pub use formulas::{full_report, FormulaReport, ParamTriple, SrgValues};
pub use forms::{make_polar_space, make_polar_space_with_budget, Family, PolarSpaceDescriptor};
pub use gf::{make_field, FieldElement, FieldTable};
pub use graphs::{collinearity_graph, dual_polar_graph, Graph, SrgParams};
pub use isotropic::{enumerate_isotropic, enumerate_points, Subspace};
pub use resolving::{
    exact_metric_dimension, greedy_minimize, rowbasis_resolving_set, verify_resolving,
    ConjectureReport, ExactOutcome, Method, ResolvingSet,
};
