//! Truncated Hilbert series of path algebras, preprojective algebras, quiver
//! Heisenberg algebras and their derived versions, as matrix-valued power
//! series. Closed forms live in [`formulas`]; [`oracle`] recomputes the same
//! numbers from a presentation by exact linear algebra.

pub mod dynkin;
pub mod exec;
pub mod field;
pub mod formulas;
pub mod matrix;
pub mod oracle;
pub mod quiver;
pub mod series;

pub use dynkin::{classify, nakayama_matrix, root_data, DynkinError, DynkinType, NakayamaData, QuiverClass, RootData};
pub use exec::Execution;
pub use field::{Field, FieldError, WeightVector};
pub use formulas::{AlgebraKind, FormulaError};
pub use matrix::IntMatrix;
pub use oracle::presentation::GradedPresentation;
pub use oracle::{
    build_presentation, graded_quotient_dims, graded_quotient_dims_with, infer_nakayama, OracleConfig, OracleError,
    PresentationError, PresentationKind,
};
pub use quiver::{parse_quiver, Arrow, DoubleArrow, Quiver, QuiverError};
pub use series::{GeneratorSpec, GeneratorSummand, MatrixPowerSeries, SeriesError};
