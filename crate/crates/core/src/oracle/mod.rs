//! Brute-force Hilbert series of graded quotients of `k[central] Q̄`, computed
//! by exact rank computations over `ℚ` or `F_p` with no knowledge of the
//! closed forms.

mod direct;
mod engine;
pub mod linalg;
pub mod presentation;

use thiserror::Error;

use crate::exec::Execution;
use crate::matrix::IntMatrix;
use crate::series::{mesh_denominator, MatrixPowerSeries};

use linalg::{with_domain, Domain, DomainVisitor};
use presentation::GradedPresentation;

pub use presentation::{
    build_presentation, mesh_relations, CentralGenerator, Monomial, NcElement, NcTerm, PresentationError,
    PresentationKind,
};

/// Environment variable overriding [`DEFAULT_MONOMIAL_CAP`].
pub const CAP_ENV_VAR: &str = "QH_MONOMIAL_CAP";
pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree {degree} needs {count} monomials, over the cap of {cap}")]
    DegreeOverflow { degree: usize, count: usize, cap: usize },
    #[error("invalid {CAP_ENV_VAR} value `{0}`")]
    InvalidCap(String),
    #[error("need coefficients up to degree {needed}, got {got}")]
    InsufficientDegree { needed: usize, got: usize },
    #[error("h·(1 - Ct + t²) is not 1 + (permutation)·t^h: bad coefficient in degree {degree}")]
    NotAPermutationResidue { degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of monomials (summed over blocks) allowed in one degree.
    pub monomial_cap: usize,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    /// Default config with the cap taken from `QH_MONOMIAL_CAP` if set.
    pub fn from_env() -> Result<Self, OracleError> {
        let mut config = OracleConfig::default();
        if let Ok(value) = std::env::var(CAP_ENV_VAR) {
            config.monomial_cap = value.trim().parse().map_err(|_| OracleError::InvalidCap(value.clone()))?;
        }
        Ok(config)
    }

    pub fn with_execution(self, execution: Execution) -> Self {
        OracleConfig { execution, ..self }
    }

    pub fn with_cap(self, monomial_cap: usize) -> Self {
        OracleConfig { monomial_cap, ..self }
    }
}

/// Dimension matrices of the quotient in degrees `0..=max_degree`.
pub fn graded_quotient_dims(pres: &GradedPresentation, max_degree: usize) -> Result<Vec<IntMatrix>, OracleError> {
    graded_quotient_dims_with(pres, max_degree, &OracleConfig::default())
}

pub fn graded_quotient_dims_with(
    pres: &GradedPresentation,
    max_degree: usize,
    config: &OracleConfig,
) -> Result<Vec<IntMatrix>, OracleError> {
    struct Run<'a> {
        pres: &'a GradedPresentation,
        max_degree: usize,
        config: &'a OracleConfig,
    }
    impl DomainVisitor for Run<'_> {
        type Output = Result<Vec<IntMatrix>, OracleError>;
        fn visit<D: Domain>(self, domain: &D) -> Self::Output {
            engine::quotient_dims(self.pres, domain.clone(), self.max_degree, self.config)
        }
    }
    with_domain(
        pres.field(),
        Run {
            pres,
            max_degree,
            config,
        },
    )
}

/// Same output as [`graded_quotient_dims_with`], but from the full list of
/// monomials and relation products `m·r·m'` in each degree. Only practical at
/// low degrees.
pub fn relation_slice_dims(
    pres: &GradedPresentation,
    max_degree: usize,
    config: &OracleConfig,
) -> Result<Vec<IntMatrix>, OracleError> {
    struct Run<'a> {
        pres: &'a GradedPresentation,
        max_degree: usize,
        config: &'a OracleConfig,
    }
    impl DomainVisitor for Run<'_> {
        type Output = Result<Vec<IntMatrix>, OracleError>;
        fn visit<D: Domain>(self, domain: &D) -> Self::Output {
            direct::slice_dims(self.pres, domain, self.max_degree, self.config)
        }
    }
    with_domain(
        pres.field(),
        Run {
            pres,
            max_degree,
            config,
        },
    )
}

/// Recovers `P` from brute-force coefficients of a Dynkin preprojective
/// algebra, using `h·(1 - Ct + t²) = 1 + P t^h`.
pub fn infer_nakayama(coeffs: &[IntMatrix], c: &IntMatrix, h: usize) -> Result<IntMatrix, OracleError> {
    if coeffs.len() < h + 1 {
        return Err(OracleError::InsufficientDegree {
            needed: h,
            got: coeffs.len().saturating_sub(1),
        });
    }
    let size = c.size();
    let order = coeffs.len() - 1;
    let series = MatrixPowerSeries::from_coefficients(size, coeffs.to_vec(), order)
        .expect("coefficients have matching sizes");
    let product = series.try_mul(&mesh_denominator(c, order)).expect("sizes agree");
    let mut p = None;
    for (degree, m) in product.coefficients().iter().enumerate() {
        let ok = match degree {
            0 => m.is_identity(),
            d if d == h => {
                let perm = m.as_permutation();
                p = perm.is_some().then(|| m.clone());
                perm.is_some()
            }
            _ => m.is_zero(),
        };
        if !ok {
            return Err(OracleError::NotAPermutationResidue { degree });
        }
    }
    Ok(p.expect("degree h is checked"))
}
