//! Closed-form truncated Hilbert series of path algebras, preprojective
//! algebras, quiver Heisenberg algebras and their derived versions.
//!
//! Matrix fractions are never formed. Numerators multiply inverted
//! denominators on the left, in the order written.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dynkin::{classify, is_regular, nakayama_matrix, root_data, DynkinError};
use crate::field::WeightVector;
use crate::matrix::IntMatrix;
use crate::quiver::Quiver;
use crate::series::{
    generator_series, mesh_denominator, tensor_algebra_series, GeneratorSpec, GeneratorSummand,
    MatrixPowerSeries, SeriesError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("weight vector not regular")]
    NotRegular,
    #[error("this algebra needs a weight vector")]
    WeightRequired,
    #[error("weight vector has {got} entries, quiver has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    PathAlgebra,
    Preprojective,
    DerivedPreprojective,
    Qha,
    DerivedQha,
}

impl AlgebraKind {
    pub fn needs_weight(self) -> bool {
        self == AlgebraKind::Qha
    }

    /// Closed form for this algebra, truncated at `order`.
    pub fn series(
        self,
        q: &Quiver,
        v: Option<&WeightVector>,
        order: usize,
    ) -> Result<MatrixPowerSeries, FormulaError> {
        Ok(match self {
            AlgebraKind::PathAlgebra => path_algebra_series(q, order),
            AlgebraKind::Preprojective => preprojective_series(q, order),
            AlgebraKind::DerivedPreprojective => derived_preprojective_series(q, order),
            AlgebraKind::Qha => qha_series(q, v.ok_or(FormulaError::WeightRequired)?, order)?,
            AlgebraKind::DerivedQha => derived_qha_series(q, order),
        })
    }
}

impl FromStr for AlgebraKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(AlgebraKind::PathAlgebra),
            "preproj" => Ok(AlgebraKind::Preprojective),
            "dpreproj" => Ok(AlgebraKind::DerivedPreprojective),
            "qha" => Ok(AlgebraKind::Qha),
            "dqha" => Ok(AlgebraKind::DerivedQha),
            other => Err(format!(
                "unknown algebra `{other}` (expected path|preproj|dpreproj|qha|dqha)"
            )),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::PathAlgebra => "path",
            AlgebraKind::Preprojective => "preproj",
            AlgebraKind::DerivedPreprojective => "dpreproj",
            AlgebraKind::Qha => "qha",
            AlgebraKind::DerivedQha => "dqha",
        };
        f.write_str(s)
    }
}

/// `max(2h, 12)` for Dynkin quivers; `None` otherwise (the caller chooses).
pub fn default_truncation(q: &Quiver) -> Option<usize> {
    root_data(q).ok().map(|rd| (2 * rd.coxeter_number).max(12))
}

fn invert_known(s: &MatrixPowerSeries) -> MatrixPowerSeries {
    s.invert().expect("denominator has identity constant term")
}

/// `1 / (1 - t^2)` as a scalar series.
fn central_factor_inverse(size: usize, order: usize) -> MatrixPowerSeries {
    let terms: Vec<(usize, i64)> = (0..=order).step_by(2).map(|d| (d, 1)).collect();
    MatrixPowerSeries::scalar_polynomial(size, &terms, order)
}

/// `h_{kQ} = 1 / (1 - [V] t)`.
pub fn path_algebra_series(q: &Quiver, order: usize) -> MatrixPowerSeries {
    let v = MatrixPowerSeries::monomial(q.arrow_matrix(), 1, order);
    tensor_algebra_series(&v).expect("[V]t has zero constant term")
}

/// Preprojective series from adjacency data alone.
///
/// Without Dynkin data: `1 / (1 - Ct + t^2)`. With `(P, h)`:
/// `(1 + P t^h) / (1 - Ct + t^2)`.
pub fn preprojective_closed_form(
    c: &IntMatrix,
    dynkin: Option<(&IntMatrix, usize)>,
    order: usize,
) -> MatrixPowerSeries {
    let inv = invert_known(&mesh_denominator(c, order));
    match dynkin {
        None => inv,
        Some((p, h)) => {
            let r = c.size();
            let numerator = &MatrixPowerSeries::one(r, order)
                + &MatrixPowerSeries::monomial(p.clone(), h, order);
            &numerator * &inv
        }
    }
}

/// Hilbert series of the preprojective algebra `Π(Q)`.
pub fn preprojective_series(q: &Quiver, order: usize) -> MatrixPowerSeries {
    let c = q.adjacency();
    match (root_data(q), nakayama_matrix(q)) {
        (Ok(rd), Ok(nak)) => {
            preprojective_closed_form(&c, Some((&nak.matrix, rd.coxeter_number)), order)
        }
        _ => preprojective_closed_form(&c, None, order),
    }
}

/// Generating bimodule `V(-1) ⊕ V*(-1) ⊕ A[1](-2)`.
pub fn derived_preprojective_generators(q: &Quiver) -> GeneratorSpec {
    let v = q.arrow_matrix();
    let r = q.vertex_count();
    GeneratorSpec::new(vec![
        GeneratorSummand::new(v.clone(), 0, 1),
        GeneratorSummand::new(v.transpose(), 0, 1),
        GeneratorSummand::new(IntMatrix::identity(r), -1, 2),
    ])
}

/// Euler-characteristic series of the derived preprojective algebra.
pub fn derived_preprojective_series(q: &Quiver, order: usize) -> MatrixPowerSeries {
    let h = generator_series(&derived_preprojective_generators(q), order)
        .expect("all Adams degrees are positive");
    tensor_algebra_series(&h).expect("generator series has zero constant term")
}

/// QHA series from adjacency data alone.
///
/// Without Dynkin data: `1 / ((1 - Ct + t^2)(1 - t^2))`. With Coxeter number
/// `h`: `(1 - t^{2h}) / ((1 - Ct + t^2)(1 - t^2))`.
pub fn qha_closed_form(c: &IntMatrix, coxeter_number: Option<usize>, order: usize) -> MatrixPowerSeries {
    let r = c.size();
    let inv = &invert_known(&mesh_denominator(c, order)) * &central_factor_inverse(r, order);
    match coxeter_number {
        None => inv,
        Some(h) => {
            let numerator = MatrixPowerSeries::scalar_polynomial(r, &[(0, 1), (2 * h, -1)], order);
            &numerator * &inv
        }
    }
}

/// Hilbert series of the quiver Heisenberg algebra `ᵛΛ(Q)`.
///
/// Any `v` is accepted for non-Dynkin quivers; Dynkin quivers need `v` regular
/// in its field.
pub fn qha_series(q: &Quiver, v: &WeightVector, order: usize) -> Result<MatrixPowerSeries, FormulaError> {
    if v.len() != q.vertex_count() {
        return Err(FormulaError::WeightLength {
            expected: q.vertex_count(),
            got: v.len(),
        });
    }
    let c = q.adjacency();
    if !classify(q).is_dynkin() {
        return Ok(qha_closed_form(&c, None, order));
    }
    let rd = root_data(q)?;
    if !is_regular(q, v, &rd)? {
        return Err(FormulaError::NotRegular);
    }
    Ok(qha_closed_form(&c, Some(rd.coxeter_number), order))
}

/// Generating bimodule of the derived QHA:
/// `V(-1) ⊕ V*(-1) ⊕ V*[1](-3) ⊕ V[1](-3)` plus the loops `t_i` in
/// cohomological degree `-2`, Adams degree 4.
pub fn derived_qha_generators(q: &Quiver) -> GeneratorSpec {
    let v = q.arrow_matrix();
    let r = q.vertex_count();
    GeneratorSpec::new(vec![
        GeneratorSummand::new(v.clone(), 0, 1),
        GeneratorSummand::new(v.transpose(), 0, 1),
        GeneratorSummand::new(v.transpose(), -1, 3),
        GeneratorSummand::new(v, -1, 3),
        GeneratorSummand::new(IntMatrix::identity(r), -2, 4),
    ])
}

/// Euler-characteristic series of the derived QHA, `1 / (1 - Ct + Ct^3 - t^4)`.
pub fn derived_qha_series(q: &Quiver, order: usize) -> MatrixPowerSeries {
    let h = generator_series(&derived_qha_generators(q), order).expect("all Adams degrees are positive");
    tensor_algebra_series(&h).expect("generator series has zero constant term")
}

/// `hΠ - hΛ + t^2 hΛ - t^h P hΠ`; vanishes exactly when the two series are
/// consistent with the four-term exact sequence relating `Π` and `ᵛΛ`.
pub fn exact_sequence_residual(
    h_pi: &MatrixPowerSeries,
    h_lambda: &MatrixPowerSeries,
    p: &IntMatrix,
    h: usize,
) -> Result<MatrixPowerSeries, FormulaError> {
    if h_pi.size() != h_lambda.size() || p.size() != h_pi.size() {
        return Err(SeriesError::SizeMismatch {
            left: h_pi.size(),
            right: if p.size() != h_pi.size() { p.size() } else { h_lambda.size() },
        }
        .into());
    }
    let shifted = h_pi.left_mul_matrix(p).shifted(h);
    let acc = h_pi.try_sub(h_lambda)?;
    let acc = acc.try_add(&h_lambda.shifted(2))?;
    Ok(acc.try_sub(&shifted)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::field::Field;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[("a", 1, 2)]).unwrap()
    }

    fn kronecker() -> Quiver {
        Quiver::from_edges(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap()
    }

    #[test]
    fn path_algebra_examples() {
        let s = path_algebra_series(&a2(), 5);
        assert_eq!(s.coefficient(1), &a2().arrow_matrix());
        assert_eq!(s.degree(), Some(1));
        let a3 = DynkinType::A(3).quiver();
        let s = path_algebra_series(&a3, 4);
        assert_eq!(s.coefficient(2), &IntMatrix::from_rows(&[[0, 0, 1], [0, 0, 0], [0, 0, 0]]));
        let s = path_algebra_series(&kronecker(), 3);
        assert_eq!(s.coefficient(1), &IntMatrix::from_rows(&[[0, 2], [0, 0]]));
    }

    #[test]
    fn preprojective_examples() {
        let s = preprojective_series(&a2(), 8);
        assert_eq!(s.coefficient(0), &IntMatrix::identity(2));
        assert_eq!(s.coefficient(1), &a2().adjacency());
        assert_eq!(s.degree(), Some(1));
        assert_eq!(s.total_dimension(), 4.into());

        let a1 = Quiver::from_edges(1, &[]).unwrap();
        assert_eq!(preprojective_series(&a1, 6), MatrixPowerSeries::one(1, 6));

        let s = preprojective_series(&kronecker(), 4);
        assert_eq!(s.coefficient(2), &IntMatrix::from_rows(&[[3, 0], [0, 3]]));

        let s = preprojective_series(&DynkinType::A(3).quiver(), 10);
        assert_eq!(s.total_dimension(), 10.into());
    }

    #[test]
    fn derived_preprojective_examples() {
        let kr = kronecker();
        assert_eq!(derived_preprojective_series(&kr, 8), preprojective_series(&kr, 8));
        let s = derived_preprojective_series(&a2(), 7);
        let c = a2().adjacency();
        let i = IntMatrix::identity(2);
        assert_eq!(s.coefficient(3), &-&c);
        assert_eq!(s.coefficient(4), &-&i);
        assert!(s.coefficient(5).is_zero());
        assert_eq!(s.coefficient(6), &i);
    }

    #[test]
    fn qha_examples() {
        let kr = kronecker();
        let v = WeightVector::from_integers(Field::Rational, &[1, 1]);
        let s = qha_series(&kr, &v, 4).unwrap();
        assert_eq!(s.coefficient(2), &IntMatrix::from_rows(&[[4, 0], [0, 4]]));

        let s = qha_series(&a2(), &v, 10).unwrap();
        let c = a2().adjacency();
        assert_eq!(s.coefficient(0), &IntMatrix::identity(2));
        assert_eq!(s.coefficient(1), &c);
        assert_eq!(s.coefficient(2), &IntMatrix::identity(2));
        assert_eq!(s.degree(), Some(2));
        assert_eq!(s.total_dimension(), 6.into());

        let bad = WeightVector::from_integers(Field::Rational, &[1, 0]);
        assert_eq!(qha_series(&a2(), &bad, 6), Err(FormulaError::NotRegular));

        // v = 0 on a non-Dynkin quiver: Π ⊗ k[z]
        let zero = WeightVector::from_integers(Field::Rational, &[0, 0]);
        let lhs = qha_series(&kr, &zero, 8).unwrap();
        let rhs = &preprojective_series(&kr, 8) * &central_factor_inverse(2, 8);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derived_qha_examples() {
        let kr = kronecker();
        let v = WeightVector::from_integers(Field::Prime(3), &[1, 0]);
        assert_eq!(derived_qha_series(&kr, 8), qha_series(&kr, &v, 8).unwrap());

        // (1 - t^6) h_dqha = h_qha for A2 (h = 3)
        let q = a2();
        let v = WeightVector::from_integers(Field::Rational, &[1, 1]);
        let d = derived_qha_series(&q, 14);
        let lam = qha_series(&q, &v, 14).unwrap();
        assert_eq!(&d - &d.shifted(6), lam);
    }

    #[test]
    fn residual_examples() {
        for ty in [DynkinType::A(2), DynkinType::A(3)] {
            let q = ty.quiver();
            let h = root_data(&q).unwrap().coxeter_number;
            let p = nakayama_matrix(&q).unwrap().matrix;
            let v = WeightVector::from_integers(Field::Rational, &vec![1; q.vertex_count()]);
            let hp = preprojective_series(&q, 2 * h);
            let hl = qha_series(&q, &v, 2 * h).unwrap();
            assert!(exact_sequence_residual(&hp, &hl, &p, h).unwrap().is_zero(), "{ty}");
        }
        let q = a2();
        let v = WeightVector::from_integers(Field::Rational, &[1, 1]);
        let hp = preprojective_series(&q, 6);
        let hl = qha_series(&q, &v, 6).unwrap();
        let res = exact_sequence_residual(&hp, &hl, &IntMatrix::identity(2), 3).unwrap();
        assert!(res.coefficient(0).is_zero() && res.coefficient(2).is_zero());
        assert!(!res.coefficient(3).is_zero());
        assert!(exact_sequence_residual(&hp, &hl, &IntMatrix::identity(3), 3).is_err());
    }

    #[test]
    fn default_truncation_rule() {
        assert_eq!(default_truncation(&a2()), Some(12));
        assert_eq!(default_truncation(&DynkinType::E8.quiver()), Some(60));
        assert_eq!(default_truncation(&kronecker()), None);
    }
}
