//! Truncated formal power series in one variable `t` with square integer
//! matrix coefficients.
//!
//! A series of order `N` stores the coefficients of `t^0, ..., t^N`. Binary
//! operations on series of different orders truncate to the smaller order and
//! record it in the result, so nothing past the known precision is ever
//! reported.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exec::Execution;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("constant coefficient is not invertible over the integers")]
    NonInvertibleConstantTerm,
    #[error("tensor algebra series needs a zero constant coefficient")]
    NonzeroConstantTerm,
    #[error("generator summand {index} has Adams degree {degree}; it must be at least 1")]
    AdamsDegreeNotPositive { index: usize, degree: i64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixPowerSeries {
    size: usize,
    coeffs: Vec<IntMatrix>,
}

impl MatrixPowerSeries {
    pub fn zero(size: usize, order: usize) -> Self {
        MatrixPowerSeries {
            size,
            coeffs: vec![IntMatrix::zero(size); order + 1],
        }
    }

    /// The unit series `1 = I t^0`.
    pub fn one(size: usize, order: usize) -> Self {
        Self::monomial(IntMatrix::identity(size), 0, order)
    }

    /// `matrix * t^degree`, truncated at `order`.
    pub fn monomial(matrix: IntMatrix, degree: usize, order: usize) -> Self {
        let size = matrix.size();
        let mut s = Self::zero(size, order);
        if degree <= order {
            s.coeffs[degree] = matrix;
        }
        s
    }

    /// Embeds a scalar polynomial `Σ c_k t^k` as `Σ c_k I t^k`.
    pub fn scalar_polynomial(size: usize, terms: &[(usize, i64)], order: usize) -> Self {
        let mut s = Self::zero(size, order);
        for &(deg, c) in terms {
            if deg <= order {
                s.coeffs[deg] = &s.coeffs[deg] + &IntMatrix::scalar(size, c);
            }
        }
        s
    }

    /// Builds a series from explicit coefficients, padding with zeros (or
    /// truncating) to `order`. Returns `None` on inconsistent sizes.
    pub fn from_coefficients(size: usize, mut coeffs: Vec<IntMatrix>, order: usize) -> Option<Self> {
        if coeffs.iter().any(|c| c.size() != size) {
            return None;
        }
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, IntMatrix::zero(size));
        Some(MatrixPowerSeries { size, coeffs })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Truncation order `N`: coefficients are known for `t^0..=t^N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, degree: usize) -> &IntMatrix {
        &self.coeffs[degree]
    }

    pub fn coefficients(&self) -> &[IntMatrix] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<IntMatrix> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(IntMatrix::is_zero)
    }

    /// Largest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Sum of every entry of every known coefficient.
    pub fn total_dimension(&self) -> BigInt {
        self.coeffs.iter().map(IntMatrix::entry_sum).sum()
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        MatrixPowerSeries {
            size: self.size,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplication by `t^k` (same order; high terms fall off).
    pub fn shifted(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(self.size, order);
        for d in k..=order {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    /// `M * self`, coefficientwise.
    pub fn left_mul_matrix(&self, m: &IntMatrix) -> Self {
        MatrixPowerSeries {
            size: self.size,
            coeffs: self.coeffs.iter().map(|c| m * c).collect(),
        }
    }

    pub fn transposed(&self) -> Self {
        MatrixPowerSeries {
            size: self.size,
            coeffs: self.coeffs.iter().map(IntMatrix::transpose).collect(),
        }
    }

    fn check_size(&self, other: &Self) -> Result<(), SeriesError> {
        if self.size != other.size {
            return Err(SeriesError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_size(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_size(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&IntMatrix, &IntMatrix) -> IntMatrix) -> Self {
        let order = self.order().min(other.order());
        MatrixPowerSeries {
            size: self.size,
            coeffs: (0..=order)
                .map(|d| f(&self.coeffs[d], &other.coeffs[d]))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul_with(other, Execution::default())
    }

    /// Cauchy product; each output coefficient is an independent work unit.
    pub fn try_mul_with(&self, other: &Self, exec: Execution) -> Result<Self, SeriesError> {
        self.check_size(other)?;
        let order = self.order().min(other.order());
        let coeffs = exec.map_indices(order + 1, |d| {
            let mut acc = IntMatrix::zero(self.size);
            for k in 0..=d {
                let a = &self.coeffs[k];
                let b = &other.coeffs[d - k];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        });
        Ok(MatrixPowerSeries {
            size: self.size,
            coeffs,
        })
    }

    /// Two-sided inverse up to the truncation order.
    ///
    /// Requires the constant coefficient to be invertible over the integers.
    /// Solves `a * b = 1` degree by degree: `b_n = -a_0^{-1} Σ_{k≥1} a_k b_{n-k}`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0_inv = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        let order = self.order();
        let mut out: Vec<IntMatrix> = Vec::with_capacity(order + 1);
        out.push(a0_inv.clone());
        for n in 1..=order {
            let mut acc = IntMatrix::zero(self.size);
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = &acc + &(a * &out[n - k]);
                }
            }
            out.push(-&(&a0_inv * &acc));
        }
        Ok(MatrixPowerSeries {
            size: self.size,
            coeffs: out,
        })
    }
}

impl std::fmt::Debug for MatrixPowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}t^{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

// The operator forms panic on size mismatch; the `try_*` methods report it.
impl Add for &MatrixPowerSeries {
    type Output = MatrixPowerSeries;
    fn add(self, rhs: &MatrixPowerSeries) -> MatrixPowerSeries {
        self.try_add(rhs).expect("series size mismatch")
    }
}

impl Sub for &MatrixPowerSeries {
    type Output = MatrixPowerSeries;
    fn sub(self, rhs: &MatrixPowerSeries) -> MatrixPowerSeries {
        self.try_sub(rhs).expect("series size mismatch")
    }
}

impl Mul for &MatrixPowerSeries {
    type Output = MatrixPowerSeries;
    fn mul(self, rhs: &MatrixPowerSeries) -> MatrixPowerSeries {
        self.try_mul(rhs).expect("series size mismatch")
    }
}

impl Neg for &MatrixPowerSeries {
    type Output = MatrixPowerSeries;
    fn neg(self) -> MatrixPowerSeries {
        MatrixPowerSeries {
            size: self.size,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// One shifted bimodule `M[-n](-m)` in a generating bimodule: its dimension
/// matrix, cohomological degree `n` and Adams degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSummand {
    pub dimension: IntMatrix,
    pub cohomological_degree: i64,
    pub adams_degree: i64,
}

impl GeneratorSummand {
    pub fn new(dimension: IntMatrix, cohomological_degree: i64, adams_degree: i64) -> Self {
        GeneratorSummand {
            dimension,
            cohomological_degree,
            adams_degree,
        }
    }
}

/// Generating bimodule of a (dg) tensor algebra as a list of shifted summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub summands: Vec<GeneratorSummand>,
}

impl GeneratorSpec {
    pub fn new(summands: Vec<GeneratorSummand>) -> Self {
        GeneratorSpec { summands }
    }
}

/// `Σ (-1)^n [M] t^m` over the summands `M[-n](-m)`.
pub fn generator_series(spec: &GeneratorSpec, order: usize) -> Result<MatrixPowerSeries, SeriesError> {
    let size = spec.summands.first().map_or(0, |s| s.dimension.size());
    let mut out = MatrixPowerSeries::zero(size, order);
    for (index, s) in spec.summands.iter().enumerate() {
        if s.adams_degree < 1 {
            return Err(SeriesError::AdamsDegreeNotPositive {
                index,
                degree: s.adams_degree,
            });
        }
        if s.dimension.size() != size {
            return Err(SeriesError::SizeMismatch {
                left: size,
                right: s.dimension.size(),
            });
        }
        let m = s.adams_degree as usize;
        if m > order {
            continue;
        }
        let signed = if s.cohomological_degree.rem_euclid(2) == 0 {
            s.dimension.clone()
        } else {
            -&s.dimension
        };
        out.coeffs[m] = &out.coeffs[m] + &signed;
    }
    Ok(out)
}

/// Hilbert series of the tensor algebra `T_A M`: `1 / (1 - h_M)`.
pub fn tensor_algebra_series(h_m: &MatrixPowerSeries) -> Result<MatrixPowerSeries, SeriesError> {
    if !h_m.coefficient(0).is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let one = MatrixPowerSeries::one(h_m.size(), h_m.order());
    (&one - h_m).invert()
}

/// `1 - C t + t^2`.
pub fn mesh_denominator(c: &IntMatrix, order: usize) -> MatrixPowerSeries {
    let r = c.size();
    let mut s = MatrixPowerSeries::scalar_polynomial(r, &[(0, 1), (2, 1)], order);
    if order >= 1 {
        s.coeffs[1] = -c;
    }
    s
}
