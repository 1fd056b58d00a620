//! Square integer matrices with arbitrary-precision entries.
//!
//! These carry dimension matrices `(dim e_i M e_j)_{ij}` as well as the signed
//! Euler-characteristic coefficients of dg Hilbert series, so entries may be
//! negative and are never bounded in width.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An `r x r` matrix of `BigInt`s stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(size: usize) -> Self {
        IntMatrix {
            size,
            entries: vec![BigInt::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = BigInt::one();
        }
        m
    }

    /// `scalar * I`.
    pub fn scalar(size: usize, value: impl Into<BigInt>) -> Self {
        let value = value.into();
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = value.clone();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics if the rows are not square.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), size, "matrix rows must have length {size}");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { size, entries }
    }

    /// Builds a matrix from big-integer rows, returning `None` if not square.
    pub fn try_from_big_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return None;
        }
        Some(IntMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Permutation matrix `P = (δ_{σ(i) j})` for a 0-based permutation `σ`.
    pub fn permutation(images: &[usize]) -> Self {
        let size = images.len();
        let mut m = Self::zero(size);
        for (i, &j) in images.iter().enumerate() {
            m.entries[i * size + j] = BigInt::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.size + j] = value.into();
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.size.max(1))
            .take(self.size)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    /// Sum of all entries; for a dimension matrix this is the total dimension.
    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        m
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        IntMatrix {
            size: self.size,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// If this is a permutation matrix, returns the 0-based permutation `σ` with
    /// entry `(i, σ(i))` equal to one.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.size;
        let mut images = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut image = None;
            for j in 0..n {
                let x = self.get(i, j);
                if x.is_one() {
                    if image.is_some() {
                        return None;
                    }
                    image = Some(j);
                } else if !x.is_zero() {
                    return None;
                }
            }
            let j = image?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            images.push(j);
        }
        Some(images)
    }

    /// Inverse over the integers, if the determinant is a unit.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let n = self.size;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let delta = &f * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                out.entries[i * n + j] = x.to_integer();
            }
        }
        Some(out)
    }

    fn assert_same_size(&self, other: &Self) {
        assert_eq!(self.size, other.size, "matrix size mismatch");
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.assert_same_size(rhs);
        IntMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.assert_same_size(rhs);
        IntMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.assert_same_size(rhs);
        let n = self.size;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            size: self.size,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntMatrix {
            type Output = IntMatrix;
            fn $method(self, rhs: IntMatrix) -> IntMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Row-major bracket notation: `[[0,1],[1,0]]`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
