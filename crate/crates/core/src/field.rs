//! Coefficient fields (`ℚ` or `F_p`) and weight vectors over them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("invalid field `{0}` (expected `q` or `fp:<prime>`)")]
    InvalidSpec(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid weight entry `{0}`")]
    InvalidEntry(String),
    #[error("weight entry `{0}` is a fraction; weights over F_p are entered as integers")]
    FractionOverPrimeField(String),
    #[error("weight vector has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// Largest prime accepted for `F_p`; keeps products of reduced entries in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) && p <= MAX_PRIME {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Image of an integer in this field, as a canonical rational:
    /// itself over `ℚ`, its least nonnegative residue over `F_p`.
    pub fn reduce(self, x: &BigInt) -> BigRational {
        match self {
            Field::Rational => BigRational::from_integer(x.clone()),
            Field::Prime(p) => BigRational::from_integer(x.mod_floor(&BigInt::from(p))),
        }
    }

    /// Whether an integer vanishes in this field.
    pub fn is_zero_integer(self, x: &BigInt) -> bool {
        match self {
            Field::Rational => x.is_zero(),
            Field::Prime(p) => (x % BigInt::from(p)).is_zero(),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| FieldError::InvalidSpec(s.to_string()))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A vector `v = (v_1, ..., v_r)` over a concrete field.
///
/// Entries over `F_p` are stored as their least nonnegative residues; over `ℚ`
/// as reduced fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    field: Field,
    entries: Vec<BigRational>,
}

impl WeightVector {
    pub fn from_integers(field: Field, values: &[i64]) -> Self {
        WeightVector {
            field,
            entries: values.iter().map(|&v| field.reduce(&BigInt::from(v))).collect(),
        }
    }

    /// Rational entries; over `F_p` every entry must be an integer.
    pub fn from_rationals(field: Field, values: Vec<BigRational>) -> Result<Self, FieldError> {
        let mut entries = Vec::with_capacity(values.len());
        for v in values {
            match field {
                Field::Rational => entries.push(v),
                Field::Prime(_) => {
                    if !v.is_integer() {
                        return Err(FieldError::FractionOverPrimeField(v.to_string()));
                    }
                    entries.push(field.reduce(&v.to_integer()));
                }
            }
        }
        Ok(WeightVector { field, entries })
    }

    /// Parses comma-separated entries: integers, or fractions `a/b` over `ℚ`.
    pub fn parse(text: &str, field: Field, expected_len: usize) -> Result<Self, FieldError> {
        let mut values = Vec::new();
        for raw in text.split(',') {
            let t = raw.trim();
            let value = match t.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| FieldError::InvalidEntry(t.into()))?;
                    let d: BigInt = d.trim().parse().map_err(|_| FieldError::InvalidEntry(t.into()))?;
                    if d.is_zero() {
                        return Err(FieldError::InvalidEntry(t.into()));
                    }
                    if matches!(field, Field::Prime(_)) {
                        return Err(FieldError::FractionOverPrimeField(t.into()));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(
                    t.parse::<BigInt>().map_err(|_| FieldError::InvalidEntry(t.into()))?,
                ),
            };
            values.push(value);
        }
        if values.len() != expected_len {
            return Err(FieldError::WrongLength {
                expected: expected_len,
                got: values.len(),
            });
        }
        Self::from_rationals(field, values)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero_at(&self, i: usize) -> bool {
        self.entries[i].is_zero()
    }

    /// Every entry nonzero.
    pub fn is_sincere(&self) -> bool {
        self.entries.iter().all(|v| !v.is_zero())
    }

    /// Whether `Σ v_i d_i` is nonzero in the field.
    pub fn pairing_is_nonzero(&self, d: &[i64]) -> bool {
        let sum: BigRational = self
            .entries
            .iter()
            .zip(d)
            .map(|(v, &di)| v * BigRational::from_integer(BigInt::from(di)))
            .sum();
        match self.field {
            Field::Rational => !sum.is_zero(),
            // entries are integers here, so the sum is too
            Field::Prime(_) => !self.field.is_zero_integer(&sum.to_integer()),
        }
    }

    /// Entry `i` as an integer fraction `(numerator, denominator)` with positive
    /// denominator. Over `F_p` the denominator is one.
    pub fn as_fraction(&self, i: usize) -> (BigInt, BigInt) {
        let v = &self.entries[i];
        (v.numer().clone(), v.denom().clone())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({}) over {}", parts.join(","), self.field)
    }
}

/// Inverse modulo a prime `p`, `None` for zero.
pub(crate) fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    Some(mod_pow(a % p, p - 2, p))
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
