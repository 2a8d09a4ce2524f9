//! Arbitrary-precision integer vectors.

use std::fmt;
use std::ops::{Add, Deref, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// An integer vector with arbitrary-precision entries.
///
/// Ordering is lexicographic on the entries, which is the canonical order
/// used for every sorted output in this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    /// Standard basis vector `e_index` of the given length.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = BigInt::from(1);
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        dot(&self.0, other)
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }

    /// Gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g == BigInt::from(1) {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    /// True when every entry is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Entries as `i64`, if all of them fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl Deref for IntVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&json_int(x))?;
        }
        seq.end()
    }
}

/// JSON rendering of a big integer: a number when it fits in `i64`, a
/// decimal string otherwise.
pub fn json_int(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(x.to_string()),
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `A x` for a generator list `columns` (each column of length `dim`).
pub fn combine(columns: &[IntVector], coeffs: &[BigInt], dim: usize) -> IntVector {
    let mut out = vec![BigInt::zero(); dim];
    for (col, c) in columns.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col.iter()) {
            *o += c * x;
        }
    }
    IntVector(out)
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::from(1), |l, x| l.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_content() {
        let v = IntVector::from([4, -6, 0]);
        assert_eq!(v.primitive(), IntVector::from([2, -3, 0]));
        assert_eq!(IntVector::zeros(2).primitive(), IntVector::zeros(2));
    }

    #[test]
    fn lexicographic_order() {
        let mut vs = [IntVector::from([1, 0]), IntVector::from([0, 5]), IntVector::from([0, -1])];
        vs.sort();
        assert_eq!(vs[0], IntVector::from([0, -1]));
        assert_eq!(vs[2], IntVector::from([1, 0]));
    }

    #[test]
    fn big_entries_serialize_as_strings() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let v = IntVector::new(vec![BigInt::from(3), big.clone()]);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json[0], 3);
        assert_eq!(json[1], big.to_string());
    }
}
