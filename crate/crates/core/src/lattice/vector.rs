use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::{deserialize_bigint, JsonInt};
use crate::rational::{Point, Rational};

/// An integer vector of the moment plane. Serializes as `[x, y]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVec {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticeVec {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Nonzero with coprime coordinates.
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y) == BigInt::from(1)
    }

    /// The primitive vector pointing the same way, or `None` for zero.
    pub fn primitive_part(&self) -> Option<LatticeVec> {
        if self.is_zero() {
            return None;
        }
        let g = self.x.gcd(&self.y);
        Some(LatticeVec {
            x: &self.x / &g,
            y: &self.y / &g,
        })
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec {
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    pub fn scaled(&self, k: &BigInt) -> LatticeVec {
        LatticeVec {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    /// `det [self other]`, the oriented area of the parallelogram.
    pub fn det(&self, other: &LatticeVec) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn is_parallel(&self, other: &LatticeVec) -> bool {
        self.det(other).is_zero()
    }

    /// `k` with `self = k * other`, when it exists.
    pub fn multiple_of(&self, other: &LatticeVec) -> Option<BigInt> {
        if !self.is_parallel(other) || other.is_zero() {
            return None;
        }
        let (num, den) = if other.x.is_zero() {
            (&self.y, &other.y)
        } else {
            (&self.x, &other.x)
        };
        let (q, r) = num.div_rem(den);
        r.is_zero().then_some(q)
    }

    /// Rational multiple `t` with `p = t * self`, if `p` is on the line spanned by `self`.
    pub fn coefficient_of(&self, p: &Point) -> Option<Rational> {
        let cross = &p.x * &self.y - &p.y * &self.x;
        if !cross.is_zero() || self.is_zero() {
            return None;
        }
        if self.x.is_zero() {
            Some(&p.y / &Rational::from(self.y.clone()))
        } else {
            Some(&p.x / &Rational::from(self.x.clone()))
        }
    }

    pub fn to_point(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }

    /// `+1`, `0` or `-1` for the orientation of `(self, other)`.
    pub fn orientation(&self, other: &LatticeVec) -> i32 {
        let d = self.det(other);
        if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for LatticeVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&JsonInt(&self.x))?;
        t.serialize_element(&JsonInt(&self.y))?;
        t.end()
    }
}

struct Coord(BigInt);

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_bigint(d).map(Coord)
    }
}

struct PairVisitor;

impl<'de> Visitor<'de> for PairVisitor {
    type Value = LatticeVec;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a two-element integer array")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LatticeVec, A::Error> {
        let Coord(x) = seq
            .next_element()?
            .ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let Coord(y) = seq
            .next_element()?
            .ok_or_else(|| de::Error::invalid_length(1, &self))?;
        if seq.next_element::<de::IgnoredAny>()?.is_some() {
            return Err(de::Error::invalid_length(3, &self));
        }
        Ok(LatticeVec { x, y })
    }
}

impl<'de> Deserialize<'de> for LatticeVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_seq(PairVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive() {
        assert!(LatticeVec::new(16, 3).is_primitive());
        assert!(LatticeVec::new(0, -1).is_primitive());
        assert!(!LatticeVec::new(4, 2).is_primitive());
        assert!(!LatticeVec::new(0, 0).is_primitive());
        assert!(!LatticeVec::new(0, 2).is_primitive());
        assert_eq!(
            LatticeVec::new(-4, 2).primitive_part().unwrap(),
            LatticeVec::new(-2, 1)
        );
    }

    #[test]
    fn multiples() {
        let d = LatticeVec::new(6, 1);
        assert_eq!(LatticeVec::new(18, 3).multiple_of(&d), Some(BigInt::from(3)));
        assert_eq!(LatticeVec::new(18, 4).multiple_of(&d), None);
        let p = Point::new(Rational::new(-3, 2), Rational::new(-1, 4));
        assert_eq!(d.coefficient_of(&p), Some(Rational::new(-1, 4)));
    }

    #[test]
    fn json() {
        let v = LatticeVec::new(16, -3);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[16,-3]");
        let back: LatticeVec = serde_json::from_str("[16,-3]").unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<LatticeVec>("[1,2,3]").is_err());
        assert!(serde_json::from_str::<LatticeVec>("[1]").is_err());
    }
}
