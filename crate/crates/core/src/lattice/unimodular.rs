use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LatticeError, LatticeVec};
use crate::json::JsonInt;
use crate::rational::Point;

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        IntMatrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(u: &LatticeVec, v: &LatticeVec) -> Self {
        IntMatrix2 {
            a: u.x.clone(),
            b: v.x.clone(),
            c: u.y.clone(),
            d: v.y.clone(),
        }
    }

    /// `[[k, -1], [1, 0]]`, the step that turns one plumbing piece into the next.
    pub fn plumbing_step(k: impl Into<BigInt>) -> Self {
        IntMatrix2::new(k, -1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply(&self, v: &LatticeVec) -> LatticeVec {
        LatticeVec {
            x: &self.a * &v.x + &self.b * &v.y,
            y: &self.c * &v.x + &self.d * &v.y,
        }
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        Point {
            x: &(&p.x * &self.a) + &(&p.y * &self.b),
            y: &(&p.x * &self.c) + &(&p.y * &self.d),
        }
    }

    /// Inverse of a determinant `±1` matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix2> {
        let det = self.det();
        if det == BigInt::one() {
            Some(IntMatrix2 {
                a: self.d.clone(),
                b: -&self.b,
                c: -&self.c,
                d: self.a.clone(),
            })
        } else if det == -BigInt::one() {
            Some(IntMatrix2 {
                a: -&self.d,
                b: self.b.clone(),
                c: self.c.clone(),
                d: -&self.a,
            })
        } else {
            None
        }
    }

    pub fn column(&self, j: usize) -> LatticeVec {
        match j {
            0 => LatticeVec::new(self.a.clone(), self.c.clone()),
            _ => LatticeVec::new(self.b.clone(), self.d.clone()),
        }
    }
}

impl fmt::Debug for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for IntMatrix2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [
            [JsonInt(&self.a), JsonInt(&self.b)],
            [JsonInt(&self.c), JsonInt(&self.d)],
        ]
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // rows read as lattice vectors
        let [r0, r1] = <[LatticeVec; 2]>::deserialize(d)?;
        Ok(IntMatrix2 {
            a: r0.x,
            b: r0.y,
            c: r1.x,
            d: r1.y,
        })
    }
}

/// Affine map `p -> B p + r` of the moment plane with `B` in `GL(2, Z)`.
///
/// This is the `p`-component of the cotangent lift `(p, q) -> (Bp + r, B^{-T} q)`,
/// so it carries moment domains to moment domains of symplectomorphic models.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnimodularMap {
    linear: IntMatrix2,
    translation: Point,
}

impl UnimodularMap {
    pub fn new(linear: IntMatrix2, translation: Point) -> Result<Self, LatticeError> {
        let det = linear.det();
        if det != BigInt::one() && det != -BigInt::one() {
            return Err(LatticeError::NotUnimodular { det });
        }
        Ok(UnimodularMap {
            linear,
            translation,
        })
    }

    pub fn identity() -> Self {
        UnimodularMap {
            linear: IntMatrix2::identity(),
            translation: Point::origin(),
        }
    }

    pub fn translation(by: Point) -> Self {
        UnimodularMap {
            linear: IntMatrix2::identity(),
            translation: by,
        }
    }

    pub fn linear_part(&self) -> &IntMatrix2 {
        &self.linear
    }

    pub fn translation_part(&self) -> &Point {
        &self.translation
    }

    pub fn det(&self) -> BigInt {
        self.linear.det()
    }

    pub fn is_translation(&self) -> bool {
        self.linear == IntMatrix2::identity()
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        &self.linear.apply_point(p) + &self.translation
    }

    pub fn apply_vec(&self, v: &LatticeVec) -> LatticeVec {
        self.linear.apply(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            linear: self.linear.mul(&inner.linear),
            translation: self.apply_point(&inner.translation),
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let inv = self
            .linear
            .unimodular_inverse()
            .expect("determinant checked at construction");
        let moved = inv.apply_point(&self.translation);
        UnimodularMap {
            linear: inv,
            translation: Point::new(-&moved.x, -&moved.y),
        }
    }
}

impl fmt::Debug for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p -> {:?} p + {:?}", self.linear, self.translation)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    linear: IntMatrix2,
    translation: Point,
}

impl<'de> Deserialize<'de> for UnimodularMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        UnimodularMap::new(raw.linear, raw.translation).map_err(serde::de::Error::custom)
    }
}
