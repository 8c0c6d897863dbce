//! Serde helpers for arbitrary precision integers.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserializer, Serialize, Serializer};

pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.collect_str(self.0),
        }
    }
}

struct BigIntVisitor;

impl Visitor<'_> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer (number or decimal string)")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim()
            .parse()
            .map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigInt, E> {
        Err(E::custom(format!("expected an integer, found {v}")))
    }
}

pub(crate) fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    d.deserialize_any(BigIntVisitor)
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        deserialize_bigint(d)
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::de::SeqAccess;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }

    struct Elem(BigInt);

    impl<'de> serde::Deserialize<'de> for Elem {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            deserialize_bigint(d).map(Elem)
        }
    }

    struct VecVisitor;

    impl<'de> Visitor<'de> for VecVisitor {
        type Value = Vec<BigInt>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an array of integers")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<BigInt>, A::Error> {
            let mut out = Vec::new();
            while let Some(Elem(x)) = seq.next_element()? {
                out.push(x);
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        d.deserialize_seq(VecVisitor)
    }
}
