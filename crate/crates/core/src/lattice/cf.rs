//! Negative (Hirzebruch-Jung) continued fractions `[b1, ..., bs] = b1 - 1/(b2 - 1/(... - 1/bs))`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LatticeError;

/// A negative continued fraction with every term at least two.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    terms: Vec<BigInt>,
}

impl CfExpansion {
    pub fn new<T: Into<BigInt>>(terms: impl IntoIterator<Item = T>) -> Result<Self, LatticeError> {
        let terms: Vec<BigInt> = terms.into_iter().map(Into::into).collect();
        if terms.is_empty() {
            return Err(LatticeError::EmptyExpansion);
        }
        let two = BigInt::from(2);
        if let Some((index, term)) = terms.iter().enumerate().find(|(_, b)| **b < two) {
            return Err(LatticeError::TermBelowTwo {
                index,
                term: term.clone(),
            });
        }
        Ok(CfExpansion { terms })
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coprime pair `(n, m)` with `n/m` equal to the expansion.
    pub fn value(&self) -> (BigInt, BigInt) {
        let mut iter = self.terms.iter().rev();
        let last = iter.next().expect("nonempty by construction").clone();
        // b - 1/(p/q) = (b p - q) / p
        let (n, m) = iter.fold((last, BigInt::one()), |(p, q), b| (b * &p - q, p));
        debug_assert!(n.gcd(&m).is_one());
        (n, m)
    }

    /// Values of the prefixes `[b1]`, `[b1, b2]`, ..., via the forward recurrence
    /// `n_i = b_i n_{i-1} - n_{i-2}`, `m_i = b_i m_{i-1} - m_{i-2}`
    /// seeded with `(n_0, m_0) = (1, 0)` and `(n_{-1}, m_{-1}) = (0, -1)`.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let mut prev = (BigInt::zero(), -BigInt::one());
        let mut cur = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(self.terms.len());
        for b in &self.terms {
            let next = (b * &cur.0 - &prev.0, b * &cur.1 - &prev.1);
            prev = std::mem::replace(&mut cur, next);
            out.push(cur.clone());
        }
        out
    }

    pub fn prefix(&self, len: usize) -> Option<CfExpansion> {
        (1..=self.terms.len()).contains(&len).then(|| CfExpansion {
            terms: self.terms[..len].to_vec(),
        })
    }
}

impl fmt::Debug for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for CfExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::json::bigint_vec::serialize(&self.terms, s)
    }
}

impl<'de> Deserialize<'de> for CfExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = crate::json::bigint_vec::deserialize(d)?;
        CfExpansion::new(terms).map_err(serde::de::Error::custom)
    }
}

/// Expands `n/m` (coprime, `n > m >= 1`) as a negative continued fraction.
pub fn neg_cf_expand(
    n: impl Into<BigInt>,
    m: impl Into<BigInt>,
) -> Result<CfExpansion, LatticeError> {
    let (n, m) = (n.into(), m.into());
    if !n.is_positive() || !m.is_positive() {
        return Err(LatticeError::NonPositive { n, m });
    }
    if m >= n {
        return Err(LatticeError::NotProperFraction { n, m });
    }
    if !n.gcd(&m).is_one() {
        return Err(LatticeError::NotCoprime { n, m });
    }
    let mut terms = Vec::new();
    let (mut p, mut q) = (n, m);
    // p/q = b - 1/(q/(bq - p)) with b = ceil(p/q)
    while !q.is_zero() {
        let b = p.div_ceil(&q);
        let r = &b * &q - &p;
        terms.push(b);
        p = std::mem::replace(&mut q, r);
    }
    Ok(CfExpansion { terms })
}

/// Evaluates a list of terms, rejecting any term below two.
pub fn neg_cf_eval<T: Into<BigInt>>(
    terms: impl IntoIterator<Item = T>,
) -> Result<(BigInt, BigInt), LatticeError> {
    Ok(CfExpansion::new(terms)?.value())
}
