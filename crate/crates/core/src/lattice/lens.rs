use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMatrix2, LatticeError, LatticeVec};
use crate::json;

/// Type `(n, m)` of the link of a domain corner, canonicalized so that
/// `m = min(m, m^{-1} mod n)`. A smooth (Delzant) corner is `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensType {
    #[serde(with = "json::bigint")]
    pub n: BigInt,
    #[serde(with = "json::bigint")]
    pub m: BigInt,
}

impl LensType {
    pub fn new(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        LensType {
            n: n.into(),
            m: m.into(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.n.is_one()
    }
}

/// A matrix in `GL(2, Z)` sending the primitive vector `u` to `(0, 1)`.
pub fn matrix_sending_to_vertical(u: &LatticeVec) -> Result<IntMatrix2, LatticeError> {
    if !u.is_primitive() {
        return Err(LatticeError::NotPrimitive(u.clone()));
    }
    // Rows (u.y, -u.x) and (r, s) with r u.x + s u.y = 1.
    let eg = u.x.extended_gcd(&u.y);
    let (r, s) = if eg.gcd.is_negative() {
        (-eg.x, -eg.y)
    } else {
        (eg.x, eg.y)
    };
    Ok(IntMatrix2 {
        a: u.y.clone(),
        b: -&u.x,
        c: r,
        d: s,
    })
}

/// `x^{-1} mod n` for `gcd(x, n) = 1`, `n >= 1`.
pub fn mod_inverse(x: &BigInt, n: &BigInt) -> Option<BigInt> {
    if n.is_one() {
        return Some(BigInt::zero());
    }
    let eg = x.mod_floor(n).extended_gcd(n);
    eg.gcd.is_one().then(|| eg.x.mod_floor(n))
}

/// Classifies the corner spanned by the primitive edge directions `u`, `v`
/// emanating from it.
///
/// `n = |det [u v]|`; after moving `u` to `(0, 1)` by `GL(2, Z)`, `m` is the
/// second coordinate of the image of `v` reduced mod `n`.
pub fn lens_from_corner(u: &LatticeVec, v: &LatticeVec) -> Result<LensType, LatticeError> {
    if !v.is_primitive() {
        return Err(LatticeError::NotPrimitive(v.clone()));
    }
    let to_vertical = matrix_sending_to_vertical(u)?;
    if u.is_parallel(v) {
        return Err(LatticeError::Parallel(u.clone(), v.clone()));
    }
    let image = to_vertical.apply(v);
    let n = image.x.abs();
    if n.is_one() {
        return Ok(LensType::new(1, 0));
    }
    let m = image.y.mod_floor(&n);
    let inv = mod_inverse(&m, &n).expect("primitive v gives m coprime to n");
    Ok(LensType {
        m: m.clone().min(inv),
        n,
    })
}
