//! Convergent data and gluing maps for linear plumbings.
//!
//! For the chain `C_n` the self-intersections are `-(n+2), -2, ..., -2`, so
//! the edge directions of its moment domain come from the prefixes of
//! `[n+2, 2, ..., 2]`: `r_i = (n_{i-1}, m_{i-1})` with `(n_0, m_0) = (1, 0)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::{CfExpansion, IntMatrix2, LatticeError, LatticeVec, UnimodularMap};
use crate::json;
use crate::rational::{Point, Rational};

/// The `i`-th convergent `n_i/m_i` of a plumbing expansion and the edge
/// direction `r_i = (n_{i-1}, m_{i-1})` of the `i`-th sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub index: usize,
    #[serde(with = "json::bigint")]
    pub n: BigInt,
    #[serde(with = "json::bigint")]
    pub m: BigInt,
    pub direction: LatticeVec,
}

/// `[n+2, 2, ..., 2]` of the given length.
pub fn chain_expansion(n: u32, len: usize) -> Result<CfExpansion, LatticeError> {
    if n < 2 {
        return Err(LatticeError::ChainTooShort { n });
    }
    CfExpansion::new(std::iter::once(u64::from(n) + 2).chain(std::iter::repeat_n(2, len - 1)))
}

/// Edge directions `r_1, ..., r_{s+1}` of the plumbing `[b1, ..., bs]`.
pub fn plumbing_directions(expansion: &CfExpansion) -> Vec<LatticeVec> {
    std::iter::once(LatticeVec::new(1, 0))
        .chain(
            expansion
                .convergents()
                .into_iter()
                .map(|(n, m)| LatticeVec::new(n, m)),
        )
        .collect()
}

/// Convergents `(n_i, m_i)`, `i = 1..=count`, of `[n+2, 2, ..., 2]`.
///
/// Each value is computed by the forward recurrence and checked both against
/// direct evaluation of the prefix and against the closed form
/// `n_i = (n+1) i + 1`, `m_i = i`. A disagreement is a bug and panics.
pub fn chain_convergents(n: u32, count: usize) -> Result<Vec<Convergent>, LatticeError> {
    if n < 2 {
        return Err(LatticeError::ChainTooShort { n });
    }
    if count == 0 || count > n as usize {
        return Err(LatticeError::IndexOutOfRange {
            index: count,
            lo: 1,
            hi: n as usize,
        });
    }
    let expansion = chain_expansion(n, count)?;
    let directions = plumbing_directions(&expansion);
    let out: Vec<Convergent> = expansion
        .convergents()
        .into_iter()
        .enumerate()
        .map(|(k, (ni, mi))| {
            let i = k + 1;
            let direct = expansion.prefix(i).expect("in range").value();
            assert_eq!(
                (&ni, &mi),
                (&direct.0, &direct.1),
                "recurrence disagrees with evaluation at i = {i}"
            );
            let closed = (
                BigInt::from(u64::from(n) + 1) * BigInt::from(i) + 1,
                BigInt::from(i),
            );
            assert_eq!(
                (&ni, &mi),
                (&closed.0, &closed.1),
                "closed form disagrees with evaluation at n = {n}, i = {i}"
            );
            Convergent {
                index: i,
                n: ni,
                m: mi,
                direction: directions[k].clone(),
            }
        })
        .collect();
    debug_assert!(out.iter().all(|c| c.direction.is_primitive()));
    Ok(out)
}

/// Vertices `t_1 = 0, t_{i+1} = t_i + a_i r_i` of a plumbing chain.
pub fn chain_vertices(directions: &[LatticeVec], areas: &[Rational]) -> Vec<Point> {
    let mut out = Vec::with_capacity(areas.len() + 1);
    let mut t = Point::origin();
    out.push(t.clone());
    for (a, r) in areas.iter().zip(directions) {
        t = t.offset(a, &r.x, &r.y);
        out.push(t.clone());
    }
    out
}

/// The map `p -> T_i p + t_i` placing the standard piece of the `i`-th sphere
/// of the plumbing `[b1, ..., bs]`, where `T_i = R_{b1} ... R_{b_{i-1}}` and
/// `R_k = [[k, -1], [1, 0]]`.
pub fn plumbing_gluing_map(
    expansion: &CfExpansion,
    i: usize,
    areas: &[Rational],
) -> Result<UnimodularMap, LatticeError> {
    let s = expansion.len();
    if i < 2 || i > s {
        return Err(LatticeError::IndexOutOfRange { index: i, lo: 2, hi: s });
    }
    if areas.len() < i - 1 {
        return Err(LatticeError::TooFewAreas {
            needed: i - 1,
            got: areas.len(),
        });
    }
    if let Some(index) = areas.iter().position(|a| !a.is_positive()) {
        return Err(LatticeError::NonPositiveArea { index });
    }
    let linear = expansion.terms()[..i - 1]
        .iter()
        .fold(IntMatrix2::identity(), |acc, b| {
            acc.mul(&IntMatrix2::plumbing_step(b.clone()))
        });
    let directions = plumbing_directions(expansion);
    let t = chain_vertices(&directions, &areas[..i - 1])
        .pop()
        .expect("at least the origin");
    UnimodularMap::new(linear, t)
}

/// `(T_i, t_i)` for the chain `C_n`, `2 <= i <= n-1`, with `T_i = R_{n+2} R_2^{i-2}`.
pub fn gluing_map(n: u32, i: usize, areas: &[Rational]) -> Result<UnimodularMap, LatticeError> {
    if n < 3 {
        return Err(LatticeError::ChainTooShort { n });
    }
    let len = n as usize - 1;
    if i < 2 || i > len {
        return Err(LatticeError::IndexOutOfRange { index: i, lo: 2, hi: len });
    }
    plumbing_gluing_map(&chain_expansion(n, len)?, i, areas)
}
