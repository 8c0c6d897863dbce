use num_bigint::BigInt;
use serde::Serialize;

use super::{DomainError, PolyDomain};
use crate::json;
use crate::rational::Rational;

/// Area and self-intersection of the sphere over a finite edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeInvariant {
    pub edge: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub area: Rational,
    #[serde(with = "json::bigint")]
    pub self_intersection: BigInt,
    pub closed: bool,
}

/// One entry per finite edge, removed edges included.
///
/// The area is the lattice length. With `d_prev + d_next = k d` for the
/// directions of the edge and its two neighbours, the self-intersection is
/// `-k`. Both end vertices must be Delzant.
pub fn edge_sphere_invariants(domain: &PolyDomain) -> Result<Vec<EdgeInvariant>, DomainError> {
    let edges = domain.edges();
    let count = edges.len();
    let mut out = Vec::new();
    for (k, e) in domain.segments() {
        let (prev, next) = ((k + count - 1) % count, (k + 1) % count);
        for v in [prev, k] {
            if !domain.is_delzant(v) {
                return Err(DomainError::NonDelzantVertex {
                    vertex: v,
                    lens: domain.corner_type(v)?,
                });
            }
        }
        let sum = edges[prev].direction.add(&edges[next].direction);
        let mult = sum
            .multiple_of(&e.direction)
            .ok_or(DomainError::NoNormalRelation { edge: k })?;
        out.push(EdgeInvariant {
            edge: k,
            label: e.label.clone(),
            area: e.lattice_length().expect("finite edge"),
            self_intersection: -mult,
            closed: e.closed,
        });
    }
    Ok(out)
}
