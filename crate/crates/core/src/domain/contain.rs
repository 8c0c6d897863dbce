use num_traits::Signed;

use super::{DomainError, PolyDomain};

/// Whether the convex domain `inner` is a subset of the convex domain `outer`,
/// with open edges and excluded vertices taken into account on both sides.
///
/// Each edge of `outer` cuts out a half-plane, closed or open according to the
/// edge. `inner` fits in a half-plane when its vertices and recession
/// directions do, and, for an open half-plane, when none of its points on the
/// boundary line actually belong to it. Finally no excluded vertex of `outer`
/// may be a point of `inner`.
pub fn domain_contains(outer: &PolyDomain, inner: &PolyDomain) -> Result<bool, DomainError> {
    if !outer.is_convex() || !inner.is_convex() {
        return Err(DomainError::NotConvex);
    }
    let vertices = inner.vertices();
    let recession = inner.recession_directions();
    for e in outer.edges() {
        if vertices.iter().any(|p| e.side(p).is_negative())
            || recession.iter().any(|r| e.direction.det(r).is_negative())
        {
            return Ok(false);
        }
        if e.closed {
            continue;
        }
        let touching_vertex = (0..inner.vertex_count()).any(|v| {
            let (a, b) = inner.vertex_edges(v);
            e.side(&vertices[v]).is_zero()
                && !inner.corner_excluded()[v]
                && inner.edges()[a].closed
                && inner.edges()[b].closed
        });
        let touching_edge = inner.edges().iter().any(|f| {
            f.closed && e.side(f.anchor()).is_zero() && e.direction.is_parallel(&f.direction)
        });
        if touching_vertex || touching_edge {
            return Ok(false);
        }
    }
    let excluded_hit = (0..outer.vertex_count())
        .any(|v| outer.corner_excluded()[v] && inner.contains_point(outer.vertex(v)));
    Ok(!excluded_hit)
}
