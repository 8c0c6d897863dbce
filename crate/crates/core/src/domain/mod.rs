//! Polygonal moment domains.
//!
//! A domain is described by its boundary path, traversed with the interior on
//! the left. The path is either open, starting and ending with an unbounded
//! ray, or a closed cycle of segments. Each edge carries a primitive lattice
//! direction and a flag saying whether the edge belongs to the domain (closed,
//! reduced to a sphere or disk) or was removed (open). Vertices may be
//! excluded, which is how non-smooth lens corners and the endpoints of removed
//! edges are represented.

mod area;
mod contain;
mod invariants;
mod models;
mod reduction;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize};

use crate::lattice::{lens_from_corner, LatticeError, LatticeVec, LensType, UnimodularMap};
use crate::rational::{Point, Rational};

pub use area::polygon_area;
pub use contain::domain_contains;
pub use invariants::{edge_sphere_invariants, EdgeInvariant};
pub use models::{
    make_ball_collar_domain, make_ball_filled_domain, make_chain_collar, make_chain_domain,
    make_general_plumbing_collar, make_general_plumbing_domain, make_wedge, standard_piece,
};
pub use reduction::{radial_transversality_check, reduction_point_map, scale_about};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("a domain needs at least {min} edges, got {got}")]
    TooFewEdges { min: usize, got: usize },
    #[error("edge {edge} has non-primitive direction {direction}")]
    NotPrimitive { edge: usize, direction: LatticeVec },
    #[error("edge {edge}: endpoints are not a positive multiple of the direction")]
    BadEndpoints { edge: usize },
    #[error("edge {edge} is unbounded in a position other than the ends of an open path")]
    MisplacedRay { edge: usize },
    #[error("edges {edge} and {next} do not share a vertex")]
    Disconnected { edge: usize, next: usize },
    #[error("edges meeting at vertex {vertex} are parallel")]
    ParallelEdges { vertex: usize },
    #[error("vertex {vertex} is a lens corner of type {lens:?} but is not marked excluded")]
    UnmarkedLensCorner { vertex: usize, lens: LensType },
    #[error("vertex {vertex} is not Delzant (corner type {lens:?})")]
    NonDelzantVertex { vertex: usize, lens: LensType },
    #[error("expected {expected} corner flags, got {got}")]
    FlagCount { expected: usize, got: usize },
    #[error("wedge needs n >= m >= 1 coprime or (n, m) = (1, 0), got ({n}, {m})")]
    InvalidWedge { n: BigInt, m: BigInt },
    #[error("chain parameter n = {n} is too small")]
    ChainTooShort { n: u32 },
    #[error("expected {expected} areas, got {got}")]
    AreaCount { expected: usize, got: usize },
    #[error("area {index} is not positive")]
    NonPositiveArea { index: usize },
    #[error("infeasible ball for n = {n}: need alpha_plus > (n+1) alpha_minus > 0, got alpha_plus = {alpha_plus}, alpha_minus = {alpha_minus}")]
    InfeasibleBall {
        n: u32,
        alpha_plus: Rational,
        alpha_minus: Rational,
    },
    #[error("edge {edge}: neighbouring directions violate the normal relation")]
    NoNormalRelation { edge: usize },
    #[error("domain has unbounded edges and no finite area")]
    Unbounded,
    #[error("polygon needs at least three distinct vertices")]
    DegeneratePolygon,
    #[error("polygon edges {first} and {second} intersect")]
    SelfIntersecting { first: usize, second: usize },
    #[error("domain is not convex")]
    NotConvex,
    #[error("moment coordinate p{index} = {value} is negative")]
    NegativeMoment { index: usize, value: f64 },
    #[error("polyline segment {index} has zero length")]
    ZeroLengthSegment { index: usize },
}

/// One boundary edge. `None` endpoints are at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub direction: LatticeVec,
    pub start: Option<Point>,
    pub end: Option<Point>,
    pub closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Edge {
    pub fn segment(start: Point, end: Point, direction: LatticeVec, closed: bool) -> Self {
        Edge {
            direction,
            start: Some(start),
            end: Some(end),
            closed,
            label: None,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_finite(&self) -> bool {
        self.start.is_some() && self.end.is_some()
    }

    /// A finite point of the supporting line.
    pub fn anchor(&self) -> &Point {
        self.start
            .as_ref()
            .or(self.end.as_ref())
            .expect("validated edges have a finite endpoint")
    }

    /// Rational `t > 0` with `end - start = t * direction`; `None` for rays.
    pub fn lattice_length(&self) -> Option<Rational> {
        let (s, e) = (self.start.as_ref()?, self.end.as_ref()?);
        self.direction.coefficient_of(&(e - s))
    }

    /// Signed value of `cross(direction, p - anchor)`: positive on the interior side.
    pub fn side(&self, p: &Point) -> Rational {
        let a = self.anchor();
        let dx = Rational::from(self.direction.x.clone());
        let dy = Rational::from(self.direction.y.clone());
        &dx * &(&p.y - &a.y) - &dy * &(&p.x - &a.x)
    }
}

/// A moment domain: boundary path with interior on the left, plus excluded vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyDomain {
    edges: Vec<Edge>,
    corner_excluded: Vec<bool>,
}

/// Where a vertex sits and how it is treated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    pub point: Point,
    pub lens: LensType,
    pub excluded: bool,
}

impl PolyDomain {
    /// Validates and builds a domain. Vertex `k` joins edges `k` and `k + 1`
    /// (cyclically for closed paths).
    pub fn new(edges: Vec<Edge>, corner_excluded: Vec<bool>) -> Result<Self, DomainError> {
        let cyclic = edges.first().is_some_and(|e| e.start.is_some());
        let min = if cyclic { 3 } else { 2 };
        if edges.len() < min {
            return Err(DomainError::TooFewEdges {
                min,
                got: edges.len(),
            });
        }
        let last = edges.len() - 1;
        if !cyclic && edges[last].end.is_some() {
            return Err(DomainError::MisplacedRay { edge: last });
        }
        for (k, e) in edges.iter().enumerate() {
            if !e.direction.is_primitive() {
                return Err(DomainError::NotPrimitive {
                    edge: k,
                    direction: e.direction.clone(),
                });
            }
            let start_ok = e.start.is_some() || (!cyclic && k == 0);
            let end_ok = e.end.is_some() || (!cyclic && k == last);
            if !start_ok || !end_ok || (e.start.is_none() && e.end.is_none()) {
                return Err(DomainError::MisplacedRay { edge: k });
            }
            if e.is_finite() && !e.lattice_length().is_some_and(|t| t.is_positive()) {
                return Err(DomainError::BadEndpoints { edge: k });
            }
        }
        let domain = PolyDomain {
            edges,
            corner_excluded,
        };
        let vertex_count = domain.vertex_count();
        if domain.corner_excluded.len() != vertex_count {
            return Err(DomainError::FlagCount {
                expected: vertex_count,
                got: domain.corner_excluded.len(),
            });
        }
        for v in 0..vertex_count {
            let (a, b) = domain.vertex_edges(v);
            let (ea, eb) = (&domain.edges[a], &domain.edges[b]);
            if ea.end != eb.start {
                return Err(DomainError::Disconnected { edge: a, next: b });
            }
            if ea.direction.is_parallel(&eb.direction) {
                return Err(DomainError::ParallelEdges { vertex: v });
            }
            let lens = domain.corner_type(v)?;
            if !lens.is_smooth() && !domain.corner_excluded[v] {
                return Err(DomainError::UnmarkedLensCorner { vertex: v, lens });
            }
        }
        Ok(domain)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn corner_excluded(&self) -> &[bool] {
        &self.corner_excluded
    }

    pub fn is_cyclic(&self) -> bool {
        self.edges[0].start.is_some()
    }

    pub fn is_bounded(&self) -> bool {
        self.is_cyclic()
    }

    pub fn vertex_count(&self) -> usize {
        if self.is_cyclic() {
            self.edges.len()
        } else {
            self.edges.len() - 1
        }
    }

    /// Incoming and outgoing edge indices at vertex `v`.
    pub fn vertex_edges(&self, v: usize) -> (usize, usize) {
        (v, (v + 1) % self.edges.len())
    }

    /// Vertex `v` (the end of edge `v`).
    pub fn vertex(&self, v: usize) -> &Point {
        self.edges[v]
            .end
            .as_ref()
            .expect("vertex indices address finite ends")
    }

    pub fn vertices(&self) -> Vec<Point> {
        (0..self.vertex_count())
            .map(|v| self.vertex(v).clone())
            .collect()
    }

    /// Primitive directions emanating from vertex `v` along its two edges.
    pub fn corner_directions(&self, v: usize) -> (LatticeVec, LatticeVec) {
        let (a, b) = self.vertex_edges(v);
        (
            self.edges[a].direction.neg(),
            self.edges[b].direction.clone(),
        )
    }

    pub fn corner_type(&self, v: usize) -> Result<LensType, LatticeError> {
        let (u, w) = self.corner_directions(v);
        lens_from_corner(&u, &w)
    }

    pub fn is_delzant(&self, v: usize) -> bool {
        let (u, w) = self.corner_directions(v);
        u.det(&w).abs().is_one()
    }

    pub fn corners(&self) -> Result<Vec<Corner>, LatticeError> {
        (0..self.vertex_count())
            .map(|v| {
                Ok(Corner {
                    point: self.vertex(v).clone(),
                    lens: self.corner_type(v)?,
                    excluded: self.corner_excluded[v],
                })
            })
            .collect()
    }

    /// Directions along which the domain runs off to infinity.
    pub fn recession_directions(&self) -> Vec<LatticeVec> {
        if self.is_cyclic() {
            Vec::new()
        } else {
            vec![
                self.edges[0].direction.neg(),
                self.edges[self.edges.len() - 1].direction.clone(),
            ]
        }
    }

    /// Every turn is to the left and every vertex and recession direction
    /// lies on the interior side of every edge.
    pub fn is_convex(&self) -> bool {
        let turns_left = (0..self.vertex_count()).all(|v| {
            let (a, b) = self.vertex_edges(v);
            self.edges[a]
                .direction
                .det(&self.edges[b].direction)
                .is_positive()
        });
        let vertices = self.vertices();
        let recession = self.recession_directions();
        turns_left
            && self.edges.iter().all(|e| {
                vertices.iter().all(|p| !e.side(p).is_negative())
                    && recession
                        .iter()
                        .all(|r| !e.direction.det(r).is_negative())
            })
    }

    /// Membership of a point, honoring open edges and excluded vertices.
    pub fn contains_point(&self, p: &Point) -> bool {
        for e in &self.edges {
            let s = e.side(p);
            if s.is_negative() || (!e.closed && s.is_zero()) {
                return false;
            }
        }
        !(0..self.vertex_count()).any(|v| self.corner_excluded[v] && self.vertex(v) == p)
    }

    /// Copy with every edge removed from the domain (the open interior) and
    /// every vertex excluded.
    pub fn interior(&self) -> PolyDomain {
        PolyDomain {
            edges: self
                .edges
                .iter()
                .cloned()
                .map(|mut e| {
                    e.closed = false;
                    e
                })
                .collect(),
            corner_excluded: vec![true; self.corner_excluded.len()],
        }
    }

    /// Image under `p -> Bp + r`. Orientation-reversing maps reverse the
    /// boundary path so the interior stays on the left.
    pub fn apply_affine(&self, f: &UnimodularMap) -> PolyDomain {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                direction: f.apply_vec(&e.direction),
                start: e.start.as_ref().map(|p| f.apply_point(p)),
                end: e.end.as_ref().map(|p| f.apply_point(p)),
                closed: e.closed,
                label: e.label.clone(),
            })
            .collect();
        let mut excluded = self.corner_excluded.clone();
        if f.det() == -BigInt::one() {
            edges.reverse();
            for e in &mut edges {
                e.direction = e.direction.neg();
                std::mem::swap(&mut e.start, &mut e.end);
            }
            if self.is_cyclic() {
                // old vertex v joined edges v, v+1; it now ends edge (n - 2 - v) mod n
                let n = edges.len();
                excluded = (0..n)
                    .map(|k| self.corner_excluded[(2 * n - 2 - k) % n])
                    .collect();
            } else {
                excluded.reverse();
            }
        }
        PolyDomain {
            edges,
            corner_excluded: excluded,
        }
    }

    /// Finite edges as `(start, end)` pairs.
    pub fn segments(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.is_finite())
    }

    pub fn edge_by_label(&self, label: &str) -> Option<(usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.label.as_deref() == Some(label))
    }

    /// Area of a bounded domain.
    pub fn area(&self) -> Result<Rational, DomainError> {
        if !self.is_bounded() {
            return Err(DomainError::Unbounded);
        }
        polygon_area(&self.vertices())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    edges: Vec<Edge>,
    corner_excluded: Vec<bool>,
}

impl<'de> Deserialize<'de> for PolyDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawDomain::deserialize(d)?;
        PolyDomain::new(raw.edges, raw.corner_excluded).map_err(serde::de::Error::custom)
    }
}

/// Builds a boundary path through `points`. `incoming` is the direction of a
/// ray arriving at the first point and `outgoing` of a ray leaving the last;
/// with neither, the path closes back to the first point.
pub(crate) fn path_domain(
    incoming: Option<(LatticeVec, bool)>,
    points: &[Point],
    outgoing: Option<(LatticeVec, bool)>,
    segment_closed: &[bool],
    excluded: Vec<bool>,
    labels: &[&str],
) -> Result<PolyDomain, DomainError> {
    let cyclic = incoming.is_none() && outgoing.is_none();
    let mut edges = Vec::new();
    if let Some((dir, closed)) = incoming {
        edges.push(Edge {
            direction: dir,
            start: None,
            end: Some(points[0].clone()),
            closed,
            label: None,
        });
    }
    let count = if cyclic {
        points.len()
    } else {
        points.len() - 1
    };
    for k in 0..count {
        let (s, e) = (&points[k], &points[(k + 1) % points.len()]);
        let dir = direction_between(s, e).ok_or(DomainError::BadEndpoints { edge: edges.len() })?;
        edges.push(Edge::segment(s.clone(), e.clone(), dir, segment_closed[k]));
    }
    if let Some((dir, closed)) = outgoing {
        edges.push(Edge {
            direction: dir,
            start: Some(points[points.len() - 1].clone()),
            end: None,
            closed,
            label: None,
        });
    }
    for (e, l) in edges.iter_mut().zip(labels) {
        e.label = Some((*l).to_string());
    }
    PolyDomain::new(edges, excluded)
}

/// Primitive lattice direction of `b - a`, if that difference is a rational
/// multiple of a lattice vector.
pub(crate) fn direction_between(a: &Point, b: &Point) -> Option<LatticeVec> {
    let d = b - a;
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    // scale by the common denominator, then divide out the content
    let l = num_integer::Integer::lcm(d.x.denom(), d.y.denom());
    let x = d.x.numer() * (&l / d.x.denom());
    let y = d.y.numer() * (&l / d.y.denom());
    LatticeVec::new(x, y).primitive_part()
}
