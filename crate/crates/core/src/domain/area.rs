use super::DomainError;
use crate::rational::{cross, Point, Rational};

fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let (u, v) = (b - a, c - a);
    cross(&u.x, &u.y, &v.x, &v.y).signum()
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    orient(a, b, p) == 0 && lo_x <= &p.x && &p.x <= hi_x && lo_y <= &p.y && &p.y <= hi_y
}

fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Exact area of the simple polygon with the given vertices (either orientation).
pub fn polygon_area(vertices: &[Point]) -> Result<Rational, DomainError> {
    let n = vertices.len();
    if n < 3 {
        return Err(DomainError::DegeneratePolygon);
    }
    if vertices.windows(2).any(|w| w[0] == w[1]) || vertices[0] == vertices[n - 1] {
        return Err(DomainError::DegeneratePolygon);
    }
    if vertices[2..]
        .iter()
        .all(|p| orient(&vertices[0], &vertices[1], p) == 0)
    {
        return Err(DomainError::DegeneratePolygon);
    }
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        // consecutive edges may only share their common vertex
        let c = &vertices[(i + 2) % n];
        if orient(a, b, c) == 0 {
            let (u, v) = (b - a, c - b);
            if (&u.x * &v.x + &u.y * &v.y).is_negative() {
                return Err(DomainError::SelfIntersecting {
                    first: i,
                    second: (i + 1) % n,
                });
            }
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
            if segments_meet(a, b, c, d) {
                return Err(DomainError::SelfIntersecting { first: i, second: j });
            }
        }
    }
    let twice: Rational = (0..n)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            cross(&a.x, &a.y, &b.x, &b.y)
        })
        .sum();
    if twice.is_zero() {
        return Err(DomainError::DegeneratePolygon);
    }
    Ok(twice.abs() / Rational::from(2))
}
