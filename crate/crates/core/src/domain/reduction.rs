use std::f64::consts::PI;

use super::DomainError;
use crate::rational::{cross, Point, Rational};

/// Boundary reduction chart: `(p, q)` with `q` in the torus `R^2 / Z^2`
/// goes to `(x_i, y_i) = sqrt(p_i / pi) (cos 2 pi q_i, sin 2 pi q_i)`,
/// returned as `[x1, y1, x2, y2]`.
pub fn reduction_point_map(p1: f64, p2: f64, q1: f64, q2: f64) -> Result<[f64; 4], DomainError> {
    for (index, value) in [(1, p1), (2, p2)] {
        if value < 0.0 || value.is_nan() {
            return Err(DomainError::NegativeMoment { index, value });
        }
    }
    let (r1, r2) = ((p1 / PI).sqrt(), (p2 / PI).sqrt());
    let (t1, t2) = (2.0 * PI * q1, 2.0 * PI * q2);
    Ok([r1 * t1.cos(), r1 * t1.sin(), r2 * t2.cos(), r2 * t2.sin()])
}

/// The image of a polyline under `p -> apex + s (p - apex)`.
pub fn scale_about(polyline: &[Point], apex: &Point, s: &Rational) -> Vec<Point> {
    polyline
        .iter()
        .map(|p| &(p - apex).scale(s) + apex)
        .collect()
}

/// Whether every segment of the polyline is transverse to the radial field
/// centred at `apex`, i.e. no supporting line passes through the apex.
pub fn radial_transversality_check(polyline: &[Point], apex: &Point) -> Result<bool, DomainError> {
    if polyline.len() < 2 {
        return Err(DomainError::DegeneratePolygon);
    }
    let mut transverse = true;
    for (index, w) in polyline.windows(2).enumerate() {
        let d = &w[1] - &w[0];
        if d.x.is_zero() && d.y.is_zero() {
            return Err(DomainError::ZeroLengthSegment { index });
        }
        let r = &w[0] - apex;
        transverse &= !cross(&r.x, &r.y, &d.x, &d.y).is_zero();
    }
    Ok(transverse)
}
