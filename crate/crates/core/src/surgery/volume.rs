use super::fit::{chain_points, embedding_phi1};
use super::{BallSpec, ChainSpec, SurgeryError};
use crate::domain::{make_ball_filled_domain, path_domain, PolyDomain};
use crate::rational::{Point, Rational};

/// The region `R_B` gained by the blowdown: the part of the wedge corner cut
/// off by the translated chain, from the corner up the slant edge to `t_n`,
/// back along the chain to `t_1` and down `{p1 = 0}`.
pub fn blowdown_region(c: &ChainSpec) -> Result<PolyDomain, SurgeryError> {
    let phi = embedding_phi1(c);
    let mut points = vec![Point::origin()];
    points.extend(chain_points(c).iter().rev().map(|p| phi.apply_point(p)));
    let k = points.len();
    let labels: Vec<String> = std::iter::once("slant".to_string())
        .chain((0..k - 1).rev().map(|i| format!("L{i}")))
        .collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut excluded = vec![false; k];
    excluded[k - 1] = true;
    Ok(path_domain(None, &points, None, &vec![true; k], excluded, &labels)?)
}

/// Exact area of [`blowdown_region`]; it never depends on a ball.
pub fn blowdown_volume_delta(c: &ChainSpec) -> Result<Rational, SurgeryError> {
    Ok(blowdown_region(c)?.area()?)
}

/// Volume of the filled ball piece, computed as a polygon area and checked
/// against `t alpha_minus + (n-1) t^2 / 2` with `t = (alpha_plus - alpha_minus) / n`.
pub fn ball_volume(n: u32, b: &BallSpec) -> Result<Rational, SurgeryError> {
    b.validate(n)?;
    let area = make_ball_filled_domain(n, &b.alpha_plus, &b.alpha_minus)?.area()?;
    let nr = Rational::from(i64::from(n));
    let t = (&b.alpha_plus - &b.alpha_minus) / nr.clone();
    let formula = &t * &b.alpha_minus + &(&(nr - Rational::one()) * &(&t * &t)) / Rational::from(2);
    assert_eq!(area, formula, "ball volume formulas disagree for n = {n}");
    Ok(area)
}
