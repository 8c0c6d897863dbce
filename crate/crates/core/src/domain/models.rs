//! The model domains: the lens wedge `U_{n,m}`, plumbing chains such as
//! `U_{C_n}` and its collar, and the rational ball collar `U_{A'_n}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{path_domain, DomainError, PolyDomain};
use crate::lattice::{chain_expansion, chain_vertices, plumbing_directions, CfExpansion, LatticeVec};
use crate::rational::{Point, Rational};

/// `{p1 >= 0} ∩ {p2 >= (m/n) p1}`, with the corner removed unless it is smooth.
///
/// `(1, 0)` gives the closed quadrant, whose reduction is `R^4`.
pub fn make_wedge(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<PolyDomain, DomainError> {
    let (n, m) = (n.into(), m.into());
    let quadrant = n.is_one() && m.is_zero();
    let proper = m.is_positive() && n >= m && n.gcd(&m).is_one();
    if !quadrant && !proper {
        return Err(DomainError::InvalidWedge { n, m });
    }
    let smooth = n.is_one();
    path_domain(
        Some((LatticeVec::new(0, -1), true)),
        &[Point::origin()],
        Some((LatticeVec::new(n, m), true)),
        &[],
        vec![!smooth],
        &["L0", "Lnm"],
    )
}

fn check_areas(areas: &[Rational], expected: usize) -> Result<(), DomainError> {
    if areas.len() != expected {
        return Err(DomainError::AreaCount {
            expected,
            got: areas.len(),
        });
    }
    match areas.iter().position(|a| !a.is_positive()) {
        Some(index) => Err(DomainError::NonPositiveArea { index }),
        None => Ok(()),
    }
}

fn plumbing_domain(
    expansion: &CfExpansion,
    areas: &[Rational],
    collar: bool,
) -> Result<PolyDomain, DomainError> {
    let s = expansion.len();
    check_areas(areas, s)?;
    let directions = plumbing_directions(expansion);
    let points = chain_vertices(&directions, areas);
    let labels: Vec<String> = (0..=s + 1).map(|i| format!("L{i}")).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    path_domain(
        Some((LatticeVec::new(0, -1), true)),
        &points,
        Some((directions[s].clone(), true)),
        &vec![!collar; s],
        vec![collar; s + 1],
        &labels,
    )
}

/// Domain of the linear plumbing with self-intersections `-b1, ..., -bs`:
/// the region above the chain of segments `L_1, ..., L_s` (directions from
/// the convergents of `[b1, ..., bs]`, lengths = sphere areas) and between
/// the rays `L_0` and `L_{s+1}`.
pub fn make_general_plumbing_domain(
    terms: &CfExpansion,
    areas: &[Rational],
) -> Result<PolyDomain, DomainError> {
    plumbing_domain(terms, areas, false)
}

/// The same domain with the sphere edges removed.
pub fn make_general_plumbing_collar(
    terms: &CfExpansion,
    areas: &[Rational],
) -> Result<PolyDomain, DomainError> {
    plumbing_domain(terms, areas, true)
}

/// `U_{C_n}`: plumbing `[n+2, 2, ..., 2]` with `n - 1` spheres of areas `a_1, ..., a_{n-1}`.
pub fn make_chain_domain(n: u32, areas: &[Rational]) -> Result<PolyDomain, DomainError> {
    chain(n, areas, false)
}

/// `U_{C_n^-}`: the chain domain minus its sphere edges.
pub fn make_chain_collar(n: u32, areas: &[Rational]) -> Result<PolyDomain, DomainError> {
    chain(n, areas, true)
}

fn chain(n: u32, areas: &[Rational], collar: bool) -> Result<PolyDomain, DomainError> {
    if n < 2 {
        return Err(DomainError::ChainTooShort { n });
    }
    check_areas(areas, n as usize - 1)?;
    plumbing_domain(&chain_expansion(n, n as usize - 1)?, areas, collar)
}

/// `U_b`: neighbourhood model of a single sphere of self-intersection `-b` and area `a`.
pub fn standard_piece(b: impl Into<BigInt>, area: &Rational) -> Result<PolyDomain, DomainError> {
    make_general_plumbing_domain(
        &CfExpansion::new([b.into()])?,
        std::slice::from_ref(area),
    )
}

struct BallCorners {
    top_right: Point,
    low: Point,
    apex: Point,
    slant: LatticeVec,
}

fn ball_corners(
    n: u32,
    alpha_plus: &Rational,
    alpha_minus: &Rational,
) -> Result<BallCorners, DomainError> {
    let bound = alpha_minus * &Rational::from(i64::from(n) + 1);
    if n < 3 || !alpha_minus.is_positive() || *alpha_plus <= bound {
        return Err(DomainError::InfeasibleBall {
            n,
            alpha_plus: alpha_plus.clone(),
            alpha_minus: alpha_minus.clone(),
        });
    }
    let n_big = BigInt::from(n);
    let nsq = Rational::from(&n_big * &n_big);
    let nm1 = Rational::from(i64::from(n) - 1);
    // L_0 ∩ L_3
    let depth = (&nm1 * alpha_plus + alpha_minus) / nsq;
    Ok(BallCorners {
        top_right: Point::new(alpha_plus.clone(), 0),
        low: Point::new(alpha_plus - &bound, -alpha_minus.clone()),
        apex: Point::new(0, -depth),
        slant: LatticeVec::new(&n_big * &n_big, &n_big - 1),
    })
}

/// `U_{A'_n}` collar: the edges `L_1` (area `alpha_plus`, self-intersection
/// `n+1`) and `L_2` (area `alpha_minus`, self-intersection `-(n-1)`) are
/// removed; the legs along `L_3` and `L_0` are kept as rays.
///
/// Needs `alpha_plus > (n+1) alpha_minus > 0` and `n >= 3`.
pub fn make_ball_collar_domain(
    n: u32,
    alpha_plus: &Rational,
    alpha_minus: &Rational,
) -> Result<PolyDomain, DomainError> {
    let c = ball_corners(n, alpha_plus, alpha_minus)?;
    path_domain(
        Some((c.slant, true)),
        &[c.low, c.top_right, Point::origin()],
        Some((LatticeVec::new(0, -1), true)),
        &[false, false],
        vec![true; 3],
        &["L3", "L2", "L1", "L0"],
    )
}

/// The filled region bounded by `L_0, L_3, L_2, L_1`, closed at `L_0 ∩ L_3`,
/// which is a lens corner of type `(n^2, n-1)`.
pub fn make_ball_filled_domain(
    n: u32,
    alpha_plus: &Rational,
    alpha_minus: &Rational,
) -> Result<PolyDomain, DomainError> {
    let c = ball_corners(n, alpha_plus, alpha_minus)?;
    path_domain(
        None,
        &[Point::origin(), c.apex, c.low, c.top_right],
        None,
        &[true; 4],
        vec![true, false, false, false],
        &["L0", "L3", "L2", "L1"],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LensType;

    fn ones(k: usize) -> Vec<Rational> {
        vec![Rational::one(); k]
    }

    #[test]
    fn wedges() {
        let w = make_wedge(16, 3).unwrap();
        assert_eq!(w.corner_type(0).unwrap(), LensType::new(16, 3));
        assert_eq!(w.corner_excluded(), &[true]);
        let w = make_wedge(1, 1).unwrap();
        assert!(w.is_delzant(0));
        assert_eq!(w.corner_excluded(), &[false]);
        let w = make_wedge(4, 1).unwrap();
        assert_eq!(w.corner_type(0).unwrap(), LensType::new(4, 1));
        assert!(make_wedge(1, 0).unwrap().is_delzant(0));
        assert!(make_wedge(16, 4).is_err());
        assert!(make_wedge(3, 4).is_err());
        assert!(make_wedge(3, 0).is_err());
    }

    #[test]
    fn chain_n4_vertices() {
        let d = make_chain_domain(4, &ones(3)).unwrap();
        assert_eq!(
            d.vertices(),
            vec![
                Point::new(0, 0),
                Point::new(1, 0),
                Point::new(7, 1),
                Point::new(18, 3)
            ]
        );
        assert_eq!(d.edges().len(), 5);
        assert_eq!(d.segments().filter(|(_, e)| e.closed).count(), 3);
        assert_eq!(d.edges().iter().filter(|e| !e.is_finite()).count(), 2);
        assert_eq!(d.edges()[4].direction, LatticeVec::new(16, 3));
        assert!((0..4).all(|v| d.is_delzant(v)));
    }

    #[test]
    fn collar_removes_chain() {
        let d = make_chain_collar(4, &ones(3)).unwrap();
        assert!(d.segments().all(|(_, e)| !e.closed));
        assert!(d.corner_excluded().iter().all(|&x| x));
        assert!(!d.contains_point(&Point::new(1, 0)));
        assert!(d.contains_point(&Point::new(0, 5)));
    }

    #[test]
    fn n2_is_the_minus_four_piece() {
        let a = Rational::new(3, 2);
        let d = make_chain_domain(2, std::slice::from_ref(&a)).unwrap();
        assert_eq!(d, standard_piece(4, &a).unwrap());
        assert_eq!(d.edges()[1].lattice_length().unwrap(), a);
    }

    #[test]
    fn general_matches_chain() {
        let e = CfExpansion::new([6, 2, 2]).unwrap();
        assert_eq!(
            make_general_plumbing_domain(&e, &ones(3)).unwrap(),
            make_chain_domain(4, &ones(3)).unwrap()
        );
        let d = make_general_plumbing_domain(&CfExpansion::new([2, 2]).unwrap(), &ones(2)).unwrap();
        let (u, v) = (d.edges()[0].direction.neg(), d.edges()[3].direction.clone());
        assert_eq!(
            crate::lattice::lens_from_corner(&u, &v).unwrap(),
            LensType::new(3, 2)
        );
    }

    #[test]
    fn area_and_count_errors() {
        assert_eq!(
            make_chain_domain(4, &ones(2)),
            Err(DomainError::AreaCount {
                expected: 3,
                got: 2
            })
        );
        assert_eq!(
            make_chain_domain(3, &[Rational::one(), Rational::zero()]),
            Err(DomainError::NonPositiveArea { index: 1 })
        );
        assert_eq!(
            make_chain_domain(1, &[]),
            Err(DomainError::ChainTooShort { n: 1 })
        );
    }

    #[test]
    fn ball_collar_geometry() {
        let d = make_ball_collar_domain(4, &Rational::from(20), &Rational::one()).unwrap();
        assert_eq!(
            d.vertices(),
            vec![Point::new(15, -1), Point::new(20, 0), Point::new(0, 0)]
        );
        let f = make_ball_filled_domain(4, &Rational::from(20), &Rational::one()).unwrap();
        assert_eq!(f.vertex(0), &Point::new(0, Rational::new(-61, 16)));
        assert_eq!(f.corner_type(0).unwrap(), LensType::new(16, 3));
        assert!(f.is_delzant(1) && f.is_delzant(2) && f.is_delzant(3));
    }

    #[test]
    fn ball_precondition() {
        let err = make_ball_collar_domain(4, &Rational::from(5), &Rational::one()).unwrap_err();
        assert!(matches!(err, DomainError::InfeasibleBall { n: 4, .. }));
        assert!(make_ball_collar_domain(4, &Rational::from(5), &Rational::zero()).is_err());
        assert!(make_ball_collar_domain(2, &Rational::from(50), &Rational::one()).is_err());
        assert!(make_ball_collar_domain(4, &Rational::new(51, 10), &Rational::one()).is_ok());
    }
}
