use num_bigint::BigInt;

use super::{BallSpec, ChainSpec, FitReport, SurgeryError};
use crate::domain::{
    domain_contains, make_ball_filled_domain, make_chain_collar, make_wedge, PolyDomain,
};
use crate::lattice::{chain_convergents, chain_expansion, chain_vertices, plumbing_directions, UnimodularMap};
use crate::rational::{Point, Rational};

/// `sum_i ((n-1) n_{i-1} - n^2 m_{i-1}) a_i`, the right side of the fit
/// inequality. Each coefficient equals `n - i`, which is checked.
pub fn chain_budget(c: &ChainSpec) -> Rational {
    let n = c.n();
    let nb = BigInt::from(n);
    let convergents =
        chain_convergents(n, n as usize - 1).expect("ChainSpec guarantees n >= 2");
    c.areas()
        .iter()
        .zip(&convergents)
        .map(|(a, conv)| {
            let r = &conv.direction;
            let coeff = (&nb - 1) * &r.x - &nb * &nb * &r.y;
            assert_eq!(
                coeff,
                &nb - BigInt::from(conv.index),
                "budget coefficient identity fails at n = {n}, i = {}",
                conv.index
            );
            a * &Rational::from(coeff)
        })
        .sum()
}

pub(crate) fn chain_points(c: &ChainSpec) -> Vec<Point> {
    let e = chain_expansion(c.n(), c.n() as usize - 1).expect("ChainSpec guarantees n >= 2");
    chain_vertices(&plumbing_directions(&e), c.areas())
}

fn slant_holds(p: &Point, n: u32) -> bool {
    let nb = i64::from(n);
    // n^2 y = (n-1) x
    &p.y * &Rational::from(nb * nb) == &p.x * &Rational::from(nb - 1)
}

/// Translation by `(0, budget / n^2)`, which puts `L_0` of the chain collar on
/// `{p1 = 0}` and its last vertex `t_n` on the slant edge of `U_{n^2, n-1}`.
pub fn embedding_phi1(c: &ChainSpec) -> UnimodularMap {
    let shift = chain_budget(c) / c.n_squared();
    let phi = UnimodularMap::translation(Point::new(0, shift));
    let last = chain_points(c).pop().expect("nonempty chain");
    assert!(
        slant_holds(&phi.apply_point(&last), c.n()),
        "translated t_n is off the slant edge"
    );
    phi
}

/// Translation by `(0, ((n-1) alpha_plus + alpha_minus) / n^2)`, which sends
/// `L_0 ∩ L_3` of the ball domain to the corner of the wedge.
pub fn embedding_phi2(c: &ChainSpec, b: &BallSpec) -> Result<UnimodularMap, SurgeryError> {
    b.validate(c.n())?;
    Ok(phi2_unchecked(c, b))
}

fn phi2_unchecked(c: &ChainSpec, b: &BallSpec) -> UnimodularMap {
    UnimodularMap::translation(Point::new(0, b.demand(c.n()) / c.n_squared()))
}

/// Height of the upper boundary of the translated chain collar at `x >= 0`:
/// the chain polyline, then the slant ray.
fn chain_height(points: &[Point], x: &Rational) -> Rational {
    for w in points.windows(2) {
        if *x <= w[1].x {
            let t = (x - &w[0].x) / (&w[1].x - &w[0].x);
            return &w[0].y + &(&t * &(&w[1].y - &w[0].y));
        }
    }
    let last = points.last().expect("nonempty");
    // beyond t_n the boundary continues along p2 = (slope) p1 through the origin
    &last.y / &last.x * x
}

/// Every point of the ball polyline lies strictly below the chain boundary.
/// Both are piecewise linear in `x`, so it is enough to compare at the
/// breakpoints of each ball segment.
fn strictly_below(ball: &[Point], chain: &[Point]) -> bool {
    ball.windows(2).all(|seg| {
        let (p, q) = (&seg[0], &seg[1]);
        let (lo, hi) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
        let mut xs: Vec<&Rational> = vec![lo, hi];
        xs.extend(chain.iter().map(|v| &v.x).filter(|x| lo < *x && *x < hi));
        xs.into_iter().all(|x| {
            let y = if p.x == q.x {
                std::cmp::max(&p.y, &q.y).clone()
            } else {
                let t = (x - &p.x) / (&q.x - &p.x);
                &p.y + &(&t * &(&q.y - &p.y))
            };
            y < chain_height(chain, x)
        })
    })
}

fn translate(d: &PolyDomain, phi: &UnimodularMap) -> PolyDomain {
    d.apply_affine(phi)
}

/// Exact geometric check of a ball that passed the inequality test.
fn verify_geometry(c: &ChainSpec, b: &BallSpec, phi1: &UnimodularMap, phi2: &UnimodularMap) -> Result<(), String> {
    let n = c.n();
    let nb = BigInt::from(n);
    let wedge = make_wedge(&nb * &nb, &nb - 1).map_err(|e| e.to_string())?;
    let collar = make_chain_collar(n, c.areas()).map_err(|e| e.to_string())?;
    let moved_collar = translate(&collar, phi1);
    if !domain_contains(&wedge, &moved_collar).map_err(|e| e.to_string())? {
        return Err("translated chain collar leaves the wedge".into());
    }
    let filled = make_ball_filled_domain(n, &b.alpha_plus, &b.alpha_minus)
        .map_err(|e| e.to_string())?;
    let moved_ball = translate(&filled, phi2);
    if moved_ball.vertex(0) != &Point::origin() {
        return Err("translated ball corner misses the wedge corner".into());
    }
    if !domain_contains(&wedge, &moved_ball).map_err(|e| e.to_string())? {
        return Err("translated ball leaves the wedge".into());
    }
    // the removed edges L_1, L_2 of the ball, from L_0 round to L_3
    let ball_line = [
        moved_ball.vertex(3).clone(),
        moved_ball.vertex(2).clone(),
        moved_ball.vertex(1).clone(),
    ];
    let chain_line: Vec<Point> = chain_points(c).iter().map(|p| phi1.apply_point(p)).collect();
    if !strictly_below(&ball_line, &chain_line) {
        return Err("ball collar is not strictly below the chain collar".into());
    }
    Ok(())
}

/// Decides whether the ball fits under the chain in `V_{n^2, n-1}`:
/// `alpha_plus > (n+1) alpha_minus > 0` and
/// `(n-1) alpha_plus + alpha_minus < budget`, both strict. A positive
/// answer is confirmed by exact containment and below-ness checks.
pub fn ball_feasible(c: &ChainSpec, b: &BallSpec) -> FitReport {
    let budget = chain_budget(c);
    let phi1 = embedding_phi1(c);
    let phi2 = phi2_unchecked(c, b);
    let margin = &phi1.translation_part().y - &phi2.translation_part().y;
    let mut reason = match b.validate(c.n()) {
        Err(e) => Some(e.to_string()),
        Ok(()) if !margin.is_positive() => Some(format!(
            "(n-1) alpha_plus + alpha_minus = {} is not below the budget {budget}",
            b.demand(c.n())
        )),
        Ok(()) => None,
    };
    if reason.is_none() {
        if let Err(e) = verify_geometry(c, b, &phi1, &phi2) {
            reason = Some(format!("geometric verification failed: {e}"));
        }
    }
    FitReport {
        feasible: reason.is_none(),
        budget,
        phi1,
        phi2,
        margin,
        reason,
    }
}

/// The default ball `alpha_minus = budget / (2 (n^2 + n - 1))`,
/// `alpha_plus = (n+2) alpha_minus`, which uses half the budget.
pub fn choose_ball(c: &ChainSpec) -> Result<BallSpec, SurgeryError> {
    let n = c.n();
    if n < 3 {
        return Err(SurgeryError::BallNeedsLargerChain { n });
    }
    let n = i64::from(n);
    let alpha_minus = chain_budget(c) / Rational::from(2 * (n * n + n - 1));
    let alpha_plus = &alpha_minus * &Rational::from(n + 2);
    Ok(BallSpec {
        alpha_plus,
        alpha_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: u32, areas: &[i64]) -> ChainSpec {
        ChainSpec::new(n, areas.iter().map(|&a| Rational::from(a)).collect()).unwrap()
    }

    #[test]
    fn budgets() {
        assert_eq!(chain_budget(&chain(4, &[1, 1, 1])), Rational::from(6));
        assert_eq!(
            chain_budget(&ChainSpec::new(2, vec![Rational::new(3, 7)]).unwrap()),
            Rational::new(3, 7)
        );
        assert_eq!(chain_budget(&chain(3, &[1, 1])), Rational::from(3));
        assert_eq!(chain_budget(&chain(4, &[30, 1, 1])), Rational::from(93));
    }

    #[test]
    fn phi1_examples() {
        let phi = embedding_phi1(&chain(4, &[1, 1, 1]));
        assert_eq!(phi.translation_part(), &Point::new(0, Rational::new(3, 8)));
        assert!(phi.is_translation());
        let a = Rational::new(2, 3);
        let phi = embedding_phi1(&ChainSpec::new(2, vec![a.clone()]).unwrap());
        assert_eq!(phi.translation_part(), &Point::new(0, a / Rational::from(4)));
    }

    #[test]
    fn phi2_examples() {
        let c = chain(4, &[1, 1, 1]);
        let b = BallSpec::new(Rational::new(18, 19), Rational::new(3, 19));
        assert_eq!(
            embedding_phi2(&c, &b).unwrap().translation_part(),
            &Point::new(0, Rational::new(3, 16))
        );
        let b = BallSpec::new(20, 1);
        let phi = embedding_phi2(&c, &b).unwrap();
        assert_eq!(phi.translation_part(), &Point::new(0, Rational::new(61, 16)));
        let v3 = phi.apply_point(&Point::new(15, -1));
        assert!(slant_holds(&v3, 4));
        assert!(embedding_phi2(&c, &BallSpec::new(5, 1)).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let c = chain(4, &[1, 1, 1]);
        let r = ball_feasible(&c, &BallSpec::new(Rational::new(18, 19), Rational::new(3, 19)));
        assert!(r.feasible, "{:?}", r.reason);
        assert_eq!(r.margin, Rational::new(3, 16));
        let r = ball_feasible(&c, &BallSpec::new(20, 1));
        assert!(!r.feasible);
        assert!(r.reason.unwrap().contains("61"));
        let r = ball_feasible(&chain(4, &[30, 1, 1]), &BallSpec::new(20, 1));
        assert!(r.feasible, "{:?}", r.reason);
        assert_eq!(r.margin, Rational::from(2));
    }

    #[test]
    fn boundary_cases_rejected() {
        // demand exactly equal to the budget
        let c = chain(4, &[1, 1, 1]);
        let b = BallSpec::new(Rational::new(36, 19), Rational::new(6, 19));
        assert_eq!(b.demand(4), Rational::from(6));
        assert!(!ball_feasible(&c, &b).feasible);
        // alpha_plus exactly (n+1) alpha_minus
        let r = ball_feasible(&c, &BallSpec::new(Rational::new(1, 2), Rational::new(1, 10)));
        assert!(!r.feasible);
        assert!(!ball_feasible(&c, &BallSpec::new(1, 0)).feasible);
        assert!(!ball_feasible(&chain(2, &[5]), &BallSpec::new(1, Rational::new(1, 10))).feasible);
    }

    #[test]
    fn default_balls() {
        let b = choose_ball(&chain(4, &[1, 1, 1])).unwrap();
        assert_eq!(b, BallSpec::new(Rational::new(18, 19), Rational::new(3, 19)));
        let b = choose_ball(&chain(3, &[1, 1])).unwrap();
        assert_eq!(b, BallSpec::new(Rational::new(15, 22), Rational::new(3, 22)));
        assert!(choose_ball(&chain(2, &[1])).is_err());
        for n in 3..10 {
            let c = ChainSpec::new(n, (1..n).map(|i| Rational::new(i, 3)).collect()).unwrap();
            let b = choose_ball(&c).unwrap();
            assert_eq!(b.demand(n), chain_budget(&c) / Rational::from(2));
            assert!(ball_feasible(&c, &b).feasible);
        }
    }

    #[test]
    fn below_check_sees_crossings() {
        let chain = vec![Point::new(0, 2), Point::new(1, 2), Point::new(3, 3)];
        assert!(strictly_below(&[Point::new(0, 1), Point::new(2, 1)], &chain));
        assert!(!strictly_below(&[Point::new(0, 1), Point::new(2, Rational::new(5, 2))], &chain));
        assert!(!strictly_below(&[Point::new(0, 2), Point::new(1, 1)], &chain));
    }
}
