//! Figure assembly for the `render` command.

use blowdown_core::domain::{
    make_ball_collar_domain, make_ball_filled_domain, make_chain_collar, make_chain_domain,
    make_general_plumbing_domain, make_wedge, radial_transversality_check, scale_about,
};
use blowdown_core::lattice::chain_expansion;
use blowdown_core::surgery::{ball_feasible, choose_ball, embedding_phi1};
use blowdown_core::{BallSpec, BigInt, ChainSpec, Point, PolyDomain, Rational};

use crate::config::{Figure, RenderJob, RenderOptions};
use crate::render::{render_layers, render_plumbing_graph, Band, Decorations, Layer};
use crate::run::Failure;

/// A rendered picture; `feasible` is false only for a fit figure whose ball
/// does not fit.
pub struct Rendered {
    pub svg: String,
    pub feasible: bool,
}

fn band(polyline: &[Point], apex: &Point, s: &Rational) -> Vec<Point> {
    let mut out = polyline.to_vec();
    out.extend(scale_about(polyline, apex, s).into_iter().rev());
    out
}

fn min_area(areas: &[Rational]) -> Rational {
    areas.iter().min().cloned().unwrap_or_else(Rational::one)
}

/// Collar epsilon: explicit, or a quarter of the smallest area in play.
pub fn default_epsilon(opts: &RenderOptions, areas: &[Rational]) -> Rational {
    opts.epsilon
        .clone()
        .unwrap_or_else(|| min_area(areas) / Rational::from(4))
}

/// The chain polyline `t_0, ..., t_{n-1}` pushed away from the corner of the
/// wedge it sits in, in chain coordinates, together with that corner.
pub fn chain_collar_boundary(c: &ChainSpec, eps: &Rational) -> (Vec<Point>, Vec<Point>, Point) {
    let pts = make_chain_domain(c.n(), c.areas())
        .expect("ChainSpec is valid")
        .vertices();
    let delta = embedding_phi1(c).translation_part().y.clone();
    let apex = Point::new(0, -delta.clone());
    let s = &Rational::one() + &(eps / &delta);
    let outer = scale_about(&pts, &apex, &s);
    (pts, outer, apex)
}

/// Whether the outer collar boundary of the chain is transverse to the
/// radial field of the wedge corner.
pub fn chain_collar_transverse(c: &ChainSpec, eps: &Rational) -> bool {
    let (_, outer, apex) = chain_collar_boundary(c, eps);
    radial_transversality_check(&outer, &apex).expect("collar polyline has distinct vertices")
}

fn chain_band(c: &ChainSpec, eps: &Rational) -> Vec<Point> {
    let (pts, outer, _) = chain_collar_boundary(c, eps);
    let mut out = pts;
    out.extend(outer.into_iter().rev());
    out
}

fn ball_band(n: u32, b: &BallSpec, eps: &Rational) -> Result<Vec<Point>, Failure> {
    let collar = make_ball_collar_domain(n, &b.alpha_plus, &b.alpha_minus)
        .map_err(|e| Failure::infeasible("/ball", e))?;
    let depth = b.demand(n) / Rational::from(i64::from(n) * i64::from(n));
    let apex = Point::new(0, -depth.clone());
    let s = (&Rational::one() - &(eps / &depth)).max(Rational::new(1, 2));
    Ok(band(&collar.vertices(), &apex, &s))
}

/// The filled ball with `L_1` and `L_2` removed: the collar cut off at the
/// lens corner, so its legs do not run past each other.
fn ball_collar_piece(n: u32, b: &BallSpec) -> Result<PolyDomain, Failure> {
    let filled = make_ball_filled_domain(n, &b.alpha_plus, &b.alpha_minus)
        .map_err(|e| Failure::invalid("/ball", e))?;
    let mut edges = filled.edges().to_vec();
    for e in &mut edges {
        if matches!(e.label.as_deref(), Some("L1" | "L2")) {
            e.closed = false;
        }
    }
    let excluded = (0..filled.vertex_count())
        .map(|v| {
            let (a, c) = filled.vertex_edges(v);
            filled.corner_excluded()[v] || !edges[a].closed || !edges[c].closed
        })
        .collect();
    Ok(PolyDomain::new(edges, excluded).expect("same geometry as the filled ball"))
}

fn need<'a, T>(v: &'a Option<T>, field: &str, figure: &str) -> Result<&'a T, Failure> {
    v.as_ref()
        .ok_or_else(|| Failure::invalid(format!("/{field}"), format!("figure {figure} needs `{field}`")))
}

fn small_n(n: &BigInt, at: &str) -> Result<u32, Failure> {
    u32::try_from(n).map_err(|_| Failure::invalid(at, "n is out of range"))
}

pub fn render_figure(job: &RenderJob) -> Result<Rendered, Failure> {
    let opts = &job.options;
    let ok = |svg| Ok(Rendered { svg, feasible: true });
    match job.figure {
        Figure::PlumbingGraph => {
            let (terms, areas) = match (&job.terms, &job.chain, &job.n) {
                (Some(t), None, None) => (t.clone(), job.areas.clone()),
                (None, Some(c), None) => (
                    chain_expansion(c.n(), c.n() as usize - 1).expect("valid chain"),
                    Some(c.areas().to_vec()),
                ),
                (None, None, Some(n)) => {
                    let n = small_n(&n.0, "/n")?;
                    let e = chain_expansion(n, n.max(2) as usize - 1)
                        .map_err(|e| Failure::invalid("/n", e))?;
                    (e, None)
                }
                _ => {
                    return Err(Failure::invalid(
                        "",
                        "figure plumbing-graph needs exactly one of `terms`, `chain`, `n`",
                    ))
                }
            };
            if let Some(a) = &areas {
                if a.len() != terms.len() {
                    return Err(Failure::invalid("/areas", "one area per sphere is needed"));
                }
            }
            ok(render_plumbing_graph(&terms, areas.as_deref(), opts))
        }
        Figure::Chain | Figure::ChainCollar => {
            let c = need(&job.chain, "chain", "chain")?;
            let collar = job.figure == Figure::ChainCollar;
            let d = if collar {
                make_chain_collar(c.n(), c.areas())
            } else {
                make_chain_domain(c.n(), c.areas())
            }
            .map_err(|e| Failure::invalid("/chain", e))?;
            let mut deco = Decorations {
                title: Some(format!("chain C_{}", c.n())),
                ..Decorations::default()
            };
            if collar {
                let eps = default_epsilon(opts, c.areas());
                deco.bands.push(Band {
                    layer: 0,
                    polygon: chain_band(c, &eps),
                });
            }
            ok(render_layers(&[Layer { domain: &d, name: "chain" }], &deco, opts))
        }
        Figure::Plumbing => {
            let terms = need(&job.terms, "terms", "plumbing")?;
            let areas = need(&job.areas, "areas", "plumbing")?;
            let d = make_general_plumbing_domain(terms, areas)
                .map_err(|e| Failure::invalid("/areas", e))?;
            let deco = Decorations {
                title: Some(format!("plumbing {terms}")),
                ..Decorations::default()
            };
            ok(render_layers(&[Layer { domain: &d, name: "plumbing" }], &deco, opts))
        }
        Figure::Wedge => {
            let n = need(&job.n, "n", "wedge")?;
            let m = need(&job.m, "m", "wedge")?;
            let d = make_wedge(n.0.clone(), m.0.clone()).map_err(|e| Failure::invalid("", e))?;
            let deco = Decorations {
                title: Some(format!("V_{{{}, {}}}", n.0, m.0)),
                ..Decorations::default()
            };
            ok(render_layers(&[Layer { domain: &d, name: "wedge" }], &deco, opts))
        }
        Figure::Ball => {
            let n = small_n(&need(&job.n, "n", "ball")?.0, "/n")?;
            let b = need(&job.ball, "ball", "ball")?;
            let d = ball_collar_piece(n, b)?;
            let eps = default_epsilon(opts, std::slice::from_ref(&b.alpha_minus));
            let deco = Decorations {
                title: Some(format!("A'_{n}")),
                bands: vec![Band {
                    layer: 0,
                    polygon: ball_band(n, b, &eps)?,
                }],
                notes: vec![],
            };
            ok(render_layers(&[Layer { domain: &d, name: "ball" }], &deco, opts))
        }
        Figure::Fit => fit_figure(job),
    }
}

fn fit_figure(job: &RenderJob) -> Result<Rendered, Failure> {
    let opts = &job.options;
    let c = need(&job.chain, "chain", "fit")?;
    let n = c.n();
    let b = match &job.ball {
        Some(b) => b.clone(),
        None => choose_ball(c).map_err(|e| Failure::invalid("/chain", e))?,
    };
    b.validate(n).map_err(|e| Failure::infeasible("/ball", e))?;
    let report = ball_feasible(c, &b);
    let nb = BigInt::from(n);
    let wedge = make_wedge(&nb * &nb, &nb - 1).expect("n^2 and n-1 are coprime");
    let chain: PolyDomain = make_chain_collar(n, c.areas())
        .expect("valid chain")
        .apply_affine(&report.phi1);
    let ball: PolyDomain = make_ball_filled_domain(n, &b.alpha_plus, &b.alpha_minus)
        .expect("validated ball")
        .apply_affine(&report.phi2);
    let eps = default_epsilon(opts, c.areas());
    let shift = |pts: Vec<Point>, by: &Point| -> Vec<Point> { pts.iter().map(|p| p + by).collect() };
    let bands = vec![
        Band {
            layer: 1,
            polygon: shift(chain_band(c, &eps), report.phi1.translation_part()),
        },
        Band {
            layer: 2,
            polygon: shift(ball_band(n, &b, &eps)?, report.phi2.translation_part()),
        },
    ];
    let verdict = if report.feasible { "fits" } else { "does not fit" };
    let deco = Decorations {
        title: Some(format!("C_{n} and A'_{n} in V_{{{}, {}}}", &nb * &nb, &nb - 1)),
        bands,
        notes: vec![
            format!("budget {}, demand {}", report.budget, b.demand(n)),
            format!("margin {}: the ball {verdict}", report.margin),
        ],
    };
    let layers = [
        Layer { domain: &wedge, name: "wedge" },
        Layer { domain: &chain, name: "chain" },
        Layer { domain: &ball, name: "ball" },
    ];
    Ok(Rendered {
        svg: render_layers(&layers, &deco, opts),
        feasible: report.feasible,
    })
}
