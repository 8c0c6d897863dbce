//! SVG 1.1 output for moment domains and plumbing graphs.
//!
//! Geometry is kept exact until the last step: coordinates are scaled and
//! flipped as rationals and only then printed with six significant digits.

use std::fmt::Write as _;

use blowdown_core::{BigInt, CfExpansion, Point, PolyDomain, Rational};

use crate::config::RenderOptions;

const PAD: i64 = 24;
const PALETTE: [&str; 4] = ["#555555", "#1f5fbf", "#c0392b", "#2e8b57"];

/// Decimal with at most six significant digits, no exponent, no trailing zeros.
pub fn fmt6(r: &Rational) -> String {
    let v = r.to_f64();
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.5e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut s = if exp >= 5 {
        format!("{digits}{}", "0".repeat(exp as usize - 5))
    } else if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if v < 0.0 {
        s.insert(0, '-');
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// A domain drawn in one colour.
#[derive(Debug, Clone)]
pub struct Layer<'a> {
    pub domain: &'a PolyDomain,
    pub name: &'a str,
}

/// A shaded collar band, drawn in the colour of layer `layer`.
#[derive(Debug, Clone)]
pub struct Band {
    pub layer: usize,
    pub polygon: Vec<Point>,
}

#[derive(Debug, Clone, Default)]
pub struct Decorations {
    pub title: Option<String>,
    pub bands: Vec<Band>,
    /// Lines of text placed under the picture.
    pub notes: Vec<String>,
}

struct Frame {
    scale: Rational,
    xmin: Rational,
    ymax: Rational,
    width: Rational,
    height: Rational,
}

impl Frame {
    fn fit(points: &[Point], scale: &Rational, extra_rows: usize) -> Frame {
        let first = points.first().cloned().unwrap_or_default();
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (first.x.clone(), first.x.clone(), first.y.clone(), first.y.clone());
        for p in points {
            xmin = xmin.min(p.x.clone());
            xmax = xmax.max(p.x.clone());
            ymin = ymin.min(p.y.clone());
            ymax = ymax.max(p.y.clone());
        }
        let pad = Rational::from(2 * PAD);
        Frame {
            width: &(&(xmax - &xmin) * scale) + &pad,
            height: &(&(&ymax - &ymin) * scale) + &(&pad + &Rational::from(16 * extra_rows as i64)),
            scale: scale.clone(),
            xmin,
            ymax,
        }
    }

    fn x(&self, p: &Point) -> String {
        fmt6(&(&(&(&p.x - &self.xmin) * &self.scale) + &Rational::from(PAD)))
    }

    fn y(&self, p: &Point) -> String {
        fmt6(&(&(&(&self.ymax - &p.y) * &self.scale) + &Rational::from(PAD)))
    }

    fn xy(&self, p: &Point) -> String {
        format!("{},{}", self.x(p), self.y(p))
    }

    fn polygon(&self, pts: &[Point]) -> String {
        pts.iter().map(|p| self.xy(p)).collect::<Vec<_>>().join(" ")
    }
}

fn max_abs_coordinate(points: &[Point]) -> Rational {
    points
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs()])
        .max()
        .filter(|m| m.is_positive())
        .unwrap_or_else(Rational::one)
}

/// Where the ray from `from` along `sign * dir` leaves the box `[-h, h]^2`.
fn truncate(from: &Point, dx: &BigInt, dy: &BigInt, h: &Rational, sign: i64) -> Point {
    let exit = |a: &Rational, d: &BigInt| -> Option<Rational> {
        let d = Rational::from(d.clone()) * Rational::from(sign);
        if d.is_zero() {
            return None;
        }
        let wall = if d.is_positive() { h.clone() } else { -h };
        Some((wall - a) / d)
    };
    let t = [exit(&from.x, dx), exit(&from.y, dy)]
        .into_iter()
        .flatten()
        .min()
        .expect("nonzero direction");
    from.offset(&(t * Rational::from(sign)), dx, dy)
}

/// A drawable edge: endpoints after truncation and whether it is a ray.
struct Drawn {
    a: Point,
    b: Point,
    ray: bool,
    closed: bool,
    label: Option<String>,
}

fn drawn_edges(d: &PolyDomain, reach: &Rational) -> Vec<Drawn> {
    d.edges()
        .iter()
        .map(|e| {
            let (dx, dy) = (&e.direction.x, &e.direction.y);
            let (a, b) = match (&e.start, &e.end) {
                (Some(s), Some(t)) => (s.clone(), t.clone()),
                (None, Some(t)) => (truncate(t, dx, dy, reach, -1), t.clone()),
                (Some(s), None) => (s.clone(), truncate(s, dx, dy, reach, 1)),
                (None, None) => unreachable!("validated edges have a finite endpoint"),
            };
            Drawn {
                ray: !e.is_finite(),
                a,
                b,
                closed: e.closed,
                label: e.label.clone(),
            }
        })
        .collect()
}

/// Axis-parallel rectangle holding everything drawn.
struct Rect {
    x0: Rational,
    x1: Rational,
    y0: Rational,
    y1: Rational,
}

impl Rect {
    fn around(points: &[Point]) -> Rect {
        let xs = points.iter().map(|p| &p.x);
        let ys = points.iter().map(|p| &p.y);
        Rect {
            x0: xs.clone().min().cloned().unwrap_or_default(),
            x1: xs.max().cloned().unwrap_or_default(),
            y0: ys.clone().min().cloned().unwrap_or_default(),
            y1: ys.max().cloned().unwrap_or_default(),
        }
    }

    /// Counterclockwise arc length from the corner `(x1, y0)`.
    fn position(&self, p: &Point) -> Rational {
        let (w, h) = (&self.x1 - &self.x0, &self.y1 - &self.y0);
        if p.x == self.x1 {
            &p.y - &self.y0
        } else if p.y == self.y1 {
            &h + &(&self.x1 - &p.x)
        } else if p.x == self.x0 {
            &(&h + &w) + &(&self.y1 - &p.y)
        } else {
            &(&(&h + &h) + &w) + &(&p.x - &self.x0)
        }
    }

    fn perimeter(&self) -> Rational {
        let (w, h) = (&self.x1 - &self.x0, &self.y1 - &self.y0);
        &(&w + &h) * &Rational::from(2)
    }

    /// Corners met walking counterclockwise along the boundary from `from` to `to`.
    fn corners_between(&self, from: &Point, to: &Point) -> Vec<Point> {
        let per = self.perimeter();
        if per.is_zero() {
            return vec![];
        }
        let ahead = |q: &Point| -> Rational {
            let mut d = &self.position(q) - &self.position(from);
            while d.is_negative() {
                d = &d + &per;
            }
            d
        };
        let goal = ahead(to);
        let mut corners: Vec<(Rational, Point)> = [
            Point::new(self.x1.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y1.clone()),
            Point::new(self.x0.clone(), self.y1.clone()),
            Point::new(self.x0.clone(), self.y0.clone()),
        ]
        .into_iter()
        .map(|c| (ahead(&c), c))
        .filter(|(d, _)| d.is_positive() && *d < goal)
        .collect();
        corners.sort_by(|a, b| a.0.cmp(&b.0));
        corners.into_iter().map(|(_, c)| c).collect()
    }
}

/// Fill outline of a domain; unbounded ones are closed along `rect`.
fn outline(edges: &[Drawn], rect: &Rect) -> Vec<Point> {
    let mut pts: Vec<Point> = edges.iter().map(|e| e.a.clone()).collect();
    if let (Some(first), Some(last)) = (edges.first(), edges.last()) {
        if last.ray {
            pts.push(last.b.clone());
            pts.extend(rect.corners_between(&last.b, &first.a));
        }
    }
    pts
}

/// One domain with optional decorations.
pub fn render_domain_svg(d: &PolyDomain, deco: &Decorations, opts: &RenderOptions) -> String {
    render_layers(&[Layer { domain: d, name: "domain" }], deco, opts)
}

/// Several domains in a common frame; later layers are drawn on top.
pub fn render_layers(layers: &[Layer], deco: &Decorations, opts: &RenderOptions) -> String {
    let mut finite: Vec<Point> = vec![Point::origin()];
    for l in layers {
        finite.extend(l.domain.vertices());
    }
    for b in &deco.bands {
        finite.extend(b.polygon.iter().cloned());
    }
    let reach = &opts.horizon * &max_abs_coordinate(&finite);
    let drawn: Vec<Vec<Drawn>> = layers.iter().map(|l| drawn_edges(l.domain, &reach)).collect();
    let mut all = finite.clone();
    for edges in &drawn {
        all.extend(edges.iter().flat_map(|e| [e.a.clone(), e.b.clone()]));
    }
    let frame = Frame::fit(&all, &opts.scale, deco.notes.len());
    let rect = Rect::around(&all);
    let mut svg = header(&frame, deco.title.as_deref());

    svg.push_str("<g class=\"regions\">\n");
    for (i, edges) in drawn.iter().enumerate() {
        let _ = writeln!(
            svg,
            "<polygon class=\"region {}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.1\" stroke=\"none\"/>",
            layers[i].name,
            frame.polygon(&outline(edges, &rect)),
            color(i)
        );
    }
    svg.push_str("</g>\n<g class=\"collars\">\n");
    for b in &deco.bands {
        let _ = writeln!(
            svg,
            "<polygon class=\"collar {}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"none\"/>",
            layers.get(b.layer).map_or("domain", |l| l.name),
            frame.polygon(&b.polygon),
            color(b.layer)
        );
    }
    svg.push_str("</g>\n<g class=\"edges\">\n");
    for (i, edges) in drawn.iter().enumerate() {
        for e in edges {
            let kind = if e.ray { "ray" } else { "segment" };
            let state = if e.closed { "closed" } else { "open" };
            let dash = if e.closed { "" } else { " stroke-dasharray=\"6 4\"" };
            let _ = writeln!(
                svg,
                "<line class=\"edge {kind} {state} {}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"{dash}/>",
                layers[i].name,
                frame.x(&e.a),
                frame.y(&e.a),
                frame.x(&e.b),
                frame.y(&e.b),
                color(i)
            );
        }
    }
    svg.push_str("</g>\n<g class=\"corners\">\n");
    for (i, l) in layers.iter().enumerate() {
        for (v, excluded) in l.domain.corner_excluded().iter().enumerate() {
            let p = l.domain.vertex(v);
            let (class, fill) = if *excluded {
                ("corner excluded", "white")
            } else {
                ("corner", color(i))
            };
            let _ = writeln!(
                svg,
                "<circle class=\"{class} {}\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{fill}\" stroke=\"{}\" stroke-width=\"1.5\"/>",
                l.name,
                frame.x(p),
                frame.y(p),
                color(i)
            );
        }
    }
    svg.push_str("</g>\n");
    if opts.labels.edges || opts.labels.corners {
        svg.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n");
        for (i, l) in layers.iter().enumerate() {
            if opts.labels.edges {
                for e in &drawn[i] {
                    let Some(label) = &e.label else { continue };
                    let mid = Point::new(
                        (&e.a.x + &e.b.x) / Rational::from(2),
                        (&e.a.y + &e.b.y) / Rational::from(2),
                    );
                    let _ = writeln!(
                        svg,
                        "<text class=\"edge-label {}\" x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>",
                        l.name,
                        frame.x(&mid),
                        frame.y(&mid),
                        color(i),
                        escape(label)
                    );
                }
            }
            if opts.labels.corners {
                for v in 0..l.domain.vertex_count() {
                    let Ok(lens) = l.domain.corner_type(v) else { continue };
                    if lens.is_smooth() {
                        continue;
                    }
                    let p = l.domain.vertex(v);
                    let _ = writeln!(
                        svg,
                        "<text class=\"corner-label {}\" x=\"{}\" y=\"{}\" dx=\"6\" dy=\"14\" fill=\"{}\">({}, {})</text>",
                        l.name,
                        frame.x(p),
                        frame.y(p),
                        color(i),
                        lens.n,
                        lens.m
                    );
                }
            }
        }
        svg.push_str("</g>\n");
    }
    notes(&mut svg, &frame, &deco.notes);
    svg.push_str("</svg>\n");
    svg
}

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn header(frame: &Frame, title: Option<&str>) -> String {
    let (w, h) = (fmt6(&frame.width), fmt6(&frame.height));
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    if let Some(t) = title {
        let _ = writeln!(svg, "<title>{}</title>", escape(t));
    }
    let _ = writeln!(svg, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    svg
}

fn notes(svg: &mut String, frame: &Frame, lines: &[String]) {
    if lines.is_empty() {
        return;
    }
    svg.push_str("<g class=\"notes\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n");
    let top = &frame.height - &Rational::from(PAD / 2 + 16 * lines.len() as i64);
    for (k, line) in lines.iter().enumerate() {
        let y = &top + &Rational::from(16 * k as i64 + 12);
        let _ = writeln!(svg, "<text x=\"{PAD}\" y=\"{}\">{}</text>", fmt6(&y), escape(line));
    }
    svg.push_str("</g>\n");
}

/// The linear plumbing graph: one node per sphere, weighted by its
/// self-intersection `-b_i`, with the area underneath when known.
pub fn render_plumbing_graph(
    terms: &CfExpansion,
    areas: Option<&[Rational]>,
    opts: &RenderOptions,
) -> String {
    let gap: i64 = 64;
    let s = terms.len() as i64;
    let width = Rational::from(2 * PAD + gap * (s - 1).max(0) + 2 * PAD);
    let height = Rational::from(2 * PAD + 48);
    let frame = Frame {
        scale: Rational::one(),
        xmin: Rational::zero(),
        ymax: Rational::zero(),
        width,
        height,
    };
    let mut svg = header(&frame, Some("linear plumbing graph"));
    let x = |i: i64| 2 * PAD + gap * i;
    let y = PAD + 24;
    svg.push_str("<g class=\"graph\" stroke=\"#222222\" stroke-width=\"2\">\n");
    for i in 1..s {
        let _ = writeln!(
            svg,
            "<line class=\"link\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>",
            x(i - 1),
            x(i)
        );
    }
    for i in 0..s {
        let _ = writeln!(
            svg,
            "<circle class=\"node\" cx=\"{}\" cy=\"{y}\" r=\"5\" fill=\"#222222\"/>",
            x(i)
        );
    }
    svg.push_str("</g>\n<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n");
    for (i, b) in terms.terms().iter().enumerate() {
        let _ = writeln!(
            svg,
            "<text class=\"weight\" x=\"{}\" y=\"{}\">-{b}</text>",
            x(i as i64),
            y - 12
        );
    }
    if let (Some(areas), true) = (areas, opts.labels.edges) {
        for (i, a) in areas.iter().enumerate() {
            let _ = writeln!(
                svg,
                "<text class=\"area\" x=\"{}\" y=\"{}\">{}</text>",
                x(i as i64),
                y + 22,
                escape(&a.to_string())
            );
        }
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}
