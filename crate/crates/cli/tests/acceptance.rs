//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Oracles here are written independently of the library: continued fractions
//! are folded by hand, chain vertices come from the closed form of the
//! convergents and areas from a separate shoelace sum.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use blowdown_core::diagram::{fixtures, validate_threefold_diagram};
use blowdown_core::domain::{
    domain_contains, edge_sphere_invariants, make_ball_collar_domain, make_ball_filled_domain,
    make_chain_collar, make_chain_domain, make_wedge, reduction_point_map,
};
use blowdown_core::lattice::{chain_convergents, chain_expansion, neg_cf_expand};
use blowdown_core::surgery::{
    ball_feasible, ball_volume, blowdown_report, blowdown_volume_delta, choose_ball,
    determinant, is_negative_definite, plumbing_matrix,
};
use blowdown_core::{
    BallSpec, BigInt, CfExpansion, ChainSpec, ManifoldInvariants, Point, Rational,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `[b1, ..., bs]` folded from the right.
fn eval_cf(terms: &[BigInt]) -> Rational {
    let mut x = Rational::from(terms.last().unwrap().clone());
    for b in terms.iter().rev().skip(1) {
        x = &Rational::from(b.clone()) - &x.recip().unwrap();
    }
    x
}

fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.random_range(1..=40i64), rng.random_range(1..=9i64))
}

fn random_chain(rng: &mut StdRng, lo: u32, hi: u32) -> ChainSpec {
    let n = rng.random_range(lo..=hi);
    let areas = (1..n).map(|_| random_rational(rng)).collect();
    ChainSpec::new(n, areas).unwrap()
}

fn shoelace(pts: &[Point]) -> Rational {
    let k = pts.len();
    let twice: Rational = (0..k)
        .map(|i| {
            let (p, q) = (&pts[i], &pts[(i + 1) % k]);
            &(&p.x * &q.y) - &(&q.x * &p.y)
        })
        .sum();
    (twice / r(2)).abs()
}

/// `t_0, ..., t_{n-1}` from `r_i = ((n+1)(i-1) + 1, i-1)`.
fn chain_vertices_oracle(c: &ChainSpec) -> Vec<Point> {
    let n = i64::from(c.n());
    let mut p = Point::origin();
    let mut out = vec![p.clone()];
    for (k, a) in c.areas().iter().enumerate() {
        let i = k as i64 + 1;
        let (rx, ry) = ((n + 1) * (i - 1) + 1, i - 1);
        p = Point::new(&p.x + &(a * &r(rx)), &p.y + &(a * &r(ry)));
        out.push(p.clone());
    }
    out
}

fn budget_oracle(c: &ChainSpec) -> Rational {
    let n = i64::from(c.n());
    c.areas()
        .iter()
        .enumerate()
        .map(|(k, a)| a * &r(n - (k as i64 + 1)))
        .sum()
}

/// Corner, then the shifted chain from its last vertex back to the first.
fn region_oracle(c: &ChainSpec) -> Rational {
    let n = i64::from(c.n());
    let shift = budget_oracle(c) / r(n * n);
    let mut pts = vec![Point::origin()];
    pts.extend(
        chain_vertices_oracle(c)
            .into_iter()
            .rev()
            .map(|p| Point::new(p.x, &p.y + &shift)),
    );
    shoelace(&pts)
}

fn ball_pentagon_oracle(n: u32, b: &BallSpec) -> Rational {
    let n = i64::from(n);
    let (ap, am) = (&b.alpha_plus, &b.alpha_minus);
    let depth = (&(ap * &r(n - 1)) + am) / r(n * n);
    shoelace(&[
        Point::origin(),
        Point::new(0, -depth),
        Point::new(ap - &(am * &r(n + 1)), -am.clone()),
        Point::new(ap.clone(), 0),
    ])
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=200i64 {
        for m in 1..n {
            if gcd(n, m) != 1 {
                continue;
            }
            let e = neg_cf_expand(n, m).map_err(|e| format!("{n}/{m}: {e}"))?;
            ensure(e.terms().iter().all(|b| *b >= BigInt::from(2)), || {
                format!("{n}/{m}: term below 2")
            })?;
            ensure(eval_cf(e.terms()) == Rational::new(n, m), || {
                format!("{n}/{m} does not round trip")
            })?;
            count += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("{count} fractions in {:.0?}", took))
}

fn criterion_2() -> Check {
    for n in 2..=50u32 {
        let nn = i64::from(n);
        let conv = chain_convergents(n, n as usize).map_err(|e| e.to_string())?;
        let full = chain_expansion(n, n as usize).map_err(|e| e.to_string())?;
        for c in &conv {
            let i = c.index as i64;
            ensure(c.n == BigInt::from((nn + 1) * i + 1) && c.m == BigInt::from(i), || {
                format!("n={n} i={i}: closed form")
            })?;
            let direct = eval_cf(&full.terms()[..c.index]);
            ensure(direct == Rational::new(c.n.clone(), c.m.clone()), || {
                format!("n={n} i={i}: direct evaluation")
            })?;
        }
        let end = &conv[n as usize - 2];
        ensure(end.n == BigInt::from(nn * nn) && end.m == BigInt::from(nn - 1), || {
            format!("n={n}: endpoint")
        })?;
        let boundary = eval_cf(chain_expansion(n, n as usize - 1).unwrap().terms());
        ensure(boundary == Rational::new(nn * nn, nn - 1), || format!("n={n}: lens"))?;
        for i in 1..nn {
            let (np, mp) = if i == 1 {
                (1, 0)
            } else {
                ((nn + 1) * (i - 1) + 1, i - 1)
            };
            ensure((nn - 1) * np - nn * nn * mp == nn - i, || {
                format!("n={n} i={i}: budget coefficient")
            })?;
        }
    }
    Ok("2 <= n <= 50, endpoint L(n^2, n-1), coefficients n - i".into())
}

fn criterion_3() -> Check {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 2..=12u32 {
        let c = random_chain(&mut rng, n, n);
        let inv = edge_sphere_invariants(&make_chain_domain(n, c.areas()).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(inv.len() == n as usize - 1, || format!("n={n}: sphere count"))?;
        for (k, e) in inv.iter().enumerate() {
            let want = if k == 0 { -(i64::from(n) + 2) } else { -2 };
            ensure(e.closed && e.area == c.areas()[k], || format!("n={n}: area {k}"))?;
            ensure(e.self_intersection == BigInt::from(want), || {
                format!("n={n}: sphere {k} has {}", e.self_intersection)
            })?;
        }
    }
    for n in 3..=12u32 {
        let am = random_rational(&mut rng);
        let ap = &(&am * &r(i64::from(n) + 1)) + &random_rational(&mut rng);
        let d = make_ball_collar_domain(n, &ap, &am).map_err(|e| e.to_string())?;
        let inv = edge_sphere_invariants(&d).map_err(|e| e.to_string())?;
        let find = |l: &str| inv.iter().find(|e| e.label.as_deref() == Some(l)).cloned();
        let (l1, l2) = (find("L1").ok_or("no L1")?, find("L2").ok_or("no L2")?);
        ensure(
            l1.area == ap && l1.self_intersection == BigInt::from(n + 1),
            || format!("n={n}: L1 {l1:?}"),
        )?;
        ensure(
            l2.area == am && l2.self_intersection == -BigInt::from(n - 1),
            || format!("n={n}: L2 {l2:?}"),
        )?;
    }
    Ok("chains 2..=12, ball collars 3..=12".into())
}

fn criterion_4() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let mut rejected = 0;
    for _ in 0..120 {
        let c = random_chain(&mut rng, 3, 9);
        let n = c.n();
        let nn = i64::from(n);
        let b = choose_ball(&c).map_err(|e| e.to_string())?;
        let rep = ball_feasible(&c, &b);
        ensure(rep.feasible, || format!("{c:?}: default ball rejected: {:?}", rep.reason))?;
        let d1 = budget_oracle(&c) / r(nn * nn);
        let d2 = b.demand(n) / r(nn * nn);
        ensure(d2 < d1 && rep.margin == &d1 - &d2, || format!("{c:?}: margin"))?;
        let wedge = make_wedge(nn * nn, nn - 1).unwrap();
        let chain = make_chain_collar(n, c.areas()).unwrap().apply_affine(&rep.phi1);
        let ball = make_ball_filled_domain(n, &b.alpha_plus, &b.alpha_minus)
            .unwrap()
            .apply_affine(&rep.phi2);
        ensure(domain_contains(&wedge, &chain) == Ok(true), || format!("{c:?}: chain"))?;
        ensure(domain_contains(&wedge, &ball) == Ok(true), || format!("{c:?}: ball"))?;

        // demand equal to the budget, then above it
        let budget = budget_oracle(&c);
        let scale = &budget / &b.demand(n);
        let tight = BallSpec::new(&b.alpha_plus * &scale, &b.alpha_minus * &scale);
        let over = BallSpec::new(&tight.alpha_plus * &r(2), &tight.alpha_minus * &r(2));
        // alpha_plus on the bound (n+1) alpha_minus
        let flat = BallSpec::new(&b.alpha_minus * &r(nn + 1), b.alpha_minus.clone());
        let negative = BallSpec::new(b.alpha_plus.clone(), -b.alpha_minus.clone());
        for bad in [tight, over, flat, negative] {
            ensure(!ball_feasible(&c, &bad).feasible, || format!("{c:?}: accepted {bad:?}"))?;
            rejected += 1;
        }
    }
    Ok(format!("120 chains fit, {rejected} violating balls rejected"))
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let a = random_rational(&mut rng);
        let c = ChainSpec::new(2, vec![a.clone()]).unwrap();
        let delta = blowdown_volume_delta(&c).map_err(|e| e.to_string())?;
        // conic of area a is twice a line of area a/2; CP^2 has volume l^2 / 2
        let line = &a / &r(2);
        let conic_sum = &(&line * &line) / &r(2);
        ensure(delta == conic_sum && delta == &(&a * &a) / &r(8), || {
            format!("n=2, a={a}: {delta}")
        })?;
    }
    let c4 = ChainSpec::new(4, vec![r(1), r(1), r(1)]).unwrap();
    let d4 = blowdown_volume_delta(&c4).map_err(|e| e.to_string())?;
    ensure(d4 == Rational::new(11, 8) && region_oracle(&c4) == d4, || {
        format!("n=4 (1,1,1): {d4}")
    })?;
    let m = ManifoldInvariants {
        euler: 30,
        signature: -20,
        b2: 28,
        volume: r(1000),
    };
    for _ in 0..40 {
        let c = random_chain(&mut rng, 3, 9);
        let n = c.n();
        let delta = blowdown_volume_delta(&c).map_err(|e| e.to_string())?;
        ensure(delta == region_oracle(&c), || format!("{c:?}: region oracle"))?;
        let base = choose_ball(&c).unwrap();
        for k in 1..=5i64 {
            let b = BallSpec::new(
                &base.alpha_plus * &Rational::new(k, 3),
                &base.alpha_minus * &Rational::new(k, 3),
            );
            let rep = blowdown_report(&m, &c, Some(&b)).map_err(|e| format!("{c:?}: {e}"))?;
            ensure(rep.volume_delta == delta, || format!("{c:?}: delta depends on ball"))?;
            let bv = ball_volume(n, &b).map_err(|e| e.to_string())?;
            ensure(delta > bv, || format!("{c:?}: delta {delta} <= ball {bv}"))?;
        }
    }
    Ok("a^2/8, 11/8, ball-independent, exceeds ball volume".into())
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..150 {
        let n = rng.random_range(3..=12u32);
        let nn = i64::from(n);
        let am = random_rational(&mut rng);
        let ap = &(&am * &r(nn + 1)) + &random_rational(&mut rng);
        let b = BallSpec::new(ap.clone(), am.clone());
        let t = &(&ap - &am) / &r(nn);
        let formula = &(&t * &am) + &(&(&r(nn - 1) * &(&t * &t)) / &r(2));
        let v = ball_volume(n, &b).map_err(|e| e.to_string())?;
        ensure(v == formula && v == ball_pentagon_oracle(n, &b), || {
            format!("n={n} {b:?}: {v} vs {formula}")
        })?;
    }
    let spot = ball_volume(4, &BallSpec::new(20, 1)).map_err(|e| e.to_string())?;
    ensure(spot == Rational::new(1235, 32), || format!("spot {spot}"))?;
    Ok("150 balls, n=4 (20,1) -> 1235/32".into())
}

fn criterion_7() -> Check {
    let mut count = 0;
    let mut seqs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..6 {
        seqs = seqs
            .iter()
            .flat_map(|s| (2..=7).map(move |b| [s.as_slice(), &[b]].concat()))
            .collect();
        for s in &seqs {
            let e = CfExpansion::new(s.iter().copied()).unwrap();
            let m = plumbing_matrix(&e);
            ensure(is_negative_definite(&m) == Ok(true), || format!("{s:?} not definite"))?;
            let det = determinant(&m).unwrap();
            let value = eval_cf(e.terms());
            ensure(det.magnitude() == value.numer().magnitude(), || {
                format!("{s:?}: det {det} vs {value}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} plumbings with terms in [2,7], length <= 6"))
}

fn criterion_8() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = [rng.random_range(0.1..10.0), rng.random_range(0.1..10.0)];
        let q = [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)];
        let f = |p: [f64; 2], q: [f64; 2]| reduction_point_map(p[0], p[1], q[0], q[1]).unwrap();
        for block in 0..2 {
            let shift = |dp: f64, dq: f64| {
                let (mut pp, mut qq) = (p, q);
                pp[block] += dp;
                qq[block] += dq;
                let v = f(pp, qq);
                (v[2 * block], v[2 * block + 1])
            };
            let (xp, yp) = shift(h, 0.0);
            let (xm, ym) = shift(-h, 0.0);
            let (xq, yq) = shift(0.0, h);
            let (xn, yn) = shift(0.0, -h);
            let (dxdp, dydp) = ((xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h));
            let (dxdq, dydq) = ((xq - xn) / (2.0 * h), (yq - yn) / (2.0 * h));
            let det = dxdp * dydq - dxdq * dydp;
            worst = worst.max((det - 1.0).abs());
        }
    }
    ensure(worst < 1e-6, || format!("worst deviation {worst:e}"))?;
    Ok(format!("100 points, max |det - 1| = {worst:.1e}"))
}

fn criterion_9() -> Check {
    let mut mutations = 0;
    for f in fixtures() {
        let base = validate_threefold_diagram(&f.diagram).map_err(|e| e.to_string())?;
        ensure(base.valid == f.expect_valid, || format!("{}: verdict", f.name))?;
        for (si, s) in f.diagram.surfaces.iter().enumerate() {
            for delta in [-1, 1] {
                let mut d = f.diagram.clone();
                d.surfaces[si].self_intersection += delta;
                let v = validate_threefold_diagram(&d).map_err(|e| e.to_string())?;
                for (k, pair) in f.diagram.pairings.iter().enumerate() {
                    let touched = pair.contains(&s.id);
                    let (before, after) = (&base.pairings[k], &v.pairings[k]);
                    let moved = after.residual - before.residual;
                    let flipped = after.valid != before.valid;
                    // a balanced pairing flips; an unbalanced one moves by one
                    let ok = if touched {
                        moved == delta && (!before.valid || flipped)
                    } else {
                        moved == 0 && !flipped
                    };
                    ensure(ok, || format!("{}: {} {delta:+} pairing {k}", f.name, s.id))?;
                }
                mutations += 1;
            }
        }
    }
    Ok(format!("3 fixtures, {mutations} mutations"))
}

fn criterion_10() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut jobs: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().ends_with(".job.json"))
        .collect();
    jobs.sort();
    let (mut json, mut svg) = (0, 0);
    for job in &jobs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_blowdown"))
                .args(["job", "--json", job.to_str().unwrap()])
                .stderr(Stdio::null())
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || {
            format!("{} differs between runs", job.display())
        })?;
        ensure(!a.stdout.is_empty(), || format!("{}: no output", job.display()))?;
        if a.stdout.starts_with(b"<?xml") {
            svg += 1;
        } else {
            json += 1;
        }
    }
    ensure(json > 0 && svg > 0, || "need both JSON and SVG jobs".into())?;
    Ok(format!("{json} JSON and {svg} SVG jobs byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("cf round trip", criterion_1),
        ("convergent closed form", criterion_2),
        ("edge invariants", criterion_3),
        ("fit", criterion_4),
        ("volume", criterion_5),
        ("ball volume", criterion_6),
        ("plumbing forms", criterion_7),
        ("point map", criterion_8),
        ("diagram validator", criterion_9),
        ("determinism", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
