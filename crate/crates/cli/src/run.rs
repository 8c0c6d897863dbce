use std::fmt;

use blowdown_core::diagram::{fixtures, validate_threefold_diagram};
use blowdown_core::domain::{edge_sphere_invariants, make_chain_domain, make_general_plumbing_domain};
use blowdown_core::lattice::{
    chain_convergents, chain_expansion, gluing_map, lens_from_corner, neg_cf_expand, Convergent,
};
use blowdown_core::surgery::{
    ball_feasible, blowdown_report, chain_budget, choose_ball, determinant, is_negative_definite,
    leading_minors, plumbing_matrix, SurgeryError,
};
use blowdown_core::{
    BallSpec, BigInt, CfExpansion, EdgeInvariant, FitReport, LatticeVec, LensType, PolyDomain,
    Rational, UnimodularMap,
};
use serde::Serialize;

use crate::config::{
    BlowdownJob, ChainJob, CfJob, ConfigError, DiagramJob, FitJob, Int, JobConfig, LensJob,
    PlumbingJob, RenderJob,
};
use crate::figures::{chain_collar_transverse, default_epsilon, render_figure};
use crate::config::RenderOptions;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Json,
    Svg,
}

/// One emitted document. `path` is where the job asked for it to go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub kind: DocumentKind,
    pub path: Option<String>,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: u8,
    pub documents: Vec<Document>,
}

/// A job that could not complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit_code: u8,
    pub kind: &'static str,
    pub pointer: String,
    pub message: String,
}

impl Failure {
    pub fn invalid(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        Failure {
            exit_code: EXIT_INVALID,
            kind: "invalid-input",
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }

    pub fn infeasible(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        Failure {
            exit_code: EXIT_INFEASIBLE,
            kind: "infeasible",
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }

    fn from_surgery(pointer: &str, e: SurgeryError) -> Self {
        match e {
            SurgeryError::InfeasibleBall { .. } | SurgeryError::InvalidBall { .. } => {
                Failure::infeasible("/ball", e)
            }
            _ => Failure::invalid(pointer, e),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure {
            exit_code: EXIT_INVALID,
            kind: "schema",
            pointer: e.pointer,
            message: e.message,
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    pointer: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    command: Option<&'a str>,
    error: ErrorBody<'a>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn json_doc<T: Serialize>(v: &T) -> Document {
    Document {
        kind: DocumentKind::Json,
        path: None,
        content: to_json(v),
    }
}

impl Outcome {
    fn failed(command: Option<&str>, f: &Failure) -> Outcome {
        Outcome {
            exit_code: f.exit_code,
            documents: vec![json_doc(&ErrorDoc {
                command,
                error: ErrorBody {
                    kind: f.kind,
                    pointer: &f.pointer,
                    message: &f.message,
                },
            })],
        }
    }
}

/// Parses and runs a job document.
pub fn run_json(text: &str) -> Outcome {
    match JobConfig::from_json(text) {
        Ok(job) => run(&job),
        Err(e) => rejected(e),
    }
}

/// The error document and exit code for a document that failed to parse.
pub fn rejected(e: ConfigError) -> Outcome {
    Outcome::failed(None, &e.into())
}

/// Runs a validated job. Identical jobs give byte-identical documents.
pub fn run(job: &JobConfig) -> Outcome {
    let name = job.command().name();
    let result = match job {
        JobConfig::Cf(j) => cf(j),
        JobConfig::Chain(j) => chain(j),
        JobConfig::Plumbing(j) => plumbing(j),
        JobConfig::Fit(j) => fit(j),
        JobConfig::Blowdown(j) => blowdown(j),
        JobConfig::Lens(j) => lens(j),
        JobConfig::Diagram(j) => diagram(j),
        JobConfig::Render(j) => render(j),
    };
    match result {
        Ok(o) => o,
        Err(f) => Outcome::failed(Some(name), &f),
    }
}

fn done<T: Serialize>(exit_code: u8, report: &T) -> Result<Outcome, Failure> {
    Ok(Outcome {
        exit_code,
        documents: vec![json_doc(report)],
    })
}

fn pair(v: (BigInt, BigInt)) -> [Int; 2] {
    [Int(v.0), Int(v.1)]
}

#[derive(Serialize)]
struct CfReport {
    command: &'static str,
    n: Int,
    m: Int,
    terms: CfExpansion,
    convergents: Vec<[Int; 2]>,
}

fn cf(j: &CfJob) -> Result<Outcome, Failure> {
    let terms = match (&j.n, &j.m, &j.terms) {
        (Some(n), Some(m), _) => {
            neg_cf_expand(n.0.clone(), m.0.clone()).map_err(|e| Failure::invalid("", e))?
        }
        (_, _, Some(t)) => CfExpansion::new(t.iter().map(|x| x.0.clone()))
            .map_err(|e| Failure::invalid("/terms", e))?,
        _ => unreachable!("validated shape"),
    };
    let (n, m) = terms.value();
    done(
        EXIT_OK,
        &CfReport {
            command: "cf",
            n: Int(n),
            m: Int(m),
            convergents: terms.convergents().into_iter().map(pair).collect(),
            terms,
        },
    )
}

#[derive(Serialize)]
struct Gluing {
    index: usize,
    map: UnimodularMap,
}

#[derive(Serialize)]
struct ChainGeometry {
    areas: Vec<Rational>,
    budget: Rational,
    domain: PolyDomain,
    edge_invariants: Vec<EdgeInvariant>,
    gluing_maps: Vec<Gluing>,
}

#[derive(Serialize)]
struct ChainReport {
    command: &'static str,
    n: u32,
    expansion: CfExpansion,
    convergents: Vec<Convergent>,
    boundary_lens: LensType,
    budget_coefficients: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    geometry: Option<ChainGeometry>,
}

fn chain(j: &ChainJob) -> Result<Outcome, Failure> {
    let n = j.n;
    if n < 2 {
        return Err(Failure::invalid("/n", "a chain needs n >= 2"));
    }
    let count = j.count.unwrap_or(n as usize);
    let convergents = chain_convergents(n, count).map_err(|e| Failure::invalid("/count", e))?;
    let expansion = chain_expansion(n, n as usize - 1).expect("n >= 2");
    let nb = i64::from(n);
    let geometry = match &j.areas {
        None => None,
        Some(areas) => {
            let spec = blowdown_core::ChainSpec::new(n, areas.clone())
                .map_err(|e| Failure::invalid("/areas", e))?;
            let domain = make_chain_domain(n, areas).map_err(|e| Failure::invalid("/areas", e))?;
            let edge_invariants =
                edge_sphere_invariants(&domain).map_err(|e| Failure::invalid("/areas", e))?;
            let gluing_maps = (2..n as usize)
                .map(|i| Gluing {
                    index: i,
                    map: gluing_map(n, i, areas).expect("valid chain"),
                })
                .collect();
            Some(ChainGeometry {
                areas: areas.clone(),
                budget: chain_budget(&spec),
                domain,
                edge_invariants,
                gluing_maps,
            })
        }
    };
    done(
        EXIT_OK,
        &ChainReport {
            command: "chain",
            n,
            expansion,
            convergents,
            boundary_lens: LensType::new(nb * nb, nb - 1),
            budget_coefficients: (1..nb).map(|i| nb - i).collect(),
            geometry,
        },
    )
}

#[derive(Serialize)]
struct PlumbingReport {
    command: &'static str,
    terms: CfExpansion,
    boundary_lens: LensType,
    matrix: Vec<Vec<Int>>,
    determinant: Int,
    leading_minors: Vec<Int>,
    negative_definite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    domain: Option<PolyDomain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_invariants: Option<Vec<EdgeInvariant>>,
}

fn plumbing(j: &PlumbingJob) -> Result<Outcome, Failure> {
    let m = plumbing_matrix(&j.terms);
    let det = determinant(&m).expect("square");
    let minors = leading_minors(&m).expect("square");
    let definite = is_negative_definite(&m).expect("symmetric");
    let (p, q) = j.terms.value();
    let (domain, edge_invariants) = match &j.areas {
        None => (None, None),
        Some(a) => {
            let d = make_general_plumbing_domain(&j.terms, a)
                .map_err(|e| Failure::invalid("/areas", e))?;
            let inv = edge_sphere_invariants(&d).map_err(|e| Failure::invalid("/areas", e))?;
            (Some(d), Some(inv))
        }
    };
    done(
        EXIT_OK,
        &PlumbingReport {
            command: "plumbing",
            boundary_lens: LensType::new(p, q),
            matrix: m
                .into_iter()
                .map(|row| row.into_iter().map(Int).collect())
                .collect(),
            determinant: Int(det),
            leading_minors: minors.into_iter().map(Int).collect(),
            negative_definite: definite,
            terms: j.terms.clone(),
            domain,
            edge_invariants,
        },
    )
}

#[derive(Serialize)]
struct FitOutput<'a> {
    command: &'static str,
    chain: &'a blowdown_core::ChainSpec,
    ball: &'a BallSpec,
    demand: Rational,
    #[serde(flatten)]
    report: FitReport,
    collar_epsilon: Rational,
    collar_transverse: bool,
}

fn fit(j: &FitJob) -> Result<Outcome, Failure> {
    let ball = match &j.ball {
        Some(b) => b.clone(),
        None => choose_ball(&j.chain).map_err(|e| Failure::invalid("/chain", e))?,
    };
    let report = ball_feasible(&j.chain, &ball);
    let eps = default_epsilon(&RenderOptions::default(), j.chain.areas());
    let exit = if report.feasible { EXIT_OK } else { EXIT_INFEASIBLE };
    done(
        exit,
        &FitOutput {
            command: "fit",
            chain: &j.chain,
            demand: ball.demand(j.chain.n()),
            ball: &ball,
            report,
            collar_transverse: chain_collar_transverse(&j.chain, &eps),
            collar_epsilon: eps,
        },
    )
}

#[derive(Serialize)]
struct BlowdownOutput {
    command: &'static str,
    #[serde(flatten)]
    report: blowdown_core::BlowdownReport,
}

fn blowdown(j: &BlowdownJob) -> Result<Outcome, Failure> {
    let report = blowdown_report(&j.invariants, &j.chain, j.ball.as_ref()).map_err(|e| match e {
        SurgeryError::NegativeB2 { .. } => Failure::invalid("/invariants/b2", e),
        SurgeryError::BallNeedsLargerChain { .. } => Failure::invalid("/ball", e),
        e => Failure::from_surgery("/chain", e),
    })?;
    done(
        EXIT_OK,
        &BlowdownOutput {
            command: "blowdown",
            report,
        },
    )
}

#[derive(Serialize)]
struct LensOutput<'a> {
    command: &'static str,
    u: &'a LatticeVec,
    v: &'a LatticeVec,
    lens: LensType,
    smooth: bool,
}

fn lens(j: &LensJob) -> Result<Outcome, Failure> {
    let lens = lens_from_corner(&j.u, &j.v).map_err(|e| Failure::invalid("", e))?;
    done(
        EXIT_OK,
        &LensOutput {
            command: "lens",
            u: &j.u,
            v: &j.v,
            smooth: lens.is_smooth(),
            lens,
        },
    )
}

#[derive(Serialize)]
struct DiagramOutput<'a> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<&'a str>,
    #[serde(flatten)]
    verdict: blowdown_core::diagram::DiagramVerdict,
}

fn diagram(j: &DiagramJob) -> Result<Outcome, Failure> {
    let all = fixtures();
    let d = match (&j.diagram, &j.fixture) {
        (Some(d), _) => d.clone(),
        (None, Some(name)) => all
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.diagram.clone())
            .ok_or_else(|| {
                let names: Vec<&str> = all.iter().map(|f| f.name).collect();
                Failure::invalid(
                    "/fixture",
                    format!("unknown fixture {name:?}, expected one of {}", names.join(", ")),
                )
            })?,
        (None, None) => unreachable!("validated shape"),
    };
    let verdict = validate_threefold_diagram(&d).map_err(|e| Failure::invalid("/diagram", e))?;
    let exit = if verdict.valid { EXIT_OK } else { EXIT_INFEASIBLE };
    done(
        exit,
        &DiagramOutput {
            command: "diagram",
            fixture: j.fixture.as_deref(),
            verdict,
        },
    )
}

fn render(j: &RenderJob) -> Result<Outcome, Failure> {
    let r = render_figure(j)?;
    Ok(Outcome {
        exit_code: if r.feasible { EXIT_OK } else { EXIT_INFEASIBLE },
        documents: vec![Document {
            kind: DocumentKind::Svg,
            path: j.options.output.clone(),
            content: r.svg,
        }],
    })
}
