//! Job documents: a `command` field plus a command-specific payload.

use std::fmt;
use std::str::FromStr;

use blowdown_core::diagram::SumDiagram;
use blowdown_core::{BallSpec, BigInt, CfExpansion, ChainSpec, LatticeVec, ManifoldInvariants, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// A rejected document, located by a JSON pointer (`""` is the whole document).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer.as_str() })]
pub struct ConfigError {
    pub pointer: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigError {
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

/// Arbitrary precision integer, written as a JSON number or a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        blowdown_core::json::bigint::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        blowdown_core::json::bigint::deserialize(d).map(Int)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Cf,
    Chain,
    Plumbing,
    Fit,
    Blowdown,
    Lens,
    Diagram,
    Render,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Cf,
        Command::Chain,
        Command::Plumbing,
        Command::Fit,
        Command::Blowdown,
        Command::Lens,
        Command::Diagram,
        Command::Render,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cf => "cf",
            Command::Chain => "chain",
            Command::Plumbing => "plumbing",
            Command::Fit => "fit",
            Command::Blowdown => "blowdown",
            Command::Lens => "lens",
            Command::Diagram => "diagram",
            Command::Render => "render",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
                ConfigError::new("/command", format!("unknown command {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

/// Expand `n/m`, or evaluate `terms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfJob {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Int>>,
}

/// Convergents of `C_n`; with areas also its domain and edge spheres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainJob {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<Rational>>,
}

/// Intersection form and boundary lens of a linear plumbing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingJob {
    pub terms: CfExpansion,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitJob {
    pub chain: ChainSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowdownJob {
    pub chain: ChainSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
    pub invariants: ManifoldInvariants,
}

/// Corner spanned by the emanating edge directions `u` and `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LensJob {
    pub u: LatticeVec,
    pub v: LatticeVec,
}

/// Either an inline diagram or the name of a bundled fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJob {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<SumDiagram>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    /// Linear plumbing graph of `terms` or of `C_n`.
    PlumbingGraph,
    /// `U_{C_n}`.
    Chain,
    /// `C_n^-` with a shaded collar.
    ChainCollar,
    /// A general plumbing domain.
    Plumbing,
    /// `V_{n,m}`.
    Wedge,
    /// `A'_n` with a shaded collar.
    Ball,
    /// Both collars placed in `V_{n^2, n-1}`.
    Fit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabelToggles {
    pub edges: bool,
    pub corners: bool,
}

impl Default for LabelToggles {
    fn default() -> Self {
        LabelToggles {
            edges: true,
            corners: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderOptions {
    /// Pixels per lattice unit.
    pub scale: Rational,
    /// Collar thickness; defaults to a quarter of the smallest area in play.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    /// Rays stop at this multiple of the largest vertex coordinate; at least 1.
    pub horizon: Rational,
    pub labels: LabelToggles,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: Rational::from(20),
            epsilon: None,
            horizon: Rational::new(3, 2),
            labels: LabelToggles::default(),
            output: None,
        }
    }
}

impl RenderOptions {
    fn validate(&self, at: &str) -> Result<(), ConfigError> {
        if !self.scale.is_positive() {
            return Err(ConfigError::new(format!("{at}/scale"), "scale must be positive"));
        }
        if self.epsilon.as_ref().is_some_and(|e| !e.is_positive()) {
            return Err(ConfigError::new(format!("{at}/epsilon"), "epsilon must be positive"));
        }
        if self.horizon < Rational::one() {
            return Err(ConfigError::new(format!("{at}/horizon"), "horizon must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderJob {
    pub figure: Figure,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<CfExpansion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
    #[serde(default)]
    pub options: RenderOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum JobConfig {
    Cf(CfJob),
    Chain(ChainJob),
    Plumbing(PlumbingJob),
    Fit(FitJob),
    Blowdown(BlowdownJob),
    Lens(LensJob),
    Diagram(DiagramJob),
    Render(RenderJob),
}

impl JobConfig {
    pub fn command(&self) -> Command {
        match self {
            JobConfig::Cf(_) => Command::Cf,
            JobConfig::Chain(_) => Command::Chain,
            JobConfig::Plumbing(_) => Command::Plumbing,
            JobConfig::Fit(_) => Command::Fit,
            JobConfig::Blowdown(_) => Command::Blowdown,
            JobConfig::Lens(_) => Command::Lens,
            JobConfig::Diagram(_) => Command::Diagram,
            JobConfig::Render(_) => Command::Render,
        }
    }

    /// Parses a document whose `command` field selects the payload.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Self::parse(text, None)
    }

    /// Parses a payload for a known command. A `command` field, if present,
    /// must agree.
    pub fn from_json_for(command: Command, text: &str) -> Result<Self, ConfigError> {
        Self::parse(text, Some(command))
    }

    fn parse(text: &str, expected: Option<Command>) -> Result<Self, ConfigError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::new("", e))?;
        Self::from_value(value, expected)
    }

    pub fn from_value(value: Value, expected: Option<Command>) -> Result<Self, ConfigError> {
        let Value::Object(mut map) = value else {
            return Err(ConfigError::new("", "a job must be a JSON object"));
        };
        let command = match (map.remove("command"), expected) {
            (Some(Value::String(s)), expected) => {
                let c: Command = s.parse()?;
                if expected.is_some_and(|e| e != c) {
                    return Err(ConfigError::new(
                        "/command",
                        format!("command {c} does not match {}", expected.unwrap()),
                    ));
                }
                c
            }
            (Some(_), _) => return Err(ConfigError::new("/command", "command must be a string")),
            (None, Some(c)) => c,
            (None, None) => return Err(ConfigError::new("", "missing field `command`")),
        };
        let payload = Value::Object(map);
        let job = match command {
            Command::Cf => JobConfig::Cf(payload_of(payload)?),
            Command::Chain => JobConfig::Chain(payload_of(payload)?),
            Command::Plumbing => JobConfig::Plumbing(payload_of(payload)?),
            Command::Fit => JobConfig::Fit(payload_of(payload)?),
            Command::Blowdown => JobConfig::Blowdown(payload_of(payload)?),
            Command::Lens => JobConfig::Lens(payload_of(payload)?),
            Command::Diagram => JobConfig::Diagram(payload_of(payload)?),
            Command::Render => JobConfig::Render(payload_of(payload)?),
        };
        job.validate()?;
        Ok(job)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        match self {
            JobConfig::Cf(j) => match (&j.n, &j.m, &j.terms) {
                (Some(_), Some(_), None) | (None, None, Some(_)) => Ok(()),
                _ => Err(ConfigError::new("", "give either `n` and `m`, or `terms`")),
            },
            JobConfig::Diagram(j) => match (&j.diagram, &j.fixture) {
                (Some(_), None) | (None, Some(_)) => Ok(()),
                _ => Err(ConfigError::new("", "give exactly one of `diagram` and `fixture`")),
            },
            JobConfig::Render(j) => j.options.validate("/options"),
            _ => Ok(()),
        }
    }
}

fn payload_of<T: serde::de::DeserializeOwned>(payload: Value) -> Result<T, ConfigError> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let pointer = json_pointer(e.path());
        ConfigError::new(pointer, e.into_inner())
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for segment in path.iter() {
        match segment {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Unknown => {}
        }
    }
    out
}
