//! The blowdown pipeline: the fit inequality and its two embeddings, the
//! exact volume change, ball volumes, plumbing intersection forms and the
//! change of topological invariants.

mod fit;
mod forms;
mod volume;

use serde::{Deserialize, Serialize};

use crate::domain::DomainError;
use crate::lattice::{LatticeError, UnimodularMap};
use crate::rational::Rational;

pub use fit::{ball_feasible, chain_budget, choose_ball, embedding_phi1, embedding_phi2};
pub use forms::{determinant, is_negative_definite, leading_minors, plumbing_matrix};
pub use volume::{ball_volume, blowdown_region, blowdown_volume_delta};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("chain parameter n = {n} is too small, need n >= 2")]
    ChainTooShort { n: u32 },
    #[error("chain with n = {n} needs {expected} areas, got {got}")]
    AreaCount { n: u32, expected: usize, got: usize },
    #[error("area {index} is not positive")]
    NonPositiveArea { index: usize },
    #[error("n = {n}: the rational ball model needs n >= 3 (n = 2 is the conic sum)")]
    BallNeedsLargerChain { n: u32 },
    #[error("invalid ball for n = {n}: need alpha_plus > (n+1) alpha_minus > 0, got alpha_plus = {alpha_plus}, alpha_minus = {alpha_minus}")]
    InvalidBall {
        n: u32,
        alpha_plus: Rational,
        alpha_minus: Rational,
    },
    #[error("ball does not fit: {reason}")]
    InfeasibleBall { reason: String },
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("second Betti number would become {b2}")]
    NegativeB2 { b2: i64 },
}

/// A chain `C_n`: spheres of self-intersection `-(n+2), -2, ..., -2` and
/// areas `a_1, ..., a_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawChainSpec")]
pub struct ChainSpec {
    n: u32,
    areas: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChainSpec {
    n: u32,
    areas: Vec<Rational>,
}

impl TryFrom<RawChainSpec> for ChainSpec {
    type Error = SurgeryError;

    fn try_from(raw: RawChainSpec) -> Result<Self, SurgeryError> {
        ChainSpec::new(raw.n, raw.areas)
    }
}

impl ChainSpec {
    pub fn new(n: u32, areas: Vec<Rational>) -> Result<Self, SurgeryError> {
        if n < 2 {
            return Err(SurgeryError::ChainTooShort { n });
        }
        let expected = n as usize - 1;
        if areas.len() != expected {
            return Err(SurgeryError::AreaCount {
                n,
                expected,
                got: areas.len(),
            });
        }
        if let Some(index) = areas.iter().position(|a| !a.is_positive()) {
            return Err(SurgeryError::NonPositiveArea { index });
        }
        Ok(ChainSpec { n, areas })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn areas(&self) -> &[Rational] {
        &self.areas
    }

    /// All areas multiplied by `lambda > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self, SurgeryError> {
        ChainSpec::new(self.n, self.areas.iter().map(|a| a * lambda).collect())
    }

    pub(crate) fn n_squared(&self) -> Rational {
        Rational::from(i64::from(self.n) * i64::from(self.n))
    }
}

/// Section areas of the ruled surface piece: `alpha_plus` for the
/// `(n+1)`-sphere and `alpha_minus` for the `-(n-1)`-sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub alpha_plus: Rational,
    pub alpha_minus: Rational,
}

impl BallSpec {
    pub fn new(alpha_plus: impl Into<Rational>, alpha_minus: impl Into<Rational>) -> Self {
        BallSpec {
            alpha_plus: alpha_plus.into(),
            alpha_minus: alpha_minus.into(),
        }
    }

    /// `alpha_plus > (n+1) alpha_minus > 0` and `n >= 3`.
    pub fn validate(&self, n: u32) -> Result<(), SurgeryError> {
        if n < 3 {
            return Err(SurgeryError::BallNeedsLargerChain { n });
        }
        let bound = &self.alpha_minus * &Rational::from(i64::from(n) + 1);
        if !self.alpha_minus.is_positive() || self.alpha_plus <= bound {
            return Err(SurgeryError::InvalidBall {
                n,
                alpha_plus: self.alpha_plus.clone(),
                alpha_minus: self.alpha_minus.clone(),
            });
        }
        Ok(())
    }

    /// `(n-1) alpha_plus + alpha_minus`, the left side of the fit inequality.
    pub fn demand(&self, n: u32) -> Rational {
        &self.alpha_plus * &Rational::from(i64::from(n) - 1) + &self.alpha_minus
    }
}

/// Numerical data of the ambient manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldInvariants {
    pub euler: i64,
    pub signature: i64,
    pub b2: i64,
    pub volume: Rational,
}

/// Outcome of the fit test for a chain and a ball inside `V_{n^2, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub feasible: bool,
    pub budget: Rational,
    pub phi1: UnimodularMap,
    pub phi2: UnimodularMap,
    /// `delta_1.y - delta_2.y`
    pub margin: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Changes of the invariants under the blowdown of `C_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantDeltas {
    pub euler: i64,
    pub signature: i64,
    pub b2: i64,
    pub c1_squared: i64,
    pub volume: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowdownMethod {
    /// Replace the chain by the rational ball `B_n`.
    RationalBall,
    /// `n = 2`: symplectic sum with `CP^2` along a conic.
    ConicSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowdownReport {
    pub method: BlowdownMethod,
    pub chain: ChainSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitReport>,
    pub volume_delta: Rational,
    pub deltas: InvariantDeltas,
    pub new_invariants: ManifoldInvariants,
}

/// Full report for blowing down `chain` in a manifold with invariants `m`.
///
/// For `n >= 3` the ball defaults to [`choose_ball`]; an explicit ball must
/// pass [`ball_feasible`]. For `n = 2` no ball is used and passing one is an
/// error.
pub fn blowdown_report(
    m: &ManifoldInvariants,
    chain: &ChainSpec,
    ball: Option<&BallSpec>,
) -> Result<BlowdownReport, SurgeryError> {
    let n = chain.n();
    let (method, ball, fit) = if n == 2 {
        if ball.is_some() {
            return Err(SurgeryError::BallNeedsLargerChain { n });
        }
        (BlowdownMethod::ConicSum, None, None)
    } else {
        let ball = match ball {
            Some(b) => b.clone(),
            None => choose_ball(chain)?,
        };
        let fit = ball_feasible(chain, &ball);
        if !fit.feasible {
            return Err(SurgeryError::InfeasibleBall {
                reason: fit.reason.unwrap_or_default(),
            });
        }
        (BlowdownMethod::RationalBall, Some(ball), Some(fit))
    };

    let matrix = plumbing_matrix(&crate::lattice::chain_expansion(n, n as usize - 1)?);
    assert!(
        is_negative_definite(&matrix)?,
        "the chain plumbing form must be negative definite"
    );
    // negative definite of full rank n - 1; the ball has b2 = 0 and chi = 1
    let k = i64::from(n) - 1;
    let sigma_chain = -(matrix.len() as i64);
    let (chi_chain, chi_ball) = (i64::from(n), 1);
    let euler = chi_ball - chi_chain;
    let signature = -sigma_chain;
    debug_assert_eq!((euler, signature), (-k, k));
    let volume_delta = blowdown_volume_delta(chain)?;
    let deltas = InvariantDeltas {
        euler,
        signature,
        b2: -k,
        c1_squared: 2 * euler + 3 * signature,
        volume: volume_delta.clone(),
    };
    let b2 = m.b2 + deltas.b2;
    if b2 < 0 {
        return Err(SurgeryError::NegativeB2 { b2 });
    }
    let new_invariants = ManifoldInvariants {
        euler: m.euler + deltas.euler,
        signature: m.signature + deltas.signature,
        b2,
        volume: &m.volume + &volume_delta,
    };
    Ok(BlowdownReport {
        method,
        chain: chain.clone(),
        ball,
        fit,
        volume_delta,
        deltas,
        new_invariants,
    })
}
