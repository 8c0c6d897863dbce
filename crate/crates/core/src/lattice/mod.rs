//! Exact lattice arithmetic: integer vectors, `GL(2, Z)` affine maps,
//! negative continued fractions and corner (lens space) classification.

mod cf;
mod chain;
mod lens;
mod unimodular;
mod vector;

use num_bigint::BigInt;

pub use cf::{neg_cf_eval, neg_cf_expand, CfExpansion};
pub use chain::{
    chain_convergents, chain_expansion, chain_vertices, gluing_map, plumbing_directions,
    plumbing_gluing_map, Convergent,
};
pub use lens::{lens_from_corner, matrix_sending_to_vertical, mod_inverse, LensType};
pub use unimodular::{IntMatrix2, UnimodularMap};
pub use vector::LatticeVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("expected positive integers, got n = {n}, m = {m}")]
    NonPositive { n: BigInt, m: BigInt },
    #[error("expected n > m, got n = {n}, m = {m}")]
    NotProperFraction { n: BigInt, m: BigInt },
    #[error("{n} and {m} are not coprime")]
    NotCoprime { n: BigInt, m: BigInt },
    #[error("continued fraction has no terms")]
    EmptyExpansion,
    #[error("term {index} of the continued fraction is {term}, below 2")]
    TermBelowTwo { index: usize, term: BigInt },
    #[error("matrix has determinant {det}, not ±1")]
    NotUnimodular { det: BigInt },
    #[error("{0} is not a primitive lattice vector")]
    NotPrimitive(LatticeVec),
    #[error("{0} and {1} are parallel")]
    Parallel(LatticeVec, LatticeVec),
    #[error("chain parameter n = {n} is too small")]
    ChainTooShort { n: u32 },
    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("need {needed} areas, got {got}")]
    TooFewAreas { needed: usize, got: usize },
    #[error("area {index} is not positive")]
    NonPositiveArea { index: usize },
}
