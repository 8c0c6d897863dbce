//! Inputs shared by the criterion benches.

use blowdown_core::{CfExpansion, ChainSpec, Rational};

/// `C_n` with areas `1, 1/2, 1/3, ...`.
pub fn sample_chain(n: u32) -> ChainSpec {
    let areas = (1..n).map(|i| Rational::new(1, i64::from(i))).collect();
    ChainSpec::new(n, areas).expect("positive areas")
}

/// A plumbing of length `len` cycling through weights 2..=7.
pub fn sample_terms(len: usize) -> CfExpansion {
    CfExpansion::new((0..len).map(|i| 2 + (i % 6) as i64)).expect("terms are at least 2")
}
