#![allow(dead_code)]

use blowdown_core::lattice::IntMatrix2;
use blowdown_core::{Point, Rational, UnimodularMap};
use proptest::prelude::*;

/// Rationals `p/q` with `1 <= p <= 10 q`, so in `(0, 10]`.
pub fn area() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|q| (1i64..=10 * q).prop_map(move |p| Rational::new(p, q)))
}

pub fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound * 6..=bound * 6, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn elementary(kind: u8, k: i64) -> IntMatrix2 {
    match kind {
        0 => IntMatrix2::new(1, k, 0, 1),
        1 => IntMatrix2::new(1, 0, k, 1),
        2 => IntMatrix2::new(0, 1, 1, 0),
        _ => IntMatrix2::new(-1, 0, 0, 1),
    }
}

/// Products of a few elementary `GL(2, Z)` generators.
pub fn gl2z() -> impl Strategy<Value = IntMatrix2> {
    prop::collection::vec((0u8..4, -3i64..=3), 1..6).prop_map(|steps| {
        steps
            .into_iter()
            .fold(IntMatrix2::identity(), |acc, (kind, k)| acc.mul(&elementary(kind, k)))
    })
}

pub fn affine() -> impl Strategy<Value = UnimodularMap> {
    (gl2z(), rational(5), rational(5))
        .prop_map(|(b, x, y)| UnimodularMap::new(b, Point::new(x, y)).expect("unimodular"))
}

/// Exact value of a negative continued fraction by direct rational evaluation.
pub fn eval_cf(terms: &[i64]) -> Rational {
    let mut it = terms.iter().rev();
    let mut v = Rational::from(*it.next().expect("nonempty"));
    for &b in it {
        v = Rational::from(b) - v.recip().expect("nonzero");
    }
    v
}

/// All sequences with entries in `lo..=hi` and length `1..=max_len`.
pub fn all_sequences(lo: i64, hi: i64, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                (lo..=hi).map(move |b| {
                    let mut t = s.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Integer determinant by cofactor expansion along successive rows.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    fn expand(m: &[Vec<i64>], row: usize, free: u32) -> i64 {
        if row == m.len() {
            return 1;
        }
        let mut total = 0;
        let mut sign = 1;
        for j in 0..m.len() {
            if free & (1 << j) == 0 {
                continue;
            }
            if m[row][j] != 0 {
                total += sign * m[row][j] * expand(m, row + 1, free & !(1 << j));
            }
            sign = -sign;
        }
        total
    }
    expand(m, 0, (1u32 << m.len()) - 1)
}
