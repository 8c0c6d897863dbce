use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SurgeryError;
use crate::lattice::CfExpansion;

/// Intersection form of the linear plumbing `[b1, ..., bs]`: tridiagonal with
/// `-b_i` on the diagonal and `1` beside it.
pub fn plumbing_matrix(terms: &CfExpansion) -> Vec<Vec<BigInt>> {
    let s = terms.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i == j {
                        -terms.terms()[i].clone()
                    } else if i.abs_diff(j) == 1 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn check_square(m: &[Vec<BigInt>]) -> Result<(), SurgeryError> {
    if m.is_empty() {
        return Err(SurgeryError::EmptyMatrix);
    }
    match m.iter().position(|row| row.len() != m.len()) {
        Some(row) => Err(SurgeryError::NotSquare {
            row,
            len: m[row].len(),
            expected: m.len(),
        }),
        None => Ok(()),
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(m: &[Vec<BigInt>]) -> Result<BigInt, SurgeryError> {
    check_square(m)?;
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Leading principal minors `D_1, ..., D_n`.
///
/// Without pivoting, the `k`-th Bareiss pivot is `D_k`. If a pivot vanishes
/// the remaining minors are computed one by one.
pub fn leading_minors(m: &[Vec<BigInt>]) -> Result<Vec<BigInt>, SurgeryError> {
    check_square(m)?;
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            for j in k + 1..=n {
                let sub: Vec<Vec<BigInt>> = m[..j].iter().map(|row| row[..j].to_vec()).collect();
                out.push(determinant(&sub)?);
            }
            return Ok(out);
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(out)
}

/// Sylvester's criterion: `(-1)^k D_k > 0` for every leading minor.
pub fn is_negative_definite(m: &[Vec<BigInt>]) -> Result<bool, SurgeryError> {
    check_square(m)?;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i][j] != m[j][i] {
                return Err(SurgeryError::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(leading_minors(m)?
        .iter()
        .enumerate()
        .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() }))
}
