//! Exact Gaussian elimination over a field.

use crate::scalar::{Field, Scalar};

/// Solves `A x = b` for square or rectangular `A` (rows of equal length).
///
/// Returns `None` when the system is inconsistent. Free variables are set to zero.
pub fn solve(field: Field, a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..=cols {
            m[row][c] = m[row][c].clone() * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = factor.clone() * &m[row][c];
                    m[r][c] = m[r][c].clone() - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(field); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Rank of `A`.
pub fn rank(a: &[Vec<Scalar>]) -> usize {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m = a.to_vec();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for r in row + 1..rows {
            if !m[r][col].is_zero() {
                let factor = m[r][col].clone() * &inv;
                for c in col..cols {
                    let sub = factor.clone() * &m[row][c];
                    m[r][c] = m[r][c].clone() - &sub;
                }
            }
        }
        row += 1;
        if row == rows {
            break;
        }
    }
    row
}
