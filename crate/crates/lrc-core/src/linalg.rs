//! Exact linear algebra over the rationals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::series::RatSeries;

/// Solves `A X = B` where `A` is `rows x n` and `B` is `rows x k`.
///
/// The system may be overdetermined; every row must be satisfied by the unique
/// solution. On inconsistency the index of the first violated row is reported
/// through `Error::RecognitionFailed`.
pub fn solve_overdetermined(a: &[Vec<Rat>], b: &[Vec<Rat>], n: usize, context: &str) -> Result<Vec<Vec<Rat>>> {
    let rows = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(ra, rb)| {
            let mut r = ra.clone();
            r.extend(rb.iter().cloned());
            r
        })
        .collect();
    let mut ids: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            return Err(Error::Singular("basis is linearly dependent on the sampled coefficients"));
        };
        m.swap(r, p);
        ids.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(prow.iter()).skip(col) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    let bad = m.iter().zip(ids.iter()).skip(n).filter(|(row, _)| row[n..].iter().any(|x| !x.is_zero()));
    if let Some(first) = bad.map(|(_, &id)| id).min() {
        return Err(Error::RecognitionFailed { context: String::from(context), residual_at: first as i64 });
    }
    Ok((0..n).map(|i| m[pivots[i]][n..n + k].to_vec()).collect())
}

/// Writes `target` as a rational combination of `basis`, using the coefficients
/// from `from` through the common truncation order. At least `margin` equations
/// beyond the number of unknowns must be available, and all must hold.
pub fn fit_series(basis: &[RatSeries], target: &RatSeries, from: i64, margin: usize, context: &str) -> Result<Vec<Rat>> {
    let n = basis.len();
    let top = basis.iter().map(|s| s.order()).chain(core::iter::once(target.order())).min().unwrap_or(from);
    let eqs = (top - from + 1).max(0) as usize;
    if eqs < n + margin {
        return Err(Error::InsufficientPrecision { needed: from + (n + margin) as i64 - 1, available: top });
    }
    let a: Vec<Vec<Rat>> = (from..=top).map(|e| basis.iter().map(|s| s.coeff(e)).collect()).collect();
    let b: Vec<Vec<Rat>> = (from..=top).map(|e| alloc::vec![target.coeff(e)]).collect();
    match solve_overdetermined(&a, &b, n, context) {
        Ok(x) => Ok(x.into_iter().map(|mut v| v.remove(0)).collect()),
        Err(Error::RecognitionFailed { context, residual_at }) => {
            Err(Error::RecognitionFailed { context, residual_at: from + residual_at })
        }
        Err(e) => Err(e),
    }
}

pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let f = &m[i][col] * &inv;
                for j in col..n {
                    let y = m[col][j].clone();
                    m[i][j] -= &f * y;
                }
            }
        }
    }
    det
}

pub fn describe_matrix(a: &[Vec<Rat>]) -> String {
    format!("{}x{}", a.len(), a.first().map_or(0, |r| r.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ri;
    use crate::series::Var;

    #[test]
    fn fit_detects_residual() {
        let b1 = RatSeries::from_ints(Var::T, 0, &[1, 1, 1, 1, 1, 1], 5);
        let b2 = RatSeries::from_ints(Var::T, 0, &[0, 1, 2, 3, 4, 5], 5);
        let t = RatSeries::from_ints(Var::T, 0, &[2, 5, 8, 11, 14, 17], 5);
        assert_eq!(fit_series(&[b1.clone(), b2.clone()], &t, 0, 2, "lin").unwrap(), alloc::vec![ri(2), ri(3)]);
        let bad = RatSeries::from_ints(Var::T, 0, &[2, 5, 8, 11, 14, 18], 5);
        assert!(matches!(
            fit_series(&[b1.clone(), b2.clone()], &bad, 0, 2, "lin"),
            Err(Error::RecognitionFailed { residual_at: 5, .. })
        ));
        assert!(matches!(fit_series(&[b1, b2], &t, 0, 5, "lin"), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn det_small() {
        let a = alloc::vec![alloc::vec![ri(2), ri(1)], alloc::vec![ri(7), ri(4)]];
        assert_eq!(determinant(&a), ri(1));
    }
}
