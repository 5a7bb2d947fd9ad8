//! Dense rational elimination and the hand-derived recurrence system for
//! symmetric biderivations `Vir × Vir → F_b`. Shares nothing with the
//! library's sparse solver or row builder.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use superbider_core::Scalar;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn from_scalar(s: &Scalar) -> Q {
    let (n, d) = s.parts();
    Q::new(n, d)
}

/// Nonzero rows of the reduced row echelon form.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub fn nullspace(rows: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let red = rref(rows, ncols);
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, p) in red.iter().zip(&pivots) {
                v[*p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: Vec<Vec<Q>>, ncols: usize) -> usize {
    rref(rows, ncols).len()
}

/// Coefficients `a[(m, n, k)]` of `δ(L_m, L_n) = Σ_k a_{m,n,k} v_{m+n+k}`
/// with `|m|, |n| <= n_max`, `|k| <= k_max`.
pub struct Recurrence {
    pub cols: BTreeMap<(i64, i64, i64), usize>,
    pub rows: Vec<Vec<Q>>,
}

/// Rows of
/// `(m-n) a_{m+n,p,k} = (bn+m+p+k) a_{m,p,k} - (bm+n+p+k) a_{n,p,k}`,
/// `(n-p) a_{m,n+p,k} = (bp+m+n+k) a_{m,n,k} - (bn+m+p+k) a_{m,p,k}`
/// and `a_{m,n,k} = a_{n,m,k}`, wherever every coefficient is in range.
pub fn recurrence_system(b: &Q, n_max: i64, k_max: i64) -> Recurrence {
    let mut cols = BTreeMap::new();
    for m in -n_max..=n_max {
        for n in -n_max..=n_max {
            for k in -k_max..=k_max {
                let i = cols.len();
                cols.insert((m, n, k), i);
            }
        }
    }
    let nc = cols.len();
    let mut rows = Vec::new();
    let range = -n_max..=n_max;
    for k in -k_max..=k_max {
        for m in range.clone() {
            for n in range.clone() {
                for p in range.clone() {
                    if range.contains(&(m + n)) {
                        let mut row = vec![Q::zero(); nc];
                        row[cols[&(m + n, p, k)]] += q(m - n);
                        row[cols[&(m, p, k)]] -= b * q(n) + q(m + p + k);
                        row[cols[&(n, p, k)]] += b * q(m) + q(n + p + k);
                        rows.push(row);
                    }
                    if range.contains(&(n + p)) {
                        let mut row = vec![Q::zero(); nc];
                        row[cols[&(m, n + p, k)]] += q(n - p);
                        row[cols[&(m, n, k)]] -= b * q(p) + q(m + n + k);
                        row[cols[&(m, p, k)]] += b * q(n) + q(m + p + k);
                        rows.push(row);
                    }
                }
                if m < n {
                    let mut row = vec![Q::zero(); nc];
                    row[cols[&(m, n, k)]] = q(1);
                    row[cols[&(n, m, k)]] = q(-1);
                    rows.push(row);
                }
            }
        }
    }
    Recurrence { cols, rows }
}

/// Span of `vectors` as a canonical row echelon basis.
pub fn span(vectors: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    rref(vectors, ncols)
}
