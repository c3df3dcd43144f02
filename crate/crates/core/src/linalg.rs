//! Exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::arith::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| crate::arith::q(v)).collect()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

/// Basis of the right kernel `{v : a v = 0}`.
pub fn kernel(a: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    let (m, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Nonzero rows of the reduced echelon form: a canonical basis of the row span.
pub fn row_space(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let (m, pivots) = rref(&rows.to_vec());
    m.into_iter().take(pivots.len()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

/// Determinant of a small integer matrix by fraction-free elimination.
#[allow(clippy::needless_range_loop)]
pub fn det_i64(a: &[Vec<i64>]) -> i64 {
    let m: Matrix = from_ints(a);
    let n = m.len();
    let (mut m, mut sign) = (m, Q::one());
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    let d = det * sign;
    d.to_integer().try_into().expect("determinant overflow")
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_i64(a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let mut aug: Matrix = from_ints(a);
    for (i, row) in aug.iter_mut().enumerate() {
        row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
    }
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    m.iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|v| if v.is_integer() { v.to_integer().try_into().ok() } else { None })
                .collect()
        })
        .collect()
}
