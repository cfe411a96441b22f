//! Integer column reduction: lattice index and integer kernels.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::ExponentMatrix;
use crate::error::{Error, Result};

/// Column Hermite-style reduction `A * U = [H | 0]` with `U` unimodular.
pub struct ColumnEchelon {
    pub h: Vec<Vec<i128>>,
    pub u: Vec<Vec<i128>>,
    /// `(row, column)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

fn col_op(mat: &mut [Vec<i128>], j: usize, k: usize, a: i128, b: i128, c: i128, d: i128) {
    // (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
    for row in mat.iter_mut() {
        let (x, y) = (row[j], row[k]);
        row[j] = a * x + b * y;
        row[k] = c * x + d * y;
    }
}

pub fn column_echelon(a: &ExponentMatrix) -> ColumnEchelon {
    let (m, n) = (a.m(), a.n());
    let mut h: Vec<Vec<i128>> = a.rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..m {
        if col >= n {
            break;
        }
        for k in col + 1..n {
            if h[row][k] == 0 {
                continue;
            }
            let (x, y) = (h[row][col], h[row][k]);
            let eg = x.extended_gcd(&y);
            let g = eg.gcd;
            // [x y] * [[s, -y/g], [t, x/g]] = [g 0]
            let (s, t) = (eg.x, eg.y);
            let (p, q) = (y / g, x / g);
            col_op(&mut h, col, k, s, t, -p, q);
            col_op(&mut u, col, k, s, t, -p, q);
        }
        if h[row][col] == 0 {
            // no pivot in this row; the column stays for the next row
            continue;
        }
        if h[row][col] < 0 {
            for r in h.iter_mut().chain(u.iter_mut()) {
                r[col] = -r[col];
            }
        }
        // reduce entries left of the pivot
        for j in 0..col {
            let q = Integer::div_floor(&h[row][j], &h[row][col]);
            if q != 0 {
                for r in h.iter_mut().chain(u.iter_mut()) {
                    r[j] -= q * r[col];
                }
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    ColumnEchelon { h, u, pivots }
}

/// Index of the lattice spanned by the columns, equal to the gcd of the maximal minors.
pub fn lattice_index(a: &ExponentMatrix) -> Result<u64> {
    let ce = column_echelon(a);
    let r = ce.pivots.len();
    if r < a.m() {
        return Err(Error::RankDeficient { expected: a.m(), found: r });
    }
    let det: i128 = ce.pivots.iter().map(|&(i, j)| ce.h[i][j]).product();
    Ok(det.unsigned_abs() as u64)
}

/// A lattice basis of the integer kernel, each vector with first nonzero entry positive.
pub fn integer_kernel(a: &ExponentMatrix) -> Vec<Vec<i64>> {
    let n = a.n();
    let ce = column_echelon(a);
    let r = ce.pivots.len();
    let mut basis: Vec<Vec<i64>> = (r..n)
        .map(|j| {
            let mut v: Vec<i128> = (0..n).map(|i| ce.u[i][j]).collect();
            let g = v.iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
            if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v.into_iter().map(|x| x as i64).collect()
        })
        .collect();
    size_reduce(&mut basis);
    basis
}

// Pairwise size reduction keeps kernel vectors short without changing the lattice.
fn size_reduce(basis: &mut [Vec<i64>]) {
    let norm = |v: &[i64]| v.iter().map(|x| (*x as i128) * (*x as i128)).sum::<i128>();
    for _ in 0..8 {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand: Vec<i64> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a - sign * b).collect();
                    if norm(&cand) < norm(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for v in basis.iter_mut() {
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Rank over the rationals of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for k in c..ncols {
                    let t = &f * &m[rank][k];
                    m[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `M x = b` exactly for square invertible `M`.
pub fn rational_solve(mat: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = mat.iter().zip(b).map(|(r, bi)| {
        let mut r = r.clone();
        r.push(bi.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square rational matrix.
pub fn rational_inverse(mat: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = mat.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> =
            (0..n).map(|i| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect();
        cols.push(rational_solve(mat, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}
