//! Dense linear algebra on complex matrices, backed by `faer`.
//!
//! Real inputs are stored as complex matrices with zero imaginary parts. When
//! every imaginary part is exactly zero the decompositions run in real
//! arithmetic, which is several times faster for the large Macaulay matrices.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type C64 = Complex64;

/// Thresholds used to decide which singular values count as nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankPolicy {
    pub relative_threshold: f64,
    pub absolute_floor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy { relative_threshold: 1e-10, absolute_floor: 1e-14 }
    }
}

impl RankPolicy {
    pub fn new(relative_threshold: f64, absolute_floor: f64) -> Result<Self> {
        if !(relative_threshold > 0.0) || !(absolute_floor > 0.0) {
            return Err(invalid("rank thresholds must be strictly positive"));
        }
        Ok(RankPolicy { relative_threshold, absolute_floor })
    }

    /// Number of entries of a descending singular value list above threshold.
    pub fn count(&self, sv: &[f64]) -> usize {
        let smax = sv.first().copied().unwrap_or(0.0);
        sv.iter()
            .filter(|&&s| s > self.relative_threshold * smax && s > self.absolute_floor)
            .count()
    }
}

/// Row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(invalid(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("matrix has non-finite entries"));
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, entries: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, entries }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.entries[i * self.cols + j] = z;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, z: C64) {
        self.entries[i * self.cols + j] += z;
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Submatrix formed by the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> DenseMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn adjoint(&self) -> DenseMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn norm_fro(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.is_real() && other.is_real() {
            let p = self.to_faer_real() * other.to_faer_real();
            return Ok(Self::from_faer_real(&p));
        }
        let p = self.to_faer() * other.to_faer();
        Ok(Self::from_faer(&p))
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, s: C64) -> DenseMatrix {
        DenseMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(invalid("shape mismatch in matrix sum"));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn to_faer(&self) -> Mat<C64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }

    pub fn to_faer_real(&self) -> Mat<f64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).re)
    }

    pub fn from_faer(m: &Mat<C64>) -> DenseMatrix {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    pub fn from_faer_real(m: &Mat<f64>) -> DenseMatrix {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0))
    }
}

fn check_nonempty(m: &DenseMatrix) -> Result<()> {
    if m.rows == 0 || m.cols == 0 {
        return Err(invalid("matrix is empty"));
    }
    Ok(())
}

fn svd_failed<E: std::fmt::Debug>(e: E) -> Error {
    Error::IterationLimit(format!("SVD did not converge: {e:?}"))
}

/// Singular values in descending order.
pub fn singular_values(m: &DenseMatrix) -> Result<Vec<f64>> {
    check_nonempty(m)?;
    let mut sv = if m.is_real() {
        m.to_faer_real().singular_values().map_err(svd_failed)?
    } else {
        m.to_faer().singular_values().map_err(svd_failed)?
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

pub fn numerical_rank(m: &DenseMatrix, policy: &RankPolicy) -> Result<usize> {
    Ok(policy.count(&singular_values(m)?))
}

/// Orthonormal basis of the numerical kernel, one vector per column.
pub fn nullspace_basis(m: &DenseMatrix, policy: &RankPolicy) -> Result<DenseMatrix> {
    Ok(nullspace_with_rank(m, policy)?.0)
}

/// Kernel basis together with the numerical rank and the singular values.
pub fn nullspace_with_rank(m: &DenseMatrix, policy: &RankPolicy) -> Result<(DenseMatrix, usize, Vec<f64>)> {
    check_nonempty(m)?;
    let n = m.cols;
    if m.is_real() {
        let svd = m.to_faer_real().svd().map_err(svd_failed)?;
        let sv: Vec<f64> = svd.S().column_vector().iter().copied().collect();
        let rank = policy.count(&sv);
        let v = svd.V();
        let k = DenseMatrix::from_fn(n, n - rank, |i, j| C64::new(v[(i, rank + j)], 0.0));
        Ok((k, rank, sv))
    } else {
        let svd = m.to_faer().svd().map_err(svd_failed)?;
        let sv: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
        let rank = policy.count(&sv);
        let v = svd.V();
        let k = DenseMatrix::from_fn(n, n - rank, |i, j| v[(i, rank + j)]);
        Ok((k, rank, sv))
    }
}

/// Left pseudo-inverse of a full-column-rank matrix, computed from its thin SVD.
pub fn left_pseudo_inverse(nm: &DenseMatrix) -> Result<DenseMatrix> {
    check_nonempty(nm)?;
    let policy = RankPolicy::default();
    let c = nm.cols;
    if nm.is_real() {
        let svd = nm.to_faer_real().thin_svd().map_err(svd_failed)?;
        let sv: Vec<f64> = svd.S().column_vector().iter().copied().collect();
        let rank = policy.count(&sv);
        if rank < c {
            return Err(Error::RankDeficient { expected: c, found: rank });
        }
        let (u, v) = (svd.U(), svd.V());
        // V * diag(1/s) * U^T
        let vs = Mat::<f64>::from_fn(c, c, |i, j| v[(i, j)] / sv[j]);
        let p = vs * u.transpose();
        Ok(DenseMatrix::from_faer_real(&p))
    } else {
        let svd = nm.to_faer().thin_svd().map_err(svd_failed)?;
        let sv: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
        let rank = policy.count(&sv);
        if rank < c {
            return Err(Error::RankDeficient { expected: c, found: rank });
        }
        let (u, v) = (svd.U(), svd.V());
        let vs = Mat::<C64>::from_fn(c, c, |i, j| v[(i, j)] / sv[j]);
        let p = vs * u.adjoint();
        Ok(DenseMatrix::from_faer(&p))
    }
}

/// All eigenpairs of a square matrix. Eigenvectors have unit 2-norm.
pub fn eig_pairs(m: &DenseMatrix) -> Result<Vec<(C64, Vec<C64>)>> {
    check_nonempty(m)?;
    if m.rows != m.cols {
        return Err(invalid(format!("eigen-decomposition needs a square matrix, got {}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    let fail = |e| Error::IterationLimit(format!("eigenvalue iteration failed: {e:?}"));
    let (vals, vecs): (Vec<C64>, Mat<C64>) = if m.is_real() {
        let e = m.to_faer_real().eigen().map_err(fail)?;
        (e.S().column_vector().iter().copied().collect(), e.U().to_owned())
    } else {
        let e = m.to_faer().eigen().map_err(fail)?;
        (e.S().column_vector().iter().copied().collect(), e.U().to_owned())
    };
    let mut out = Vec::with_capacity(n);
    for (j, lam) in vals.into_iter().enumerate() {
        let mut v: Vec<C64> = (0..n).map(|i| vecs[(i, j)]).collect();
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            v.iter_mut().for_each(|z| *z /= nrm);
        }
        out.push((lam, v));
    }
    Ok(out)
}

/// Eigenvalues only, skipping the eigenvector computation.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<C64>> {
    check_nonempty(m)?;
    if m.rows != m.cols {
        return Err(invalid("eigenvalues need a square matrix"));
    }
    let fail = |e| Error::IterationLimit(format!("eigenvalue iteration failed: {e:?}"));
    if m.is_real() {
        m.to_faer_real().eigenvalues().map_err(fail)
    } else {
        m.to_faer().eigenvalues().map_err(fail)
    }
}

/// Solve a square complex system by LU with partial pivoting.
/// Returns `None` when the matrix is numerically singular.
pub fn solve_square(a: &[Vec<C64>], b: &[C64]) -> Option<Vec<C64>> {
    let n = b.len();
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))?;
        if m[p][k].norm() <= 1e-14 * scale {
            return None;
        }
        m.swap(k, p);
        x.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
            let t = x[k];
            x[i] -= f * t;
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    x.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(x)
}
