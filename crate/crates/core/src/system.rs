//! Square systems `c0 + C x = 0` restricted to a Chebyshev variety.

use serde::{Deserialize, Serialize};

use crate::cheb;
use crate::error::{invalid, Result};
use crate::linalg::C64;
use crate::polytope::ExponentMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Tensor,
    Cosine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChebSystem {
    pub basis: Basis,
    pub a: ExponentMatrix,
    /// `m x n` coefficient matrix, one row per equation.
    pub c: Vec<Vec<f64>>,
    pub c0: Vec<f64>,
}

impl ChebSystem {
    pub fn new(basis: Basis, a: ExponentMatrix, c: Vec<Vec<f64>>, c0: Vec<f64>) -> Result<Self> {
        let (m, n) = (a.m(), a.n());
        if c.len() != m {
            return Err(invalid(format!("C has {} rows, expected m = {m}", c.len())));
        }
        if let Some((i, r)) = c.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(invalid(format!("C row {} has {} entries, expected n = {n}", i + 1, r.len())));
        }
        if c0.len() != m {
            return Err(invalid(format!("c0 has {} entries, expected m = {m}", c0.len())));
        }
        if c.iter().flatten().chain(&c0).any(|x| !x.is_finite()) {
            return Err(invalid("coefficients must be finite"));
        }
        if basis == Basis::Tensor {
            a.require_nonnegative()?;
        }
        Ok(ChebSystem { basis, a, c, c0 })
    }

    pub fn m(&self) -> usize {
        self.a.m()
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// The point `x(t)` on the variety.
    pub fn coordinates(&self, t: &[C64]) -> Vec<C64> {
        let (m, n) = (self.m(), self.n());
        match self.basis {
            Basis::Tensor => (0..n)
                .map(|j| (0..m).map(|i| cheb::eval_t(self.a.get(i, j) as usize, t[i])).product())
                .collect(),
            Basis::Cosine => (0..n).map(|j| (0..m).map(|i| t[i] * self.a.get(i, j) as f64).sum::<C64>().cos()).collect(),
        }
    }

    pub fn eval(&self, t: &[C64]) -> Vec<C64> {
        let x = self.coordinates(t);
        self.c
            .iter()
            .zip(&self.c0)
            .map(|(row, c0)| row.iter().zip(&x).map(|(c, xj)| xj * *c).sum::<C64>() + c0)
            .collect()
    }

    /// `|f_i(t)| / (|c0_i| + sum_j |C_ij x_j(t)|)` for each equation.
    pub fn relative_residuals(&self, t: &[C64]) -> Vec<f64> {
        let x = self.coordinates(t);
        self.c
            .iter()
            .zip(&self.c0)
            .map(|(row, c0)| {
                let v: C64 = row.iter().zip(&x).map(|(c, xj)| xj * *c).sum::<C64>() + c0;
                let s: f64 = row.iter().zip(&x).map(|(c, xj)| (xj * *c).norm()).sum::<f64>() + c0.abs();
                if s > 0.0 {
                    v.norm() / s
                } else {
                    v.norm()
                }
            })
            .collect()
    }

    pub fn max_residual(&self, t: &[C64]) -> f64 {
        self.relative_residuals(t).into_iter().fold(0.0, f64::max)
    }

    /// Jacobian of `eval` with respect to `t`, row-major `m x m`.
    pub fn jacobian(&self, t: &[C64]) -> Vec<Vec<C64>> {
        let (m, n) = (self.m(), self.n());
        // dx_j / dt_k
        let dx: Vec<Vec<C64>> = (0..n)
            .map(|j| {
                (0..m)
                    .map(|k| match self.basis {
                        Basis::Tensor => (0..m)
                            .map(|i| {
                                let e = self.a.get(i, j) as usize;
                                if i == k {
                                    cheb::eval_t_deriv(e, t[i])
                                } else {
                                    cheb::eval_t(e, t[i])
                                }
                            })
                            .product(),
                        Basis::Cosine => {
                            let arg: C64 = (0..m).map(|i| t[i] * self.a.get(i, j) as f64).sum();
                            -arg.sin() * self.a.get(k, j) as f64
                        }
                    })
                    .collect()
            })
            .collect();
        (0..m).map(|i| (0..m).map(|k| (0..n).map(|j| dx[j][k] * self.c[i][j]).sum()).collect()).collect()
    }
}
