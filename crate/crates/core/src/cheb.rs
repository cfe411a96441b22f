//! Univariate Chebyshev polynomials of the first and second kind.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, DenseMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChebKind {
    T,
    U,
}

impl std::str::FromStr for ChebKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(ChebKind::T),
            "U" | "u" => Ok(ChebKind::U),
            _ => Err(invalid(format!("unknown Chebyshev kind {s:?}, expected T or U"))),
        }
    }
}

fn real_in_unit_interval(t: C64) -> bool {
    t.im == 0.0 && t.re.abs() <= 1.0
}

/// Value of the first-kind polynomial `T_k` at `t`.
pub fn eval_t(k: usize, t: C64) -> C64 {
    if real_in_unit_interval(t) {
        return C64::new((k as f64 * t.re.acos()).cos(), 0.0);
    }
    let (mut a, mut b) = (C64::new(1.0, 0.0), t);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = 2.0 * t * b - a;
        a = b;
        b = c;
    }
    b
}

/// Value of the second-kind polynomial `U_k` at `t`.
pub fn eval_u(k: usize, t: C64) -> C64 {
    if real_in_unit_interval(t) {
        let th = t.re.acos();
        let s = th.sin();
        // the quotient loses accuracy next to the endpoints
        if s > 1e-6 {
            return C64::new(((k + 1) as f64 * th).sin() / s, 0.0);
        }
    }
    let (mut a, mut b) = (C64::new(1.0, 0.0), 2.0 * t);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = 2.0 * t * b - a;
        a = b;
        b = c;
    }
    b
}

pub fn eval(kind: ChebKind, k: usize, t: C64) -> C64 {
    match kind {
        ChebKind::T => eval_t(k, t),
        ChebKind::U => eval_u(k, t),
    }
}

/// Derivative of `T_k`, computed as `k * U_{k-1}`.
pub fn eval_t_deriv(k: usize, t: C64) -> C64 {
    if k == 0 {
        C64::new(0.0, 0.0)
    } else {
        k as f64 * eval_u(k - 1, t)
    }
}

/// `T_0(t), ..., T_kmax(t)` by forward recurrence.
pub fn t_table(kmax: usize, t: C64) -> Vec<C64> {
    let mut v = Vec::with_capacity(kmax + 1);
    v.push(C64::new(1.0, 0.0));
    if kmax >= 1 {
        v.push(t);
    }
    for k in 2..=kmax {
        let next = 2.0 * t * v[k - 1] - v[k - 2];
        v.push(next);
    }
    v
}

/// A polynomial written in one of the Chebyshev bases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebCoeffs {
    pub kind: ChebKind,
    pub coeffs: Vec<f64>,
}

impl ChebCoeffs {
    /// Builds the polynomial and trims negligible trailing coefficients.
    pub fn new(kind: ChebKind, coeffs: Vec<f64>) -> Self {
        let mut p = ChebCoeffs { kind, coeffs };
        p.trim();
        p
    }

    pub fn t(coeffs: Vec<f64>) -> Self {
        Self::new(ChebKind::T, coeffs)
    }

    /// The basis element `T_k` or `U_k`.
    pub fn unit(kind: ChebKind, k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        ChebCoeffs { kind, coeffs: c }
    }

    pub fn trim(&mut self) {
        let mx = self.max_abs();
        while let Some(&last) = self.coeffs.last() {
            if last.abs() <= 1e-14 * mx || last == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| f64::max(m, c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree after trimming; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Rewrites a second-kind expansion in the first-kind basis.
    pub fn to_t(&self) -> ChebCoeffs {
        if self.kind == ChebKind::T {
            return self.clone();
        }
        let mut out = vec![0.0; self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            // U_k = 2 * sum of T_j over 0 < j <= k with j = k mod 2, plus T_0 when k is even
            let mut j = k;
            loop {
                if j == 0 {
                    out[0] += c;
                    break;
                }
                out[j] += 2.0 * c;
                if j < 2 {
                    break;
                }
                j -= 2;
            }
        }
        ChebCoeffs::t(out)
    }
}

/// Clenshaw evaluation of a Chebyshev expansion.
pub fn clenshaw_eval(p: &ChebCoeffs, t: C64) -> C64 {
    let zero = C64::new(0.0, 0.0);
    let (mut b1, mut b2) = (zero, zero);
    if p.coeffs.is_empty() {
        return zero;
    }
    for &c in p.coeffs.iter().skip(1).rev() {
        let b0 = c + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    match p.kind {
        ChebKind::T => p.coeffs[0] + t * b1 - b2,
        ChebKind::U => p.coeffs[0] + 2.0 * t * b1 - b2,
    }
}

/// Product of two first-kind expansions, using `2 T_a T_b = T_{a+b} + T_{|a-b|}`.
pub fn cheb_multiply(p: &ChebCoeffs, q: &ChebCoeffs) -> Result<ChebCoeffs> {
    if p.kind != ChebKind::T || q.kind != ChebKind::T {
        return Err(Error::UnsupportedKind("products are only formed in the T basis".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(ChebCoeffs::t(vec![]));
    }
    let mut out = vec![0.0; p.coeffs.len() + q.coeffs.len() - 1];
    for (a, &x) in p.coeffs.iter().enumerate() {
        for (b, &y) in q.coeffs.iter().enumerate() {
            let h = 0.5 * x * y;
            out[a + b] += h;
            out[a.abs_diff(b)] += h;
        }
    }
    Ok(ChebCoeffs::t(out))
}

/// Roots of `T_k`, namely `cos((l + 1/2) pi / k)` for `l = 0..k`, in decreasing order.
pub fn t_roots(k: usize) -> Vec<f64> {
    (0..k).map(|l| ((l as f64 + 0.5) * PI / k as f64).cos()).collect()
}

/// Colleague matrix of a first-kind expansion of degree at least 2.
pub fn colleague_matrix(p: &ChebCoeffs) -> Result<DenseMatrix> {
    let p = p.to_t();
    let d = p.degree().ok_or_else(|| invalid("the zero polynomial has no colleague matrix"))?;
    if d < 1 {
        return Err(invalid("colleague matrix needs degree at least 1"));
    }
    let cd = p.coeffs[d];
    let mut m = DenseMatrix::zeros(d, d);
    let half = C64::new(0.5, 0.0);
    if d == 1 {
        m.set(0, 0, C64::new(-p.coeffs[0] / cd, 0.0));
        return Ok(m);
    }
    m.set(0, 1, C64::new(1.0, 0.0));
    for j in 1..d - 1 {
        m.set(j, j - 1, half);
        m.set(j, j + 1, half);
    }
    m.add_to(d - 1, d - 2, half);
    for k in 0..d {
        m.add_to(d - 1, k, C64::new(-p.coeffs[k] / (2.0 * cd), 0.0));
    }
    Ok(m)
}

/// All complex roots, with multiplicity, from the colleague matrix eigenvalues.
pub fn colleague_roots(p: &ChebCoeffs) -> Result<Vec<C64>> {
    let q = p.to_t();
    match q.degree() {
        None => Err(invalid("the zero polynomial has no finite root set")),
        Some(0) => Ok(vec![]),
        Some(1) => Ok(vec![C64::new(-q.coeffs[0] / q.coeffs[1], 0.0)]),
        Some(_) => {
            let m = colleague_matrix(&q)?;
            linalg::eigenvalues(&m)
        }
    }
}
