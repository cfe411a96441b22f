//! Numerical implicitization of Chebyshev hypersurfaces by interpolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::str::FromStr;

use crate::cheb;
use crate::error::{invalid, Error, Result};
use crate::linalg::{nullspace_with_rank, DenseMatrix, RankPolicy, C64};
use crate::poly::{Exponent, ImplicitPoly};
use crate::polytope::ExponentMatrix;
use crate::root_system;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Tensor,
    Cosine,
    Toric,
    A2,
}

impl FromStr for ParamKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" => Ok(ParamKind::Tensor),
            "cosine" => Ok(ParamKind::Cosine),
            "toric" => Ok(ParamKind::Toric),
            "a2" => Ok(ParamKind::A2),
            _ => Err(invalid(format!("unknown parametrization kind '{s}'"))),
        }
    }
}

/// Evaluable parametrization `C^m -> C^n` of a Chebyshev variety.
pub struct Parametrization {
    kind: ParamKind,
    a: ExponentMatrix,
    a2: Vec<ImplicitPoly>,
}

impl Parametrization {
    pub fn new(kind: ParamKind, a: &ExponentMatrix) -> Result<Self> {
        let a2 = match kind {
            ParamKind::A2 => root_system::column_polys(a)?.iter().map(|p| p.to_implicit()).collect(),
            ParamKind::Tensor => {
                a.require_nonnegative()?;
                Vec::new()
            }
            _ => Vec::new(),
        };
        Ok(Parametrization { kind, a: a.clone(), a2 })
    }

    pub fn eval(&self, p: &[C64]) -> Vec<C64> {
        let (m, n) = (self.a.m(), self.a.n());
        match self.kind {
            ParamKind::Tensor => (0..n)
                .map(|j| (0..m).map(|i| cheb::eval_t(self.a.get(i, j) as usize, p[i])).product())
                .collect(),
            ParamKind::Cosine => {
                (0..n).map(|j| (0..m).map(|i| p[i] * self.a.get(i, j) as f64).sum::<C64>().cos()).collect()
            }
            ParamKind::Toric => {
                (0..n).map(|j| (0..m).map(|i| p[i].powi(self.a.get(i, j) as i32)).product()).collect()
            }
            ParamKind::A2 => self.a2.iter().map(|q| q.eval(p)).collect(),
        }
    }

    /// Parameter draw for sample `index`; independent of the other samples.
    pub fn sample_params(&self, seed: u64, index: u64) -> Vec<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let m = self.a.m();
        match self.kind {
            ParamKind::Tensor => (0..m).map(|_| C64::new(rng.random_range(-1.0..1.0), 0.0)).collect(),
            ParamKind::Cosine => (0..m).map(|_| C64::new(rng.random_range(0.0..TAU), 0.0)).collect(),
            ParamKind::Toric => (0..m).map(|_| C64::from_polar(1.0, rng.random_range(0.0..TAU))).collect(),
            ParamKind::A2 => {
                let z: Vec<C64> = (0..2).map(|_| C64::from_polar(1.0, rng.random_range(0.0..TAU))).collect();
                root_system::fundamental_orbits(&z).expect("unit torus point").to_vec()
            }
        }
    }

    pub fn sample(&self, seed: u64, index: u64) -> Vec<C64> {
        self.eval(&self.sample_params(seed, index))
    }
}

pub fn parametrization_point(kind: ParamKind, a: &ExponentMatrix, p: &[C64]) -> Result<Vec<C64>> {
    if p.len() != a.m() {
        return Err(invalid(format!("expected {} parameters, got {}", a.m(), p.len())));
    }
    Ok(Parametrization::new(kind, a)?.eval(p))
}

/// Exponent vectors of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// Fits the hypersurface equation of degree at most `degree_bound` through
/// `samples` parametrization points drawn from `seed`.
///
/// Fails with `InconclusiveDegree` unless the interpolation matrix has a
/// one-dimensional numerical kernel.
pub fn implicitize(
    kind: ParamKind,
    a: &ExponentMatrix,
    degree_bound: u32,
    samples: usize,
    seed: u64,
) -> Result<ImplicitPoly> {
    let n = a.n();
    if n != a.rank() + 1 {
        return Err(Error::Precondition(format!(
            "implicitization needs a hypersurface: n = {n} but rank(A) = {}",
            a.rank()
        )));
    }
    let monos = monomials_up_to(n, degree_bound);
    if samples < monos.len() {
        return Err(invalid(format!("{samples} samples cannot determine {} coefficients", monos.len())));
    }
    let par = Parametrization::new(kind, a)?;
    let mut v = DenseMatrix::zeros(samples, monos.len());
    for s in 0..samples {
        let x = par.sample(seed, s as u64);
        let pw: Vec<Vec<C64>> = x.iter().map(|&z| powers(z, degree_bound)).collect();
        for (c, e) in monos.iter().enumerate() {
            let mut z = C64::new(1.0, 0.0);
            for (k, &ek) in e.iter().enumerate() {
                z *= pw[k][ek as usize];
            }
            v.set(s, c, z);
        }
    }
    // unit-norm columns before extracting the kernel
    let mut scales = vec![0.0; monos.len()];
    for (c, sc) in scales.iter_mut().enumerate() {
        let nrm = (0..samples).map(|r| v.get(r, c).norm_sqr()).sum::<f64>().sqrt();
        *sc = if nrm > 0.0 { nrm } else { 1.0 };
        for r in 0..samples {
            let z = v.get(r, c) / *sc;
            v.set(r, c, z);
        }
    }
    let (kernel, _, _) = nullspace_with_rank(&v, &RankPolicy::new(1e-9, 1e-300)?)?;
    if kernel.cols() != 1 {
        return Err(Error::InconclusiveDegree(kernel.cols()));
    }
    let coeffs: Vec<C64> = (0..monos.len()).map(|c| kernel.get(c, 0) / scales[c]).collect();
    let pivot = coeffs.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
    let terms = monos.into_iter().zip(coeffs).map(|(e, z)| (e, (z / pivot).re));
    Ok(ImplicitPoly::from_terms(n, terms).pruned(1e-10).normalized())
}

fn powers(z: C64, d: u32) -> Vec<C64> {
    let mut out = Vec::with_capacity(d as usize + 1);
    let mut p = C64::new(1.0, 0.0);
    for _ in 0..=d {
        out.push(p);
        p *= z;
    }
    out
}

/// Largest `|f(x)| / sum |c_e x^e|` over fresh samples not used for fitting.
pub fn relative_residual(f: &ImplicitPoly, kind: ParamKind, a: &ExponentMatrix, samples: usize, seed: u64) -> Result<f64> {
    let par = Parametrization::new(kind, a)?;
    Ok((0..samples)
        .map(|s| {
            let x = par.sample(seed, s as u64);
            f.eval(&x).norm() / f.eval_abs(&x).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max))
}
