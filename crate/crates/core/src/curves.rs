//! Chebyshev curves: plane curves, space curves and real intersection counts.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::cheb::{self, ChebCoeffs, ChebKind};
use crate::error::{invalid, Error, Result};
use crate::linalg::C64;
use crate::poly::ImplicitPoly;
use crate::polytope::ExponentMatrix;

/// Imaginary-part tolerance for counting a root as real.
pub const REAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct PlaneCurveReport {
    pub a: u64,
    pub b: u64,
    pub g: u64,
    pub a_prime: u64,
    pub b_prime: u64,
    pub degree: u64,
    pub implicit: ImplicitPoly,
}

/// Implicit equation `T_{b'}(x) - T_{a'}(y)` of the curve `t -> (T_a(t), T_b(t))`.
pub fn plane_curve(a: u64, b: u64) -> Result<PlaneCurveReport> {
    if a == 0 || b == 0 {
        return Err(invalid("plane curve indices must be positive"));
    }
    if a > b {
        return Err(invalid(format!("plane curve needs a <= b, got ({a}, {b})")));
    }
    let g = a.gcd(&b);
    let (ap, bp) = (a / g, b / g);
    let implicit = ImplicitPoly::chebyshev_t(2, 0, bp as usize).sub(&ImplicitPoly::chebyshev_t(2, 1, ap as usize));
    Ok(PlaneCurveReport { a, b, g, a_prime: ap, b_prime: bp, degree: bp, implicit })
}

/// Nodes `(cos(k pi / b), cos(l pi / a))` with `k = l mod 2`.
pub fn padua_points(a: u64, b: u64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for k in 1..b {
        for l in 1..a {
            if k % 2 == l % 2 {
                out.push(((k as f64 * PI / b as f64).cos(), (l as f64 * PI / a as f64).cos()));
            }
        }
    }
    out
}

/// Roots of `sum_j v_j K_{a_j}(t)` for the chosen kind.
pub fn combination_roots(kind: ChebKind, exps: &[u64], v: &[f64]) -> Result<Vec<C64>> {
    if exps.len() != v.len() {
        return Err(invalid("direction length does not match the exponent list"));
    }
    let d = exps.iter().copied().max().unwrap_or(0) as usize;
    let mut coeffs = vec![0.0; d + 1];
    for (&k, &c) in exps.iter().zip(v) {
        coeffs[k as usize] += c;
    }
    let p = ChebCoeffs::new(kind, coeffs);
    if p.is_zero() {
        return Err(invalid("the combination is identically zero"));
    }
    cheb::colleague_roots(&p)
}

pub fn count_real(roots: &[C64]) -> usize {
    roots.iter().filter(|z| z.im.abs() < REAL_TOL).count()
}

/// Number of real roots of `sum_j v_j T_{a_j}(t)`.
pub fn line_real_count(a: &ExponentMatrix, v: &[f64]) -> Result<usize> {
    let exps = row_exponents(a)?;
    Ok(count_real(&combination_roots(ChebKind::T, &exps, v)?))
}

fn row_exponents(a: &ExponentMatrix) -> Result<Vec<u64>> {
    if a.m() != 1 {
        return Err(invalid(format!("expected a single row of exponents, got {} rows", a.m())));
    }
    a.rows()[0]
        .iter()
        .map(|&x| u64::try_from(x).map_err(|_| invalid("exponents must be nonnegative")))
        .collect()
}

/// Checks on random lines through the origin that the curve `(K_a, K_{a+1})`
/// meets each line in `a + 1` real points.
pub fn hyperbolicity_check(a: u64, kind: ChebKind, trials: usize, seed: u64) -> Result<bool> {
    if a == 0 {
        return Err(invalid("hyperbolicity needs a >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let th: f64 = rng.random_range(0.0..2.0 * PI);
        // alpha x - beta y = 0 with (alpha, beta) on the circle
        let roots = combination_roots(kind, &[a, a + 1], &[th.cos(), -th.sin()])?;
        if count_real(&roots) != (a + 1) as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Expression tree built from variables, constants, sums, products and
/// compositions with Chebyshev polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PolyExpr {
    Var(usize),
    Const(f64),
    Sum(Vec<PolyExpr>),
    Prod(Vec<PolyExpr>),
    T(usize, Box<PolyExpr>),
    U(usize, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn eval(&self, x: &[C64]) -> C64 {
        match self {
            PolyExpr::Var(i) => x[*i],
            PolyExpr::Const(c) => C64::new(*c, 0.0),
            PolyExpr::Sum(v) => v.iter().map(|e| e.eval(x)).sum(),
            PolyExpr::Prod(v) => v.iter().map(|e| e.eval(x)).product(),
            PolyExpr::T(k, e) => cheb::clenshaw_eval(&ChebCoeffs::unit(ChebKind::T, *k), e.eval(x)),
            PolyExpr::U(k, e) => cheb::clenshaw_eval(&ChebCoeffs::unit(ChebKind::U, *k), e.eval(x)),
        }
    }

    /// Sum of magnitudes of the top-level summands, used to scale residuals.
    pub fn eval_scale(&self, x: &[C64]) -> f64 {
        match self {
            PolyExpr::Sum(v) => v.iter().map(|e| e.eval(x).norm()).sum(),
            e => e.eval(x).norm(),
        }
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Var(i) => write!(f, "{}", names[*i]),
            PolyExpr::Const(c) => write!(f, "{c}"),
            PolyExpr::Sum(v) => {
                for (i, e) in v.iter().enumerate() {
                    match e {
                        PolyExpr::Prod(p) if matches!(p.first(), Some(PolyExpr::Const(c)) if *c < 0.0) => {
                            let PolyExpr::Const(c) = p[0] else { unreachable!() };
                            f.write_str(if i == 0 { "-" } else { " - " })?;
                            let rest = if c == -1.0 { p[1..].to_vec() } else {
                                let mut r = vec![PolyExpr::Const(-c)];
                                r.extend_from_slice(&p[1..]);
                                r
                            };
                            PolyExpr::Prod(rest).fmt_with(names, f)?;
                        }
                        _ => {
                            if i > 0 {
                                f.write_str(" + ")?;
                            }
                            e.fmt_with(names, f)?;
                        }
                    }
                }
                Ok(())
            }
            PolyExpr::Prod(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(e, PolyExpr::Sum(_)) {
                        f.write_str("(")?;
                        e.fmt_with(names, f)?;
                        f.write_str(")")?;
                    } else {
                        e.fmt_with(names, f)?;
                    }
                }
                Ok(())
            }
            PolyExpr::T(k, e) => {
                write!(f, "T{k}(")?;
                e.fmt_with(names, f)?;
                f.write_str(")")
            }
            PolyExpr::U(k, e) => {
                write!(f, "U{k}(")?;
                e.fmt_with(names, f)?;
                f.write_str(")")
            }
        }
    }

    /// Renders with explicit variable names.
    pub fn render(&self, names: &[String]) -> String {
        struct W<'a>(&'a PolyExpr, &'a [String]);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        W(self, names).to_string()
    }
}

/// `P` with `P(T_a(t), T_b(t), T_c(t)) = t` for pairwise coprime `a, b, c`.
///
/// In the generic case `P = 2 T_u(x_b) T_v(x_c) - T_w(x_a)`, where `x_a` is
/// the slot holding index `a` and so on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionPoly {
    /// The three indices in the order they were supplied.
    pub indices: [u64; 3],
    /// Position (within `indices`) of the indices playing the roles a, b, c.
    pub roles: [usize; 3],
    pub u: u64,
    pub v: u64,
    pub w: u64,
    /// Set when some index equals 1, in which case `P` is that slot's variable.
    pub degenerate: Option<usize>,
}

impl InversionPoly {
    /// The index values in role order `(a, b, c)`.
    pub fn role_values(&self) -> (u64, u64, u64) {
        (self.indices[self.roles[0]], self.indices[self.roles[1]], self.indices[self.roles[2]])
    }

    /// Expression tree over three variable slots, mapped through `slots`.
    pub fn expr(&self, slots: [usize; 3]) -> PolyExpr {
        if let Some(s) = self.degenerate {
            return PolyExpr::Var(slots[s]);
        }
        let var = |r: usize| Box::new(PolyExpr::Var(slots[self.roles[r]]));
        PolyExpr::Sum(vec![
            PolyExpr::Prod(vec![
                PolyExpr::Const(2.0),
                PolyExpr::T(self.u as usize, var(1)),
                PolyExpr::T(self.v as usize, var(2)),
            ]),
            PolyExpr::Prod(vec![PolyExpr::Const(-1.0), PolyExpr::T(self.w as usize, var(0))]),
        ])
    }

    /// Evaluates `P(T_a(t), T_b(t), T_c(t))`.
    pub fn compose_at(&self, t: C64) -> C64 {
        let x: Vec<C64> = self.indices.iter().map(|&k| cheb::eval_t(k as usize, t)).collect();
        self.expr([0, 1, 2]).eval(&x)
    }

    pub fn render(&self) -> String {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        self.expr([0, 1, 2]).render(&names)
    }
}

fn mod_inverse(b: u64, c: u64) -> Option<u64> {
    let eg = (b as i128).extended_gcd(&(c as i128));
    if eg.gcd != 1 {
        return None;
    }
    Some(eg.x.rem_euclid(c as i128) as u64)
}

pub fn inversion_polynomial(a: u64, b: u64, c: u64) -> Result<InversionPoly> {
    let idx = [a, b, c];
    if idx.contains(&0) {
        return Err(invalid("indices must be positive"));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if idx[i].gcd(&idx[j]) != 1 {
            return Err(Error::Precondition(format!(
                "indices {} and {} are not coprime; the curve parametrization is not invertible",
                idx[i], idx[j]
            )));
        }
    }
    if let Some(s) = idx.iter().position(|&k| k == 1) {
        return Ok(InversionPoly { indices: idx, roles: [s, (s + 1) % 3, (s + 2) % 3], u: 0, v: 0, w: 1, degenerate: Some(s) });
    }
    // at most one index is even, so an odd one exists
    let ra = idx.iter().position(|k| k % 2 == 1).unwrap();
    let rb = (0..3).find(|&i| i != ra).unwrap();
    let rc = (0..3).rev().find(|&i| i != ra).unwrap();
    let (ea, eb, ec) = (idx[ra], idx[rb], idx[rc]);
    let mut u = mod_inverse(eb, ec).ok_or_else(|| Error::InternalConsistency("no modular inverse".into()))?;
    if u == 0 {
        u = ec;
    }
    let mut v = (u * eb - 1) / ec;
    if v == 0 {
        u += ec;
        v += eb;
    }
    // shifting u by x c and v by x b keeps u b - v c = 1 and adds 2 x b c
    let mut x = 0u64;
    while (u * eb + v * ec + 2 * x * eb * ec) % ea != 0 {
        x += 1;
        if x > ea {
            return Err(Error::InternalConsistency("no admissible shift found".into()));
        }
    }
    u += x * ec;
    v += x * eb;
    let w = (u * eb + v * ec) / ea;
    debug_assert_eq!(u * eb - v * ec, 1);
    Ok(InversionPoly { indices: idx, roles: [ra, rb, rc], u, v, w, degenerate: None })
}

/// Finds positions of three pairwise coprime entries, preferring smaller ones.
pub fn coprime_triple(exps: &[u64]) -> Option<[usize; 3]> {
    let n = exps.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| exps[i]);
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let (i, j, k) = (order[x], order[y], order[z]);
                let (a, b, c) = (exps[i], exps[j], exps[k]);
                if a.gcd(&b) == 1 && a.gcd(&c) == 1 && b.gcd(&c) == 1 {
                    let mut t = [i, j, k];
                    t.sort();
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Ideal generators `x_j - T_{a_j}(P)` of a space curve, as expression trees.
///
/// Generators that are identically zero (the slot `P` itself when `P` is a
/// variable) are skipped.
pub fn ideal_generators(a: &ExponentMatrix) -> Result<Vec<PolyExpr>> {
    let exps = row_exponents(a)?;
    if exps.contains(&0) {
        return Err(invalid("curve exponents must be positive"));
    }
    let p = if let Some(s) = exps.iter().position(|&k| k == 1) {
        PolyExpr::Var(s)
    } else {
        let t = coprime_triple(&exps).ok_or_else(|| {
            Error::UnsupportedSupport("no three pairwise coprime exponents; the inversion polynomial is unavailable".into())
        })?;
        inversion_polynomial(exps[t[0]], exps[t[1]], exps[t[2]])?.expr(t)
    };
    let mut out = Vec::new();
    for (j, &k) in exps.iter().enumerate() {
        if k == 1 && p == PolyExpr::Var(j) {
            continue;
        }
        out.push(PolyExpr::Sum(vec![
            PolyExpr::Var(j),
            PolyExpr::Prod(vec![PolyExpr::Const(-1.0), PolyExpr::T(k as usize, Box::new(p.clone()))]),
        ]));
    }
    Ok(out)
}

/// Checks `y^3 - 2y - z = x(1 + yz)` for `x = U_{k-2}, y = U_k, z = U_{k+2}`.
pub fn u_curve_identity_check(k: usize, samples: usize, seed: u64) -> Result<bool> {
    if k < 2 {
        return Err(invalid("the identity needs k >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let t = if s % 2 == 0 {
            C64::new(rng.random_range(-1.0..1.0), 0.0)
        } else {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.5..0.5))
        };
        let (x, y, z) = (cheb::eval_u(k - 2, t), cheb::eval_u(k, t), cheb::eval_u(k + 2, t));
        let lhs = y * y * y - 2.0 * y - z;
        let rhs = x * (1.0 + y * z);
        let scale = y.norm().powi(3) + 2.0 * y.norm() + z.norm() + x.norm() * (1.0 + y.norm() * z.norm());
        if (lhs - rhs).norm() > 1e-9 * scale.max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberHistogram {
    pub samples: usize,
    pub counts: BTreeMap<usize, usize>,
    pub min: usize,
    pub max: usize,
}

/// Random direction for sample `index`, reproducible from `(seed, index)` alone.
pub fn sample_direction(seed: u64, index: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-12 {
            return v.iter().map(|x| x / nrm).collect();
        }
    }
}

/// Histogram of real intersection counts with random hyperplanes through the origin.
pub fn chamber_scan(a: &ExponentMatrix, samples: usize, seed: u64) -> Result<ChamberHistogram> {
    let exps = row_exponents(a)?;
    if exps.len() < 2 {
        return Err(invalid("chamber scan needs at least two exponents"));
    }
    if samples == 0 {
        return Err(invalid("chamber scan needs at least one sample"));
    }
    let mut counts = BTreeMap::new();
    for s in 0..samples {
        let v = sample_direction(seed, s as u64, exps.len());
        let c = count_real(&combination_roots(ChebKind::T, &exps, &v)?);
        *counts.entry(c).or_insert(0) += 1;
    }
    let min = *counts.keys().next().unwrap();
    let max = *counts.keys().next_back().unwrap();
    Ok(ChamberHistogram { samples, counts, min, max })
}
