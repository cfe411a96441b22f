//! Cosine Chebyshev varieties: dimension, degree and singular-locus candidates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::{VarietyKind, VarietyReport};
use crate::cheb;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::polytope::lattice::{rational_inverse, rational_rank};
use crate::polytope::{lattice_index, normalized_volume, p_a_cos, q_to_i64, ExponentMatrix, Q};

const MAX_COLUMNS: usize = 12;
const MAX_BOX: u64 = 4_000_000;

fn transpose(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

fn columns_of(rows: &[Vec<Q>], idx: &[usize]) -> Vec<Vec<Q>> {
    idx.iter().map(|&j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// First basis of the column space, chosen greedily from the left.
pub fn first_basis(a: &ExponentMatrix) -> Vec<usize> {
    let rows = a.to_rational();
    let mut basis: Vec<usize> = Vec::new();
    for j in 0..a.n() {
        let mut trial = basis.clone();
        trial.push(j);
        if rational_rank(&columns_of(&rows, &trial)) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// `A_S^{-1} A` for the first basis `S`, so the columns in `S` become unit vectors.
/// Column positions are preserved.
pub fn canonical_form(a: &ExponentMatrix) -> Result<(Vec<usize>, Vec<Vec<Q>>)> {
    let s = first_basis(a);
    if s.len() != a.m() {
        return Err(Error::RankDeficient { expected: a.m(), found: s.len() });
    }
    let rows = a.to_rational();
    let a_s = transpose(&columns_of(&rows, &s));
    let inv = rational_inverse(&a_s).ok_or_else(|| Error::InternalConsistency("basis is singular".into()))?;
    let c = (0..a.m())
        .map(|i| (0..a.n()).map(|j| (0..a.m()).fold(Q::zero(), |acc, k| acc + &inv[i][k] * &rows[k][j])).collect())
        .collect();
    Ok((s, c))
}

pub fn cosine_dimension(a: &ExponentMatrix) -> usize {
    a.rank()
}

/// Number of sign vectors `s` such that `a_j -> s_j a_j` extends to a linear map.
///
/// The map is pinned down by its signs on the first basis, so only `2^m`
/// candidates are checked. Zero columns accept either sign and are not counted
/// twice since they do not change the point of the torus.
pub fn deg_pi1(a: &ExponentMatrix) -> Result<u64> {
    let (s, c) = canonical_form(a)?;
    let m = a.m();
    let mut count = 0;
    for mask in 0..1u32 << m {
        let sign = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
        // G acts on canonical coordinates as diag(sign); column j maps to a
        // multiple of itself only when its support carries one sign.
        let ok = (0..a.n()).filter(|j| !s.contains(j)).all(|j| {
            let signs: BTreeSet<i32> = (0..m).filter(|&i| !c[i][j].is_zero()).map(sign).collect();
            signs.len() <= 1
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

pub fn cosine_degree(a: &ExponentMatrix) -> Result<VarietyReport> {
    let m = a.m();
    if a.rank() != m {
        return Err(Error::RankDeficient { expected: m, found: a.rank() });
    }
    if m > 3 {
        return Err(Error::UnsupportedDimension(format!("m = {m} exceeds the supported limit 3")));
    }
    let vol = normalized_volume(&p_a_cos(a)?)?;
    let d1 = deg_pi1(a)?;
    let idx = lattice_index(a)?;
    let deg = vol / Q::from_integer(BigInt::from(d1 * idx));
    let degree = q_to_i64(&deg).ok_or_else(|| {
        Error::InternalConsistency(format!("cosine degree {deg} is not an integer (deg pi1 = {d1}, index = {idx})"))
    })?;
    Ok(VarietyReport {
        kind: VarietyKind::Cosine,
        dimension: m,
        degree: Some(degree as u64),
        bounds: None,
        density_holds: None,
        deg_pi1: Some(d1),
        lattice_index: Some(idx),
        note: None,
    })
}

/// A curve in the singular locus of a cosine surface in 3-space:
/// `x[fixed] = fixed_value` (a root of `T_k(x) = rhs`) together with
/// `T_p(x[other]) = T_q(sign * x[last])`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularCurve {
    pub fixed: usize,
    pub fixed_value: f64,
    pub k: u64,
    pub rhs: i8,
    pub other: usize,
    pub last: usize,
    pub p: u64,
    pub q: u64,
    pub sign: i8,
    pub description: String,
    /// Canonical parameter pinned to `u_value`; the other one is free.
    u_index: usize,
    u_value: f64,
}

impl SingularCurve {
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let t = |k: u64, v: f64| cheb::eval_t(k as usize, C64::new(v, 0.0)).re;
        (x[self.fixed] - self.fixed_value).abs() <= tol
            && (t(self.p, x[self.other]) - t(self.q, f64::from(self.sign) * x[self.last])).abs() <= tol
    }
}

/// Raw affine family data that is not resolved into points or curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyRecord {
    /// "L" for `a_j . u = kappa_j pi` off `set`, "H" for the restricted form on `set`.
    pub family: &'static str,
    /// One-based indices (columns for L, canonical coordinates for H).
    pub set: Vec<usize>,
    pub dimension: usize,
    /// Period of the integer parameters after clearing denominators.
    pub period: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularCandidates {
    pub basis: Vec<usize>,
    /// Canonical matrix with rational entries rendered as strings.
    pub canonical: Vec<Vec<String>>,
    pub points: Vec<Vec<f64>>,
    pub curves: Vec<SingularCurve>,
    pub families: Vec<FamilyRecord>,
    #[serde(skip)]
    canonical_f64: Vec<Vec<f64>>,
}

impl SingularCandidates {
    /// Image of the canonical parameter `u` under the cosine map.
    pub fn image(&self, u: &[f64]) -> Vec<f64> {
        let n = self.canonical_f64[0].len();
        (0..n).map(|j| self.canonical_f64.iter().zip(u).map(|(r, ui)| r[j] * ui).sum::<f64>().cos()).collect()
    }

    /// Point on a singular curve at free parameter `t`.
    pub fn curve_point(&self, curve: &SingularCurve, t: f64) -> Vec<f64> {
        let mut u = vec![t; 2];
        u[curve.u_index] = curve.u_value;
        self.image(&u)
    }
}

fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// `r mod 2`, folded into `[0, 1]` so that `cos(pi r)` is determined by it.
fn fold_angle(r: &Q) -> Q {
    let two = Q::from_integer(BigInt::from(2));
    let t = r - (r / &two).floor() * &two;
    if t > Q::one() {
        two - t
    } else {
        t
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn cosine_singular_candidates(a: &ExponentMatrix) -> Result<SingularCandidates> {
    let (m, n) = (a.m(), a.n());
    if m > 3 || n > MAX_COLUMNS {
        return Err(Error::UnsupportedDimension(format!(
            "singular candidates support m <= 3 and n <= {MAX_COLUMNS}, got {m} x {n}"
        )));
    }
    let (basis, c) = canonical_form(a)?;
    let rank_of = |idx: &[usize]| rational_rank(&columns_of(&c, idx));
    let all: Vec<usize> = (0..n).collect();
    let dependent: Vec<Vec<usize>> = subsets(n).filter(|j| rank_of(j) < m).collect();

    let mut keys: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut families = Vec::new();
    for j_set in &dependent {
        let k_set: Vec<usize> = all.iter().copied().filter(|j| !j_set.contains(j)).collect();
        let rk = rank_of(&k_set);
        let maximal = all.iter().filter(|j| !j_set.contains(j)).all(|&j| {
            let mut t = j_set.clone();
            t.push(j);
            rank_of(&t) == m
        });
        if rk < m {
            if maximal {
                families.push(FamilyRecord {
                    family: "L",
                    set: j_set.iter().map(|j| j + 1).collect(),
                    dimension: m - rk,
                    period: 0,
                });
            }
            continue;
        }
        // u = pi * C_B^{-T} kappa for a basis B inside the complement
        let mut b = Vec::new();
        for &j in &k_set {
            let mut t = b.clone();
            t.push(j);
            if rank_of(&t) == t.len() {
                b = t;
            }
        }
        let cb_t = columns_of(&c, &b);
        let inv = rational_inverse(&cb_t).ok_or_else(|| Error::InternalConsistency("singular basis".into()))?;
        // r = R kappa with R[j][l] = c_j . inverse column l
        let r: Vec<Vec<Q>> = (0..n)
            .map(|j| (0..m).map(|l| (0..m).fold(Q::zero(), |s, i| s + &c[i][j] * &inv[i][l])).collect())
            .collect();
        let period = 2 * lcm_denominators(r.iter().flatten()).to_u64().unwrap_or(u64::MAX);
        if period.checked_pow(m as u32).is_none_or(|v| v > MAX_BOX) {
            return Err(Error::UnsupportedDimension(format!("parameter box of period {period} is too large")));
        }
        let mut kappa = vec![0u64; m];
        'outer: loop {
            let rv: Vec<Q> = r
                .iter()
                .map(|row| row.iter().zip(&kappa).fold(Q::zero(), |s, (x, k)| s + x * Q::from_integer(BigInt::from(*k))))
                .collect();
            if k_set.iter().all(|&j| rv[j].is_integer()) {
                keys.insert(rv.iter().map(fold_angle).collect());
            }
            for slot in kappa.iter_mut() {
                *slot += 1;
                if *slot < period {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
    }

    let canonical_f64: Vec<Vec<f64>> =
        c.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let mut out = SingularCandidates {
        basis: basis.iter().map(|j| j + 1).collect(),
        canonical: c.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        points: Vec::new(),
        curves: Vec::new(),
        families,
        canonical_f64,
    };

    for i_set in subsets(m).filter(|s| !s.is_empty() && s.len() < m) {
        let rest: Vec<usize> = all.iter().copied().filter(|j| !basis.contains(j)).collect();
        let restricted: Vec<Vec<Q>> = rest.iter().map(|&j| i_set.iter().map(|&i| c[i][j].clone()).collect()).collect();
        let rk = rational_rank(&restricted);
        let period = 2 * lcm_denominators(restricted.iter().flatten()).to_u64().unwrap_or(u64::MAX);
        out.families.push(FamilyRecord {
            family: "H",
            set: i_set.iter().map(|i| i + 1).collect(),
            dimension: m - rk,
            period,
        });
    }

    if m == 2 && n == 3 {
        out.curves = surface_curves(&basis, &c);
    }
    let rendered: Vec<Vec<f64>> = keys.iter().map(|k| k.iter().map(|x| (PI * x.to_f64().unwrap()).cos()).collect()).collect();
    out.points = rendered
        .into_iter()
        .map(|p| p.into_iter().map(|v| if v.abs() < 1e-15 { 0.0 } else { v }).collect::<Vec<f64>>())
        .filter(|p| !out.curves.iter().any(|cv| cv.contains(p, 1e-9)))
        .collect();
    Ok(out)
}

/// Interior curves for the canonical surface `[e1 | e2 | (a, b)]`.
fn surface_curves(basis: &[usize], c: &[Vec<Q>]) -> Vec<SingularCurve> {
    let last = (0..3).find(|j| !basis.contains(j)).unwrap();
    let mut curves = Vec::new();
    for side in 0..2 {
        let coef = c[side][last].abs();
        if coef.is_zero() {
            continue;
        }
        let (num, den) = (coef.numer().to_u64().unwrap(), coef.denom().to_u64().unwrap());
        let other_side = 1 - side;
        let oc = c[other_side][last].abs();
        let (p, q) = (oc.numer().to_u64().unwrap(), oc.denom().to_u64().unwrap());
        let fixed = basis[side];
        let other = basis[other_side];
        for nu in 1..num {
            let u_value = nu as f64 * PI * den as f64 / num as f64;
            let mut fixed_value = u_value.cos();
            if fixed_value.abs() < 1e-15 {
                fixed_value = 0.0;
            }
            let rhs: i8 = if (nu * den) % 2 == 0 { 1 } else { -1 };
            let sign: i8 = if nu % 2 == 0 { 1 } else { -1 };
            let name = |j: usize| format!("x{}", j + 1);
            let sgn = if sign < 0 { "-" } else { "" };
            let description = format!(
                "{} = {:.6}, T{}({}) = {rhs}, T{}({}) = T{}({sgn}{})",
                name(fixed),
                fixed_value,
                num,
                name(fixed),
                p,
                name(other),
                q,
                name(last)
            );
            curves.push(SingularCurve {
                fixed,
                fixed_value,
                k: num,
                rhs,
                other,
                last,
                p,
                q,
                sign,
                description,
                u_index: side,
                u_value,
            });
        }
    }
    curves
}
