//! Tensor-product Chebyshev varieties.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ser_q, DegreeBounds, VarietyKind, VarietyReport};
use crate::cheb;
use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, DenseMatrix, RankPolicy, C64};
use crate::polytope::{self, lattice_index, normalized_volume, q_from_int, q_to_i64, ExponentMatrix, Q};

const DIMENSION_SEED: u64 = 0x7e57_d1e5;

/// Jacobian of `t -> (prod_i T_{a_ij}(t_i))_j` at `t`, one row per column of `A`.
pub fn tensor_jacobian(a: &ExponentMatrix, t: &[f64]) -> DenseMatrix {
    let (m, n) = (a.m(), a.n());
    DenseMatrix::from_fn(n, m, |j, k| {
        let mut v = C64::new(1.0, 0.0);
        for i in 0..m {
            let e = a.get(i, j) as usize;
            let z = C64::new(t[i], 0.0);
            v *= if i == k { cheb::eval_t_deriv(e, z) } else { cheb::eval_t(e, z) };
        }
        v
    })
}

/// Generic Jacobian rank, estimated as the maximum over five random points.
pub fn tensor_dimension(a: &ExponentMatrix) -> Result<usize> {
    a.require_nonnegative()?;
    let mut rng = ChaCha8Rng::seed_from_u64(DIMENSION_SEED);
    let policy = RankPolicy::new(1e-8, 1e-14)?;
    let mut best = 0;
    for _ in 0..5 {
        let t: Vec<f64> = (0..a.m()).map(|_| rng.random_range(0.3..0.9)).collect();
        best = best.max(numerical_rank(&tensor_jacobian(a, &t), &policy)?);
    }
    Ok(best)
}

/// Checks that `a_j - e_i` lies in `A` together with the origin whenever `a_ij > 0`.
/// Returns the first violating `(column, row)` pair.
pub fn density_violation(a: &ExponentMatrix) -> Option<(Vec<i64>, usize)> {
    let mut support: Vec<Vec<i64>> = a.columns();
    support.push(vec![0; a.m()]);
    for c in &support {
        for i in 0..a.m() {
            if c[i] > 0 {
                let mut d = c.clone();
                d[i] -= 1;
                if !support.contains(&d) {
                    return Some((c.clone(), i));
                }
            }
        }
    }
    None
}

pub fn tensor_degree_bounds(a: &ExponentMatrix) -> Result<VarietyReport> {
    let m = a.m();
    let dim = tensor_dimension(a)?;
    if dim < m {
        return Err(Error::Precondition(format!(
            "the tensor variety has dimension {dim} < m = {m}; generic linear sections are empty"
        )));
    }
    let sp = polytope::special_polytopes(a)?;
    let bound_pc = normalized_volume(&sp.p_c)?;
    let bound_pb = normalized_volume(&sp.p_b)? / q_from_int(1 << m);
    let surface_bound = if m == 2 && a.rank() == 2 { Some(surface_degree_bound(a)?.bound) } else { None };
    let density = density_violation(a).is_none();
    let mut degree = None;
    if density {
        let vol_a = normalized_volume(&sp.p_a)?;
        if sp.p_a.vertices != sp.p_c.vertices || vol_a != bound_pb || vol_a != bound_pc {
            return Err(Error::InternalConsistency(
                "dense support but the polytopes P_A, P_C and the positive part of P_B differ".into(),
            ));
        }
        degree = Some(q_to_i64(&vol_a).ok_or_else(|| Error::InternalConsistency("non-integral volume".into()))? as u64);
    }
    Ok(VarietyReport {
        kind: VarietyKind::Tensor,
        dimension: dim,
        degree,
        bounds: Some(DegreeBounds { bound_pc, bound_pb, surface_bound }),
        density_holds: Some(density),
        deg_pi1: None,
        lattice_index: lattice_index(a).ok(),
        note: if density { None } else { Some("support is not downward closed; only bounds are available".into()) },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceBound {
    #[serde(serialize_with = "ser_q")]
    pub bound: Q,
    /// Columns after sorting by the first row (ties keep input order).
    pub sorted_columns: Vec<(i64, i64)>,
    pub alpha: usize,
    pub beta: usize,
    /// One-based permutation sorting the second row of the sorted columns.
    pub sigma: Vec<usize>,
}

/// Degree bound for a tensor Chebyshev surface that subtracts two corner
/// rectangles from the Kushnirenko count of `P_B`.
pub fn surface_degree_bound(a: &ExponentMatrix) -> Result<SurfaceBound> {
    if a.m() != 2 {
        return Err(Error::InvalidInput(format!("surface bound needs a 2-row matrix, got {} rows", a.m())));
    }
    if a.rank() < 2 {
        return Err(Error::Precondition("surface bound needs rank(A) = 2".into()));
    }
    a.require_nonnegative()?;
    let n = a.n();
    let mut cols: Vec<(i64, i64)> = (0..n).map(|j| (a.get(0, j), a.get(1, j))).collect();
    cols.sort_by_key(|c| c.0);
    // one-based arrays with the convention a_0 = b_0 = 0
    let av: Vec<i64> = std::iter::once(0).chain(cols.iter().map(|c| c.0)).collect();
    let bv: Vec<i64> = std::iter::once(0).chain(cols.iter().map(|c| c.1)).collect();
    let mut sigma: Vec<usize> = (1..=n).collect();
    sigma.sort_by_key(|&j| bv[j]);
    let sig = |j: usize| if j == 0 { 0 } else { sigma[j - 1] };
    let alpha = (0..=n).rev().find(|&j| bv[j] != bv[n]).unwrap_or(0);
    let beta = (0..=n).rev().find(|&j| av[sig(j)] != av[sig(n)]).unwrap_or(0);
    let vol_b = normalized_volume(&polytope::p_b(a)?)?;
    let corner_a = 4 * bv[n] * (av[n] - av[alpha]);
    let corner_b = 4 * av[sig(n)] * (bv[sig(n)] - bv[sig(beta)]);
    let bound = (vol_b - q_from_int(corner_a) - q_from_int(corner_b)) / q_from_int(4);
    debug_assert!(!bound.is_zero() || n > 0);
    Ok(SurfaceBound { bound, sorted_columns: cols, alpha, beta, sigma })
}
