//! Eigenvalue solver for tensor-product Chebyshev systems built from a
//! Macaulay-type matrix in the Chebyshev basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{self, left_pseudo_inverse, nullspace_with_rank, DenseMatrix, RankPolicy, C64};
use crate::polytope::{self, dilate, lattice_points, minkowski_sum_simplex, normalized_volume, q_to_i64, ExponentMatrix};
use crate::system::{Basis, ChebSystem};
use crate::variety::tensor::density_violation;

pub type Index = Vec<i64>;

/// Threshold on `max |Im t_i|` for calling a root real.
pub const REAL_TOL: f64 = 1e-8;
pub const BOX_SLACK: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Support {
    pub a_ext: Vec<Index>,
    pub b: Vec<Index>,
    pub a0: Vec<Index>,
}

fn supports_of(a: &ExponentMatrix) -> Result<Support> {
    let m = a.m();
    if m > 3 {
        return Err(Error::UnsupportedDimension(format!("m = {m} exceeds the supported limit 3")));
    }
    let pa = polytope::p_a(a)?;
    let ext = minkowski_sum_simplex(&dilate(&pa, m as u32)?, m)?;
    let b = minkowski_sum_simplex(&dilate(&pa, m as u32 - 1)?, m)?;
    Ok(Support { a_ext: lattice_points(&ext)?, b: lattice_points(&b)?, a0: lattice_points(&dilate(&pa, m as u32)?)? })
}

/// Lattice points of `m P_A + Delta_m`, `(m-1) P_A + Delta_m` and `m P_A`.
pub fn build_support(a: &ExponentMatrix) -> Result<Support> {
    if a.rank() != a.m() {
        return Err(Error::RankDeficient { expected: a.m(), found: a.rank() });
    }
    if let Some((col, i)) = density_violation(a) {
        return Err(Error::UnsupportedSupport(format!(
            "column {col:?} minus e_{} is not in the support",
            i + 1
        )));
    }
    supports_of(a)
}

/// Smallest support containing `A` that is closed under subtracting unit vectors.
pub fn density_closure(a: &ExponentMatrix) -> Result<ExponentMatrix> {
    let mut set: BTreeSet<Index> = BTreeSet::new();
    fn rec(c: &[i64], i: usize, cur: &mut Index, set: &mut BTreeSet<Index>) {
        if i == c.len() {
            set.insert(cur.clone());
            return;
        }
        for v in 0..=c[i] {
            cur[i] = v;
            rec(c, i + 1, cur, set);
        }
    }
    for c in a.columns() {
        rec(&c, 0, &mut vec![0; a.m()], &mut set);
    }
    set.remove(&vec![0; a.m()]);
    ExponentMatrix::from_columns(&set.into_iter().collect::<Vec<_>>())
}

/// Coefficients of `T_b * f` in the tensor Chebyshev basis, keyed by column of `A_ext`.
///
/// Uses `2 T_p T_q = T_{p+q} + T_{|p-q|}` in every coordinate.
pub fn tensor_product_row(
    b: &[i64],
    terms: &[(Index, f64)],
    col_index: &HashMap<Index, usize>,
) -> Result<Vec<(usize, f64)>> {
    let m = b.len();
    let w = 1.0 / (1u64 << m) as f64;
    let mut acc: HashMap<usize, f64> = HashMap::new();
    for (a, c) in terms {
        for mask in 0..1u32 << m {
            let k: Index = (0..m)
                .map(|i| if mask >> i & 1 == 1 { (b[i] - a[i]).abs() } else { b[i] + a[i] })
                .collect();
            let col = *col_index.get(&k).ok_or_else(|| {
                Error::InternalConsistency(format!("product index {k:?} escapes the extended support"))
            })?;
            *acc.entry(col).or_insert(0.0) += c * w;
        }
    }
    let mut row: Vec<(usize, f64)> = acc.into_iter().filter(|(_, v)| *v != 0.0).collect();
    row.sort_by_key(|e| e.0);
    Ok(row)
}

/// Sparse rows of the map `t_i T_{A0} -> T_{A_ext}`.
pub fn mult_matrix(i: usize, a0: &[Index], col_index: &HashMap<Index, usize>) -> Result<Vec<Vec<(usize, f64)>>> {
    a0.iter()
        .map(|a| {
            let look = |k: &Index| {
                col_index.get(k).copied().ok_or_else(|| {
                    Error::InternalConsistency(format!("shifted index {k:?} escapes the extended support"))
                })
            };
            let mut up = a.clone();
            up[i] += 1;
            if a[i] == 0 {
                return Ok(vec![(look(&up)?, 1.0)]);
            }
            let mut down = a.clone();
            down[i] -= 1;
            Ok(vec![(look(&up)?, 0.5), (look(&down)?, 0.5)])
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct MacaulayAssembly {
    pub support: Support,
    pub col_index: HashMap<Index, usize>,
    pub m: DenseMatrix,
    /// Expected number of solutions; known a priori only for dense supports.
    pub delta: Option<usize>,
    /// True when `A` was replaced by its density closure.
    pub padded: bool,
}

fn terms_of(a: &ExponentMatrix, coeffs: &[f64], c0: f64) -> Vec<(Index, f64)> {
    let mut t = vec![(vec![0; a.m()], c0)];
    t.extend(a.columns().into_iter().zip(coeffs.iter().copied()));
    t
}

pub fn assemble_m(sys: &ChebSystem) -> Result<MacaulayAssembly> {
    if sys.basis != Basis::Tensor {
        return Err(Error::InvalidInput("the Macaulay solver needs a tensor basis".into()));
    }
    let a = &sys.a;
    if a.rank() != a.m() {
        return Err(Error::RankDeficient { expected: a.m(), found: a.rank() });
    }
    let dense = density_violation(a).is_none();
    let (work, coeffs): (ExponentMatrix, Vec<Vec<f64>>) = if dense {
        (a.clone(), sys.c.clone())
    } else {
        // zero coefficients on the added columns
        let closure = density_closure(a)?;
        let cols = closure.columns();
        let coeffs = sys
            .c
            .iter()
            .map(|row| {
                let mut out = vec![0.0; cols.len()];
                for (j, c) in a.columns().iter().zip(row) {
                    let k = cols.iter().position(|x| x == j).unwrap();
                    out[k] += c;
                }
                out
            })
            .collect();
        (closure, coeffs)
    };
    let support = if dense { build_support(&work)? } else { supports_of(&work)? };
    let col_index: HashMap<Index, usize> = support.a_ext.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mm = sys.m();
    let mut mat = DenseMatrix::zeros(mm * support.b.len(), support.a_ext.len());
    for i in 0..mm {
        let terms = terms_of(&work, &coeffs[i], sys.c0[i]);
        for (r, b) in support.b.iter().enumerate() {
            for (col, v) in tensor_product_row(b, &terms, &col_index)? {
                mat.set(i * support.b.len() + r, col, C64::new(v, 0.0));
            }
        }
    }
    let delta = if dense {
        let v = normalized_volume(&polytope::p_a(a)?)?;
        Some(q_to_i64(&v).ok_or_else(|| Error::InternalConsistency("non-integral volume".into()))? as usize)
    } else {
        None
    };
    Ok(MacaulayAssembly { support, col_index, m: mat, delta, padded: !dense })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveOptions {
    pub seed: u64,
    pub rank_policy: RankPolicy,
    pub newton_steps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, rank_policy: RankPolicy::default(), newton_steps: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub t: Vec<C64>,
    /// Relative residual of each equation.
    pub residuals: Vec<f64>,
    pub residual: f64,
    pub is_real: bool,
    pub in_box: bool,
}

impl Solution {
    pub fn new(sys: &ChebSystem, t: Vec<C64>) -> Self {
        let residuals = sys.relative_residuals(&t);
        let residual = residuals.iter().copied().fold(0.0, f64::max);
        let is_real = t.iter().all(|z| z.im.abs() < REAL_TOL);
        let in_box = is_real && t.iter().all(|z| z.re.abs() <= 1.0 + BOX_SLACK);
        Solution { t, residuals, residual, is_real, in_box }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub real: f64,
    pub box_slack: f64,
    pub rank_relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionSet {
    pub points: Vec<Solution>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub kernel_dim: usize,
    pub matrix_rank: usize,
    pub matrix_shape: (usize, usize),
    /// Number of solutions the kernel predicts.
    pub expected: usize,
    /// Set when the support was padded to its downward closure.
    pub padded: bool,
    pub warnings: Vec<String>,
}

impl SolutionSet {
    pub fn real_count(&self) -> usize {
        self.points.iter().filter(|p| p.is_real).count()
    }

    pub fn in_box_count(&self) -> usize {
        self.points.iter().filter(|p| p.in_box).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

/// Newton's method on the original system; a step is kept only if it lowers the residual.
pub fn newton_refine(sys: &ChebSystem, t: &[C64], steps: usize) -> Vec<C64> {
    let mut cur = t.to_vec();
    let mut res = sys.max_residual(&cur);
    for _ in 0..steps {
        if res < 1e-15 {
            break;
        }
        let f = sys.eval(&cur);
        let neg: Vec<C64> = f.iter().map(|z| -z).collect();
        let Some(dt) = linalg::solve_square(&sys.jacobian(&cur), &neg) else { break };
        let next: Vec<C64> = cur.iter().zip(&dt).map(|(a, b)| a + b).collect();
        let r = sys.max_residual(&next);
        if !(r < res) {
            break;
        }
        cur = next;
        res = r;
    }
    cur
}

fn sparse_times(rows: &[Vec<(usize, f64)>], n: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), n.cols(), |r, c| rows[r].iter().map(|(k, w)| n.get(*k, c) * *w).sum())
}

/// Restricts the kernel to the rows where its part invisible on `A0` vanishes,
/// together with both shifts in every direction. Needed only for padded supports,
/// where solutions at infinity contribute extra kernel vectors.
fn affine_rows(
    asm: &MacaulayAssembly,
    kernel: &DenseMatrix,
    a0_rows: &DenseMatrix,
    policy: &RankPolicy,
) -> Result<(Vec<usize>, DenseMatrix)> {
    let (null, rank, _) = nullspace_with_rank(a0_rows, policy)?;
    if null.cols() == 0 {
        return Ok(((0..asm.support.a0.len()).collect(), kernel.clone()));
    }
    let hidden = kernel.matmul(&null)?;
    let scale = hidden.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let zero_row = |k: usize| (0..hidden.cols()).all(|c| hidden.get(k, c).norm() <= 1e-9 * scale.max(1.0));
    let m = asm.support.a0.first().map_or(0, Vec::len);
    let keep: Vec<usize> = asm
        .support
        .a0
        .iter()
        .enumerate()
        .filter(|(_, a)| {
            let ok = |k: &Index| asm.col_index.get(k).is_some_and(|&r| zero_row(r));
            ok(a) && (0..m).all(|i| {
                let mut up = (*a).clone();
                up[i] += 1;
                let mut down = (*a).clone();
                down[i] = (down[i] - 1).abs();
                ok(&up) && ok(&down)
            })
        })
        .map(|(r, _)| r)
        .collect();
    let sub = a0_rows.select_rows(&keep);
    // orthonormal basis of the row space of the retained block
    let (_, r1, _) = nullspace_with_rank(&sub, policy)?;
    if r1 != rank {
        return Err(Error::Genericity(format!(
            "the affine part of the kernel has rank {r1} on the retained rows but {rank} on A0"
        )));
    }
    let adj = sub.adjoint();
    let basis = row_space_basis(&adj, r1)?;
    Ok((keep, kernel.matmul(&basis)?))
}

/// Leading `r` left singular vectors of `m`.
fn row_space_basis(m: &DenseMatrix, r: usize) -> Result<DenseMatrix> {
    let u = if m.is_real() {
        let svd = m.to_faer_real().thin_svd().map_err(|e| Error::IterationLimit(format!("{e:?}")))?;
        DenseMatrix::from_faer_real(&svd.U().to_owned())
    } else {
        let svd = m.to_faer().thin_svd().map_err(|e| Error::IterationLimit(format!("{e:?}")))?;
        DenseMatrix::from_faer(&svd.U().to_owned())
    };
    Ok(DenseMatrix::from_fn(u.rows(), r, |i, j| u.get(i, j)))
}

pub fn solve_tensor(sys: &ChebSystem, opts: &SolveOptions) -> Result<SolutionSet> {
    let asm = assemble_m(sys)?;
    let (kernel, rank, _) = nullspace_with_rank(&asm.m, &opts.rank_policy)?;
    let mut warnings = Vec::new();
    if let Some(delta) = asm.delta {
        if kernel.cols() != delta {
            return Err(Error::Genericity(format!(
                "kernel dimension {} differs from the expected {delta}; coefficients may be special",
                kernel.cols()
            )));
        }
    }
    let a0_idx: Vec<usize> = asm.support.a0.iter().map(|k| asm.col_index[k]).collect();
    let mut a0 = asm.support.a0.clone();
    let mut basis = kernel.clone();
    let mut rows = kernel.select_rows(&a0_idx);
    if asm.padded {
        let (keep, b) = affine_rows(&asm, &kernel, &rows, &opts.rank_policy)?;
        a0 = keep.iter().map(|&r| asm.support.a0[r].clone()).collect();
        basis = b;
        let idx: Vec<usize> = a0.iter().map(|k| asm.col_index[k]).collect();
        rows = basis.select_rows(&idx);
    }
    let delta = basis.cols();
    let pinv = left_pseudo_inverse(&rows).map_err(|e| match e {
        Error::RankDeficient { expected, found } => {
            Error::Genericity(format!("kernel restricted to A0 has rank {found}, expected {expected}"))
        }
        e => e,
    })?;
    let m = sys.m();
    let mut mults = Vec::with_capacity(m);
    for i in 0..m {
        let ci = mult_matrix(i, &a0, &asm.col_index)?;
        mults.push(pinv.matmul(&sparse_times(&ci, &basis))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lambda: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
    let mut e = DenseMatrix::zeros(delta, delta);
    for (l, n) in lambda.iter().zip(&mults) {
        e = e.add(&n.scale(C64::new(*l, 0.0)))?;
    }
    let pairs = linalg::eig_pairs(&e)?;
    let w = DenseMatrix::from_columns(delta, &pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    let nw: Vec<DenseMatrix> = mults.iter().map(|n| n.matmul(&w)).collect::<Result<_>>()?;
    let mut points: Vec<Solution> = (0..delta)
        .map(|j| {
            let t: Vec<C64> = (0..m)
                .map(|i| (0..delta).map(|k| w.get(k, j).conj() * nw[i].get(k, j)).sum::<C64>())
                .collect();
            Solution::new(sys, newton_refine(sys, &t, opts.newton_steps))
        })
        .collect();
    points.sort_by(|p, q| {
        let key = |s: &Solution| s.t.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
        key(p).partial_cmp(&key(q)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let bad = points.iter().filter(|p| p.residual > 1e-8).count();
    if bad > 0 {
        warnings.push(format!("{bad} roots have relative residual above 1e-8"));
    }
    Ok(SolutionSet {
        points,
        seed: opts.seed,
        tolerances: Tolerances { real: REAL_TOL, box_slack: BOX_SLACK, rank_relative: opts.rank_policy.relative_threshold },
        kernel_dim: kernel.cols(),
        matrix_rank: rank,
        matrix_shape: (asm.m.rows(), asm.m.cols()),
        expected: delta,
        padded: asm.padded,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{colleague_roots, ChebCoeffs};

    fn mat(rows: Vec<Vec<i64>>) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    fn random_system(a: &ExponentMatrix, seed: u64) -> ChebSystem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = (0..a.m()).map(|_| (0..a.n()).map(|_| rng.sample(StandardNormal)).collect()).collect();
        let c0 = (0..a.m()).map(|_| rng.sample(StandardNormal)).collect();
        ChebSystem::new(Basis::Tensor, a.clone(), c, c0).unwrap()
    }

    #[test]
    fn univariate_support() {
        let s = build_support(&mat(vec![vec![1, 2, 3]])).unwrap();
        assert_eq!(s.a_ext, (0..=4).map(|k| vec![k]).collect::<Vec<_>>());
        assert_eq!(s.b, vec![vec![0], vec![1]]);
        assert_eq!(s.a0, (0..=3).map(|k| vec![k]).collect::<Vec<_>>());
    }

    #[test]
    fn density_violation_is_named() {
        let err = build_support(&mat(vec![vec![1, 1, 2], vec![2, 1, 3]])).unwrap_err();
        assert!(matches!(err, Error::UnsupportedSupport(ref s) if s.contains("[1, 2]")), "{err:?}");
    }

    #[test]
    fn product_rows() {
        let idx: HashMap<Index, usize> = (0..5).map(|k| (vec![k], k as usize)).collect();
        assert_eq!(tensor_product_row(&[1], &[(vec![2], 1.0)], &idx).unwrap(), vec![(1, 0.5), (3, 0.5)]);
        assert_eq!(tensor_product_row(&[0], &[(vec![2], 3.0)], &idx).unwrap(), vec![(2, 3.0)]);
        let idx2: HashMap<Index, usize> =
            [vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]].into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let row = tensor_product_row(&[1, 1], &[(vec![1, 1], 1.0)], &idx2).unwrap();
        assert_eq!(row, vec![(0, 0.25), (1, 0.25), (2, 0.25), (3, 0.25)]);
    }

    #[test]
    fn mult_rows_sum_to_one() {
        let s = build_support(&mat(vec![vec![1, 0, 1], vec![0, 1, 1]])).unwrap();
        let idx: HashMap<Index, usize> = s.a_ext.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        for i in 0..2 {
            for row in mult_matrix(i, &s.a0, &idx).unwrap() {
                assert_eq!(row.iter().map(|e| e.1).sum::<f64>(), 1.0);
            }
        }
    }

    #[test]
    fn univariate_matches_colleague() {
        let a = mat(vec![(1..=7).collect()]);
        let sys = random_system(&a, 4);
        let sol = solve_tensor(&sys, &SolveOptions::default()).unwrap();
        assert_eq!(sol.points.len(), 7);
        let mut coeffs = vec![sys.c0[0]];
        coeffs.extend(&sys.c[0]);
        let mut oracle = colleague_roots(&ChebCoeffs::t(coeffs)).unwrap();
        let key = |z: &C64| (z.re, z.im);
        oracle.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
        for (s, o) in sol.points.iter().zip(&oracle) {
            assert!((s.t[0] - o).norm() < 1e-8, "{:?} vs {o}", s.t[0]);
        }
    }

    #[test]
    fn dense_bivariate_counts() {
        let a = mat(vec![vec![1, 0, 1, 2, 0], vec![0, 1, 1, 0, 2]]);
        for seed in 0..5 {
            let sol = solve_tensor(&random_system(&a, seed), &SolveOptions::default()).unwrap();
            assert_eq!(sol.points.len(), 4);
            assert!(sol.max_residual() < 1e-10);
        }
    }

    #[test]
    fn running_example_has_seven_roots() {
        let a = mat(vec![vec![1, 1, 2], vec![2, 1, 3]]);
        for seed in 0..10 {
            let sol = solve_tensor(&random_system(&a, seed), &SolveOptions { seed, ..Default::default() }).unwrap();
            assert_eq!(sol.points.len(), 7);
            assert!(sol.max_residual() < 1e-8, "{}", sol.max_residual());
            assert_eq!(sol.kernel_dim, 12);
        }
    }
}
