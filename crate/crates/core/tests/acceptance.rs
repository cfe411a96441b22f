//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line on
//! stderr (bypassing the test harness capture) and the test fails if any does.

use std::io::Write;
use std::time::{Duration, Instant};

use chebvar::cheb::{self, colleague_roots, ChebCoeffs, ChebKind};
use chebvar::cosine_solver::{solve_cosine, CosineOptions};
use chebvar::curves::{self, hyperbolicity_check, inversion_polynomial, plane_curve};
use chebvar::linalg::{eigenvalues, DenseMatrix, C64};
use chebvar::poly::{t_monomial_coeffs, ImplicitPoly};
use chebvar::polytope::{normalized_volume, p_a, q_to_i64, ExponentMatrix};
use chebvar::root_system::{fundamental_orbits, gen_cheb, weyl_orbit_value, GenChebTable};
use chebvar::system::{Basis, ChebSystem};
use chebvar::tensor_solver::{assemble_m, solve_tensor, SolveOptions};
use chebvar::variety::{
    cosine_degree, implicitize, parametrization_point, surface_degree_bound, tensor_degree_bounds, ParamKind,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> std::result::Result<(), String> {
    ensure(elapsed <= limit, format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn mat(rows: Vec<Vec<i64>>) -> ExponentMatrix {
    ExponentMatrix::from_rows(rows).unwrap()
}

fn running() -> ExponentMatrix {
    mat(vec![vec![1, 1, 2], vec![2, 1, 3]])
}

fn random_system(basis: Basis, a: &ExponentMatrix, rng: &mut ChaCha8Rng) -> ChebSystem {
    let c = (0..a.m()).map(|_| (0..a.n()).map(|_| rng.sample(StandardNormal)).collect()).collect();
    let c0 = (0..a.m()).map(|_| rng.sample(StandardNormal)).collect();
    ChebSystem::new(basis, a.clone(), c, c0).unwrap()
}

fn q_int(q: &chebvar::polytope::Q) -> i64 {
    q_to_i64(q).expect("integral value")
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let a = running();
    let r = tensor_degree_bounds(&a).map_err(|e| e.to_string())?;
    let b = r.bounds.ok_or("no bounds")?;
    let s = surface_degree_bound(&a).map_err(|e| e.to_string())?;
    ensure(b.surface_bound.as_ref() == Some(&s.bound), "surface bound missing from the report")?;
    ensure(q_int(&b.bound_pc) == 11 && q_int(&b.bound_pb) == 12, format!("bounds {} / {}", b.bound_pc, b.bound_pb))?;
    ensure(q_int(&s.bound) == 7, format!("surface bound {}", s.bound))?;
    within(start.elapsed(), Duration::from_secs(1), "bounds")?;
    Ok("7 <= 11 <= 12".into())
}

// Independent oracle for bivariate tensor systems: a Sylvester resultant in t2,
// sampled at Chebyshev nodes in t1, then back-substitution and Newton.
mod oracle {
    use super::*;

    fn t_coeffs(k: usize) -> Vec<f64> {
        t_monomial_coeffs(k).iter().map(|c| c.to_f64().unwrap()).collect()
    }

    /// Monomial coefficients in `t2` of `f_i(t1, t2)`, padded to degree `d2`.
    pub fn in_t2(sys: &ChebSystem, i: usize, t1: C64, d2: usize) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); d2 + 1];
        out[0] += sys.c0[i];
        for j in 0..sys.n() {
            let w = cheb::eval_t(sys.a.get(0, j) as usize, t1) * sys.c[i][j];
            for (d, c) in t_coeffs(sys.a.get(1, j) as usize).iter().enumerate() {
                out[d] += w * *c;
            }
        }
        out
    }

    fn det(mut m: Vec<Vec<C64>>) -> C64 {
        let n = m.len();
        let mut d = C64::new(1.0, 0.0);
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm())).unwrap();
            if m[p][k].norm() == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if p != k {
                m.swap(p, k);
                d = -d;
            }
            d *= m[k][k];
            for i in k + 1..n {
                let f = m[i][k] / m[k][k];
                for j in k..n {
                    let t = m[k][j];
                    m[i][j] -= f * t;
                }
            }
        }
        d
    }

    fn sylvester(p: &[C64], q: &[C64]) -> C64 {
        let (dp, dq) = (p.len() - 1, q.len() - 1);
        let n = dp + dq;
        let mut s = vec![vec![C64::new(0.0, 0.0); n]; n];
        for r in 0..dq {
            for (d, c) in p.iter().rev().enumerate() {
                s[r][r + d] = *c;
            }
        }
        for r in 0..dp {
            for (d, c) in q.iter().rev().enumerate() {
                s[dq + r][r + d] = *c;
            }
        }
        det(s)
    }

    fn poly_roots(p: &[C64]) -> Vec<C64> {
        let mut p = p.to_vec();
        while p.len() > 1 && p.last().unwrap().norm() < 1e-13 {
            p.pop();
        }
        let d = p.len() - 1;
        if d == 0 {
            return vec![];
        }
        let lead = p[d];
        let comp = DenseMatrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -p[i] / lead
            } else if i == j + 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        eigenvalues(&comp).unwrap()
    }

    fn newton(sys: &ChebSystem, t: &mut Vec<C64>) {
        for _ in 0..30 {
            let f = sys.eval(t);
            let j = sys.jacobian(t);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.norm() == 0.0 {
                return;
            }
            let d0 = (j[1][1] * f[0] - j[0][1] * f[1]) / det;
            let d1 = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
            t[0] -= d0;
            t[1] -= d1;
            if (d0.norm() + d1.norm()) < 1e-15 * (1.0 + t[0].norm() + t[1].norm()) {
                return;
            }
        }
    }

    fn push_unique(out: &mut Vec<Vec<C64>>, t: Vec<C64>, tol: f64) {
        if !out.iter().any(|s| s.iter().zip(&t).all(|(a, b)| (a - b).norm() < tol)) {
            out.push(t);
        }
    }

    pub fn resultant_roots(sys: &ChebSystem) -> Vec<Vec<C64>> {
        let d1 = (0..sys.n()).map(|j| sys.a.get(0, j)).max().unwrap() as usize;
        let d2 = (0..sys.n()).map(|j| sys.a.get(1, j)).max().unwrap() as usize;
        let deg = 2 * d1 * d2;
        let nodes = 4 * deg + 8;
        let vals: Vec<f64> = (0..nodes)
            .map(|k| {
                let x = ((k as f64 + 0.5) * std::f64::consts::PI / nodes as f64).cos();
                let t1 = C64::new(x, 0.0);
                sylvester(&in_t2(sys, 0, t1, d2), &in_t2(sys, 1, t1, d2)).re
            })
            .collect();
        let coeffs: Vec<f64> = (0..=deg)
            .map(|k| {
                let s: f64 = (0..nodes)
                    .map(|j| vals[j] * ((k as f64) * (j as f64 + 0.5) * std::f64::consts::PI / nodes as f64).cos())
                    .sum();
                if k == 0 {
                    s / nodes as f64
                } else {
                    2.0 * s / nodes as f64
                }
            })
            .collect();
        let mut out = Vec::new();
        for r1 in colleague_roots(&ChebCoeffs::t(coeffs)).unwrap() {
            let f2 = in_t2(sys, 1, r1, d2);
            for r2 in poly_roots(&in_t2(sys, 0, r1, d2)) {
                let mut t = vec![r1, r2];
                let g = f2.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * r2 + c);
                if g.norm() > 1e-3 * (1.0 + f2.iter().map(|c| c.norm()).sum::<f64>()) {
                    continue;
                }
                newton(sys, &mut t);
                if sys.max_residual(&t) < 1e-10 {
                    push_unique(&mut out, t, 1e-6);
                }
            }
        }
        out
    }

    /// Real roots in `[-1.5, 1.5]^2` reached by Newton from a grid.
    pub fn grid_roots(sys: &ChebSystem, steps: usize) -> Vec<Vec<C64>> {
        let mut out = Vec::new();
        for i in 0..=steps {
            for j in 0..=steps {
                let g = |k: usize| -1.5 + 3.0 * k as f64 / steps as f64;
                let mut t = vec![C64::new(g(i), 0.0), C64::new(g(j), 0.0)];
                newton(sys, &mut t);
                if t.iter().all(|z| z.re.abs() <= 1.5 && z.im.abs() < 1e-12) && sys.max_residual(&t) < 1e-10 {
                    push_unique(&mut out, t, 1e-6);
                }
            }
        }
        out
    }
}

fn matches(a: &[Vec<C64>], b: &[C64], tol: f64) -> bool {
    a.iter().any(|s| s.iter().zip(b).all(|(x, y)| (x - y).norm() < tol))
}

fn criterion_2() -> Check {
    let a = running();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let systems: Vec<ChebSystem> = (0..100).map(|_| random_system(Basis::Tensor, &a, &mut rng)).collect();
    let start = Instant::now();
    let sets: Vec<_> = systems
        .iter()
        .map(|s| solve_tensor(s, &SolveOptions::default()))
        .collect::<chebvar::Result<_>>()
        .map_err(|e| e.to_string())?;
    let solve_time = start.elapsed();
    let mut worst: f64 = 0.0;
    for (k, (sys, set)) in systems.iter().zip(&sets).enumerate() {
        ensure(set.points.len() == 7, format!("system {k}: {} solutions", set.points.len()))?;
        worst = worst.max(set.max_residual());
        let res = oracle::resultant_roots(sys);
        ensure(res.len() == 7, format!("system {k}: resultant oracle found {} roots", res.len()))?;
        let pts: Vec<Vec<C64>> = set.points.iter().map(|p| p.t.clone()).collect();
        for p in &pts {
            ensure(matches(&res, p, 1e-6), format!("system {k}: root {p:?} not found by the resultant oracle"))?;
        }
        for g in oracle::grid_roots(sys, 40) {
            ensure(matches(&pts, &g, 1e-6), format!("system {k}: grid root {g:?} missing from the solver output"))?;
        }
    }
    ensure(worst < 1e-8, format!("max residual {worst:e}"))?;
    within(solve_time, Duration::from_secs(5), "100 solves")?;
    Ok(format!("100 systems x 7 roots, max residual {worst:.1e}, solver time {solve_time:.2?}"))
}

fn criterion_3() -> Check {
    let d = 30i64;
    let cols: Vec<Vec<i64>> = (0..=d)
        .flat_map(|i| (0..=d).map(move |j| vec![i, j]))
        .filter(|c| c[0] * c[0] + c[1] * c[1] <= d * d && (c[0], c[1]) != (0, 0))
        .collect();
    let a = ExponentMatrix::from_columns(&cols).unwrap();
    let delta = q_int(&normalized_volume(&p_a(&a).unwrap()).unwrap());
    ensure(delta == 1396, format!("delta = {delta}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let sys = random_system(Basis::Tensor, &a, &mut rng);
    let start = Instant::now();
    let set = solve_tensor(&sys, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(set.matrix_shape == (1560, 2953), format!("M is {:?}", set.matrix_shape))?;
    ensure(set.matrix_rank == 1557, format!("rank {}", set.matrix_rank))?;
    ensure(set.points.len() == 1396, format!("{} solutions", set.points.len()))?;
    ensure(set.max_residual() < 1e-6, format!("residual {:e}", set.max_residual()))?;
    let real = set.real_count();
    ensure(real % 2 == 1396 % 2, format!("{real} real solutions has the wrong parity"))?;
    ensure(set.points.iter().all(|p| !p.in_box || p.is_real), "an in-box solution is not real")?;
    within(took, Duration::from_secs(180), "degree-30 solve")?;
    Ok(format!("1396 solutions, {real} real, {} in box, {took:.1?}", set.in_box_count()))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let deg = |a: ExponentMatrix| cosine_degree(&a).map_err(|e| e.to_string());
    let e = deg(running())?;
    ensure(e.degree == Some(3), format!("elliptope degree {:?}", e.degree))?;
    let r = deg(mat(vec![vec![1, 0, 0, 2], vec![0, 1, 0, 3], vec![0, 0, 1, 0]]))?;
    ensure(r.degree == Some(6) && r.deg_pi1 == Some(4), format!("3x4 example: {:?} / {:?}", r.degree, r.deg_pi1))?;
    let s = deg(mat(vec![vec![4, 4, 6, 7, 9, 2], vec![8, 4, 1, 2, 6, 7]]))?;
    ensure(s.degree == Some(129), format!("2x6 example: {:?}", s.degree))?;
    within(start.elapsed(), Duration::from_secs(1), "degrees")?;
    Ok("3, 6 (deg pi1 = 4), 129".into())
}

fn criterion_5() -> Check {
    let a = mat(vec![vec![4, 4, 6, 7, 9, 2], vec![8, 4, 1, 2, 6, 7]]);
    let c = vec![vec![1.0, 2.0, 3.0, 5.0, -1.0, -7.0], vec![-2.0, -6.0, 5.0, -3.0, 1.0, 4.0]];
    let sys = ChebSystem::new(Basis::Cosine, a, c, vec![4.0, -2.0]).unwrap();
    let start = Instant::now();
    let r = solve_cosine(&sys, &CosineOptions::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let counts = (r.orbits.len(), r.real_v_pairs(), r.real_u_pairs(), r.complex_u_pairs());
    ensure(counts == (129, 5, 64, 65), format!("counts {counts:?}, warnings {:?}", r.warnings))?;
    ensure(r.max_residual() < 1e-8, format!("residual {:e}", r.max_residual()))?;
    within(took, Duration::from_secs(300), "cosine solve")?;
    Ok(format!("129 pairs: 5 real v, 64 real u, 65 complex u; {took:.2?}"))
}

fn poly3(terms: &[(&[u32], f64)]) -> ImplicitPoly {
    ImplicitPoly::from_terms(3, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
}

fn criterion_6() -> Check {
    let cubic = poly3(&[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[1, 1, 1], -2.0), (&[0, 0, 0], -1.0)]);
    let sextic = poly3(&[
        (&[4, 0, 0], 4.0),
        (&[2, 3, 1], -16.0),
        (&[2, 1, 1], 12.0),
        (&[2, 0, 0], -4.0),
        (&[0, 6, 0], 16.0),
        (&[0, 4, 0], -24.0),
        (&[0, 3, 1], 8.0),
        (&[0, 2, 0], 9.0),
        (&[0, 1, 1], -6.0),
        (&[0, 0, 2], 1.0),
    ]);
    let septic = poly3(&[
        (&[4, 1, 0], -6.0),
        (&[3, 0, 1], 1.0),
        (&[2, 5, 0], 48.0),
        (&[2, 3, 0], -22.0),
        (&[2, 1, 0], 3.0),
        (&[1, 4, 1], -20.0),
        (&[1, 2, 1], 3.0),
        (&[0, 7, 0], -16.0),
        (&[0, 5, 0], 8.0),
        (&[0, 3, 2], 2.0),
        (&[0, 3, 0], -1.0),
    ]);
    let cases = [
        ("cubic", ParamKind::Cosine, running(), 3, 60, cubic),
        ("sextic", ParamKind::Cosine, mat(vec![vec![1, 0, 2], vec![0, 1, 3]]), 6, 200, sextic),
        ("septic", ParamKind::Tensor, running(), 7, 260, septic),
    ];
    let mut notes = Vec::new();
    for (name, kind, a, d, samples, reference) in cases {
        let start = Instant::now();
        let f = implicitize(kind, &a, d, samples, 3).map_err(|e| format!("{name}: {e}"))?;
        let err = f.distance_up_to_scale(&reference);
        ensure(err < 1e-6, format!("{name}: coefficient error {err:e}"))?;
        within(start.elapsed(), Duration::from_secs(30), name)?;
        notes.push(format!("{name} {err:.0e}"));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Check {
    let p = inversion_polynomial(3, 2, 7).map_err(|e| e.to_string())?;
    ensure(p.render() == "2*T4(y)*T1(z) - T5(x)", format!("P = {}", p.render()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let t = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.2..0.2));
        ensure((p.compose_at(t) - t).norm() < 1e-9, format!("P(T3, T2, T7)({t}) != t"))?;
    }
    let curve = plane_curve(2, 3).map_err(|e| e.to_string())?;
    let pt = [C64::new(0.5, 0.0), C64::new(0.0, 0.0)];
    ensure(curves::padua_points(2, 3).len() == 1, "expected one Padua point")?;
    ensure(curve.implicit.eval(&pt).norm() < 1e-10, "Padua point is not on the curve")?;
    ensure(curve.implicit.gradient(&pt).iter().all(|g| g.norm() < 1e-10), "gradient does not vanish")?;
    let h = hyperbolicity_check(6, ChebKind::T, 200, 1).map_err(|e| e.to_string())?
        && hyperbolicity_check(9, ChebKind::U, 200, 1).map_err(|e| e.to_string())?;
    ensure(h, "hyperbolicity fails")?;
    Ok("inversion polynomial, Padua node, hyperbolicity".into())
}

fn criterion_8() -> Check {
    let h = curves::chamber_scan(&mat(vec![vec![2, 3, 7]]), 1000, 1).map_err(|e| e.to_string())?;
    ensure(h.counts.keys().all(|k| [3, 5, 7].contains(k)), format!("counts {:?}", h.counts))?;
    ensure(h.min == 3, format!("minimum {}", h.min))?;
    ensure(h.min >= 2, "fewer real roots than the smallest exponent")?;
    Ok(format!("histogram {:?}", h.counts))
}

fn criterion_9() -> Check {
    let a = mat(vec![vec![1, 0, 0, 2, 2, 0], vec![0, 1, 0, 2, 0, 2], vec![0, 0, 1, 0, 2, 2]]);
    let g = |e: &[(&[u32], f64)]| ImplicitPoly::from_terms(6, e.iter().map(|(x, c)| (x.to_vec(), *c)));
    let gens = [
        g(&[(&[0, 2, 0, 0, 1, 0], 2.0), (&[2, 0, 0, 0, 0, 1], -2.0), (&[0, 0, 0, 0, 1, 0], -1.0), (&[0, 0, 0, 0, 0, 1], 1.0)]),
        g(&[(&[0, 0, 2, 1, 0, 0], 2.0), (&[2, 0, 0, 0, 0, 1], -2.0), (&[0, 0, 0, 1, 0, 0], -1.0), (&[0, 0, 0, 0, 0, 1], 1.0)]),
        g(&[(&[0, 2, 2, 0, 0, 0], 4.0), (&[0, 2, 0, 0, 0, 0], -2.0), (&[0, 0, 2, 0, 0, 0], -2.0), (&[0, 0, 0, 0, 0, 1], -1.0), (&[0, 0, 0, 0, 0, 0], 1.0)]),
        g(&[(&[2, 0, 2, 0, 0, 0], 4.0), (&[2, 0, 0, 0, 0, 0], -2.0), (&[0, 0, 2, 0, 0, 0], -2.0), (&[0, 0, 0, 0, 1, 0], -1.0), (&[0, 0, 0, 0, 0, 0], 1.0)]),
        g(&[(&[2, 2, 0, 0, 0, 0], 4.0), (&[2, 0, 0, 0, 0, 0], -2.0), (&[0, 2, 0, 0, 0, 0], -2.0), (&[0, 0, 0, 1, 0, 0], -1.0), (&[0, 0, 0, 0, 0, 0], 1.0)]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let t: Vec<C64> = (0..3).map(|_| C64::new(rng.random_range(-1.2..1.2), rng.random_range(-0.3..0.3))).collect();
        let x = parametrization_point(ParamKind::Tensor, &a, &t).map_err(|e| e.to_string())?;
        for (k, p) in gens.iter().enumerate() {
            let v = p.eval(&x).norm();
            ensure(v < 1e-9 * (1.0 + p.eval_abs(&x)), format!("generator {} is {v:e} at {t:?}", k + 1))?;
        }
    }
    let b = tensor_degree_bounds(&a).map_err(|e| e.to_string())?.bounds.ok_or("no bounds")?;
    let (pc, pb) = (q_int(&b.bound_pc), q_int(&b.bound_pb));
    ensure(pc >= 28 && pb >= 28, format!("bounds {pc}, {pb}"))?;
    Ok(format!("5 generators vanish; bounds {pc}, {pb}"))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut table = GenChebTable::new();
    for _ in 0..20 {
        let x: Vec<C64> =
            (0..2).map(|_| C64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..std::f64::consts::TAU))).collect();
        let t = fundamental_orbits(&x).map_err(|e| e.to_string())?;
        for a in 0..=8u32 {
            for b in 0..=(8 - a) {
                let lhs = table.get(a, b).eval(&t);
                let rhs = weyl_orbit_value([a as i64, b as i64], &x).map_err(|e| e.to_string())?;
                ensure((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), format!("({a}, {b}) at {x:?}"))?;
            }
        }
    }
    let t11 = gen_cheb(1, 1).display_with(&["x", "y"]);
    ensure(t11 == "1/4*x*y - 3", format!("T_(1,1) = {t11}"))?;
    Ok("orbit identity for a + b <= 8; T_(1,1) = 1/4*x*y - 3".into())
}

fn criterion_11() -> Check {
    for a in 1..=50usize {
        let (ra, rb) = (cheb::t_roots(a), cheb::t_roots(a + 1));
        let ok = (0..a).all(|i| rb[i] > ra[i] && ra[i] > rb[i + 1]);
        ensure(ok, format!("roots of T_{a} and T_{} do not interlace", a + 1))?;
    }

    let a = running();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let sys = random_system(Basis::Tensor, &a, &mut rng);
        let asm = assemble_m(&sys).map_err(|e| e.to_string())?;
        let set = solve_tensor(&sys, &SolveOptions::default()).map_err(|e| e.to_string())?;
        let norm_m = asm.m.norm_fro();
        for p in &set.points {
            let mut v = vec![C64::new(0.0, 0.0); asm.m.cols()];
            for (k, &col) in &asm.col_index {
                v[col] = k.iter().zip(&p.t).map(|(&e, z)| cheb::eval_t(e as usize, *z)).product();
            }
            let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let mv = asm.m.matvec(&v);
            let r = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / (norm_m * nv);
            worst = worst.max(r);
        }
    }
    ensure(worst < 1e-7, format!("kernel membership residual {worst:e}"))?;

    for basis in [Basis::Tensor, Basis::Cosine] {
        let sys = random_system(basis, &a, &mut rng);
        for _ in 0..50 {
            let t: Vec<C64> = (0..2).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.3..0.3))).collect();
            let j = sys.jacobian(&t);
            let h = 1e-6;
            for k in 0..2 {
                let (mut tp, mut tm) = (t.clone(), t.clone());
                tp[k] += h;
                tm[k] -= h;
                let (fp, fm) = (sys.eval(&tp), sys.eval(&tm));
                for i in 0..2 {
                    let fd = (fp[i] - fm[i]) / (2.0 * h);
                    ensure((fd - j[i][k]).norm() <= 1e-6 * (1.0 + fd.norm()), format!("{basis:?} Jacobian at {t:?}"))?;
                }
            }
        }
    }

    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["running_tensor.json", "cosine_six_columns.json"] {
        let run = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let path = format!("{fixtures}/{name}");
            let code = chebvar::cli::run(["chebvar", "solve", "--system", &path, "--seed", "5"], &mut out, &mut err);
            (code, out)
        };
        let (c1, o1) = run();
        let (c2, o2) = run();
        ensure(c1 == 0 && c2 == 0, format!("{name}: exit codes {c1}, {c2}"))?;
        ensure(o1 == o2, format!("{name}: reruns differ"))?;
    }
    Ok(format!("interlacing, kernel residual {worst:.1e}, Jacobians, byte-identical reruns"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("running-example bounds chain", criterion_1),
        ("tensor solver on the running example", criterion_2),
        ("Euclidean degree-30 tensor instance", criterion_3),
        ("cosine degree formulas", criterion_4),
        ("cosine equations end to end", criterion_5),
        ("implicitization fixtures", criterion_6),
        ("curve suite", criterion_7),
        ("chamber scan", criterion_8),
        ("3x6 generators and bounds", criterion_9),
        ("A2 orbit oracle", criterion_10),
        ("property suites", criterion_11),
    ];
    let mut failed = Vec::new();
    let mut log = std::io::stderr();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => {
                let _ = writeln!(log, "criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", k + 1);
            }
            Err(why) => {
                let _ = writeln!(log, "criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
