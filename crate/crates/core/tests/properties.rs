use proptest::prelude::*;

use chebvar::cheb::{self, ChebKind};
use chebvar::curves::{combination_roots, count_real, plane_curve};
use chebvar::linalg::C64;
use chebvar::poly::ImplicitPoly;
use chebvar::polytope::ExponentMatrix;
use chebvar::system::{Basis, ChebSystem};
use chebvar::tensor_solver::{assemble_m, solve_tensor, SolveOptions};
use chebvar::variety::{cosine_singular_candidates, tensor_degree_bounds};

fn coeffs(m: usize, n: usize) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    let entry = -2.0..2.0f64;
    (prop::collection::vec(prop::collection::vec(entry.clone(), n), m), prop::collection::vec(entry, m))
        .prop_filter("coefficients bounded away from zero", |(c, _)| c.iter().flatten().all(|x| x.abs() > 0.05))
}

fn running() -> ExponentMatrix {
    ExponentMatrix::from_rows(vec![vec![1, 1, 2], vec![2, 1, 3]]).unwrap()
}

fn two_row_support() -> impl Strategy<Value = ExponentMatrix> {
    prop::collection::vec((0..6i64, 0..6i64), 2..6).prop_filter_map("rank 2 with no zero column", |cols| {
        let cols: Vec<Vec<i64>> = cols.into_iter().map(|(x, y)| vec![x, y]).filter(|c| c != &[0, 0]).collect();
        let a = ExponentMatrix::from_columns(&cols).ok()?;
        (a.n() >= 2 && a.rank() == 2).then_some(a)
    })
}

fn c(z: (f64, f64)) -> C64 {
    C64::new(z.0, z.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_interlace(a in 1usize..200) {
        let (ra, rb) = (cheb::t_roots(a), cheb::t_roots(a + 1));
        for i in 0..a {
            prop_assert!(rb[i] > ra[i] && ra[i] > rb[i + 1]);
        }
    }

    #[test]
    fn solutions_lie_in_the_kernel((cm, c0) in coeffs(2, 3)) {
        let sys = ChebSystem::new(Basis::Tensor, running(), cm, c0).unwrap();
        let asm = assemble_m(&sys).unwrap();
        let set = solve_tensor(&sys, &SolveOptions::default()).unwrap();
        prop_assert_eq!(set.points.len(), 7);
        let norm = asm.m.norm_fro();
        for p in set.points.iter().filter(|p| p.t.iter().all(|z| z.norm() < 1e3)) {
            let mut v = vec![C64::new(0.0, 0.0); asm.m.cols()];
            for (k, &col) in &asm.col_index {
                v[col] = k.iter().zip(&p.t).map(|(&e, z)| cheb::eval_t(e as usize, *z)).product();
            }
            let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let r = asm.m.matvec(&v).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / (norm * nv);
            prop_assert!(r < 1e-7, "kernel residual {r:e} at {:?}", p.t);
        }
    }

    #[test]
    fn solving_is_deterministic((cm, c0) in coeffs(2, 3), seed in 0u64..1000) {
        let sys = ChebSystem::new(Basis::Tensor, running(), cm, c0).unwrap();
        let opts = SolveOptions { seed, ..SolveOptions::default() };
        let a = solve_tensor(&sys, &opts).unwrap();
        let b = solve_tensor(&sys, &opts).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn jacobian_matches_differences(
        a in two_row_support(),
        cosine in any::<bool>(),
        t in prop::collection::vec((-1.0..1.0f64, -0.3..0.3f64), 2),
        seed in any::<u64>(),
    ) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let n = a.n();
        let cm = (0..2).map(|_| (0..n).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect()).collect();
        let basis = if cosine { Basis::Cosine } else { Basis::Tensor };
        let sys = ChebSystem::new(basis, a, cm, vec![0.3, -0.2]).unwrap();
        let t: Vec<C64> = t.into_iter().map(c).collect();
        let j = sys.jacobian(&t);
        let h = 1e-6;
        for k in 0..2 {
            let (mut tp, mut tm) = (t.clone(), t.clone());
            tp[k] += h;
            tm[k] -= h;
            let (fp, fm) = (sys.eval(&tp), sys.eval(&tm));
            for i in 0..2 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                prop_assert!((fd - j[i][k]).norm() <= 1e-5 * (1.0 + fd.norm()), "{fd} vs {}", j[i][k]);
            }
        }
    }

    #[test]
    fn bounds_are_ordered(a in two_row_support()) {
        let b = tensor_degree_bounds(&a).unwrap().bounds.unwrap();
        let s = b.surface_bound.clone().unwrap();
        prop_assert!(s >= num_traits::Zero::zero());
        prop_assert!(s <= b.bound_pb, "surface {} > P_B {}", s, b.bound_pb);
        prop_assert!(b.bound_pc <= b.bound_pb);
    }

    #[test]
    fn plane_curves_vanish_on_their_parametrization(a in 1u64..12, b in 1u64..12, t in (-1.5..1.5f64, -0.5..0.5f64)) {
        prop_assume!(a < b);
        let curve = plane_curve(a, b).unwrap();
        let t = c(t);
        let x = [cheb::eval_t(a as usize, t), cheb::eval_t(b as usize, t)];
        let scale = 1.0 + curve.implicit.eval_abs(&x);
        prop_assert!(curve.implicit.eval(&x).norm() <= 1e-9 * scale);
    }

    #[test]
    fn real_root_counts_have_the_right_parity(v in prop::collection::vec(-1.0..1.0f64, 3)) {
        prop_assume!(v[2].abs() > 1e-3);
        let roots = combination_roots(ChebKind::T, &[2, 3, 7], &v).unwrap();
        let real = count_real(&roots);
        prop_assert!(real <= 7 && real % 2 == 1);
    }

    #[test]
    fn sextic_singular_curves_are_singular(t in 0.0..6.28f64) {
        let sextic = ImplicitPoly::from_terms(3, [
            (vec![4, 0, 0], 4.0), (vec![2, 3, 1], -16.0), (vec![2, 1, 1], 12.0), (vec![2, 0, 0], -4.0),
            (vec![0, 6, 0], 16.0), (vec![0, 4, 0], -24.0), (vec![0, 3, 1], 8.0), (vec![0, 2, 0], 9.0),
            (vec![0, 1, 1], -6.0), (vec![0, 0, 2], 1.0),
        ]);
        let a = ExponentMatrix::from_rows(vec![vec![1, 0, 2], vec![0, 1, 3]]).unwrap();
        let s = cosine_singular_candidates(&a).unwrap();
        for curve in &s.curves {
            let x: Vec<C64> = s.curve_point(curve, t).into_iter().map(|v| C64::new(v, 0.0)).collect();
            prop_assert!(sextic.eval(&x).norm() < 1e-9, "{} at {:?}", curve.description, x);
            prop_assert!(sextic.gradient(&x).iter().all(|g| g.norm() < 1e-8), "{} at {:?}", curve.description, x);
        }
    }
}
