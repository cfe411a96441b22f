//! Generalized Chebyshev polynomials attached to the A2 root system.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::poly::RatPoly;
use crate::polytope::ExponentMatrix;

pub type IntMat2 = [[i64; 2]; 2];

fn mul2(a: &IntMat2, b: &IntMat2) -> IntMat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Weyl group of A2 acting on the weight lattice, generated by the simple
/// reflections in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylGroupA2 {
    pub elements: Vec<IntMat2>,
}

impl WeylGroupA2 {
    pub const S1: IntMat2 = [[-1, 0], [1, 1]];
    pub const S2: IntMat2 = [[1, 1], [0, -1]];

    pub fn new() -> Self {
        let mut elements = vec![[[1, 0], [0, 1]]];
        let mut i = 0;
        while i < elements.len() {
            for g in [Self::S1, Self::S2] {
                let p = mul2(&g, &elements[i]);
                if !elements.contains(&p) {
                    elements.push(p);
                }
            }
            i += 1;
        }
        WeylGroupA2 { elements }
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.elements.contains(&mul2(a, b))))
    }

    pub fn apply(b: &IntMat2, v: [i64; 2]) -> [i64; 2] {
        [b[0][0] * v[0] + b[0][1] * v[1], b[1][0] * v[0] + b[1][1] * v[1]]
    }
}

impl Default for WeylGroupA2 {
    fn default() -> Self {
        Self::new()
    }
}

fn laurent(x: &[C64], e: [i64; 2]) -> C64 {
    x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32)
}

/// Orbit sum of `x^{B alpha}` over the Weyl group, without normalization.
pub fn weyl_orbit_value(alpha: [i64; 2], x: &[C64]) -> Result<C64> {
    if x.len() != 2 {
        return Err(Error::InvalidInput(format!("orbit values need 2 coordinates, got {}", x.len())));
    }
    if x.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::Domain("orbit polynomials need nonzero coordinates".into()));
    }
    let w = WeylGroupA2::new();
    Ok(w.elements.iter().map(|b| laurent(x, WeylGroupA2::apply(b, alpha))).sum())
}

/// `(Theta_{w1}(x), Theta_{w2}(x))`, the argument at which generalized Chebyshev
/// polynomials reproduce orbit sums.
pub fn fundamental_orbits(x: &[C64]) -> Result<[C64; 2]> {
    Ok([weyl_orbit_value([1, 0], x)?, weyl_orbit_value([0, 1], x)?])
}

/// Memoized table of generalized Chebyshev polynomials in the variables `(x, y)`.
#[derive(Clone, Debug, Default)]
pub struct GenChebTable {
    memo: HashMap<(u32, u32), RatPoly>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GenChebTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, a: u32, b: u32) -> RatPoly {
        if let Some(p) = self.memo.get(&(a, b)) {
            return p.clone();
        }
        let half = q(1, 2);
        let p = match (a, b) {
            (0, 0) => RatPoly::constant(2, q(6, 1)),
            (1, 0) => RatPoly::var(2, 0),
            (0, 1) => RatPoly::var(2, 1),
            (1, 1) => RatPoly::var(2, 0).mul_var(1).scale(&q(1, 4)).sub(&RatPoly::constant(2, q(3, 1))),
            (a, 0) => self.get(a - 1, 0).mul_var(0).scale(&half).sub(&self.get(a - 2, 1).scale(&q(2, 1))),
            (0, b) => self.get(0, b - 1).mul_var(1).scale(&half).sub(&self.get(1, b - 2).scale(&q(2, 1))),
            (a, b) if a >= 2 => self
                .get(a - 1, b)
                .mul_var(0)
                .scale(&half)
                .sub(&self.get(a - 2, b + 1))
                .sub(&self.get(a - 1, b - 1)),
            (a, b) => self
                .get(a, b - 1)
                .mul_var(1)
                .scale(&half)
                .sub(&self.get(a + 1, b - 2))
                .sub(&self.get(a - 1, b - 1)),
        };
        self.memo.insert((a, b), p.clone());
        p
    }

    /// Value of the `y`-direction interior recurrence at `(a, b + 1)`, for cross-checks.
    pub fn y_recurrence(&mut self, a: u32, b: u32) -> Option<RatPoly> {
        if a == 0 || b == 0 {
            return None;
        }
        Some(self.get(a, b).mul_var(1).scale(&q(1, 2)).sub(&self.get(a + 1, b - 1)).sub(&self.get(a - 1, b)))
    }

    /// Value of the `x`-direction interior recurrence at `(a + 1, b)`.
    pub fn x_recurrence(&mut self, a: u32, b: u32) -> Option<RatPoly> {
        if a == 0 || b == 0 {
            return None;
        }
        Some(self.get(a, b).mul_var(0).scale(&q(1, 2)).sub(&self.get(a - 1, b + 1)).sub(&self.get(a, b - 1)))
    }
}

pub fn gen_cheb(a: u32, b: u32) -> RatPoly {
    GenChebTable::new().get(a, b)
}

/// Generalized Chebyshev polynomials of the columns of a nonnegative 2-row matrix.
pub fn column_polys(a: &ExponentMatrix) -> Result<Vec<RatPoly>> {
    if a.m() != 2 {
        return Err(Error::InvalidInput(format!("the A2 construction needs 2 rows, got {}", a.m())));
    }
    a.require_nonnegative()?;
    let mut table = GenChebTable::new();
    Ok((0..a.n()).map(|j| table.get(a.get(0, j) as u32, a.get(1, j) as u32)).collect())
}

pub fn a2_surface_point(a: &ExponentMatrix, t: &[C64]) -> Result<Vec<C64>> {
    if t.len() != 2 {
        return Err(Error::InvalidInput("A2 parameters are 2-vectors".into()));
    }
    Ok(column_polys(a)?.iter().map(|p| p.eval(t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng) -> Vec<C64> {
        (0..2)
            .map(|_| C64::from_polar(rng.random_range(0.6..1.4), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect()
    }

    #[test]
    fn group_has_order_six() {
        let w = WeylGroupA2::new();
        assert_eq!(w.elements.len(), 6);
        assert!(w.is_closed());
    }

    #[test]
    fn base_cases() {
        assert_eq!(gen_cheb(1, 1).display_with(&["x", "y"]), "1/4*x*y - 3");
        assert_eq!(gen_cheb(0, 0).display_with(&["x", "y"]), "6");
        assert_eq!(gen_cheb(1, 0).display_with(&["x", "y"]), "x");
    }

    #[test]
    fn orbit_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut table = GenChebTable::new();
        for _ in 0..5 {
            let x = random_point(&mut rng);
            let t = fundamental_orbits(&x).unwrap();
            for a in 0..=6u32 {
                for b in 0..=(6 - a) {
                    let lhs = table.get(a, b).eval(&t);
                    let rhs = weyl_orbit_value([a as i64, b as i64], &x).unwrap();
                    assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), "{a},{b}");
                }
            }
        }
    }

    #[test]
    fn running_example_parametrization() {
        let a = ExponentMatrix::from_rows(vec![vec![1, 1, 2], vec![2, 1, 3]]).unwrap();
        let t = [C64::new(0.7, -0.2), C64::new(-1.3, 0.4)];
        let p = a2_surface_point(&a, &t).unwrap();
        let (t1, t2) = (t[0], t[1]);
        let e1 = (t2 * t2 * t1 - 4.0 * t1 * t1 - 4.0 * t2) / 8.0;
        let e2 = (t1 * t2 - 12.0) / 4.0;
        assert!((p[0] - e1).norm() < 1e-12);
        assert!((p[1] - e2).norm() < 1e-12);
        assert_eq!(
            gen_cheb(2, 3).display_with(&["x", "y"]),
            "1/32*x^2*y^3 - 3/16*x^3*y - 1/8*y^4 + 3/4*x*y^2 + 3/4*x^2 - 7/2*y"
        );
    }

    #[test]
    fn recurrences_agree() {
        let mut t = GenChebTable::new();
        for a in 1..5 {
            for b in 1..5 {
                assert_eq!(t.x_recurrence(a, b).unwrap(), t.get(a + 1, b));
                assert_eq!(t.y_recurrence(a, b).unwrap(), t.get(a, b + 1));
            }
        }
    }

    #[test]
    fn zero_coordinate_is_a_domain_error() {
        assert!(matches!(weyl_orbit_value([1, 0], &[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]), Err(Error::Domain(_))));
    }
}
