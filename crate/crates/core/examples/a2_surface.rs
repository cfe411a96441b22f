//! Generalized Chebyshev polynomials of the A2 root system and a surface they parametrize.

use chebvar::linalg::C64;
use chebvar::polytope::ExponentMatrix;
use chebvar::root_system::{fundamental_orbits, weyl_orbit_value, GenChebTable};
use chebvar::variety::{implicitize, ParamKind};

fn main() -> chebvar::Result<()> {
    let mut table = GenChebTable::new();
    for d in 0..=3u32 {
        for a in 0..=d {
            println!("T_({a},{}) = {}", d - a, table.get(a, d - a).display_with(&["x", "y"]));
        }
    }

    let x = [C64::from_polar(1.0, 0.7), C64::from_polar(1.0, -1.9)];
    let t = fundamental_orbits(&x)?;
    let lhs = table.get(2, 3).eval(&t);
    let rhs = weyl_orbit_value([2, 3], &x)?;
    println!("orbit sum check at a torus point: |difference| = {:.1e}", (lhs - rhs).norm());

    let a = ExponentMatrix::from_rows(vec![vec![1, 0, 1], vec![0, 1, 1]])?;
    for d in 2..=6 {
        match implicitize(ParamKind::A2, &a, d, 200, 5) {
            Ok(f) => {
                println!("A2 surface for {:?}: degree {d}, {f} = 0", a.rows());
                break;
            }
            Err(e) => println!("degree {d}: {e}"),
        }
    }
    Ok(())
}
