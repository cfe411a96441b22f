//! Space curves `(T_a, T_b, T_c)` with pairwise coprime exponents are smooth
//! and have a polynomial inverse.

use chebvar::curves::{ideal_generators, inversion_polynomial};
use chebvar::polytope::ExponentMatrix;

fn main() -> chebvar::Result<()> {
    for (a, b, c) in [(3, 2, 7), (2, 3, 5), (3, 4, 5)] {
        let p = inversion_polynomial(a, b, c)?;
        let worst = (0..=20)
            .map(|k| {
                let t = chebvar::linalg::C64::new(-1.0 + 0.1 * k as f64, 0.0);
                (p.compose_at(t) - t).norm()
            })
            .fold(0.0, f64::max);
        println!("({a}, {b}, {c}): t = {}  (max error {worst:.1e})", p.render());
    }
    let a = ExponentMatrix::from_rows(vec![vec![3, 2, 7]])?;
    let names = ["x".to_string(), "y".to_string(), "z".to_string()];
    for g in ideal_generators(&a)? {
        println!("  {} = 0", g.render(&names));
    }
    Ok(())
}
