//! Chebyshev plane curves `(T_a(t), T_b(t))`: implicit equations, nodes and
//! real intersections with lines.

use chebvar::cheb::ChebKind;
use chebvar::curves::{hyperbolicity_check, padua_points, plane_curve};

fn main() -> chebvar::Result<()> {
    for (a, b) in [(2, 3), (3, 4), (4, 6), (5, 7)] {
        let c = plane_curve(a, b)?;
        let nodes = padua_points(a, b);
        println!("({a}, {b}): degree {}, {} = 0", c.degree, c.implicit);
        println!("  {} nodes, first {:?}", nodes.len(), nodes.first());
    }
    // consecutive exponents give curves that every line through the origin meets in real points
    for a in [3, 6, 9] {
        for kind in [ChebKind::T, ChebKind::U] {
            println!("{kind:?}-curve ({a}, {}): hyperbolic on 200 lines: {}", a + 1, hyperbolicity_check(a, kind, 200, 1)?);
        }
    }
    Ok(())
}
