//! Solves a 2 x 6 system of cosine equations and counts the real solution pairs.
//!
//! Usage: `cargo run --example cosine_equations [seed]`

use chebvar::cosine_solver::{solve_cosine, CosineOptions};
use chebvar::polytope::ExponentMatrix;
use chebvar::system::{Basis, ChebSystem};

fn main() -> chebvar::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let a = ExponentMatrix::from_rows(vec![vec![4, 4, 6, 7, 9, 2], vec![8, 4, 1, 2, 6, 7]])?;
    let c = vec![vec![1.0, 2.0, 3.0, 5.0, -1.0, -7.0], vec![-2.0, -6.0, 5.0, -3.0, 1.0, 4.0]];
    let sys = ChebSystem::new(Basis::Cosine, a, c, vec![4.0, -2.0])?;
    let r = solve_cosine(&sys, &CosineOptions { seed, ..Default::default() })?;
    println!("variety degree {}, {} of {} pairs found", r.degree, r.orbits.len(), r.target_orbits);
    println!(
        "{} real v-pairs, {} real u-pairs, {} complex u-pairs; max residual {:.1e}",
        r.real_v_pairs(),
        r.real_u_pairs(),
        r.complex_u_pairs(),
        r.max_residual()
    );
    println!("{} monodromy loops, {} failed paths", r.monodromy_loops, r.path_failures);
    for w in &r.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
