//! Solves a random system on the Euclidean degree-30 support.

use chebvar::polytope::ExponentMatrix;
use chebvar::system::{Basis, ChebSystem};
use chebvar::tensor_solver::{solve_tensor, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::time::Instant;

fn main() -> chebvar::Result<()> {
    let d = 30i64;
    let cols: Vec<Vec<i64>> = (0..=d)
        .flat_map(|i| (0..=d).map(move |j| vec![i, j]))
        .filter(|c| c[0] * c[0] + c[1] * c[1] <= d * d && c != &vec![0, 0])
        .collect();
    let a = ExponentMatrix::from_columns(&cols)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = (0..2).map(|_| (0..a.n()).map(|_| rng.sample(StandardNormal)).collect()).collect();
    let c0 = (0..2).map(|_| rng.sample(StandardNormal)).collect();
    let sys = ChebSystem::new(Basis::Tensor, a, c, c0)?;
    let start = Instant::now();
    let sol = solve_tensor(&sys, &SolveOptions::default())?;
    println!("M is {} x {}, rank {}", sol.matrix_shape.0, sol.matrix_shape.1, sol.matrix_rank);
    println!(
        "{} solutions, {} real, {} in the box, max residual {:.2e}",
        sol.points.len(),
        sol.real_count(),
        sol.in_box_count(),
        sol.max_residual()
    );
    println!("elapsed {:.1} s", start.elapsed().as_secs_f64());
    Ok(())
}
