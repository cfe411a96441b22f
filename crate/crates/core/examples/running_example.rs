//! Solves `c0 + C T_A(t) = 0` for a small tensor support and shows the Macaulay data.

use chebvar::polytope::ExponentMatrix;
use chebvar::system::{Basis, ChebSystem};
use chebvar::tensor_solver::{assemble_m, solve_tensor, SolveOptions};

fn main() -> chebvar::Result<()> {
    let a = ExponentMatrix::from_rows(vec![vec![1, 1, 2], vec![2, 1, 3]])?;
    let c = vec![vec![1.0, -0.5, 2.0], vec![0.3, 1.0, -1.5]];
    let sys = ChebSystem::new(Basis::Tensor, a, c, vec![0.5, 0.1])?;

    let asm = assemble_m(&sys)?;
    println!("support padded: {}, M is {} x {}", asm.padded, asm.m.rows(), asm.m.cols());

    let set = solve_tensor(&sys, &SolveOptions::default())?;
    println!("rank {}, kernel dimension {}, {} solutions expected", set.matrix_rank, set.kernel_dim, set.expected);
    for p in &set.points {
        let tag = if p.in_box { "in box" } else if p.is_real { "real" } else { "" };
        println!("  t = ({:.6}, {:.6})  residual {:.1e} {tag}", p.t[0], p.t[1], p.residual);
    }
    Ok(())
}
