//! Degrees and degree bounds of tensor and cosine Chebyshev varieties.

use chebvar::polytope::ExponentMatrix;
use chebvar::variety::{cosine_degree, tensor_degree_bounds};

fn main() -> chebvar::Result<()> {
    let cases = [
        vec![vec![1, 1, 2], vec![2, 1, 3]],
        vec![vec![1, 0, 2], vec![0, 1, 3]],
        vec![vec![1, 0, 0, 2], vec![0, 1, 0, 3], vec![0, 0, 1, 0]],
        vec![vec![4, 4, 6, 7, 9, 2], vec![8, 4, 1, 2, 6, 7]],
    ];
    for rows in cases {
        let a = ExponentMatrix::from_rows(rows.clone())?;
        let t = tensor_degree_bounds(&a)?;
        let c = cosine_degree(&a)?;
        let b = t.bounds.as_ref().unwrap();
        let surface = b.surface_bound.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        println!("A = {rows:?}");
        println!(
            "  tensor: degree {:?}, bounds P_C {} / P_B {} / surface {surface}",
            t.degree, b.bound_pc, b.bound_pb
        );
        println!("  cosine: degree {:?}, deg pi1 {:?}, lattice index {:?}", c.degree, c.deg_pi1, c.lattice_index);
    }
    Ok(())
}
