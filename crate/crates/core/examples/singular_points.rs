//! Candidate singular points and curves of cosine surfaces.

use chebvar::polytope::ExponentMatrix;
use chebvar::variety::cosine_singular_candidates;

fn main() -> chebvar::Result<()> {
    for rows in [vec![vec![1, 1, 2], vec![2, 1, 3]], vec![vec![1, 0, 2], vec![0, 1, 3]]] {
        let a = ExponentMatrix::from_rows(rows.clone())?;
        let s = cosine_singular_candidates(&a)?;
        println!("A = {rows:?}, canonical form {:?}", s.canonical);
        for p in &s.points {
            println!("  point {p:?}");
        }
        for c in &s.curves {
            println!("  curve {}", c.description);
        }
        println!("  {} affine families", s.families.len());
    }
    Ok(())
}
