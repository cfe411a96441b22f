//! Implicit equations of Chebyshev surfaces by interpolation through sample points.

use chebvar::polytope::ExponentMatrix;
use chebvar::variety::{implicitize, monomials_up_to, relative_residual, ParamKind};

fn main() -> chebvar::Result<()> {
    let cases = [
        (ParamKind::Cosine, vec![vec![1, 1, 2], vec![2, 1, 3]], 3),
        (ParamKind::Cosine, vec![vec![1, 0, 2], vec![0, 1, 3]], 6),
        (ParamKind::Tensor, vec![vec![1, 1, 2], vec![2, 1, 3]], 7),
        (ParamKind::Toric, vec![vec![1, 1, 2], vec![2, 1, 3]], 2),
    ];
    for (kind, rows, d) in cases {
        let a = ExponentMatrix::from_rows(rows.clone())?;
        let samples = 2 * monomials_up_to(a.n(), d).len() + 20;
        let f = implicitize(kind, &a, d, samples, 3)?;
        let res = relative_residual(&f, kind, &a, 50, 99)?;
        println!("{kind:?} {rows:?}, degree {d}: {} terms, held-out residual {res:.1e}", f.terms.len());
        println!("  {f} = 0");
    }
    Ok(())
}
