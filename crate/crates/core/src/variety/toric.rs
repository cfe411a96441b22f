//! Binomial relations of the toric variety of `A` and the auxiliary variety
//! that covers the cosine variety.

use crate::error::{Error, Result};
use crate::poly::ImplicitPoly;
use crate::polytope::{integer_kernel, ExponentMatrix};

fn binomial(num_vars: usize, offset: usize, k: &[i64]) -> ImplicitPoly {
    let mut pos = vec![0u32; num_vars];
    let mut neg = vec![0u32; num_vars];
    for (j, &v) in k.iter().enumerate() {
        if v > 0 {
            pos[offset + j] = v as u32;
        } else {
            neg[offset + j] = (-v) as u32;
        }
    }
    ImplicitPoly::from_terms(num_vars, [(pos, 1.0), (neg, -1.0)])
}

/// Binomials `x^u - x^v` for the primitive kernel basis `u - v` of `A`.
pub fn toric_relations(a: &ExponentMatrix) -> Result<Vec<ImplicitPoly>> {
    if a.m() > 3 {
        return Err(Error::UnsupportedDimension(format!("m = {} exceeds the supported limit 3", a.m())));
    }
    Ok(integer_kernel(a).iter().map(|k| binomial(a.n(), 0, k)).collect())
}

/// Equations in `(x_1..x_n, y_1..y_n)`: the binomials in `y` followed by the
/// quadrics `y_j^2 - 2 x_j y_j + 1`.
pub fn auxiliary_equations(a: &ExponentMatrix) -> Result<Vec<ImplicitPoly>> {
    let n = a.n();
    if a.m() > 3 {
        return Err(Error::UnsupportedDimension(format!("m = {} exceeds the supported limit 3", a.m())));
    }
    let mut out: Vec<ImplicitPoly> = integer_kernel(a).iter().map(|k| binomial(2 * n, n, k)).collect();
    for j in 0..n {
        let mut yy = vec![0u32; 2 * n];
        yy[n + j] = 2;
        let mut xy = vec![0u32; 2 * n];
        xy[j] = 1;
        xy[n + j] = 1;
        out.push(ImplicitPoly::from_terms(2 * n, [(yy, 1.0), (xy, -2.0), (vec![0; 2 * n], 1.0)]));
    }
    Ok(out)
}
