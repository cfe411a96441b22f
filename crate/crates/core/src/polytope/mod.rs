//! Exact rational polytopes in dimension at most 3, and integer exponent matrices.

mod hull;
pub mod lattice;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
pub use lattice::{integer_kernel, lattice_index};

pub type Q = BigRational;
pub type Point = Vec<Q>;

/// An `m x n` integer matrix whose columns are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExponentMatrix {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for ExponentMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        ExponentMatrix::from_rows(rows)
    }
}

impl From<ExponentMatrix> for Vec<Vec<i64>> {
    fn from(a: ExponentMatrix) -> Self {
        a.rows
    }
}

impl ExponentMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(invalid("exponent matrix must have at least one row and one column"));
        }
        let n = rows[0].len();
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(invalid(format!("row {i} has {} entries, expected {n}", rows[i].len())));
        }
        Ok(ExponentMatrix { rows })
    }

    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        if cols.is_empty() {
            return Err(invalid("exponent matrix must have at least one column"));
        }
        let m = cols[0].len();
        Self::from_rows((0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
    }

    /// Parses a single row written as `a1,a2,...`.
    pub fn parse_row(s: &str) -> Result<Self> {
        let row: std::result::Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let row = row.map_err(|e| invalid(format!("cannot parse exponent list {s:?}: {e}")))?;
        Self::from_rows(vec![row])
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x >= 0)
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(j) = r.iter().position(|&x| x < 0) {
                return Err(invalid(format!("entry ({i}, {j}) is negative; exponents must be nonnegative")));
            }
        }
        Ok(())
    }

    pub fn max_entry(&self) -> i64 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn to_rational(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|r| r.iter().map(|&x| hull::q(x)).collect()).collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        lattice::rational_rank(&self.to_rational())
    }

    /// Keeps the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> ExponentMatrix {
        ExponentMatrix { rows: self.rows.iter().map(|r| idx.iter().map(|&j| r[j]).collect()).collect() }
    }

    pub fn column_points(&self) -> Vec<Point> {
        self.columns().iter().map(|c| int_point(c)).collect()
    }
}

impl std::fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn int_point(v: &[i64]) -> Point {
    v.iter().map(|&x| hull::q(x)).collect()
}

/// `normal . x <= offset` (or `= offset` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: Q,
}

/// Polytope given both by its vertices and by facet inequalities.
///
/// Lower-dimensional polytopes also carry the equations of their affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

pub fn convex_hull(points: &[Point]) -> Result<LatticePolytope> {
    let h = hull::hull(points)?;
    Ok(LatticePolytope {
        ambient_dim: points[0].len(),
        dim: h.dim,
        vertices: h.vertices,
        facets: h.facets,
        equalities: h.equalities,
    })
}

pub fn convex_hull_int(points: &[Vec<i64>]) -> Result<LatticePolytope> {
    convex_hull(&points.iter().map(|p| int_point(p)).collect::<Vec<_>>())
}

impl LatticePolytope {
    pub fn contains(&self, p: &[Q]) -> bool {
        self.facets.iter().all(|h| hull::dot(&h.normal, p) <= h.offset)
            && self.equalities.iter().all(|h| hull::dot(&h.normal, p) == h.offset)
    }

    pub fn contains_int(&self, p: &[i64]) -> bool {
        self.contains(&int_point(p))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Integer vertex coordinates, if all vertices are lattice points.
    pub fn integer_vertices(&self) -> Option<Vec<Vec<i64>>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
            .collect()
    }

    /// Integer bounding box `(lo, hi)` per coordinate.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.ambient_dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i].floor()).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[i].ceil()).max().unwrap();
                (lo.to_integer().to_i64().unwrap(), hi.to_integer().to_i64().unwrap())
            })
            .collect()
    }
}

/// `m!` times the Euclidean volume, computed by a fan from the lexicographically smallest vertex.
pub fn normalized_volume(p: &LatticePolytope) -> Result<Q> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope(format!(
            "polytope has dimension {} in ambient dimension {}",
            p.dim, p.ambient_dim
        )));
    }
    let v0 = p.vertices.iter().min().unwrap().clone();
    match p.ambient_dim {
        1 => Ok(&p.vertices[1][0] - &p.vertices[0][0]),
        2 => {
            let cyc = hull::monotone_chain(&p.vertices);
            let start = cyc.iter().position(|v| *v == v0).unwrap();
            let k = cyc.len();
            let mut total = Q::zero();
            for i in 1..k - 1 {
                let a = hull::sub(&cyc[(start + i) % k], &v0);
                let b = hull::sub(&cyc[(start + i + 1) % k], &v0);
                total += &a[0] * &b[1] - &a[1] * &b[0];
            }
            Ok(total.abs())
        }
        3 => {
            let mut total = Q::zero();
            for h in &p.facets {
                if hull::dot(&h.normal, &v0) == h.offset {
                    continue;
                }
                let cyc = hull::facet_cycle(&p.vertices, h);
                let f0 = hull::sub(&cyc[0], &v0);
                for i in 1..cyc.len() - 1 {
                    let a = hull::sub(&cyc[i], &v0);
                    let b = hull::sub(&cyc[i + 1], &v0);
                    total += hull::det3(&f0, &a, &b).abs();
                }
            }
            Ok(total)
        }
        d => Err(Error::UnsupportedDimension(format!("volume in dimension {d}"))),
    }
}

/// All lattice points, in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Result<Vec<Vec<i64>>> {
    if p.ambient_dim > 3 {
        return Err(Error::UnsupportedDimension(format!("lattice points in dimension {}", p.ambient_dim)));
    }
    let bb = p.bounding_box();
    let mut out = Vec::new();
    let mut cur = vec![0i64; p.ambient_dim];
    fn rec(p: &LatticePolytope, bb: &[(i64, i64)], i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == bb.len() {
            if p.contains_int(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for x in bb[i].0..=bb[i].1 {
            cur[i] = x;
            rec(p, bb, i + 1, cur, out);
        }
    }
    rec(p, &bb, 0, &mut cur, &mut out);
    Ok(out)
}

pub fn dilate(p: &LatticePolytope, k: u32) -> Result<LatticePolytope> {
    let f = hull::q(k as i64);
    let pts: Vec<Point> = p.vertices.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect();
    convex_hull(&pts)
}

/// `P + Delta_m`, the Minkowski sum with the standard simplex.
pub fn minkowski_sum_simplex(p: &LatticePolytope, m: usize) -> Result<LatticePolytope> {
    if m != p.ambient_dim {
        return Err(invalid("simplex dimension must match the ambient dimension"));
    }
    let simplex = standard_simplex_vertices(m);
    let mut pts = Vec::new();
    for v in &p.vertices {
        for s in &simplex {
            pts.push(v.iter().zip(s).map(|(a, b)| a + b).collect());
        }
    }
    convex_hull(&pts)
}

pub fn standard_simplex_vertices(m: usize) -> Vec<Point> {
    let mut out = vec![vec![Q::zero(); m]];
    for i in 0..m {
        let mut e = vec![Q::zero(); m];
        e[i] = hull::q(1);
        out.push(e);
    }
    out
}

pub fn standard_simplex(m: usize) -> Result<LatticePolytope> {
    convex_hull(&standard_simplex_vertices(m))
}

/// The polytopes attached to an exponent matrix.
#[derive(Clone, Debug)]
pub struct SpecialPolytopes {
    pub p_a: LatticePolytope,
    pub p_b: LatticePolytope,
    pub p_c: LatticePolytope,
    pub p_a_cos: LatticePolytope,
}

fn box_corners(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let m = lo.len();
    (0..1usize << m)
        .map(|mask| (0..m).map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }).collect())
        .collect()
}

pub fn p_a(a: &ExponentMatrix) -> Result<LatticePolytope> {
    let mut pts = a.columns();
    pts.push(vec![0; a.m()]);
    convex_hull_int(&pts)
}

pub fn p_b(a: &ExponentMatrix) -> Result<LatticePolytope> {
    let mut pts = Vec::new();
    for c in a.columns() {
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        pts.extend(box_corners(&neg, &c));
    }
    convex_hull_int(&pts)
}

pub fn p_c(a: &ExponentMatrix) -> Result<LatticePolytope> {
    let mut pts = vec![vec![0; a.m()]];
    for c in a.columns() {
        let lo: Vec<i64> = c.iter().map(|x| x.rem_euclid(2)).collect();
        pts.extend(box_corners(&lo, &c));
    }
    convex_hull_int(&pts)
}

pub fn p_a_cos(a: &ExponentMatrix) -> Result<LatticePolytope> {
    let mut pts = a.columns();
    pts.extend(a.columns().iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    convex_hull_int(&pts)
}

pub fn special_polytopes(a: &ExponentMatrix) -> Result<SpecialPolytopes> {
    if a.m() > 3 {
        return Err(Error::UnsupportedDimension(format!("m = {} exceeds the supported limit 3", a.m())));
    }
    Ok(SpecialPolytopes { p_a: p_a(a)?, p_b: p_b(a)?, p_c: p_c(a)?, p_a_cos: p_a_cos(a)? })
}

/// Converts an exact rational to `f64`.
pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Converts an integral rational to `i64`.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn q_from_int(x: i64) -> Q {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(x: i64) -> Q {
        q_from_int(x)
    }

    fn running() -> ExponentMatrix {
        ExponentMatrix::from_rows(vec![vec![1, 1, 2], vec![2, 1, 3]]).unwrap()
    }

    // Independent membership check: a point is in the hull of a planar set iff it
    // is a convex combination of some triangle of the set.
    fn in_hull_oracle(pts: &[Vec<i64>], p: &[i64]) -> bool {
        let n = pts.len();
        let cross = |o: &[i64], a: &[i64], b: &[i64]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                    let d1 = cross(a, b, p);
                    let d2 = cross(b, c, p);
                    let d3 = cross(c, a, p);
                    let has_neg = d1 < 0 || d2 < 0 || d3 < 0;
                    let has_pos = d1 > 0 || d2 > 0 || d3 > 0;
                    if !(has_neg && has_pos) {
                        // degenerate triangles only count when p lies on a segment
                        if cross(a, b, c) != 0 || on_segment(a, b, p) || on_segment(b, c, p) || on_segment(a, c, p) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn on_segment(a: &[i64], b: &[i64], p: &[i64]) -> bool {
        let cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        cr == 0
            && p[0] >= a[0].min(b[0])
            && p[0] <= a[0].max(b[0])
            && p[1] >= a[1].min(b[1])
            && p[1] <= a[1].max(b[1])
    }

    #[test]
    fn quadrilateral_hull() {
        let p = convex_hull_int(&[vec![0, 0], vec![1, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets.len(), 4);
        assert_eq!(normalized_volume(&p).unwrap(), qv(2));
    }

    #[test]
    fn degenerate_hulls() {
        let pt = convex_hull_int(&[vec![1, 2]]).unwrap();
        assert_eq!(pt.dim, 0);
        assert!(pt.contains_int(&[1, 2]) && !pt.contains_int(&[1, 3]));
        assert!(matches!(normalized_volume(&pt), Err(Error::DegeneratePolytope(_))));
        let seg = convex_hull_int(&[vec![0, 0, 0], vec![2, 2, 2], vec![1, 1, 1]]).unwrap();
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.vertices.len(), 2);
        assert_eq!(lattice_points(&seg).unwrap().len(), 3);
        let tri3 = convex_hull_int(&[vec![0, 0, 1], vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(tri3.dim, 2);
        assert_eq!(tri3.vertices.len(), 3);
        assert_eq!(lattice_points(&tri3).unwrap().len(), 6);
        assert!(matches!(convex_hull_int(&[vec![0, 0, 0, 0]]), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn triangle_drops_edge_point() {
        let p = convex_hull_int(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!(p.vertices, vec![vec![qv(0), qv(0)], vec![qv(0), qv(2)], vec![qv(2), qv(0)]]);
    }

    #[test]
    fn volumes() {
        for m in 1..=3 {
            let s = standard_simplex(m).unwrap();
            assert_eq!(normalized_volume(&s).unwrap(), qv(1));
            let d = dilate(&s, 3).unwrap();
            assert_eq!(normalized_volume(&d).unwrap(), qv(3i64.pow(m as u32)));
        }
        let hex = convex_hull_int(&[vec![1, 2], vec![-1, -2], vec![1, 1], vec![-1, -1], vec![2, 3], vec![-2, -3]])
            .unwrap();
        assert_eq!(hex.vertices.len(), 6);
        assert_eq!(normalized_volume(&hex).unwrap(), qv(6));
        let cube = convex_hull_int(&box_corners(&[0, 0, 0], &[1, 2, 3])).unwrap();
        assert_eq!(cube.facets.len(), 6);
        assert_eq!(normalized_volume(&cube).unwrap(), qv(36));
    }

    #[test]
    fn running_example_polytopes() {
        let sp = special_polytopes(&running()).unwrap();
        assert_eq!(normalized_volume(&sp.p_c).unwrap(), qv(11));
        assert_eq!(normalized_volume(&sp.p_b).unwrap(), qv(48));
        assert_eq!(normalized_volume(&sp.p_a).unwrap(), qv(2));
        let id = ExponentMatrix::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let sp = special_polytopes(&id).unwrap();
        assert_eq!(sp.p_a, standard_simplex(3).unwrap());
        assert_eq!(sp.p_a_cos.vertices.len(), 6);
        assert_eq!(normalized_volume(&sp.p_a_cos).unwrap(), qv(8));
    }

    #[test]
    fn lattice_points_match_oracle() {
        let pa = p_a(&running()).unwrap();
        let two = dilate(&pa, 2).unwrap();
        let pts = lattice_points(&two).unwrap();
        let corners: Vec<Vec<i64>> = vec![vec![0, 0], vec![2, 4], vec![2, 2], vec![4, 6]];
        let mut want = Vec::new();
        for x in 0..=4 {
            for y in 0..=6 {
                if in_hull_oracle(&corners, &[x, y]) {
                    want.push(vec![x, y]);
                }
            }
        }
        assert_eq!(pts, want);
        assert_eq!(lattice_points(&standard_simplex(2).unwrap()).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn minkowski_with_simplex() {
        let s = standard_simplex(2).unwrap();
        assert_eq!(minkowski_sum_simplex(&s, 2).unwrap(), dilate(&s, 2).unwrap());
        let pa = p_a(&running()).unwrap();
        let sum = minkowski_sum_simplex(&pa, 2).unwrap();
        // brute-force: hull of all pairwise vertex sums
        let mut pts = Vec::new();
        for v in [[0, 0], [1, 1], [1, 2], [2, 3]] {
            for s in [[0, 0], [1, 0], [0, 1]] {
                pts.push(vec![v[0] + s[0], v[1] + s[1]]);
            }
        }
        let want = convex_hull_int(&pts).unwrap();
        assert_eq!(sum.vertices, want.vertices);
        assert_eq!(
            sum.integer_vertices().unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 3], vec![2, 1], vec![2, 4], vec![3, 3]]
        );
    }
}
