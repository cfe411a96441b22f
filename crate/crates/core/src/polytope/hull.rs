//! Exact convex hulls in dimension at most 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Halfspace, Point, Q};
use crate::error::{Error, Result};

pub(crate) fn q(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

pub(crate) fn sub(a: &[Q], b: &[Q]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross3(a: &[Q], b: &[Q]) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn cross2(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Scales a normal so its entries are coprime integers, keeping its direction.
pub(crate) fn primitive(normal: &[Q], offset: &Q) -> Halfspace {
    let lcm = normal
        .iter()
        .chain(std::iter::once(offset))
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = normal.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let off = (offset * BigRational::from_integer(lcm.clone())).to_integer();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    Halfspace {
        normal: ints.iter().map(|x| BigRational::from_integer(x / &g)).collect(),
        offset: BigRational::new(off, g),
    }
}

fn dedup_sorted(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    pts
}

/// Rows spanning the orthogonal complement of the given (independent) directions.
fn orthogonal_complement(dirs: &[Point], m: usize) -> Vec<Point> {
    fn project_out(v: &Point, basis: &[Point]) -> Point {
        let mut e = v.clone();
        for d in basis {
            let f = dot(&e, d) / dot(d, d);
            e = e.iter().zip(d.iter()).map(|(x, y)| x - &f * y).collect();
        }
        e
    }
    let mut basis: Vec<Point> = Vec::new();
    for d in dirs {
        basis.push(project_out(d, &basis));
    }
    let mut out = Vec::new();
    for i in 0..m {
        if basis.len() == m {
            break;
        }
        let e: Point = (0..m).map(|k| if k == i { Q::one() } else { Q::zero() }).collect();
        let e = project_out(&e, &basis);
        if e.iter().any(|x| !x.is_zero()) {
            basis.push(e.clone());
            out.push(e);
        }
    }
    out
}

/// Independent directions spanning the affine hull, found greedily.
fn affine_directions(pts: &[Point]) -> Vec<Point> {
    let base = &pts[0];
    let mut dirs: Vec<Point> = Vec::new();
    for p in &pts[1..] {
        let d = sub(p, base);
        let mut rows = dirs.clone();
        rows.push(d.clone());
        if super::lattice::rational_rank(&rows) > dirs.len() {
            dirs.push(d);
        }
    }
    dirs
}

/// Result of a hull computation.
pub(crate) struct HullData {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

pub(crate) fn hull(points: &[Point]) -> Result<HullData> {
    if points.is_empty() {
        return Err(Error::InvalidInput("convex hull of an empty point set".into()));
    }
    let m = points[0].len();
    if m == 0 || m > 3 {
        return Err(Error::UnsupportedDimension(format!(
            "polytopes are supported in ambient dimension 1 to 3, got {m}"
        )));
    }
    if points.iter().any(|p| p.len() != m) {
        return Err(Error::InvalidInput("points have inconsistent dimensions".into()));
    }
    let pts = dedup_sorted(points.to_vec());
    let dirs = affine_directions(&pts);
    let dim = dirs.len();
    let equalities: Vec<Halfspace> = orthogonal_complement(&dirs, m)
        .iter()
        .map(|nrm| primitive(nrm, &dot(nrm, &pts[0])))
        .collect();
    let (vertices, facets) = match dim {
        0 => (vec![pts[0].clone()], vec![]),
        1 => segment(&pts, &dirs[0]),
        2 if m == 2 => polygon2(&pts),
        2 => polygon_in_space(&pts, &equalities[0].normal),
        3 => polyhedron3(&pts),
        _ => unreachable!(),
    };
    Ok(HullData { dim, vertices, facets, equalities })
}

fn segment(pts: &[Point], dir: &[Q]) -> (Vec<Point>, Vec<Halfspace>) {
    let lo = pts.iter().min_by(|a, b| dot(a, dir).cmp(&dot(b, dir))).unwrap().clone();
    let hi = pts.iter().max_by(|a, b| dot(a, dir).cmp(&dot(b, dir))).unwrap().clone();
    let neg: Point = dir.iter().map(|x| -x).collect();
    let facets = vec![primitive(dir, &dot(dir, &hi)), primitive(&neg, &dot(&neg, &lo))];
    let mut v = vec![lo, hi];
    v.sort();
    (v, facets)
}

/// Counter-clockwise hull of planar points without collinear vertices.
pub(crate) fn monotone_chain(pts: &[Point]) -> Vec<Point> {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for x in &p {
        while lower.len() >= 2 && !cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], x).is_positive() {
            lower.pop();
        }
        lower.push(x.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for x in p.iter().rev() {
        while upper.len() >= 2 && !cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], x).is_positive() {
            upper.pop();
        }
        upper.push(x.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn edge_facets(cyc: &[Point]) -> Vec<Halfspace> {
    let k = cyc.len();
    (0..k)
        .map(|i| {
            let (a, b) = (&cyc[i], &cyc[(i + 1) % k]);
            let nrm = vec![&b[1] - &a[1], &a[0] - &b[0]];
            primitive(&nrm, &dot(&nrm, a))
        })
        .collect()
}

fn polygon2(pts: &[Point]) -> (Vec<Point>, Vec<Halfspace>) {
    let cyc = monotone_chain(pts);
    let facets = edge_facets(&cyc);
    let mut v = cyc;
    v.sort();
    (v, facets)
}

fn drop_coord(p: &[Q], c: usize) -> Point {
    p.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, x)| x.clone()).collect()
}

fn polygon_in_space(pts: &[Point], normal: &[Q]) -> (Vec<Point>, Vec<Halfspace>) {
    let c = (0..3).find(|&i| !normal[i].is_zero()).unwrap();
    let proj: Vec<Point> = pts.iter().map(|p| drop_coord(p, c)).collect();
    let cyc = monotone_chain(&proj);
    let lift = |pp: &Point| pts[proj.iter().position(|x| x == pp).unwrap()].clone();
    let facets = edge_facets(&cyc)
        .into_iter()
        .map(|h| {
            let mut nrm = h.normal.clone();
            nrm.insert(c, Q::zero());
            Halfspace { normal: nrm, offset: h.offset }
        })
        .collect();
    let mut v: Vec<Point> = cyc.iter().map(lift).collect();
    v.sort();
    (v, facets)
}

fn polyhedron3(pts: &[Point]) -> (Vec<Point>, Vec<Halfspace>) {
    let n = pts.len();
    let mut facets: Vec<Halfspace> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dij = sub(&pts[j], &pts[i]);
            for k in j + 1..n {
                let nrm = cross3(&dij, &sub(&pts[k], &pts[i]));
                if nrm.iter().all(Zero::is_zero) {
                    continue;
                }
                let off = dot(&nrm, &pts[i]);
                let mut pos = false;
                let mut neg = false;
                for p in pts {
                    let s = dot(&nrm, p) - &off;
                    if s.is_positive() {
                        pos = true;
                    } else if s.is_negative() {
                        neg = true;
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                let h = if pos {
                    let flipped: Point = nrm.iter().map(|x| -x).collect();
                    primitive(&flipped, &-off)
                } else {
                    primitive(&nrm, &off)
                };
                if !facets.contains(&h) {
                    facets.push(h);
                }
            }
        }
    }
    let vertices: Vec<Point> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Point> =
                facets.iter().filter(|h| dot(&h.normal, p) == h.offset).map(|h| h.normal.clone()).collect();
            super::lattice::rational_rank(&tight) == 3
        })
        .cloned()
        .collect();
    (vertices, facets)
}

/// Vertices of a 3-dimensional facet in cyclic order.
pub(crate) fn facet_cycle(vertices: &[Point], h: &Halfspace) -> Vec<Point> {
    let on: Vec<Point> = vertices.iter().filter(|v| dot(&h.normal, v) == h.offset).cloned().collect();
    let c = (0..3).find(|&i| !h.normal[i].is_zero()).unwrap();
    let proj: Vec<Point> = on.iter().map(|p| drop_coord(p, c)).collect();
    monotone_chain(&proj)
        .iter()
        .map(|pp| on[proj.iter().position(|x| x == pp).unwrap()].clone())
        .collect()
}

pub(crate) fn det3(a: &[Q], b: &[Q], c: &[Q]) -> Q {
    dot(a, &cross3(b, c))
}
