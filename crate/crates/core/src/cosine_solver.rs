//! Cosine systems `c0 + sum_j C_ij cos(a_j . u) = 0` solved by homotopy continuation.
//!
//! With `v = exp(iu)` each equation becomes the Laurent polynomial
//! `c0 + sum_j C_ij (v^a_j + v^-a_j) / 2`. Tracking happens in `w = log v`,
//! where the system reads `c0 + sum_j C_ij cosh(a_j . w)` and the inverse
//! `v -> 1/v` is `w -> -w`. Solutions are found by monodromy at random complex
//! parameters and then carried to the target by a parameter homotopy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{invalid, Error, Result};
use crate::linalg::{solve_square, C64};
use crate::polytope::{normalized_volume, p_a_cos, q_to_i64, ExponentMatrix};
use crate::system::{Basis, ChebSystem};
use crate::tensor_solver::Solution;
use crate::variety::cosine_degree;

const REAL_TOL: f64 = 1e-8;
/// Paths whose `|Re w|` exceeds this are treated as diverging.
const DIVERGENCE: f64 = 60.0;
/// Newton corrections must shrink at least this fast, or the step is rejected.
const CONTRACTION: f64 = 0.1;
/// Consecutive accepted steps before the step size grows.
const EXPAND_AFTER: usize = 3;

/// `c0_i + sum_j C_ij (v^a_j + v^-a_j) / 2`, defined on the complex torus.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSystem {
    pub a: ExponentMatrix,
    pub c: Vec<Vec<C64>>,
    pub c0: Vec<C64>,
}

impl LaurentSystem {
    fn params(&self) -> Vec<C64> {
        let mut p = Vec::with_capacity(self.a.m() * (self.a.n() + 1));
        for (row, c0) in self.c.iter().zip(&self.c0) {
            p.push(*c0);
            p.extend_from_slice(row);
        }
        p
    }

    fn from_params(a: &ExponentMatrix, p: &[C64]) -> Self {
        let n1 = a.n() + 1;
        LaurentSystem {
            a: a.clone(),
            c: p.chunks(n1).map(|r| r[1..].to_vec()).collect(),
            c0: p.chunks(n1).map(|r| r[0]).collect(),
        }
    }
}

pub fn to_laurent(sys: &ChebSystem) -> Result<LaurentSystem> {
    if sys.basis != Basis::Cosine {
        return Err(invalid("the Laurent form needs a cosine system"));
    }
    Ok(LaurentSystem {
        a: sys.a.clone(),
        c: sys.c.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect(),
        c0: sys.c0.iter().map(|&x| C64::new(x, 0.0)).collect(),
    })
}

fn log_coords(v: &[C64]) -> Result<Vec<C64>> {
    if v.iter().any(|z| z.norm() == 0.0 || !z.is_finite()) {
        return Err(Error::Domain("Laurent systems need nonzero finite coordinates".into()));
    }
    Ok(v.iter().map(|z| z.ln()).collect())
}

/// Values and the `v`-Jacobian `df_i/dv_k = sum_j C_ij a_kj (v^a_j - v^-a_j) / (2 v_k)`.
pub fn eval_jac(l: &LaurentSystem, v: &[C64]) -> Result<(Vec<C64>, Vec<Vec<C64>>)> {
    if v.len() != l.a.m() {
        return Err(invalid(format!("expected {} coordinates, got {}", l.a.m(), v.len())));
    }
    let w = log_coords(v)?;
    let fam = Family::new(&l.a);
    let p = l.params();
    let (ch, sh) = fam.hyper(&w);
    let jw = fam.jac(&p, &sh);
    let jv = jw.into_iter().map(|row| row.iter().zip(v).map(|(d, vk)| d / vk).collect()).collect();
    Ok((fam.eval(&p, &ch), jv))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub corrector_tol: f64,
    pub max_corrector_iters: usize,
    pub step_expand: f64,
    pub step_contract: f64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            initial_step: 0.05,
            min_step: 1e-7,
            max_step: 0.1,
            corrector_tol: 1e-10,
            max_corrector_iters: 5,
            step_expand: 2.0,
            step_contract: 0.5,
        }
    }
}

impl TrackerConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = [self.initial_step, self.min_step, self.max_step, self.corrector_tol, self.step_expand, self.step_contract];
        if pos.iter().any(|x| !(x.is_finite() && *x > 0.0)) || self.max_corrector_iters == 0 {
            return Err(invalid("tracker settings must be positive"));
        }
        if !(self.step_expand > 1.0 && self.step_contract < 1.0) {
            return Err(invalid("step_expand must exceed 1 and step_contract must be below 1"));
        }
        if self.min_step > self.max_step {
            return Err(invalid("min_step exceeds max_step"));
        }
        Ok(())
    }
}

/// Exponents as floats, plus the parameter layout `[c0_i, C_i1 .. C_in]` per row.
struct Family {
    cols: Vec<Vec<f64>>,
    m: usize,
    n: usize,
}

impl Family {
    fn new(a: &ExponentMatrix) -> Self {
        Family { cols: a.columns().iter().map(|c| c.iter().map(|&x| x as f64).collect()).collect(), m: a.m(), n: a.n() }
    }

    fn hyper(&self, w: &[C64]) -> (Vec<C64>, Vec<C64>) {
        self.cols
            .iter()
            .map(|a| {
                let z: C64 = a.iter().zip(w).map(|(ak, wk)| wk * *ak).sum();
                (z.cosh(), z.sinh())
            })
            .unzip()
    }

    fn eval(&self, p: &[C64], ch: &[C64]) -> Vec<C64> {
        p.chunks(self.n + 1).map(|r| r[0] + r[1..].iter().zip(ch).map(|(c, x)| c * x).sum::<C64>()).collect()
    }

    fn jac(&self, p: &[C64], sh: &[C64]) -> Vec<Vec<C64>> {
        p.chunks(self.n + 1)
            .map(|r| (0..self.m).map(|k| (0..self.n).map(|j| r[1 + j] * sh[j] * self.cols[j][k]).sum()).collect())
            .collect()
    }

    fn rel_residual(&self, p: &[C64], ch: &[C64]) -> f64 {
        p.chunks(self.n + 1)
            .map(|r| {
                let v = r[0] + r[1..].iter().zip(ch).map(|(c, x)| c * x).sum::<C64>();
                // |cosh| is floored at 1 so the scale cannot vanish with the terms.
                let s = r[0].norm() + r[1..].iter().zip(ch).map(|(c, x)| c.norm() * x.norm().max(1.0)).sum::<f64>();
                if s > 0.0 {
                    v.norm() / s
                } else {
                    v.norm()
                }
            })
            .fold(0.0, f64::max)
    }

    /// Newton in log coordinates. Fails when the corrections stop contracting.
    fn correct(&self, p: &[C64], w: &[C64], cfg: &TrackerConfig) -> Option<Vec<C64>> {
        let mut w = w.to_vec();
        let mut prev = f64::INFINITY;
        for k in 0..=cfg.max_corrector_iters {
            let (ch, sh) = self.hyper(&w);
            if self.rel_residual(p, &ch) <= cfg.corrector_tol {
                return Some(w);
            }
            if k == cfg.max_corrector_iters {
                break;
            }
            let f: Vec<C64> = self.eval(p, &ch).iter().map(|z| -z).collect();
            let dw = solve_square(&self.jac(p, &sh), &f)?;
            let nd = norm(&dw);
            if !nd.is_finite() || (k > 0 && nd > CONTRACTION * prev && nd > 1e-13) {
                return None;
            }
            for (a, b) in w.iter_mut().zip(&dw) {
                *a += b;
            }
            prev = nd;
            if nd <= 1e-14 * (1.0 + norm(&w)) {
                let (ch, _) = self.hyper(&w);
                return (self.rel_residual(p, &ch) <= cfg.corrector_tol.max(1e-12)).then_some(w);
            }
        }
        None
    }

    /// `dw/ds` on the segment `p(s) = p0 + s dp`.
    fn tangent(&self, p0: &[C64], dp: &[C64], s: f64, w: &[C64]) -> Option<Vec<C64>> {
        let p: Vec<C64> = p0.iter().zip(dp).map(|(a, b)| a + b * s).collect();
        let (ch, sh) = self.hyper(w);
        let rhs: Vec<C64> = self.eval(dp, &ch).iter().map(|z| -z).collect();
        solve_square(&self.jac(&p, &sh), &rhs)
    }

    fn rk4(&self, p0: &[C64], dp: &[C64], s: f64, w: &[C64], h: f64) -> Option<Vec<C64>> {
        let shift = |k: &[C64], t: f64| -> Vec<C64> { w.iter().zip(k).map(|(a, b)| a + b * t).collect() };
        let k1 = self.tangent(p0, dp, s, w)?;
        let k2 = self.tangent(p0, dp, s + h / 2.0, &shift(&k1, h / 2.0))?;
        let k3 = self.tangent(p0, dp, s + h / 2.0, &shift(&k2, h / 2.0))?;
        let k4 = self.tangent(p0, dp, s + h, &shift(&k3, h))?;
        Some((0..w.len()).map(|i| w[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0)).collect())
    }

    /// Follows a solution of `p0` along the straight segment to `p1`.
    fn track(&self, p0: &[C64], p1: &[C64], w0: &[C64], cfg: &TrackerConfig) -> Result<Vec<C64>> {
        let dp: Vec<C64> = p1.iter().zip(p0).map(|(a, b)| a - b).collect();
        let mut w = w0.to_vec();
        let (mut s, mut h) = (0.0f64, cfg.initial_step.min(cfg.max_step));
        let mut streak = 0;
        while s < 1.0 {
            h = h.min(1.0 - s);
            let next = self.rk4(p0, &dp, s, &w, h).and_then(|wp| {
                let p: Vec<C64> = p0.iter().zip(&dp).map(|(a, b)| a + b * (s + h)).collect();
                self.correct(&p, &wp, cfg)
            });
            match next {
                Some(wn) => {
                    if wn.iter().any(|z| z.re.abs() > DIVERGENCE) {
                        return Err(Error::PathFailure { s: s + h, reason: "path diverges".into() });
                    }
                    w = wn;
                    s = if 1.0 - (s + h) < 1e-14 { 1.0 } else { s + h };
                    streak += 1;
                    if streak >= EXPAND_AFTER {
                        h = (h * cfg.step_expand).min(cfg.max_step);
                        streak = 0;
                    }
                }
                None => {
                    h *= cfg.step_contract;
                    streak = 0;
                    if h < cfg.min_step {
                        return Err(Error::PathFailure { s, reason: format!("step size fell below {:e}", cfg.min_step) });
                    }
                }
            }
        }
        Ok(wrap(&w))
    }
}

fn negate(w: &[C64]) -> Vec<C64> {
    w.iter().map(|z| -z).collect()
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Imaginary parts reduced into `(-pi, pi]`, so `exp(w)` is unchanged.
fn wrap(w: &[C64]) -> Vec<C64> {
    w.iter().map(|z| C64::new(z.re, wrap_angle(z.im))).collect()
}

pub fn newton_correct(l: &LaurentSystem, v0: &[C64], cfg: &TrackerConfig) -> Result<Vec<C64>> {
    let w = log_coords(v0)?;
    let fam = Family::new(&l.a);
    fam.correct(&l.params(), &w, cfg)
        .map(|w| w.iter().map(|z| z.exp()).collect())
        .ok_or_else(|| Error::CorrectorFailure("Newton iteration did not converge".into()))
}

/// Tracks `v_start` from `start` (s = 0) to `target` (s = 1) along the straight
/// segment between their coefficients.
pub fn track_path(start: &LaurentSystem, target: &LaurentSystem, v_start: &[C64], cfg: &TrackerConfig) -> Result<Vec<C64>> {
    cfg.validate()?;
    if start.a != target.a {
        return Err(invalid("start and target systems have different supports"));
    }
    let w = log_coords(v_start)?;
    let fam = Family::new(&start.a);
    let (p0, p1) = (start.params(), target.params());
    let (ch, _) = fam.hyper(&w);
    if fam.rel_residual(&p0, &ch) > cfg.corrector_tol.max(1e-8) {
        return Err(Error::Precondition("start point does not solve the start system".into()));
    }
    Ok(fam.track(&p0, &p1, &w, cfg)?.iter().map(|z| z.exp()).collect())
}

/// Solution orbits `{v, 1/v}`, stored in log coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSet {
    logs: Vec<Vec<C64>>,
    pub dedup_tol: f64,
}

impl OrbitSet {
    pub fn new(dedup_tol: f64) -> Self {
        OrbitSet { logs: Vec::new(), dedup_tol }
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    fn close(&self, a: &[C64], b: &[C64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x.re - y.re).abs() <= self.dedup_tol && wrap_angle(x.im - y.im).abs() <= self.dedup_tol)
    }

    pub fn contains_log(&self, w: &[C64]) -> bool {
        let neg = negate(w);
        self.logs.iter().any(|r| self.close(r, w) || self.close(r, &neg))
    }

    /// Inserts the canonical representative (first coordinate of modulus at least 1).
    /// Returns false for a known orbit.
    fn insert_log(&mut self, w: &[C64]) -> bool {
        if self.contains_log(w) {
            return false;
        }
        self.logs.push(canonical(w));
        true
    }

    /// Representatives in `v` coordinates.
    pub fn representatives(&self) -> Vec<Vec<C64>> {
        self.logs.iter().map(|w| w.iter().map(|z| z.exp()).collect()).collect()
    }
}

fn canonical(w: &[C64]) -> Vec<C64> {
    let key = |z: &C64| (z.re, wrap_angle(z.im));
    let neg: Vec<C64> = wrap(&w.iter().map(|z| -z).collect::<Vec<_>>());
    let w = wrap(w);
    // Lexicographic on (Re w_k, Im w_k) with a small tolerance on |v_k| = 1.
    for (a, b) in w.iter().zip(&neg) {
        let (ka, kb) = (key(a), key(b));
        if (ka.0 - kb.0).abs() > 1e-9 {
            return if ka.0 > kb.0 { w } else { neg };
        }
        if (ka.1 - kb.1).abs() > 1e-9 {
            return if ka.1 > kb.1 { w } else { neg };
        }
    }
    w
}

#[derive(Clone, Debug)]
pub struct MonodromyResult {
    pub orbits: OrbitSet,
    /// The generic complex system whose solutions are the orbits.
    pub start: LaurentSystem,
    pub loops: usize,
    pub path_failures: usize,
    pub warnings: Vec<String>,
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Number of orbits `{v, 1/v}` of a generic system: half the normalized volume of `P_cos`.
pub fn generic_orbit_count(a: &ExponentMatrix) -> Result<usize> {
    let vol = q_to_i64(&normalized_volume(&p_a_cos(a)?)?)
        .ok_or_else(|| Error::InternalConsistency("normalized volume of P_cos is not an integer".into()))?;
    Ok((vol / 2) as usize)
}

pub fn monodromy_solve(
    a: &ExponentMatrix,
    target_orbit_count: usize,
    seed: u64,
    max_loops: usize,
    cfg: &TrackerConfig,
) -> Result<MonodromyResult> {
    cfg.validate()?;
    if target_orbit_count == 0 {
        return Err(Error::Precondition("the target orbit count must be positive".into()));
    }
    let fam = Family::new(a);
    let (m, n1) = (a.m(), a.n() + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Seed: random w0, then the minimum-norm change of random parameters that
    // makes w0 a solution. Each row is `p_i . phi = 0` with `phi = (1, cosh)`.
    let w0: Vec<C64> = (0..m)
        .map(|_| C64::new(0.3 * rng.sample::<f64, _>(StandardNormal), rng.random_range(-PI..PI)))
        .collect();
    let (ch, _) = fam.hyper(&w0);
    let phi: Vec<C64> = std::iter::once(C64::new(1.0, 0.0)).chain(ch).collect();
    let phi2: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
    let mut p0: Vec<C64> = (0..m * n1).map(|_| complex_gaussian(&mut rng)).collect();
    for row in p0.chunks_mut(n1) {
        let g: C64 = row.iter().zip(&phi).map(|(c, x)| c * x).sum();
        for (c, x) in row.iter_mut().zip(&phi) {
            *c -= g * x.conj() / phi2;
        }
    }
    let w0 = fam
        .correct(&p0, &w0, cfg)
        .ok_or_else(|| Error::CorrectorFailure("seed point does not refine".into()))?;

    let mut orbits = OrbitSet::new(1e-6);
    orbits.insert_log(&w0);
    let (mut loops, mut failures) = (0, 0);
    while orbits.len() < target_orbit_count && loops < max_loops {
        let pa: Vec<C64> = (0..m * n1).map(|_| complex_gaussian(&mut rng)).collect();
        let pb: Vec<C64> = (0..m * n1).map(|_| complex_gaussian(&mut rng)).collect();
        let mut i = 0;
        while i < orbits.len() && orbits.len() < target_orbit_count {
            let w = orbits.logs[i].clone();
            let end = fam
                .track(&p0, &pa, &w, cfg)
                .and_then(|w| fam.track(&pa, &pb, &w, cfg))
                .and_then(|w| fam.track(&pb, &p0, &w, cfg));
            match end {
                Ok(w) => {
                    orbits.insert_log(&w);
                }
                Err(_) => failures += 1,
            }
            i += 1;
        }
        loops += 1;
    }
    let mut warnings = Vec::new();
    if orbits.len() < target_orbit_count {
        warnings.push(format!(
            "monodromy stalled after {loops} loops with {} of {target_orbit_count} orbits",
            orbits.len()
        ));
    }
    Ok(MonodromyResult { orbits, start: LaurentSystem::from_params(a, &p0), loops, path_failures: failures, warnings })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosineOptions {
    pub seed: u64,
    pub tracker: TrackerConfig,
    pub max_loops: usize,
}

impl Default for CosineOptions {
    fn default() -> Self {
        CosineOptions { seed: 0, tracker: TrackerConfig::default(), max_loops: 100 }
    }
}

/// A pair `(u, -u)` of solutions in `u` coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosineOrbit {
    /// Representative with real parts reduced into `[0, 2 pi)`.
    pub u: Vec<C64>,
    pub real_u: bool,
    pub real_v: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosineSolveResult {
    /// Every solution `u` mod `2 pi`, both members of each pair.
    pub solutions: Vec<Solution>,
    pub orbits: Vec<CosineOrbit>,
    /// Degree of the cosine variety.
    pub degree: u64,
    pub target_orbits: usize,
    pub monodromy_loops: usize,
    pub path_failures: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl CosineSolveResult {
    pub fn real_u_pairs(&self) -> usize {
        self.orbits.iter().filter(|o| o.real_u).count()
    }

    pub fn complex_u_pairs(&self) -> usize {
        self.orbits.len() - self.real_u_pairs()
    }

    pub fn real_v_pairs(&self) -> usize {
        self.orbits.iter().filter(|o| o.real_v).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.solutions.iter().map(|s| s.residual).fold(0.0, f64::max)
    }
}

/// `u = -i log v` with the real part reduced into `[0, 2 pi)`.
fn to_u(w: &[C64]) -> Vec<C64> {
    w.iter()
        .map(|z| {
            let re = z.im.rem_euclid(TAU);
            C64::new(if TAU - re < 1e-13 { 0.0 } else { re }, -z.re)
        })
        .collect()
}

fn u_solution(sys: &ChebSystem, u: Vec<C64>) -> Solution {
    let residuals = sys.relative_residuals(&u);
    let residual = residuals.iter().copied().fold(0.0, f64::max);
    let is_real = u.iter().all(|z| z.im.abs() < REAL_TOL);
    Solution { t: u, residuals, residual, is_real, in_box: is_real }
}

pub fn solve_cosine(sys: &ChebSystem, opts: &CosineOptions) -> Result<CosineSolveResult> {
    let target = to_laurent(sys)?;
    if sys.a.rank() != sys.m() {
        return Err(Error::RankDeficient { expected: sys.m(), found: sys.a.rank() });
    }
    let degree = cosine_degree(&sys.a)?.degree.unwrap_or(0);
    let target_orbits = generic_orbit_count(&sys.a)?;
    let mono = monodromy_solve(&sys.a, target_orbits, opts.seed, opts.max_loops, &opts.tracker)?;
    let mut warnings = mono.warnings.clone();

    let fam = Family::new(&sys.a);
    let (p0, p1) = (mono.start.params(), target.params());
    let polish = TrackerConfig { max_corrector_iters: 3, corrector_tol: 1e-15, ..opts.tracker };
    let track = |w: &[C64], cfg: &TrackerConfig| {
        fam.track(&p0, &p1, w, cfg).ok().map(|w| fam.correct(&p1, &w, &polish).unwrap_or(w))
    };
    let starts = &mono.orbits.logs;
    let mut failures = mono.path_failures;
    let mut found: Vec<Option<Vec<C64>>> = starts.iter().map(|w| track(w, &opts.tracker)).collect();
    // Failed paths and both ends of every collision are retracked with smaller steps.
    for shrink in [10.0, 100.0] {
        let probe = OrbitSet::new(1e-6);
        let bad: Vec<usize> = (0..found.len())
            .filter(|&i| match &found[i] {
                None => true,
                Some(w) => (0..found.len()).any(|j| {
                    j != i && found[j].as_ref().is_some_and(|x| probe.close(x, w) || probe.close(x, &negate(w)))
                }),
            })
            .collect();
        if bad.is_empty() {
            break;
        }
        let cfg = TrackerConfig {
            initial_step: opts.tracker.initial_step / shrink,
            max_step: opts.tracker.max_step / shrink,
            min_step: opts.tracker.min_step.min(opts.tracker.max_step / shrink),
            ..opts.tracker
        };
        for i in bad {
            failures += usize::from(found[i].is_none());
            found[i] = track(&starts[i], &cfg);
        }
    }
    let mut ends = OrbitSet::new(1e-6);
    let mut lost = 0;
    for w in &found {
        match w {
            Some(w) if ends.insert_log(w) => {}
            _ => lost += 1,
        }
    }
    failures += found.iter().filter(|w| w.is_none()).count();
    if lost > 0 {
        warnings.push(format!("{lost} of {} paths to the target failed or collided", starts.len()));
    }

    let mut orbits = Vec::new();
    let mut solutions = Vec::new();
    for w in &ends.logs {
        let real_u = w.iter().all(|z| z.re.abs() < REAL_TOL);
        let real_v = w.iter().all(|z| {
            let a = wrap_angle(z.im).abs();
            a < REAL_TOL || PI - a < REAL_TOL
        });
        let (u, u_neg) = (to_u(w), to_u(&negate(w)));
        solutions.push(u_solution(sys, u.clone()));
        solutions.push(u_solution(sys, u_neg));
        orbits.push(CosineOrbit { u, real_u, real_v });
    }
    let key = |t: &[C64]| t.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
    solutions.sort_by(|a, b| key(&a.t).partial_cmp(&key(&b.t)).unwrap_or(std::cmp::Ordering::Equal));
    orbits.sort_by(|a, b| key(&a.u).partial_cmp(&key(&b.u)).unwrap_or(std::cmp::Ordering::Equal));
    if orbits.len() < target_orbits {
        warnings.push(format!("found {} of {target_orbits} solution pairs", orbits.len()));
    }
    if solutions.iter().any(|s| s.residual > 1e-8) {
        warnings.push("some residuals exceed 1e-8".into());
    }
    Ok(CosineSolveResult {
        solutions,
        orbits,
        degree,
        target_orbits,
        monodromy_loops: mono.loops,
        path_failures: failures,
        seed: opts.seed,
        warnings,
    })
}
