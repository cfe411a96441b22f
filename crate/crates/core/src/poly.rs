//! Sparse multivariate polynomials in the monomial basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::C64;

pub type Exponent = Vec<u32>;

/// Real-coefficient polynomial: exponent vector to coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct ImplicitPoly {
    pub num_vars: usize,
    pub terms: BTreeMap<Exponent, f64>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    num_vars: usize,
    terms: Vec<(Exponent, f64)>,
}

impl From<ImplicitPoly> for PolyJson {
    fn from(p: ImplicitPoly) -> Self {
        PolyJson { num_vars: p.num_vars, terms: p.terms.into_iter().collect() }
    }
}

impl TryFrom<PolyJson> for ImplicitPoly {
    type Error = String;
    fn try_from(j: PolyJson) -> Result<Self, String> {
        if j.terms.iter().any(|(e, _)| e.len() != j.num_vars) {
            return Err("exponent length does not match num_vars".into());
        }
        Ok(ImplicitPoly::from_terms(j.num_vars, j.terms))
    }
}

fn cpow(z: C64, e: u32) -> C64 {
    match e {
        0 => C64::new(1.0, 0.0),
        1 => z,
        _ => z.powu(e),
    }
}

impl ImplicitPoly {
    pub fn zero(num_vars: usize) -> Self {
        ImplicitPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: f64) -> Self {
        Self::from_terms(num_vars, [(vec![0; num_vars], c)])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::from_terms(num_vars, [(e, 1.0)])
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponent, f64)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent length mismatch");
            *map.entry(e).or_insert(0.0) += c;
        }
        map.retain(|_, c| *c != 0.0);
        ImplicitPoly { num_vars, terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> f64 {
        self.terms.get(e).copied().unwrap_or(0.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| f64::max(m, c.abs()))
    }

    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Exponent of the largest-magnitude coefficient (first in order on ties).
    pub fn leading_key(&self) -> Option<&Exponent> {
        let mut best: Option<(&Exponent, f64)> = None;
        for (e, c) in &self.terms {
            if best.is_none_or(|(_, b)| c.abs() > b) {
                best = Some((e, c.abs()));
            }
        }
        best.map(|b| b.0)
    }

    /// Rescales so the largest-magnitude coefficient equals 1.
    pub fn normalized(&self) -> Self {
        match self.leading_key() {
            None => self.clone(),
            Some(k) => {
                let s = 1.0 / self.terms[k];
                self.scale(s)
            }
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.num_vars, self.terms.iter().map(|(e, c)| (e.clone(), c * s)))
    }

    /// Drops coefficients with magnitude below `tol` times the largest.
    pub fn pruned(&self, tol: f64) -> Self {
        let cut = tol * self.max_abs();
        let mut p = self.clone();
        p.terms.retain(|_, c| c.abs() > cut);
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        Self::from_terms(
            self.num_vars,
            self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), *c)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push((e, c1 * c2));
            }
        }
        Self::from_terms(self.num_vars, out)
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        debug_assert_eq!(x.len(), self.num_vars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = C64::new(*c, 0.0);
                for (xi, &k) in x.iter().zip(e) {
                    m *= cpow(*xi, k);
                }
                m
            })
            .sum()
    }

    pub fn eval_real(&self, x: &[f64]) -> f64 {
        let z: Vec<C64> = x.iter().map(|&v| C64::new(v, 0.0)).collect();
        self.eval(&z).re
    }

    /// Sum of absolute values of the terms at `x`; a natural scale for residuals.
    pub fn eval_abs(&self, x: &[C64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.abs() * x.iter().zip(e).map(|(xi, &k)| xi.norm().powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn gradient(&self, x: &[C64]) -> Vec<C64> {
        (0..self.num_vars)
            .map(|i| {
                self.terms
                    .iter()
                    .filter(|(e, _)| e[i] > 0)
                    .map(|(e, c)| {
                        let mut m = C64::new(*c * e[i] as f64, 0.0);
                        for (j, (xj, &k)) in x.iter().zip(e).enumerate() {
                            m *= cpow(*xj, if j == i { k - 1 } else { k });
                        }
                        m
                    })
                    .sum()
            })
            .collect()
    }

    /// Monomial expansion of `T_k` in the variable `var`.
    pub fn chebyshev_t(num_vars: usize, var: usize, k: usize) -> Self {
        let coeffs = t_monomial_coeffs(k);
        Self::from_terms(
            num_vars,
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| {
                let mut e = vec![0; num_vars];
                e[var] = d as u32;
                (e, c.to_f64().unwrap_or(f64::NAN))
            }),
        )
    }

    /// Largest coefficientwise difference after normalizing both polynomials
    /// by their value at the leading key of `reference`.
    pub fn distance_up_to_scale(&self, reference: &Self) -> f64 {
        let Some(k) = reference.leading_key() else {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        };
        let sr = reference.terms[k];
        let ss = self.coeff(k);
        if ss == 0.0 {
            return f64::INFINITY;
        }
        let a = self.scale(1.0 / ss);
        let b = reference.scale(1.0 / sr);
        a.sub(&b).max_abs()
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, then reverse lexicographic
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            let sign = if c < 0.0 { "-" } else { "+" };
            let mag = c.abs();
            if idx == 0 {
                if c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let coeff_str = fmt_coeff(mag);
            if mono.is_empty() {
                out.push_str(&coeff_str);
            } else if coeff_str == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", coeff_str, mono.join("*")));
            }
        }
        out
    }

    pub fn default_names(&self) -> Vec<String> {
        (1..=self.num_vars).map(|i| format!("x{i}")).collect()
    }
}

fn fmt_coeff(c: f64) -> String {
    if (c - c.round()).abs() < 1e-9 * c.abs().max(1.0) {
        format!("{}", c.round())
    } else {
        format!("{c}")
    }
}

impl fmt::Display for ImplicitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

/// Exact monomial coefficients of `T_k`, lowest degree first.
pub fn t_monomial_coeffs(k: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c * 2;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub num_vars: usize,
    pub terms: BTreeMap<Exponent, BigRational>,
}

impl RatPoly {
    pub fn zero(num_vars: usize) -> Self {
        RatPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.num_vars);
        }
        RatPoly { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// Multiplies by the variable with index `i`.
    pub fn mul_var(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] += 1;
                (e, c.clone())
            })
            .collect();
        RatPoly { num_vars: self.num_vars, terms }
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        self.to_implicit().eval(x)
    }

    pub fn to_implicit(&self) -> ImplicitPoly {
        ImplicitPoly::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, c)| (e.clone(), c.to_f64().unwrap_or(f64::NAN))),
        )
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        out
    }
}
