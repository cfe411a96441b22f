//! JSON file formats: systems on input, solution sets on output.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

use crate::cosine_solver::CosineSolveResult;
use crate::error::{invalid, Error, Result};
use crate::linalg::C64;
use crate::polytope::ExponentMatrix;
use crate::system::{Basis, ChebSystem};
use crate::tensor_solver::{Solution, SolutionSet};

/// A system `c0 + C x(t) = 0`. `C` and `c0` may be omitted when only `A` matters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub basis: Basis,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0: Option<Vec<f64>>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: SystemFile = serde_json::from_str(text).map_err(|e| invalid(format!("system file: {e}")))?;
        f.exponents()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::InvalidInput(msg) => invalid(format!("{}: {msg}", path.display())),
            e => e,
        })
    }

    pub fn exponents(&self) -> Result<ExponentMatrix> {
        if let Some((i, r)) = self.a.iter().enumerate().find(|(_, r)| r.len() != self.a[0].len()) {
            return Err(invalid(format!("field A: row {} has {} entries, expected {}", i + 1, r.len(), self.a[0].len())));
        }
        ExponentMatrix::from_rows(self.a.clone()).map_err(|e| invalid(format!("field A: {e}")))
    }

    pub fn system(&self) -> Result<ChebSystem> {
        let a = self.exponents()?;
        let c = self.c.clone().ok_or_else(|| invalid("field C is missing"))?;
        let c0 = self.c0.clone().ok_or_else(|| invalid("field c0 is missing"))?;
        ChebSystem::new(self.basis, a, c, c0).map_err(|e| match e {
            Error::InvalidInput(msg) => invalid(format!("system file: {msg}")),
            e => e,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub t: Vec<[f64; 2]>,
    pub residual: f64,
    pub is_real: bool,
    pub in_box: bool,
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        SolutionRecord { t: s.t.iter().map(|z| [z.re, z.im]).collect(), residual: s.residual, is_real: s.is_real, in_box: s.in_box }
    }
}

impl SolutionRecord {
    pub fn point(&self) -> Vec<C64> {
        self.t.iter().map(|p| C64::new(p[0], p[1])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionMeta {
    pub basis: Basis,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// Expected number of solutions.
    pub degree: u64,
    /// Only filled in when timing is requested, so outputs stay reproducible.
    pub elapsed_ms: Option<u64>,
    /// Counts that summarize the solution set, such as real or in-box totals.
    pub counts: BTreeMap<String, u64>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub solutions: Vec<SolutionRecord>,
    pub meta: SolutionMeta,
}

impl SolutionFile {
    pub fn from_tensor(set: &SolutionSet) -> Self {
        let tolerances = BTreeMap::from([
            ("real".to_string(), set.tolerances.real),
            ("box_slack".to_string(), set.tolerances.box_slack),
            ("rank_relative".to_string(), set.tolerances.rank_relative),
        ]);
        let counts = BTreeMap::from([
            ("total".to_string(), set.points.len() as u64),
            ("real".to_string(), set.real_count() as u64),
            ("in_box".to_string(), set.in_box_count() as u64),
        ]);
        SolutionFile {
            solutions: set.points.iter().map(SolutionRecord::from).collect(),
            meta: SolutionMeta {
                basis: Basis::Tensor,
                seed: set.seed,
                tolerances,
                degree: set.expected as u64,
                elapsed_ms: None,
                counts,
                warnings: set.warnings.clone(),
            },
        }
    }

    /// Both members `u` and `-u` of every pair are listed; `degree` counts them all.
    pub fn from_cosine(r: &CosineSolveResult, corrector_tol: f64) -> Self {
        let tolerances = BTreeMap::from([("real".to_string(), 1e-8), ("corrector".to_string(), corrector_tol)]);
        let counts = BTreeMap::from([
            ("total".to_string(), r.solutions.len() as u64),
            ("orbit_pairs".to_string(), r.orbits.len() as u64),
            ("real_u_pairs".to_string(), r.real_u_pairs() as u64),
            ("complex_u_pairs".to_string(), r.complex_u_pairs() as u64),
            ("real_v_pairs".to_string(), r.real_v_pairs() as u64),
            ("variety_degree".to_string(), r.degree),
        ]);
        SolutionFile {
            solutions: r.solutions.iter().map(SolutionRecord::from).collect(),
            meta: SolutionMeta {
                basis: Basis::Cosine,
                seed: r.seed,
                tolerances,
                degree: 2 * r.target_orbits as u64,
                elapsed_ms: None,
                counts,
                warnings: r.warnings.clone(),
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InternalConsistency(e.to_string()))
    }
}
