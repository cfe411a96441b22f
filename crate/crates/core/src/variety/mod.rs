//! Dimension, degree and implicit equations of Chebyshev varieties.

pub mod cosine;
pub mod implicit;
pub mod tensor;
pub mod toric;

use serde::{Serialize, Serializer};

use crate::polytope::Q;

pub use cosine::{
    canonical_form, cosine_degree, cosine_dimension, cosine_singular_candidates, deg_pi1, SingularCandidates,
    SingularCurve,
};
pub use implicit::{implicitize, monomials_up_to, parametrization_point, relative_residual, ParamKind};
pub use tensor::{surface_degree_bound, tensor_degree_bounds, tensor_dimension, SurfaceBound};
pub use toric::{auxiliary_equations, toric_relations};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyKind {
    Toric,
    Tensor,
    Cosine,
}

pub(crate) fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub(crate) fn ser_q_opt<S: Serializer>(q: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Degree bounds for a tensor Chebyshev variety; rationals are serialized as strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeBounds {
    #[serde(serialize_with = "ser_q")]
    pub bound_pc: Q,
    #[serde(serialize_with = "ser_q")]
    pub bound_pb: Q,
    #[serde(serialize_with = "ser_q_opt")]
    pub surface_bound: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarietyReport {
    pub kind: VarietyKind,
    pub dimension: usize,
    pub degree: Option<u64>,
    pub bounds: Option<DegreeBounds>,
    pub density_holds: Option<bool>,
    pub deg_pi1: Option<u64>,
    pub lattice_index: Option<u64>,
    /// Why the degree is missing, when it is.
    pub note: Option<String>,
}
