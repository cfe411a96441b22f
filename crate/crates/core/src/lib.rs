pub mod cheb;
pub mod cli;
pub mod cosine_solver;
pub mod curves;
pub mod error;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod root_system;
pub mod system;
pub mod tensor_solver;
pub mod variety;

pub use error::{Error, Result};
