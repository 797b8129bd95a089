//! Integer feasibility of a target multiplicity vector against induced
//! character columns: over Z via Smith normal form and over N by exhaustive search.

mod snf;
mod solve;

pub use snf::{determinant, identity, mat_mul, smith_normal_form, Matrix, SnfResult};
pub use solve::{
    strong_solve, verify_witness, weak_solve, DecompositionInstance, SolveStatus, SolveVerdict,
};
