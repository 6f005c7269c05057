//! The Hochschild cochain complex of `R` with coefficients in `End(M)`.
//!
//! Cochains are stored sparsely and flattened densely for elimination. The
//! coordinate order is fixed: basis tuples lexicographically, then the
//! `d_M×d_M` value row-major. Witnesses and representatives are therefore
//! reproducible exactly across runs.

mod cochain;
mod complex;

pub use cochain::{tuple_index, tuples, Cochain};
pub use complex::{CohomologyReport, Guardrails, HochschildComplex, Preimage};
