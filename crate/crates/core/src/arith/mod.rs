//! Exact arithmetic over prime fields: residues, dense polynomials, dense
//! matrices and the integer helpers they rely on.

pub mod bigint;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod prime;

pub use matrix::{FpMatrix, IncrementalSpan, SpanInsert};
pub use poly::FpPoly;
pub use prime::{FpElem, Prime};
