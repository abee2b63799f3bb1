//! Standard lattices of compatibly embedded finite fields `F_{p^l}` with
//! `l` coprime to `p`, built from normalized solutions of Hilbert 90 in
//! Kummer algebras over a Conway-polynomial cyclotomic lattice.

pub mod arith;
pub mod bench;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod kummer;
pub mod lattice;
pub mod standard;

pub use arith::{FpElem, FpMatrix, FpPoly, Prime};
pub use cyclo::{ConwayTable, CycloLattice, SearchMode};
pub use error::{Error, Result};
pub use field::{ExtField, FFElem};
pub use kummer::{KummerAlg, KummerElem, ProjectMethod};
pub use lattice::{Embedding, LatticeReport, StdLattice};
pub use standard::{decorate, kappa_constant, standard_embed, DecoratedField, EmbeddingDesc};
