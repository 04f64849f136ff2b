//! Automorphism groups of the nonsplit metacyclic 2-groups
//! `H(2^a, 2^b; 2^c, r) = <α, β | α^{2^a} = 1, β^{2^b} = α^{2^c}, βαβ^{-1} = α^r>`.
//!
//! The closed forms in [`aut`] and [`structure`] are checked against the
//! brute-force [`oracle`], which knows nothing beyond the defining relations.

pub mod arith2;
pub mod aut;
pub mod error;
pub mod group;
pub mod hom;
pub mod oracle;
pub mod structure;
pub mod suites;
pub mod word;

pub use arith2::{Residue, Valuation};
pub use aut::{Automorphism, Quad};
pub use error::{Error, Result};
pub use group::{Element, Family, GroupParams};
pub use hom::GenImages;
pub use oracle::OracleOptions;
pub use structure::{NamedAut, StructureReport};
pub use word::Word;
