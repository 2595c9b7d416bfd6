//! Finite and free skew Boolean algebras: terms, primitive and orthosum
//! algebras, free algebras with atom normal forms, a decision procedure for
//! the word problem, and structural tools (rank, minimal generators,
//! intersections, centers).

pub mod algebra;
pub mod error;
pub mod free;
pub mod models;
pub mod orthosum;
pub mod primitive;
pub mod saturate;
pub mod structure;
pub mod term;
pub mod word;

pub use algebra::SkewBoolean;
pub use error::{Error, Result};
pub use free::{FreeAlgebra, FreeAtom, FreeElement, Variety};
pub use orthosum::{AlgebraSignature, FactorMap, FiniteElement, HomSpec};
pub use primitive::{PrimitiveElement, PrimitiveShape};
pub use term::{Alphabet, CompiledTerm, Term};
pub use word::{decide_equal, decide_equal_nf, Verdict, Witness};
pub use structure::{epi_exists, min_generators, rank, RankReport};
