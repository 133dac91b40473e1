//! Exact arithmetic for pure cubic fields `Q(∛d)`, their normal closures
//! `Q(∛d, ζ₃)`, cubic residue and norm residue symbols, desk-scale class
//! groups, and an exhaustive checker for Galois actions on `Z/9 × Z/3`.

pub mod arith;
pub mod classgroup;
pub mod cubicfield;
pub mod eisenstein;
pub mod error;
pub mod fp;
pub mod galoismodel;
pub mod ideals;
pub mod symbols;
pub mod zlinalg;

pub use classgroup::{ClassGroupStructure, KStructureReport};
pub use cubicfield::{Kind, PureCubicField, SplitPattern};
pub use eisenstein::{EisensteinFactorization, EisensteinInt, Unit};
pub use error::{Error, Result};
pub use galoismodel::{ClaimReport, ClaimStatus, Constraints, Elem93, Endo93, GaloisModel};
pub use ideals::{ElementGamma, IdealHNF, PrimeIdeal};
pub use symbols::{CubeRoot, Place, SymbolInput};
pub use zlinalg::{IntMatrix, RowLattice};
