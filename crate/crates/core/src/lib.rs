//! Workbench for finite residuated lattices.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod filters;
pub mod limits;
pub mod subset;
pub mod topology;

pub use algebra::{AlgebraData, Elem, Homomorphism, Op, ResiduatedLattice};
pub use error::{Error, Result};
pub use filters::{CongruenceRelation, FilterSet};
pub use subset::Subset;
