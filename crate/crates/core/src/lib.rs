pub mod algebra;
pub mod bits;
pub mod closure;
pub mod dot;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod lattice;
pub mod laws;
pub mod report;
pub mod representation;
pub mod sample;
pub mod separation;
pub mod spectrum;
pub mod topology;

pub use algebra::{Algebra, Carrier, MultiOp, OpKind};
pub use bits::{ElemSet, PointSet};
pub use error::{Error, Result};
pub use lattice::{FiniteDistLattice, LatticeHom};
