//! Exact deformation theory for modules and complexes over finite-dimensional
//! quiver algebras over prime fields.

pub mod algebra;
pub mod linalg;
pub mod module;
pub mod homalg;
pub mod deform;
pub mod complex;
pub mod bimodule;
pub mod corpus;
pub mod formats;

pub use algebra::{Algebra, AlgebraError, AlgebraPresentation, Composition};
pub use bimodule::{Bimodule, BimoduleError, MoritaPair};
pub use complex::{BoundedComplex, ComplexError};
pub use deform::{DeformError, Verdict, VersalReport};
pub use linalg::{Field, Matrix};
pub use module::{ModuleError, ModuleMap, Representation};

#[cfg(test)]
pub(crate) mod testutil;
