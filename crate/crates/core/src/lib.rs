//! Self-orthogonal and self-dual algebraic-geometry codes over the maximal
//! curves `y^q + y = x^m` (`m | q + 1`), built explicitly and verified by
//! exact computation over finite fields.

pub mod analysis;
pub mod claims;
pub mod cli;
pub mod error;
pub mod families;
pub mod galois;
pub mod matfq;
pub mod curve;
pub mod descriptor;
pub mod residue;
pub mod rrbasis;
pub mod twist;

pub use error::{Error, Result};
pub use galois::{Elem, FieldCtx, QuadraticTower};
pub use matfq::{GramKind, MatrixFq};
