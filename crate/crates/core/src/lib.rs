//! Exact computer algebra for combinatorial Hopf algebras, polyhedral cone
//! characters, rational moulds and Lie idempotents.

pub mod characters;
pub mod coeffring;
pub mod cones;
pub mod combinat;
pub mod error;
pub mod freemod;
pub mod golden;
pub mod moulds;
pub mod ncsf;
pub mod qsym;
pub mod rotabaxter;
pub mod sampling;
pub mod wqsym;

pub use coeffring::{MultiPoly, PolyFraction, Rational, Scalar, Var};
pub use error::{HopfError, Result};
pub use freemod::{GradedLabel, GradedSeries, LinComb, TensorComb};
pub use ncsf::{SymBasis, SymElement};
pub use qsym::{QSymBasis, QSymElement};
pub use wqsym::{WQSymBasis, WQSymElement};
