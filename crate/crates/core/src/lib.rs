//! Exact arithmetic in the quantum cohomology and quantum K-theory of
//! complete flag varieties `Fl_n`.

pub mod class;
pub mod error;
pub mod exec;
pub mod ktheory;
pub mod linalg;
pub mod qh;
pub mod report;
pub mod roots;
pub mod seidel;
pub mod weyl;

pub use class::{Class, IntClass, KClass, QClass};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use roots::{DegreeVector, Root};
pub use weyl::Permutation;
