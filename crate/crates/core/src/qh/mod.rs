//! Quantum cohomology `QH^*(Fl_n)`.

pub mod chevalley;
pub mod engine;
pub mod grading;
pub mod pw;
pub mod reduction;
pub mod table;

pub use chevalley::{chevalley_apply, chevalley_terms, quantum_chevalley};
pub use engine::{validate_product, GeneratorTerm, QhEngine};
pub use grading::{gr_alpha, GradePair};
pub use pw::{peterson_woodward_lift, psi_alpha, PwLift};
pub use reduction::{reduce_step, reduce_trace, Quad, Trace};
pub use table::StructureTable;
