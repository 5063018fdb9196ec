//! The HOMFLY skein of the annulus in its symmetric-function model.
//!
//! No diagrams are represented. Closures of idempotents `Q_λ` are Schur functions, the
//! product is the Littlewood–Richardson product, and every satellite, framing and
//! meridian operation is applied through its closed-form action on the `Q_λ` basis.

mod element;
mod meridian;

pub use element::{splice_satellite, torus_satellite, AnnulusElement, HomogeneousElement};
pub use meridian::{
    apply_meridian, basis_eigenvalue, basis_trace, meridian_eigenvalue, trace_full, trace_low, trace_low_meridian,
    LinkElement, Mode,
};
