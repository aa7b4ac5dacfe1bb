//! Subfield subcodes of generalized Reed-Solomon codes.
//!
//! A GRS code over F_Q = F_{q^m} is expanded into an F_q matrix through the
//! coefficient-row form of F_Q. Its subfield subcode (an alternant code)
//! then falls out of a single homogeneous linear system over F_q: the
//! kernel basis constrains the messages, maps the GRS generator onto a
//! generator of the subcode, and its zero borders give a design distance.
//! The same basis, in reduced row echelon form, yields families of nested
//! subcodes with growing design distance.
//!
//! The [`oracle`] module holds brute-force enumeration used to check all of
//! the above on small parameters.

pub mod error;
pub mod extension;
pub mod extract;
pub mod grscode;
pub mod matql;
pub mod nested;
pub mod oracle;
mod poly;
pub mod smallfield;

pub use error::{Error, Result};
pub use extension::{ExtElement, ExtensionCtx};
pub use extract::{
    assemble_constraint_matrix, conjugacy_check, drop_first_column, expand_generator,
    extract_subfield_subcode, SubfieldSubcode,
};
pub use grscode::{error_radius, CyclicParams, ExtMatrix, GrsCode};
pub use matql::MatrixFq;
pub use nested::{
    enumerate_nested, subcode_from_rows, subcode_from_rows_unchecked, trajectories, NestedEntry,
    NestedFamily, TrajectoryProfile,
};
pub use smallfield::{FieldSpec, Fq, SmallField};
