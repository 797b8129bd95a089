//! Concrete families with a Sylow 2-subgroup of known shape, and the
//! closed-form restriction identities for `SL(2, q)` and `GL(2, q)`.

mod closed;
mod construct;
mod field;

pub use closed::{
    gl2_closed_form, sl2_closed_form, Claim, ClosedFormExpectation, ClosedFormReport, ClosedFormRow, Term,
};
pub use construct::{make_family, FamilyKind, FamilySpec, LinearGroup};
pub use field::{Field, Mat2};
