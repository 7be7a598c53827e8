//! Exact arithmetic in GF(p^s).
//!
//! Every field is a single quotient `F_p[x]/(f)`. Extensions of a field `F_q`
//! are built as `F_p`-extensions of degree `s·t` and related to `F_q` by an
//! explicit [`Embedding`], so comparisons between base-field values and values
//! that only exist upstairs stay exact.

mod embedding;
mod field;
pub(crate) mod prime_poly;
mod roots;
mod syntax;

pub use embedding::Embedding;
pub use field::{FieldElement, FiniteField, MAX_ENUMERABLE_ORDER};
pub use roots::{
    extension, primitive_root_of_unity, primitive_root_of_unity_in, sqrt_minus_one, unity_degree,
    Adjoined,
};
pub use syntax::{discrete_log, parse_element, parse_field, power_form};
