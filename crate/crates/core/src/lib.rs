//! Bounds on the cobordism distance between closures of positive 3-braids
//! and connected sums of `T(2,k)` torus links.

pub mod bounds;
pub mod braid;
pub mod error;
pub mod garside;
pub mod link_model;
mod ratio_serde;
pub mod reduction;
pub mod signature;

pub use braid::{parse_braid, BraidWord, ClosurePermutation, Gen};
pub use error::{Error, ParseError, Result};
pub use garside::{conjugate_by_cycling_equal, garside_normal_form, words_equal, GarsideForm};
pub use link_model::LinkDescriptor;
