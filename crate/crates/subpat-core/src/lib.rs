//! Subword patterns in finite automata and Carton-Michel automata, the
//! ordered syntactic monoids they characterize, and the resulting levels of
//! the quantifier-alternation hierarchy of two-variable first-order logic.

pub mod algebra;
pub mod automata;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod hardness;
pub mod io;
pub mod matcher;
pub mod patterns;
pub mod samples;

pub use error::{Error, ErrorKind, Result};
