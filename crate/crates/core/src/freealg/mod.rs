//! Words and noncommutative polynomials over `{A, B, C}`, with parsing and
//! canonical printing.

mod parse;
mod poly;
mod word;

pub use parse::{parse, ParseError};
pub(crate) use poly::write_signed_term;
pub use poly::NcPoly;
pub use word::{Letter, Word};
