//! Exact scalars, words, noncommutative polynomials and their text syntax.

mod parse;
mod poly;
mod scalar;
mod word;

pub use parse::{parse_poly, parse_word};
pub use poly::{print_order, Poly, PolyDisplay};
pub use scalar::{Field, Scalar};
pub use word::{occurrences, Alphabet, Occurrence, Word};
