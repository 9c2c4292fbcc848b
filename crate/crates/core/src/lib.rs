//! Exact convergence checking for rewriting systems on free associative algebras.
//!
//! A system `Σ = (X, W, f)` rewrites each word `w ∈ W` to a polynomial
//! `f(w)`. Given a termination certificate, [`ambiguity::check_convergence`]
//! decides whether every element has a unique normal form by reducing the
//! obstruction of each ambiguity. The [`chains`] and [`dgmodel`] modules
//! compute the monomial-algebra resolutions that generate those ambiguities.

pub mod ambiguity;
pub mod chains;
pub mod dgmodel;
mod error;
pub mod freealg;
pub mod linalg;
pub mod order;
pub mod rewrite;
pub mod sample;

pub use error::{Error, Result};
pub use freealg::{Alphabet, Field, Poly, Scalar, Word};
pub use order::{Certificate, DeglexOrder, MeasureCertificate};
pub use rewrite::{Rewriter, Rule, System};
