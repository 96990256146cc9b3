//! Exact integer graded homological algebra.
//!
//! - [`IntMatrix`]: dense arbitrary-precision integer matrices.
//! - [`smith_normal_form`]: deterministic Smith normal form with unimodular
//!   transforms (and a prime-field variant used by minimal models).
//! - [`GradedModule`], [`ChainComplex`], [`cohomology`], [`shift`]:
//!   cochain complexes (differential raises degree by one).
//! - [`koszul_sign`], [`GradedWord`]: the Koszul sign rule.

mod complex;
mod koszul;
mod matrix;
mod snf;
mod sparse;

pub use complex::{cohomology, shift, ChainComplex, CohomologyGroup, GradedModule};
pub use koszul::{koszul_parity, koszul_sign, GradedWord, Symbol};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, smith_normal_form_mod, Snf};
pub use sparse::{add_scaled, is_zero_vec, normalize_mod, LinComb};
