//! Simplicial differential graded categories of plumbings, an exact
//! integer A∞-category kernel, the combinatorial moduli polytopes that
//! control A∞ functors (Stasheff trees, shrubs, mushrooms), and the
//! orientation/sign calculus relating them.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and
//! every identity the library claims is checked by an explicit verifier
//! that returns a [`report::Report`].
//!
//! Module map:
//! - [`algebra_core`]: integer matrices, Smith normal form, chain complexes,
//!   cohomology, Koszul signs and graded words.
//! - [`simplicial`]: ordered simplicial complexes, cochains, cup products,
//!   restriction and shriek maps.
//! - [`plumbing`]: the DG category of a plumbing (transverse and clean
//!   variants) and its axiom verifier.
//! - [`ainf`]: A∞ categories and functors given by sparse tables, relation
//!   checkers, formal count data and minimal models.
//! - [`polytopes`]: planar trees, Stasheff/shrub/cap/mushroom strata and
//!   enumeration oracles.
//! - [`orientations`]: edge orderings, orientation forms, boundary signs,
//!   sign twists and the symbolic sign ledgers.
//! - [`cli`]: the command-line front end used by the `plumbing` binary.

pub mod ainf;
pub mod algebra_core;
pub mod cli;
pub mod error;
pub mod orientations;
pub mod plumbing;
pub mod polytopes;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};

/// Coefficient ring element: an arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
