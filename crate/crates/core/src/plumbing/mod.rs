//! The DG category of a plumbing of two triangulated manifolds.
//!
//! Objects are `Q1` and `Q2`. Endomorphisms are simplicial cochains of each
//! triangulation; `Hom(Q1,Q2)` is the cochain complex of the identified
//! simplex (or of each clean-intersection component, shifted) and
//! `Hom(Q2,Q1)` its relative cochains. Compositions restrict and cup, and
//! the two compositions through the other object land back via the shriek
//! (extension by zero) maps. The identification of the plumbing simplices is
//! always the order-preserving vertex bijection.

mod build;
mod category;
mod spec_file;

pub use build::{
    build_simp, build_simp_clean, cochain_category, CleanPlumbingSpec, ComponentSpec, PlumbingSpec, Q1, Q2,
};
pub use category::{verify_dg_axioms, CompositionTable, DGCategory};
pub use spec_file::{load_triangulation, PlumbingInput};

use crate::simplicial::OrderedComplex;
use std::sync::Arc;

/// Two triangulated circles with three vertices each, plumbed along the
/// edge `[0,1]`.
pub fn circle_plumbing() -> PlumbingSpec {
    let c = Arc::new(OrderedComplex::simplex_boundary(1));
    let e = c.index_of(&[0, 1]).expect("edge present");
    PlumbingSpec::new(c.clone(), c, e, e).expect("valid spec")
}

/// Two boundaries of the 3-simplex (2-spheres), plumbed along `[0,1,2]`.
pub fn sphere_plumbing() -> PlumbingSpec {
    let s = Arc::new(OrderedComplex::simplex_boundary(2));
    let t = s.index_of(&[0, 1, 2]).expect("face present");
    PlumbingSpec::new(s.clone(), s, t, t).expect("valid spec")
}
