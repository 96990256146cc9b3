//! A∞ categories and functors over ℤ (or a prime field) given by sparse
//! operation tables: relation and functor-equation checkers, the passage
//! from DG categories, formal count data with sign twists, and minimal
//! models.

mod category;
mod convert;
mod formal;
mod functor;
mod minimal;
mod relations;

pub use category::{AInfCategory, Generator, OpTable};
pub use convert::{dg_to_ainf, dg_to_ainf_unchecked};
pub use formal::{
    build_formal_category, dagger, fukaya_twist_exponent, morse_twist_exponent, to_formal, CountEntry, CountMode,
    FormalCountData, GeneratorSpec,
};
pub use functor::{
    check_functor_equation, check_functor_equation_with, cohomology_functor_check, cohomology_ranks, functor_sides,
    hom_complex, AInfFunctor, ComponentEntry, FunctorFile,
};
pub use minimal::minimal_model;
pub use relations::{check_ainf_relations, check_ainf_relations_with, relation_value, CheckConfig};
