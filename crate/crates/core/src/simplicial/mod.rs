//! Ordered simplicial complexes and their integer cochains.
//!
//! Vertices carry a global total order and simplices are strictly
//! increasing vertex tuples, which makes the Alexander–Whitney cup product
//! canonical. Relative cochains are ordinary cochains constrained to vanish
//! on a subcomplex, so the same cup code serves the bimodule structures of
//! the plumbing category.

mod cochain;
mod complex;
mod maps;

pub use cochain::{Cochain, RelativeCochain, Subcomplex};
pub(crate) use complex::id_string;
pub use complex::{OrderedComplex, Simplex, TriangulationFile};
pub use maps::{extend_by_zero, restrict, shriek, SimplicialEmbedding};

/// Free function form of [`Cochain::coboundary`].
pub fn coboundary(a: &Cochain) -> Cochain {
    a.coboundary()
}

/// Free function form of [`Cochain::cup`].
pub fn cup(a: &Cochain, b: &Cochain) -> crate::Result<Cochain> {
    a.cup(b)
}
