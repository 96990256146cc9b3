//! Combinatorial moduli spaces: Stasheff trees, shrubs, caps and mushrooms.
//!
//! - [`RibbonTree`] and [`enumerate_tree_types`]: planar trees stratifying
//!   the associahedra T̄_d, with [`graft`] as operadic composition and
//!   [`label_edges`] for Lagrangian labels.
//! - [`ShrubCell`], [`ShrubFace`], [`shrub_boundary_maps`]: the
//!   composihedra S̄_d.
//! - [`CapType`], [`cap_to_disc`]: caps as discs.
//! - [`Mushroom`], [`normalize_mushroom`], [`mushroom_boundary`]: the
//!   multiplihedra C̄_d as quotients of stems with caps.
//! - [`oracles`]: independent counts and enumerations used to verify all
//!   of the above; [`verify_polytopes`] runs the whole suite.
//!
//! Reports list strata in planar (left-to-right) order of inputs.
//!
//! # Text grammar
//!
//! ```text
//! tree     := "x" | "(" tree tree+ ")"
//! cell     := "x" | "(" cell cell+ ")" | "[" "x" "x"+ "]"   ; [..] = leaf-level vertex
//! stem     := cell | "{" tree ";" cell+ "}"                 ; broken above the cells
//! cap      := tree                                          ; disc form, last input = second outgoing point
//! mushroom := "<" stem "|" cap+ ">"
//! painted  := "f(" tree+ ")" | "(" painted painted+ ")"     ; output only
//! ```

mod cap;
mod labels;
mod mushroom;
pub mod oracles;
mod sexpr;
mod shrub;
mod tree;
mod verify;

pub use cap::{cap_to_disc, cap_types, disc_to_cap, reroot, CapType};
pub use labels::{is_compatible, label_edges, EdgeLabelling};
pub use mushroom::{
    mushroom_boundary, mushroom_dim, mushroom_faces, mushroom_strata, normalize_mushroom, random_mushroom, Mushroom,
    MushroomBoundary, Painted,
};
pub use shrub::{
    shrub_boundary, shrub_boundary_maps, shrub_cells, shrub_faces, ShrubBoundary, ShrubCell, ShrubFace, ShrubType,
};
pub use tree::{
    compositions, compositions_into, enumerate_tree_types, graft, graft_labelled, stasheff_boundary, trivalent_trees,
    walls, RibbonTree, Span, StasheffBreak,
};
pub use verify::{check_face_poset, verify_polytopes};
