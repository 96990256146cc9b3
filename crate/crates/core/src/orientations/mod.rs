//! Orientation and sign calculus.

mod boundary;
mod form;
mod ledger;
mod twists;

pub use boundary::{
    boundary_sign_shrub, boundary_sign_stasheff, shrub_break_case, shrub_break_discrepancy, shrub_break_parity,
    shrub_collapse_case, shrub_collapse_parity, stasheff_break_parity, stasheff_case, verify_boundary_signs,
    ShrubBoundaryKind,
};
pub use form::{edge_order, edge_order_check, wall_consistency, Coord, EdgeChoice, EdgeOrder, OrientationForm};
pub use ledger::{
    mushroom_corners, random_mushroom_sample, random_shrub, shrub_corners, verify_ledger_mushroom, verify_ledger_shrub,
    MushroomSample, ShrubSample, SignLedgerStep,
};
pub use twists::{cap_degree, dagger_caps, sign_twist, TWIST_NAMES};

use crate::error::Result;
use crate::report::Report;

/// Run the whole sign calculus: edge orders and wall consistency for
/// `3 ≤ d ≤ d_max`, both boundary-sign lemmas (Stasheff strata with
/// `d₁ + d₂ ≤ d_max + 1`, shrub strata with `d ≤ d_max`), and both ledgers
/// with `samples` seeded samples each.
pub fn verify_signs(d_max: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new();
    for d in 2..=d_max.max(2) {
        report.extend(edge_order_check(d));
    }
    for d in 3..=d_max {
        report.extend(wall_consistency(d));
    }
    report.extend(verify_boundary_signs(d_max + 1, d_max));
    report.extend(verify_ledger_shrub(samples, seed)?);
    report.extend(verify_ledger_mushroom(samples, seed)?);
    Ok(report)
}
