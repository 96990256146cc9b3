//! From DG categories to A∞ categories.

use super::category::{sign, AInfCategory, Generator, OpTable};
use crate::algebra_core::LinComb;
use crate::error::{Error, Result};
use crate::plumbing::{verify_dg_axioms, DGCategory};
use std::collections::BTreeMap;

/// The A∞ category of a DG category with the standard sign twist:
/// `μ₁(σ) = (−1)^{deg σ} dσ`, `μ₂(σ, τ) = (−1)^{deg τ} σ∘τ`, `μ_d = 0` for
/// `d ≥ 3`. Fails if the DG axioms do not hold.
pub fn dg_to_ainf(cat: &DGCategory, n: i64) -> Result<AInfCategory> {
    let report = verify_dg_axioms(cat);
    if let Some(e) = report.failures().next() {
        return Err(Error::InvalidArgument(format!(
            "DG axioms fail ({} {}): {}",
            e.check, e.params, e.computed
        )));
    }
    dg_to_ainf_unchecked(cat, n)
}

/// [`dg_to_ainf`] without verifying the DG axioms first.
pub fn dg_to_ainf_unchecked(cat: &DGCategory, n: i64) -> Result<AInfCategory> {
    // Generators of all homs, in (source, target) order.
    let mut generators = Vec::new();
    let mut offset: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(i, j), c) in &cat.homs {
        offset.insert((i, j), generators.len());
        for (id, deg) in c.module().basis() {
            generators.push(Generator {
                id: id.clone(),
                source: i,
                target: j,
                degree: *deg,
            });
        }
    }
    let shift =
        |v: &LinComb, off: usize, s: &crate::Int| -> LinComb { v.iter().map(|(g, c)| (g + off, c * s)).collect() };

    let mut mu1 = OpTable::new();
    for (&(i, j), c) in &cat.homs {
        let off = offset[&(i, j)];
        for g in 0..c.module().len() {
            let v = shift(c.d_of(g), off, &sign(c.module().degree(g) & 1 == 1));
            if !v.is_empty() {
                mu1.insert(vec![g + off], v);
            }
        }
    }
    let mut mu2 = OpTable::new();
    for (&(i, j, k), table) in &cat.compose {
        let (o1, o2, o3) = (offset[&(i, j)], offset[&(j, k)], offset[&(i, k)]);
        let h1 = cat.hom(i, j);
        for (&(g2, g1), v) in table {
            let s = sign(h1.module().degree(g1) & 1 == 1);
            let v = shift(v, o3, &s);
            if !v.is_empty() {
                mu2.insert(vec![g2 + o2, g1 + o1], v);
            }
        }
    }
    let mu = BTreeMap::from([(1, mu1), (2, mu2)]);
    AInfCategory::new(cat.objects.clone(), generators, n, mu, None)
}
