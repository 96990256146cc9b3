//! Sparse integer linear combinations keyed by generator index.

use crate::Int;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite formal integer combination of generators, keyed by index.
///
/// Zero coefficients are never stored, so equality of two combinations is
/// structural equality of the maps.
pub type LinComb = BTreeMap<usize, Int>;

/// `acc += scale * v`, dropping entries that cancel.
pub fn add_scaled(acc: &mut LinComb, v: &LinComb, scale: &Int) {
    if scale.is_zero() {
        return;
    }
    for (k, c) in v {
        let entry = acc.entry(*k).or_insert_with(Int::zero);
        *entry += c * scale;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

/// True iff every coefficient vanishes.
pub fn is_zero_vec(v: &LinComb) -> bool {
    v.values().all(Zero::is_zero)
}

/// Reduce all coefficients into `[0, p)` and drop zeros.
pub fn normalize_mod(v: &mut LinComb, p: &Int) {
    let keys: Vec<usize> = v.keys().copied().collect();
    for k in keys {
        let c = v[&k].mod_floor(p);
        if c.is_zero() {
            v.remove(&k);
        } else {
            v.insert(k, c);
        }
    }
}
