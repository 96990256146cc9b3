//! Edge labellings of ribbon trees by pairs of Lagrangian indices.
//!
//! A sequence `(i₀, …, i_d)` with values in `{1, 2}` labels the boundary
//! regions of the planar tree: `i₀` lies between the outgoing leaf and input
//! 1, `i_k` between inputs `k` and `k+1`, and `i_d` between input `d` and the
//! outgoing leaf. An edge with span `(a, b)` separates regions `i_{a−1}` and
//! `i_b` and is labelled `(i_{a−1}, i_b)`; in particular input `k` gets
//! `(i_{k−1}, i_k)` and the outgoing leaf gets `(i₀, i_d)`.
//!
//! Compatibility is checked at every vertex with the cyclic order
//! `(c₁, …, c_m, parent)`: reading each child edge as incoming and the parent
//! edge as outgoing (its label reversed), the second index of each flag must
//! equal the first index of the next one.

use super::tree::{RibbonTree, Span};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Labels of all edges, keyed by span (the outgoing edge has span `(1, d)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabelling {
    /// Label `(i(e), j(e))` of every edge.
    pub labels: BTreeMap<Span, (u8, u8)>,
}

impl EdgeLabelling {
    /// Label of the edge with the given span.
    pub fn get(&self, span: Span) -> Option<(u8, u8)> {
        self.labels.get(&span).copied()
    }

    /// The labelling obtained by exchanging the values 1 and 2.
    pub fn swapped(&self) -> EdgeLabelling {
        let sw = |x: u8| 3 - x;
        EdgeLabelling {
            labels: self.labels.iter().map(|(&s, &(i, j))| (s, (sw(i), sw(j)))).collect(),
        }
    }
}

/// The unique labelling compatible with the cyclic orders that extends the
/// boundary sequence `seq` (length `d + 1`, values in `{1, 2}`).
pub fn label_edges(t: &RibbonTree, seq: &[u8]) -> Result<EdgeLabelling> {
    let d = t.inputs();
    if seq.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            found: seq.len(),
        });
    }
    if let Some(bad) = seq.iter().find(|&&x| x != 1 && x != 2) {
        return Err(Error::InvalidArgument(format!(
            "labels take values 1 and 2, found {bad}"
        )));
    }
    let mut labels = BTreeMap::new();
    let mut put = |(a, b): Span| {
        labels.insert((a, b), (seq[a - 1], seq[b]));
    };
    put((1, d));
    for k in 1..=d {
        put((k, k));
    }
    for s in t.internal_spans() {
        put(s);
    }
    Ok(EdgeLabelling { labels })
}

/// Check the compatibility condition at every vertex of `t`.
pub fn is_compatible(t: &RibbonTree, l: &EdgeLabelling) -> bool {
    for (parent, kids) in t.vertex_children() {
        let Some(p) = l.get(parent) else { return false };
        let mut flags = Vec::with_capacity(kids.len() + 1);
        for &k in &kids {
            match l.get(k) {
                Some(x) => flags.push(x),
                None => return false,
            }
        }
        flags.push((p.1, p.0));
        for i in 0..flags.len() {
            let next = flags[(i + 1) % flags.len()];
            if flags[i].1 != next.0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let t: RibbonTree = "((x x) x)".parse().unwrap();
        let l = label_edges(&t, &[1, 1, 1, 1]).unwrap();
        assert!(l.labels.values().all(|&x| x == (1, 1)));
        assert!(is_compatible(&t, &l));
    }

    #[test]
    fn inputs_and_output() {
        let t: RibbonTree = "(x (x x))".parse().unwrap();
        let l = label_edges(&t, &[1, 2, 2, 1]).unwrap();
        assert_eq!(l.get((1, 1)), Some((1, 2)));
        assert_eq!(l.get((2, 2)), Some((2, 2)));
        assert_eq!(l.get((3, 3)), Some((2, 1)));
        assert_eq!(l.get((1, 3)), Some((1, 1)));
        assert_eq!(l.get((2, 3)), Some((2, 1)));
        assert!(is_compatible(&t, &l));
        assert!(is_compatible(&t, &l.swapped()));
    }

    #[test]
    fn corrupted_labels_are_rejected() {
        let t: RibbonTree = "(x (x x))".parse().unwrap();
        let mut l = label_edges(&t, &[1, 2, 2, 1]).unwrap();
        l.labels.insert((2, 3), (1, 1));
        assert!(!is_compatible(&t, &l));
        assert!(label_edges(&t, &[1, 2]).is_err());
        assert!(label_edges(&t, &[1, 2, 3, 1]).is_err());
    }
}
