//! Independent counting and enumeration oracles for the polytopes.
//!
//! These deliberately avoid the data structures of the rest of the module:
//! counts come from closed recurrences and painted trees are generated from
//! their grammar, so agreement with the stratum enumerations is evidence
//! rather than tautology.

use super::mushroom::Painted;
use super::tree::RibbonTree;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Catalan numbers `C₀, …, C_n` from `C_{m+1} = Σ C_i C_{m−i}`.
pub fn catalan(n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

/// Number of trivalent planar trees with `d ≥ 1` inputs: `C_{d−1}`.
pub fn trivalent_count(d: usize) -> BigUint {
    catalan(d - 1).pop().expect("nonempty")
}

/// Number of stable planar trees with `d ≥ 1` inputs (little Schröder
/// numbers), from `(m+1) a_m = 3(2m−1) a_{m−1} − (m−2) a_{m−2}`, `d = m + 1`.
pub fn tree_type_count(d: usize) -> BigUint {
    let m = d - 1;
    let mut a: Vec<BigUint> = vec![BigUint::one(), BigUint::one()];
    for k in 2..=m {
        let num = BigUint::from(3 * (2 * k - 1)) * &a[k - 1] - BigUint::from(k - 2) * &a[k - 2];
        a.push(num / BigUint::from(k + 1));
    }
    a[m].clone()
}

/// Vertex counts of the composihedra: `Σ_k binom(d−1, k) C_k`.
pub fn composihedron_vertex_count(d: usize) -> BigUint {
    let c = catalan(d);
    let mut binom = BigUint::one();
    let mut total = BigUint::zero();
    for (k, ck) in c.iter().enumerate().take(d) {
        total += &binom * ck;
        binom = binom * BigUint::from(d - 1 - k) / BigUint::from(k + 1);
    }
    total
}

/// Vertex counts of the multiplihedra `J₁, …, J_n` from the coloured-tree
/// recurrence `J = A + J²` where `A = x + A²` counts binary source trees:
/// a vertex is either the functor applied to a binary source tree or a
/// binary target product of two vertices.
pub fn multiplihedron_vertex_counts(n: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::zero(); n + 1];
    let mut j = vec![BigUint::zero(); n + 1];
    for m in 1..=n {
        a[m] = if m == 1 {
            BigUint::one()
        } else {
            (1..m).map(|i| &a[i] * &a[m - i]).sum()
        };
        j[m] = &a[m] + (1..m).map(|i| &j[i] * &j[m - i]).sum::<BigUint>();
    }
    j.remove(0);
    j
}

/// All bracketings of `n` leaves with vertices of any arity ≥ 2, generated
/// by splitting the leaf range into consecutive blocks.
fn source_trees(n: usize) -> Vec<RibbonTree> {
    if n == 1 {
        return vec![RibbonTree::Leaf];
    }
    let mut out = Vec::new();
    // Choose the set of cut points between consecutive leaves (bit mask),
    // at least one cut so the root has ≥ 2 children.
    for mask in 1u64..(1 << (n - 1)) {
        let mut sizes = Vec::new();
        let mut cur = 1;
        for b in 0..n - 1 {
            if mask >> b & 1 == 1 {
                sizes.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        sizes.push(cur);
        let mut acc: Vec<Vec<RibbonTree>> = vec![vec![]];
        for s in sizes {
            let subs = source_trees(s);
            acc = acc
                .into_iter()
                .flat_map(|p| {
                    subs.iter().map(move |t| {
                        let mut q = p.clone();
                        q.push(t.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(RibbonTree::Node));
    }
    out
}

/// Forests of source trees with `n` leaves in total (at least one tree).
fn forests(n: usize) -> Vec<Vec<RibbonTree>> {
    let mut out = Vec::new();
    for first in 1..=n {
        for t in source_trees(first) {
            if first == n {
                out.push(vec![t.clone()]);
            } else {
                for mut rest in forests(n - first) {
                    rest.insert(0, t.clone());
                    out.push(rest);
                }
            }
        }
    }
    out
}

/// Every painted tree with `n` inputs: a functor vertex over a source
/// forest, or a target vertex over at least two painted trees.
pub fn painted_trees(n: usize) -> Vec<Painted> {
    let mut out: Vec<Painted> = forests(n).into_iter().map(Painted::F).collect();
    fn sequences(n: usize) -> Vec<Vec<Painted>> {
        let mut out = Vec::new();
        for first in 1..=n {
            for p in painted_trees(first) {
                if first == n {
                    out.push(vec![p.clone()]);
                } else {
                    for mut rest in sequences(n - first) {
                        rest.insert(0, p.clone());
                        out.push(rest);
                    }
                }
            }
        }
        out
    }
    // A target vertex has at least two children, so its first child takes
    // fewer than `n` inputs.
    for first in 1..n {
        for p in painted_trees(first) {
            for mut rest in sequences(n - first) {
                rest.insert(0, p.clone());
                out.push(Painted::Upper(rest));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn known_sequences() {
        assert_eq!(nums(&catalan(6)), vec![1, 1, 2, 5, 14, 42, 132]);
        let s: Vec<BigUint> = (1..=7).map(tree_type_count).collect();
        assert_eq!(nums(&s), vec![1, 1, 3, 11, 45, 197, 903]);
        let c: Vec<BigUint> = (1..=6).map(composihedron_vertex_count).collect();
        assert_eq!(nums(&c), vec![1, 2, 5, 15, 51, 188]);
        assert_eq!(nums(&multiplihedron_vertex_counts(6)), vec![1, 2, 6, 21, 80, 322]);
    }

    #[test]
    fn painted_tree_grammar() {
        assert_eq!(painted_trees(1).len(), 1);
        assert_eq!(painted_trees(2).len(), 3);
        let vertices = painted_trees(4).iter().filter(|p| p.dim() == 0).count();
        assert_eq!(vertices, 21);
        assert_eq!(source_trees(4).len(), 11);
    }
}
