//! Planar rooted trees: combinatorial types of Stasheff trees.
//!
//! A [`RibbonTree`] is stored with its planar embedding: each vertex lists
//! its children left to right, and the distinguished outgoing leaf is the
//! root edge. The cyclic order at a vertex is `(parent, c₁, …, c_m)` and the
//! inputs are numbered `1..=d` in the induced left-to-right order, so
//! isomorphism of ribbon trees is syntactic equality.
//!
//! Edges are named by their *span*: the interval `(a, b)` of inputs lying
//! above the edge. Inputs have spans `(k, k)`, the outgoing edge has span
//! `(1, d)`, and internal edges are the remaining spans. Spans are stable
//! under contraction and expansion of other edges, which is what the
//! orientation module relies on.
//!
//! The same tree names two strata of T̄_d: the open cell of metric trees of
//! that type (dimension = number of internal edges, see
//! [`RibbonTree::cell_dim`]) and the closed face where all its internal
//! edges are broken (dimension `d − 2 − #internal`, see
//! [`RibbonTree::face_dim`]).
//!
//! Text form: `x` is a leaf and `(t₁ t₂ …)` a vertex with children `tᵢ`.

use super::sexpr::{self, Sexp};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Span of an edge: the inputs `a..=b` above it (1-based).
pub type Span = (usize, usize);

/// A planar rooted tree whose root edge is the outgoing leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RibbonTree {
    /// An input leaf (or, at top level, the tree with one input and no vertex).
    Leaf,
    /// A vertex with its children in planar order.
    Node(Vec<RibbonTree>),
}

impl RibbonTree {
    /// The corolla with `d` inputs (`Leaf` when `d = 1`).
    pub fn corolla(d: usize) -> Self {
        if d <= 1 {
            RibbonTree::Leaf
        } else {
            RibbonTree::Node(vec![RibbonTree::Leaf; d])
        }
    }

    /// Number of inputs.
    pub fn inputs(&self) -> usize {
        match self {
            RibbonTree::Leaf => 1,
            RibbonTree::Node(cs) => cs.iter().map(RibbonTree::inputs).sum(),
        }
    }

    /// Number of vertices.
    pub fn vertices(&self) -> usize {
        match self {
            RibbonTree::Leaf => 0,
            RibbonTree::Node(cs) => 1 + cs.iter().map(RibbonTree::vertices).sum::<usize>(),
        }
    }

    /// Number of internal (finite, vertex-to-vertex) edges.
    pub fn internal_edges(&self) -> usize {
        self.vertices().saturating_sub(1)
    }

    /// Dimension of the open cell of metric trees of this type.
    pub fn cell_dim(&self) -> usize {
        self.internal_edges()
    }

    /// Dimension of the face of T̄_d on which every internal edge is broken.
    /// The one-input tree is given the formal dimension −1.
    pub fn face_dim(&self) -> i64 {
        self.inputs() as i64 - 2 - self.internal_edges() as i64
    }

    /// True iff every vertex has at least two children.
    pub fn is_stable(&self) -> bool {
        match self {
            RibbonTree::Leaf => true,
            RibbonTree::Node(cs) => cs.len() >= 2 && cs.iter().all(RibbonTree::is_stable),
        }
    }

    /// True iff every vertex has exactly two children (every vertex trivalent).
    pub fn is_trivalent(&self) -> bool {
        match self {
            RibbonTree::Leaf => true,
            RibbonTree::Node(cs) => cs.len() == 2 && cs.iter().all(RibbonTree::is_trivalent),
        }
    }

    /// Children of the root vertex (empty for a leaf).
    pub fn children(&self) -> &[RibbonTree] {
        match self {
            RibbonTree::Leaf => &[],
            RibbonTree::Node(cs) => cs,
        }
    }

    /// Spans of all internal edges, in depth-first (pre-)order.
    pub fn internal_spans(&self) -> Vec<Span> {
        let mut out = Vec::new();
        fn go(t: &RibbonTree, start: usize, root: bool, out: &mut Vec<Span>) {
            if let RibbonTree::Node(cs) = t {
                if !root {
                    out.push((start, start + t.inputs() - 1));
                }
                let mut s = start;
                for c in cs {
                    go(c, s, false, out);
                    s += c.inputs();
                }
            }
        }
        go(self, 1, true, &mut out);
        out
    }

    /// For every vertex (keyed by the span of the edge below it), the spans of
    /// its child edges in planar order.
    pub fn vertex_children(&self) -> BTreeMap<Span, Vec<Span>> {
        let mut out = BTreeMap::new();
        fn go(t: &RibbonTree, start: usize, out: &mut BTreeMap<Span, Vec<Span>>) {
            if let RibbonTree::Node(cs) = t {
                let mut kids = Vec::new();
                let mut s = start;
                for c in cs {
                    kids.push((s, s + c.inputs() - 1));
                    go(c, s, out);
                    s += c.inputs();
                }
                out.insert((start, start + t.inputs() - 1), kids);
            }
        }
        go(self, 1, &mut out);
        out
    }

    /// Substitute `other` for input `k` (1-based): the operadic composition
    /// `self ∘_k other`. Grafting the one-input tree is the identity.
    pub fn graft_at(&self, k: usize, other: &RibbonTree) -> Result<RibbonTree> {
        let d = self.inputs();
        if k == 0 || k > d {
            return Err(Error::InvalidArgument(format!("input {k} out of range 1..={d}")));
        }
        fn go(t: &RibbonTree, k: usize, other: &RibbonTree) -> RibbonTree {
            match t {
                RibbonTree::Leaf => other.clone(),
                RibbonTree::Node(cs) => {
                    let mut rest = k;
                    let mut out = Vec::with_capacity(cs.len());
                    for c in cs {
                        let n = c.inputs();
                        if rest >= 1 && rest <= n {
                            out.push(go(c, rest, other));
                        } else {
                            out.push(c.clone());
                        }
                        rest = rest.wrapping_sub(n);
                    }
                    RibbonTree::Node(out)
                }
            }
        }
        Ok(go(self, k, other))
    }

    /// Contract the internal edge with the given span, merging its upper
    /// vertex into the lower one. `None` if no internal edge has that span.
    pub fn contract(&self, span: Span) -> Option<RibbonTree> {
        fn go(t: &RibbonTree, start: usize, span: Span) -> Option<RibbonTree> {
            let RibbonTree::Node(cs) = t else { return None };
            let mut out = Vec::with_capacity(cs.len() + 2);
            let mut s = start;
            let mut found = false;
            for c in cs {
                let n = c.inputs();
                let cspan = (s, s + n - 1);
                match c {
                    RibbonTree::Node(gs) if cspan == span => {
                        out.extend(gs.iter().cloned());
                        found = true;
                    }
                    _ if !found && cspan.0 <= span.0 && span.1 <= cspan.1 => match go(c, s, span) {
                        Some(r) => {
                            out.push(r);
                            found = true;
                        }
                        None => out.push(c.clone()),
                    },
                    _ => out.push(c.clone()),
                }
                s += n;
            }
            found.then_some(RibbonTree::Node(out))
        }
        go(self, 1, span)
    }

    /// Replace the subtree above the internal edge with the given span by a
    /// single input.
    pub fn contract_to_leaf(&self, span: Span) -> Result<RibbonTree> {
        fn go(t: &RibbonTree, start: usize, span: Span) -> Option<RibbonTree> {
            let RibbonTree::Node(cs) = t else { return None };
            let mut out = Vec::with_capacity(cs.len());
            let mut s = start;
            let mut found = false;
            for c in cs {
                let n = c.inputs();
                let cspan = (s, s + n - 1);
                if !found && cspan == span && n >= 2 {
                    out.push(RibbonTree::Leaf);
                    found = true;
                } else if !found && cspan.0 <= span.0 && span.1 <= cspan.1 {
                    match go(c, s, span) {
                        Some(r) => {
                            out.push(r);
                            found = true;
                        }
                        None => out.push(c.clone()),
                    }
                } else {
                    out.push(c.clone());
                }
                s += n;
            }
            found.then_some(RibbonTree::Node(out))
        }
        if span == (1, self.inputs()) && self.inputs() >= 2 {
            return Ok(RibbonTree::Leaf);
        }
        go(self, 1, span).ok_or_else(|| Error::InvalidArgument(format!("no internal edge {span:?} in {self}")))
    }

    /// All trees obtained by splitting one vertex in two, i.e. by inserting a
    /// new internal edge above a contiguous proper range of at least two of
    /// its children. Each result contains one more internal edge.
    pub fn expansions(&self) -> Vec<RibbonTree> {
        let mut out = Vec::new();
        if let RibbonTree::Node(cs) = self {
            let m = cs.len();
            for i in 0..m {
                for j in i + 2..=m {
                    if j - i == m {
                        continue;
                    }
                    let mut v = cs[..i].to_vec();
                    v.push(RibbonTree::Node(cs[i..j].to_vec()));
                    v.extend(cs[j..].iter().cloned());
                    out.push(RibbonTree::Node(v));
                }
            }
            for (idx, c) in cs.iter().enumerate() {
                for e in c.expansions() {
                    let mut v = cs.clone();
                    v[idx] = e;
                    out.push(RibbonTree::Node(v));
                }
            }
        }
        out
    }

    /// All trees obtained by contracting one internal edge.
    pub fn contractions(&self) -> Vec<RibbonTree> {
        self.internal_spans()
            .into_iter()
            .filter_map(|s| self.contract(s))
            .collect()
    }
}

impl fmt::Display for RibbonTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RibbonTree::Leaf => write!(f, "x"),
            RibbonTree::Node(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub(crate) fn tree_from_sexp(e: &Sexp) -> Result<RibbonTree> {
    match e {
        Sexp::Atom(a) if a == "x" => Ok(RibbonTree::Leaf),
        Sexp::List('(', items) if items.len() >= 2 => Ok(RibbonTree::Node(
            items.iter().map(tree_from_sexp).collect::<Result<_>>()?,
        )),
        Sexp::List('(', _) => Err(Error::Parse("a vertex needs at least two children".into())),
        other => Err(Error::Parse(format!("expected a tree, found {other:?}"))),
    }
}

impl FromStr for RibbonTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        tree_from_sexp(&sexpr::parse(s)?)
    }
}

/// All stable planar trees with `n ≥ 1` inputs (for `n = 1` only the leaf).
fn all_trees(n: usize, memo: &mut BTreeMap<usize, Vec<RibbonTree>>) -> Vec<RibbonTree> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.push(RibbonTree::Leaf);
    } else {
        for parts in compositions(n) {
            if parts.len() < 2 {
                continue;
            }
            let options: Vec<Vec<RibbonTree>> = parts.iter().map(|&p| all_trees(p, memo)).collect();
            for choice in product(&options) {
                out.push(RibbonTree::Node(choice));
            }
        }
    }
    out.sort();
    memo.insert(n, out.clone());
    out
}

/// All combinatorial types of Stasheff trees with `d ≥ 2` inputs (every
/// vertex of valence at least three), sorted. Their number is the little
/// Schröder number; the trivalent ones are counted by Catalan numbers.
pub fn enumerate_tree_types(d: usize) -> Result<Vec<RibbonTree>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "Stasheff trees need d ≥ 2 inputs, got {d}"
        )));
    }
    Ok(all_trees(d, &mut BTreeMap::new()))
}

/// The trivalent types with `d ≥ 2` inputs.
pub fn trivalent_trees(d: usize) -> Result<Vec<RibbonTree>> {
    Ok(enumerate_tree_types(d)?
        .into_iter()
        .filter(RibbonTree::is_trivalent)
        .collect())
}

/// Codimension-one walls of T_d: types with exactly one four-valent vertex
/// and all other vertices trivalent.
pub fn walls(d: usize) -> Result<Vec<RibbonTree>> {
    Ok(enumerate_tree_types(d)?
        .into_iter()
        .filter(|t| t.internal_edges() + 3 == d)
        .collect())
}

/// Operadic composition `t1 ∘_k t2` (input `k` of `t1`, 1-based): the broken
/// tree naming a stratum of T̄_{d₁+d₂−1}. When both factors are corollas
/// with at least two inputs this is a codimension-one face.
pub fn graft(t1: &RibbonTree, t2: &RibbonTree, k: usize) -> Result<RibbonTree> {
    t1.graft_at(k, t2)
}

/// Labelled grafting: `s1`, `s2` are the label sequences of `t1`, `t2`. The
/// labels of input `k` of `t1`, `(s1[k−1], s1[k])`, must equal the outgoing
/// labels `(s2[0], s2[d₂])` of `t2`. Returns the grafted tree and its
/// sequence.
pub fn graft_labelled(
    t1: &RibbonTree,
    s1: &[u8],
    t2: &RibbonTree,
    s2: &[u8],
    k: usize,
) -> Result<(RibbonTree, Vec<u8>)> {
    let (d1, d2) = (t1.inputs(), t2.inputs());
    for (s, d) in [(s1, d1), (s2, d2)] {
        if s.len() != d + 1 {
            return Err(Error::LengthMismatch {
                expected: d + 1,
                found: s.len(),
            });
        }
    }
    let tree = graft(t1, t2, k)?;
    if (s1[k - 1], s1[k]) != (s2[0], s2[d2]) {
        return Err(Error::LabelMismatch(format!(
            "input {k} is labelled ({}, {}) but the grafted output is labelled ({}, {})",
            s1[k - 1],
            s1[k],
            s2[0],
            s2[d2]
        )));
    }
    let mut seq = s1[..k].to_vec();
    seq.extend_from_slice(&s2[1..d2]);
    seq.extend_from_slice(&s1[k..]);
    Ok((tree, seq))
}

/// A codimension-one face of T̄_d: a corolla with `d2` inputs grafted at
/// input `k` of a corolla with `d1` inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StasheffBreak {
    /// Inputs of the lower (outgoing) factor.
    pub d1: usize,
    /// Inputs of the upper factor.
    pub d2: usize,
    /// Input of the lower factor receiving the upper one (1-based).
    pub k: usize,
}

impl StasheffBreak {
    /// The broken tree of this face.
    pub fn tree(&self) -> RibbonTree {
        graft(&RibbonTree::corolla(self.d1), &RibbonTree::corolla(self.d2), self.k).expect("k in range")
    }
}

/// All codimension-one faces of T̄_d, from `d₁, d₂ ≥ 2`, `d₁ + d₂ − 1 = d`.
pub fn stasheff_boundary(d: usize) -> Vec<StasheffBreak> {
    let mut out = Vec::new();
    for d1 in 2..d {
        let d2 = d + 1 - d1;
        for k in 1..=d1 {
            out.push(StasheffBreak { d1, d2, k });
        }
    }
    out
}

/// Compositions of `n` (ordered partitions into positive parts).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compositions of `n` into exactly `r` positive parts.
pub fn compositions_into(n: usize, r: usize) -> Vec<Vec<usize>> {
    compositions(n).into_iter().filter(|c| c.len() == r).collect()
}

/// Cartesian product of option lists, in lexicographic order.
pub(crate) fn product<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RibbonTree {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["x", "(x x)", "((x x) x (x x x))"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!("(x)".parse::<RibbonTree>().is_err());
    }

    #[test]
    fn spans_and_contraction() {
        let tree = t("((x x) (x (x x)))");
        assert_eq!(tree.inputs(), 5);
        assert_eq!(tree.internal_spans(), vec![(1, 2), (3, 5), (4, 5)]);
        assert_eq!(tree.contract((3, 5)).unwrap(), t("((x x) x (x x))"));
        assert_eq!(tree.contract((2, 3)), None);
        assert_eq!(tree.contractions().len(), 3);
    }

    #[test]
    fn expansions_invert_contractions() {
        let tree = t("(x x x x)");
        let ex = tree.expansions();
        assert_eq!(ex.len(), 5);
        for e in &ex {
            assert!(e.contractions().contains(&tree));
        }
    }

    #[test]
    fn enumeration_small_cases() {
        assert!(enumerate_tree_types(1).is_err());
        assert_eq!(enumerate_tree_types(2).unwrap(), vec![t("(x x)")]);
        let three = enumerate_tree_types(3).unwrap();
        assert_eq!(three.len(), 3);
        assert_eq!(three.iter().filter(|t| t.is_trivalent()).count(), 2);
        assert_eq!(walls(4).unwrap().len(), 5);
    }

    #[test]
    fn grafting() {
        let c2 = RibbonTree::corolla(2);
        assert_eq!(graft(&c2, &c2, 1).unwrap(), t("((x x) x)"));
        assert_eq!(graft(&c2, &c2, 2).unwrap(), t("(x (x x))"));
        assert_eq!(graft(&c2, &RibbonTree::Leaf, 2).unwrap(), c2);
        assert!(graft(&c2, &c2, 3).is_err());
        let (tree, seq) = graft_labelled(&c2, &[1, 2, 1], &c2, &[2, 2, 1], 2).unwrap();
        assert_eq!(tree, t("(x (x x))"));
        assert_eq!(seq, vec![1, 2, 2, 1]);
        assert!(matches!(
            graft_labelled(&c2, &[1, 2, 1], &c2, &[1, 2, 1], 2),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions_into(5, 2).len(), 4);
    }
}
