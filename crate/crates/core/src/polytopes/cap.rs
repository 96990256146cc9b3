//! Caps: discs with `d + 2` boundary marked points, two successive ones
//! outgoing (`v₁ᵒᵘᵗ`, `v₂ᵒᵘᵗ`) and `d` incoming.
//!
//! Going around the boundary the marked points are
//! `v₁ᵒᵘᵗ, in₁, …, in_d, v₂ᵒᵘᵗ`. A cap type is stored as the planar tree of
//! its nodal disc rooted at `v₂ᵒᵘᵗ`, whose inputs are then
//! `v₁ᵒᵘᵗ, in₁, …, in_d`. [`CapType::to_disc`] re-roots it at `v₁ᵒᵘᵗ`,
//! giving a Stasheff tree with inputs `in₁, …, in_d, v₂ᵒᵘᵗ`: the
//! identification P̄_d ≅ R̄_{d+1} sending `v₁ᵒᵘᵗ` to the outgoing point.
//!
//! In disc form, the vertices on the path from the root to the last input
//! are the components meeting the arc between the two outgoing points. A
//! cap whose disc form has more than one such vertex is a gluing `A ∘ B` of
//! smaller caps ([`CapType::glue`] grafts `B` at the last input of `A`).

use super::tree::{enumerate_tree_types, RibbonTree};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Re-root a planar tree at input `leaf` (1-based). The old outgoing leaf
/// becomes an input; the inputs of the result are, in order, the old inputs
/// `leaf+1, …, d`, the old outgoing leaf, then `1, …, leaf−1`.
pub fn reroot(t: &RibbonTree, leaf: usize) -> Result<RibbonTree> {
    let d = t.inputs();
    if leaf == 0 || leaf > d {
        return Err(Error::InvalidArgument(format!("input {leaf} out of range 1..={d}")));
    }
    // Unrooted graph: node 0 is the old outgoing leaf; each node stores its
    // neighbours in cyclic order.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut is_leaf = vec![true];
    let mut leaf_node = vec![0usize; d + 1];
    fn build(
        t: &RibbonTree,
        parent: usize,
        adj: &mut Vec<Vec<usize>>,
        is_leaf: &mut Vec<bool>,
        leaf_node: &mut [usize],
        next_input: &mut usize,
    ) -> usize {
        let id = adj.len();
        adj.push(vec![parent]);
        match t {
            RibbonTree::Leaf => {
                is_leaf.push(true);
                *next_input += 1;
                leaf_node[*next_input] = id;
            }
            RibbonTree::Node(cs) => {
                is_leaf.push(false);
                for c in cs {
                    let cid = build(c, id, adj, is_leaf, leaf_node, next_input);
                    adj[id].push(cid);
                }
            }
        }
        id
    }
    let mut next_input = 0;
    let top = build(t, 0, &mut adj, &mut is_leaf, &mut leaf_node, &mut next_input);
    adj[0].push(top);

    fn descend(node: usize, from: usize, adj: &[Vec<usize>], is_leaf: &[bool]) -> RibbonTree {
        if is_leaf[node] {
            return RibbonTree::Leaf;
        }
        let nb = &adj[node];
        let pos = nb.iter().position(|&x| x == from).expect("adjacent");
        let kids = (1..nb.len())
            .map(|i| descend(nb[(pos + i) % nb.len()], node, adj, is_leaf))
            .collect();
        RibbonTree::Node(kids)
    }
    let start = leaf_node[leaf];
    Ok(descend(adj[start][0], start, &adj, &is_leaf))
}

/// Combinatorial type of a (possibly nodal) cap with `d ≥ 1` inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CapType {
    /// Nodal-disc tree rooted at `v₂ᵒᵘᵗ`; inputs `v₁ᵒᵘᵗ, in₁, …, in_d`.
    pub tree: RibbonTree,
}

impl CapType {
    /// Wrap a tree rooted at `v₂ᵒᵘᵗ`; it needs at least two inputs and every
    /// vertex at least two children.
    pub fn new(tree: RibbonTree) -> Result<CapType> {
        if tree.inputs() < 2 || !tree.is_stable() {
            return Err(Error::InvalidArgument(format!("not a cap tree: {tree}")));
        }
        Ok(CapType { tree })
    }

    /// The smooth cap with `d` inputs.
    pub fn top(d: usize) -> CapType {
        CapType {
            tree: RibbonTree::corolla(d + 1),
        }
    }

    /// Number of incoming marked points.
    pub fn inputs(&self) -> usize {
        self.tree.inputs() - 1
    }

    /// Dimension of the stratum: `d − 1` minus the number of nodes.
    pub fn dim(&self) -> usize {
        self.tree.face_dim() as usize
    }

    /// The disc type in R̄_{d+1}, rooted at `v₁ᵒᵘᵗ`.
    pub fn to_disc(&self) -> RibbonTree {
        reroot(&self.tree, 1).expect("caps have at least two inputs")
    }

    /// Inverse of [`CapType::to_disc`].
    pub fn from_disc(disc: &RibbonTree) -> Result<CapType> {
        let n = disc.inputs();
        if n < 2 || !disc.is_stable() {
            return Err(Error::InvalidArgument(format!(
                "not a disc type with ≥ 2 inputs: {disc}"
            )));
        }
        CapType::new(reroot(disc, n)?)
    }

    /// Number of disc components meeting the arc between the two outgoing
    /// points.
    pub fn arc_components(&self) -> usize {
        let mut n = 0;
        let mut v = self.to_disc();
        loop {
            n += 1;
            match v {
                RibbonTree::Node(mut cs) => match cs.pop() {
                    Some(last @ RibbonTree::Node(_)) => v = last,
                    _ => return n,
                },
                RibbonTree::Leaf => return n,
            }
        }
    }

    /// True iff the cap is a gluing of two smaller caps.
    pub fn is_decomposable(&self) -> bool {
        self.arc_components() > 1
    }

    /// The gluing `a ∘ b`: `b`'s disc grafted at the last input of `a`'s.
    pub fn glue(a: &CapType, b: &CapType) -> CapType {
        let da = a.to_disc();
        let g = da.graft_at(da.inputs(), &b.to_disc()).expect("last input exists");
        CapType::from_disc(&g).expect("glued disc is stable")
    }

    /// All ways of writing the cap as `a ∘ b`.
    pub fn splittings(&self) -> Vec<(CapType, CapType)> {
        let mut out = Vec::new();
        let disc = self.to_disc();
        // Walk down the arc, cutting below each non-root arc vertex.
        fn go(t: &RibbonTree, out: &mut Vec<(RibbonTree, RibbonTree)>) {
            let RibbonTree::Node(cs) = t else { return };
            let last = cs.last().expect("vertex has children");
            if let RibbonTree::Node(_) = last {
                let mut a = cs.clone();
                *a.last_mut().unwrap() = RibbonTree::Leaf;
                out.push((RibbonTree::Node(a), last.clone()));
                let mut sub = Vec::new();
                go(last, &mut sub);
                for (upper, lower) in sub {
                    let mut a = cs.clone();
                    *a.last_mut().unwrap() = upper;
                    out.push((RibbonTree::Node(a), lower));
                }
            }
        }
        let mut pairs = Vec::new();
        go(&disc, &mut pairs);
        for (a, b) in pairs {
            out.push((
                CapType::from_disc(&a).expect("stable"),
                CapType::from_disc(&b).expect("stable"),
            ));
        }
        out
    }

    /// The off-arc structure: for every incoming slot along the arc, in
    /// order, either an input or a bubbled-off disc (a Stasheff tree).
    pub fn arc_children(&self) -> Vec<RibbonTree> {
        let mut out = Vec::new();
        let mut v = self.to_disc();
        while let RibbonTree::Node(mut cs) = v {
            let last = cs.pop().expect("vertex has children");
            out.extend(cs);
            v = last;
        }
        out
    }
}

impl fmt::Display for CapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_disc())
    }
}

impl FromStr for CapType {
    type Err = Error;
    /// Parses the disc form (rooted at `v₁ᵒᵘᵗ`, last input `v₂ᵒᵘᵗ`).
    fn from_str(s: &str) -> Result<Self> {
        CapType::from_disc(&s.parse()?)
    }
}

/// Map a cap type to its disc type in R̄_{d+1}.
pub fn cap_to_disc(cap: &CapType) -> RibbonTree {
    cap.to_disc()
}

/// Inverse of [`cap_to_disc`].
pub fn disc_to_cap(disc: &RibbonTree) -> Result<CapType> {
    CapType::from_disc(disc)
}

/// All strata of P̄_d (`d ≥ 1`), sorted by their disc form.
pub fn cap_types(d: usize) -> Vec<CapType> {
    enumerate_tree_types(d + 1)
        .expect("d + 1 ≥ 2")
        .iter()
        .map(|t| CapType::from_disc(t).expect("stable"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RibbonTree {
        s.parse().unwrap()
    }

    #[test]
    fn reroot_moves_the_outgoing_leaf() {
        // Inputs 1,2,3 of (x (x x)); rerooting at 1 lists 2, 3, old root.
        assert_eq!(reroot(&t("(x (x x))"), 1).unwrap(), t("((x x) x)"));
        assert_eq!(reroot(&t("(x x)"), 2).unwrap(), t("(x x)"));
        for tree in enumerate_tree_types(5).unwrap() {
            for leaf in 1..=5 {
                let r = reroot(&tree, leaf).unwrap();
                assert_eq!(reroot(&r, 5 - leaf + 1).unwrap(), tree);
            }
        }
    }

    #[test]
    fn disc_round_trip() {
        for d in 1..=5 {
            for cap in cap_types(d) {
                assert_eq!(cap.inputs(), d);
                assert_eq!(CapType::from_disc(&cap.to_disc()).unwrap(), cap);
            }
        }
        assert_eq!(CapType::top(1).to_disc(), t("(x x)"));
    }

    #[test]
    fn gluing_and_splitting() {
        let one = CapType::top(1);
        let g = CapType::glue(&one, &one);
        assert_eq!(g.to_disc(), t("(x (x x))"));
        assert!(g.is_decomposable());
        assert_eq!(g.splittings(), vec![(one.clone(), one.clone())]);
        assert!(!CapType::top(3).is_decomposable());
        assert_eq!(g.arc_children(), vec![RibbonTree::Leaf, RibbonTree::Leaf]);
        let bubbled: CapType = "((x x) x)".parse().unwrap();
        assert_eq!(bubbled.arc_children(), vec![t("(x x)")]);
    }
}
