//! Shrubs: metric ribbon trees with an infinite outgoing edge and finite
//! incoming edges whose endpoints are equidistant from the outgoing edge.
//!
//! A shrub with `d ≥ 2` inputs is determined by the common distance `ℓ > 0`
//! from the root vertex to the inputs and by a height `h(v) ∈ [0, ℓ]` for
//! every vertex (children strictly higher than parents once zero-length
//! internal edges are collapsed); edge lengths are differences of heights.
//! Storing the distance-to-output per input and requiring equality is what
//! makes equidistance a single parameter rather than a system of
//! constraints.
//!
//! The cells of the open space S_d are therefore indexed by a stable planar
//! tree together with the set of vertices sitting *at leaf level*
//! (`h(v) = ℓ`). Such a vertex has only inputs as children, all of length
//! zero; this is the image of the maps `∨_k`. See [`ShrubCell`].
//!
//! Strata of the compactification S̄_d with broken edges are products
//! `F × G₁ × … × G_r` where `F` is a face of T̄_r (`r ≥ 2`) and the `Gᵢ`
//! are cells of unbroken shrubs ([`ShrubFace`]). Coarsening cells to the
//! faces of the composihedron forgets the tree above the leaf-level
//! vertices ([`ShrubType`]).
//!
//! Text forms: a cell uses `x`, `(…)` for an ordinary vertex and `[x x …]`
//! for a leaf-level vertex; a broken face is `{U ; c₁ … c_r}` with `U` the
//! Stasheff tree above the breaking.

use super::sexpr::{self, Sexp};
use super::tree::{compositions, compositions_into, enumerate_tree_types, product, tree_from_sexp, RibbonTree};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A cell of the open moduli space of unbroken shrubs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShrubCell {
    /// An input (or the one-input shrub).
    Leaf,
    /// A vertex; `level` marks a vertex at leaf level (all children inputs of
    /// length zero).
    Node {
        /// Whether the vertex sits at leaf level.
        level: bool,
        /// Children in planar order.
        children: Vec<ShrubCell>,
    },
}

impl ShrubCell {
    /// Number of inputs.
    pub fn inputs(&self) -> usize {
        match self {
            ShrubCell::Leaf => 1,
            ShrubCell::Node { children, .. } => children.iter().map(ShrubCell::inputs).sum(),
        }
    }

    /// The underlying planar tree.
    pub fn tree(&self) -> RibbonTree {
        match self {
            ShrubCell::Leaf => RibbonTree::Leaf,
            ShrubCell::Node { children, .. } => RibbonTree::Node(children.iter().map(ShrubCell::tree).collect()),
        }
    }

    /// The cell of ordinary (non-level) vertices with the given tree.
    pub fn from_tree(t: &RibbonTree) -> ShrubCell {
        match t {
            RibbonTree::Leaf => ShrubCell::Leaf,
            RibbonTree::Node(cs) => ShrubCell::Node {
                level: false,
                children: cs.iter().map(ShrubCell::from_tree).collect(),
            },
        }
    }

    /// True iff every vertex has at least two children and every leaf-level
    /// vertex has only inputs as children.
    pub fn is_valid(&self) -> bool {
        match self {
            ShrubCell::Leaf => true,
            ShrubCell::Node { level, children } => {
                children.len() >= 2
                    && (!level || children.iter().all(|c| *c == ShrubCell::Leaf))
                    && children.iter().all(ShrubCell::is_valid)
            }
        }
    }

    /// Dimension: `ℓ` (unless the root is at leaf level) plus one height per
    /// non-root vertex not at leaf level.
    pub fn dim(&self) -> usize {
        fn free(c: &ShrubCell) -> usize {
            match c {
                ShrubCell::Leaf => 0,
                ShrubCell::Node { level, children } => usize::from(!level) + children.iter().map(free).sum::<usize>(),
            }
        }
        // At the root the free parameter is ℓ instead of a height.
        free(self)
    }

    /// Whether any vertex sits at leaf level.
    pub fn has_level_vertex(&self) -> bool {
        match self {
            ShrubCell::Leaf => false,
            ShrubCell::Node { level, children } => *level || children.iter().any(ShrubCell::has_level_vertex),
        }
    }

    /// Block sizes of the inputs grouped by leaf-level vertices, in order
    /// (inputs not under a leaf-level vertex form blocks of size one).
    pub fn blocks(&self) -> Vec<usize> {
        match self {
            ShrubCell::Leaf => vec![1],
            ShrubCell::Node { level: true, children } => vec![children.len()],
            ShrubCell::Node { children, .. } => children.iter().flat_map(ShrubCell::blocks).collect(),
        }
    }

    /// The leftmost leaf-level vertex: `(first input index (0-based), number of inputs)`.
    pub fn leftmost_level_vertex(&self) -> Option<(usize, usize)> {
        fn go(c: &ShrubCell, start: usize) -> Option<(usize, usize)> {
            match c {
                ShrubCell::Leaf => None,
                ShrubCell::Node { level: true, children } => Some((start, children.len())),
                ShrubCell::Node { children, .. } => {
                    let mut s = start;
                    for ch in children {
                        if let Some(x) = go(ch, s) {
                            return Some(x);
                        }
                        s += ch.inputs();
                    }
                    None
                }
            }
        }
        go(self, 0)
    }

    /// Replace the leftmost leaf-level vertex by a single input (the inverse
    /// of iterated `∨` maps). No-op if there is none.
    pub fn collapse_leftmost_level_vertex(&self) -> ShrubCell {
        fn go(c: &ShrubCell, done: &mut bool) -> ShrubCell {
            match c {
                ShrubCell::Leaf => ShrubCell::Leaf,
                ShrubCell::Node { level: true, .. } if !*done => {
                    *done = true;
                    ShrubCell::Leaf
                }
                ShrubCell::Node { level, children } => ShrubCell::Node {
                    level: *level,
                    children: children.iter().map(|ch| go(ch, done)).collect(),
                },
            }
        }
        go(self, &mut false)
    }

    /// Apply `∨` at input `j` (0-based): the input is replaced by two inputs
    /// of length zero meeting at a leaf-level vertex. If the input already
    /// hangs from a leaf-level vertex, that vertex gains a child.
    pub fn split_input(&self, j: usize) -> Result<ShrubCell> {
        let n = self.inputs();
        if j >= n {
            return Err(Error::InvalidArgument(format!("input {j} out of range 0..{n}")));
        }
        fn go(c: &ShrubCell, j: usize) -> ShrubCell {
            match c {
                ShrubCell::Leaf => ShrubCell::Node {
                    level: true,
                    children: vec![ShrubCell::Leaf, ShrubCell::Leaf],
                },
                ShrubCell::Node { level: true, children } => ShrubCell::Node {
                    level: true,
                    children: vec![ShrubCell::Leaf; children.len() + 1],
                },
                ShrubCell::Node { level, children } => {
                    let mut rest = j;
                    let mut out = Vec::with_capacity(children.len());
                    let mut done = false;
                    for ch in children {
                        let k = ch.inputs();
                        if !done && rest < k {
                            out.push(go(ch, rest));
                            done = true;
                        } else {
                            if !done {
                                rest -= k;
                            }
                            out.push(ch.clone());
                        }
                    }
                    ShrubCell::Node {
                        level: *level,
                        children: out,
                    }
                }
            }
        }
        Ok(go(self, j))
    }
}

impl fmt::Display for ShrubCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShrubCell::Leaf => write!(f, "x"),
            ShrubCell::Node { level, children } => {
                let (o, c) = if *level { ('[', ']') } else { ('(', ')') };
                write!(f, "{o}")?;
                for (i, ch) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{ch}")?;
                }
                write!(f, "{c}")
            }
        }
    }
}

fn cell_from_sexp(e: &Sexp) -> Result<ShrubCell> {
    let c = match e {
        Sexp::Atom(a) if a == "x" => ShrubCell::Leaf,
        Sexp::List(open @ ('(' | '['), items) => ShrubCell::Node {
            level: *open == '[',
            children: items.iter().map(cell_from_sexp).collect::<Result<_>>()?,
        },
        other => return Err(Error::Parse(format!("expected a shrub cell, found {other:?}"))),
    };
    if !c.is_valid() {
        return Err(Error::Parse(format!("invalid shrub cell {c}")));
    }
    Ok(c)
}

impl FromStr for ShrubCell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        cell_from_sexp(&sexpr::parse(s)?)
    }
}

/// All cells of the open moduli space S_d (`d ≥ 1`), sorted.
pub fn shrub_cells(d: usize) -> Vec<ShrubCell> {
    if d == 1 {
        return vec![ShrubCell::Leaf];
    }
    fn marks(t: &RibbonTree) -> Vec<ShrubCell> {
        match t {
            RibbonTree::Leaf => vec![ShrubCell::Leaf],
            RibbonTree::Node(cs) => {
                let options: Vec<Vec<ShrubCell>> = cs.iter().map(marks).collect();
                let mut out = Vec::new();
                for children in product(&options) {
                    out.push(ShrubCell::Node {
                        level: false,
                        children: children.clone(),
                    });
                }
                if cs.iter().all(|c| *c == RibbonTree::Leaf) {
                    out.push(ShrubCell::Node {
                        level: true,
                        children: vec![ShrubCell::Leaf; cs.len()],
                    });
                }
                out
            }
        }
    }
    let mut out: Vec<ShrubCell> = enumerate_tree_types(d).expect("d ≥ 2").iter().flat_map(marks).collect();
    out.sort();
    out
}

/// A stratum of S̄_d: an unbroken cell, or a Stasheff face with unbroken
/// shrub cells attached to its inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShrubFace {
    /// No broken edge.
    Cell(ShrubCell),
    /// Broken: `upper` has `r ≥ 2` inputs, `lower[k]` hangs from input `k+1`.
    Broken {
        /// The Stasheff tree above the breaking (all its internal edges broken).
        upper: RibbonTree,
        /// The unbroken shrubs below, one per input of `upper`.
        lower: Vec<ShrubCell>,
    },
}

impl ShrubFace {
    /// Number of inputs.
    pub fn inputs(&self) -> usize {
        self.cells().iter().map(ShrubCell::inputs).sum()
    }

    /// The unbroken cells, left to right.
    pub fn cells(&self) -> &[ShrubCell] {
        match self {
            ShrubFace::Cell(c) => std::slice::from_ref(c),
            ShrubFace::Broken { lower, .. } => lower,
        }
    }

    /// Dimension of the stratum.
    pub fn dim(&self) -> usize {
        match self {
            ShrubFace::Cell(c) => c.dim(),
            ShrubFace::Broken { upper, lower } => {
                upper.face_dim() as usize + lower.iter().map(ShrubCell::dim).sum::<usize>()
            }
        }
    }

    /// True iff the structure is well formed.
    pub fn is_valid(&self) -> bool {
        match self {
            ShrubFace::Cell(c) => c.is_valid(),
            ShrubFace::Broken { upper, lower } => {
                upper.is_stable()
                    && upper.inputs() >= 2
                    && upper.inputs() == lower.len()
                    && lower.iter().all(ShrubCell::is_valid)
            }
        }
    }

    fn map_cells(&self, cells: Vec<ShrubCell>) -> ShrubFace {
        match self {
            ShrubFace::Cell(_) => ShrubFace::Cell(cells.into_iter().next().expect("one cell")),
            ShrubFace::Broken { upper, .. } => ShrubFace::Broken {
                upper: upper.clone(),
                lower: cells,
            },
        }
    }

    /// Locate input `j` (0-based): `(cell index, index within the cell)`.
    pub fn locate_input(&self, j: usize) -> Option<(usize, usize)> {
        let mut rest = j;
        for (i, c) in self.cells().iter().enumerate() {
            if rest < c.inputs() {
                return Some((i, rest));
            }
            rest -= c.inputs();
        }
        None
    }

    /// Apply `∨` at input `j` (0-based); see [`ShrubCell::split_input`].
    pub fn split_input(&self, j: usize) -> Result<ShrubFace> {
        let (ci, local) = self
            .locate_input(j)
            .ok_or_else(|| Error::InvalidArgument(format!("input {j} out of range 0..{}", self.inputs())))?;
        let mut cells = self.cells().to_vec();
        cells[ci] = cells[ci].split_input(local)?;
        Ok(self.map_cells(cells))
    }

    /// The leftmost leaf-level vertex in global input numbering, collapsed.
    /// Returns `(first input, number of inputs, collapsed face)`.
    pub fn collapse_leftmost_level_vertex(&self) -> Option<(usize, usize, ShrubFace)> {
        let mut offset = 0;
        for (i, c) in self.cells().iter().enumerate() {
            if let Some((start, m)) = c.leftmost_level_vertex() {
                let mut cells = self.cells().to_vec();
                cells[i] = c.collapse_leftmost_level_vertex();
                return Some((offset + start, m, self.map_cells(cells)));
            }
            offset += c.inputs();
        }
        None
    }

    /// The face of the composihedron containing this stratum.
    pub fn coarse(&self) -> ShrubType {
        match self {
            ShrubFace::Cell(c) => ShrubType {
                upper: RibbonTree::Leaf,
                parts: vec![c.blocks()],
            },
            ShrubFace::Broken { upper, lower } => ShrubType {
                upper: upper.clone(),
                parts: lower.iter().map(ShrubCell::blocks).collect(),
            },
        }
    }
}

impl fmt::Display for ShrubFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShrubFace::Cell(c) => write!(f, "{c}"),
            ShrubFace::Broken { upper, lower } => {
                write!(f, "{{{upper} ;")?;
                for c in lower {
                    write!(f, " {c}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

pub(crate) fn face_from_sexp(e: &Sexp) -> Result<ShrubFace> {
    let face = match e {
        Sexp::List('{', items) => {
            if items.len() < 3 || !items[1].is_atom(";") {
                return Err(Error::Parse("expected {upper ; cells…}".into()));
            }
            ShrubFace::Broken {
                upper: tree_from_sexp(&items[0])?,
                lower: items[2..].iter().map(cell_from_sexp).collect::<Result<_>>()?,
            }
        }
        other => ShrubFace::Cell(cell_from_sexp(other)?),
    };
    if !face.is_valid() {
        return Err(Error::Parse(format!("invalid shrub face {face}")));
    }
    Ok(face)
}

impl FromStr for ShrubFace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        face_from_sexp(&sexpr::parse(s)?)
    }
}

/// All strata of S̄_d (`d ≥ 1`), sorted.
pub fn shrub_faces(d: usize) -> Vec<ShrubFace> {
    let mut out: Vec<ShrubFace> = shrub_cells(d).into_iter().map(ShrubFace::Cell).collect();
    for parts in compositions(d) {
        let r = parts.len();
        if r < 2 {
            continue;
        }
        let uppers = enumerate_tree_types(r).expect("r ≥ 2");
        let lowers: Vec<Vec<ShrubCell>> = parts.iter().map(|&p| shrub_cells(p)).collect();
        let lower_choices = product(&lowers);
        for u in &uppers {
            for l in &lower_choices {
                out.push(ShrubFace::Broken {
                    upper: u.clone(),
                    lower: l.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// A face of the composihedron S̄_d: a Stasheff face above (the leaf when
/// unbroken) and, for every lower shrub, its inputs grouped into blocks
/// meeting at a common leaf-level vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShrubType {
    /// Stasheff face above the breaking; `Leaf` when unbroken.
    pub upper: RibbonTree,
    /// Block sizes of each lower shrub.
    pub parts: Vec<Vec<usize>>,
}

impl ShrubType {
    /// Number of inputs.
    pub fn inputs(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    /// Dimension: the Stasheff face plus one less than the number of blocks
    /// of each lower shrub.
    pub fn dim(&self) -> usize {
        let up = if self.upper == RibbonTree::Leaf {
            0
        } else {
            self.upper.face_dim() as usize
        };
        up + self.parts.iter().map(|p| p.len() - 1).sum::<usize>()
    }

    /// Faces of one dimension more whose closure contains this one:
    /// contracting a broken Stasheff edge, splitting a block, or un-breaking
    /// all lower shrubs hanging from one Stasheff vertex.
    pub fn cofaces(&self) -> Vec<ShrubType> {
        let mut out = Vec::new();
        if self.upper != RibbonTree::Leaf {
            for up in self.upper.contractions() {
                out.push(ShrubType {
                    upper: up,
                    parts: self.parts.clone(),
                });
            }
        }
        for (i, p) in self.parts.iter().enumerate() {
            for (b, &size) in p.iter().enumerate() {
                for cut in 1..size {
                    let mut parts = self.parts.clone();
                    parts[i].splice(b..=b, [cut, size - cut]);
                    out.push(ShrubType {
                        upper: self.upper.clone(),
                        parts,
                    });
                }
            }
        }
        // Un-break at a Stasheff vertex whose children are all inputs.
        fn unbreak(t: &RibbonTree, start: usize, parts: &[Vec<usize>], out: &mut Vec<(RibbonTree, Vec<Vec<usize>>)>) {
            let RibbonTree::Node(cs) = t else { return };
            if cs.iter().all(|c| *c == RibbonTree::Leaf) {
                let merged: Vec<usize> = parts[start..start + cs.len()].iter().flatten().copied().collect();
                let mut p = parts[..start].to_vec();
                p.push(merged);
                p.extend_from_slice(&parts[start + cs.len()..]);
                out.push((RibbonTree::Leaf, p));
            }
            let mut s = start;
            for (idx, c) in cs.iter().enumerate() {
                let mut sub = Vec::new();
                unbreak(c, s, parts, &mut sub);
                for (replacement, p) in sub {
                    let mut kids = cs.clone();
                    kids[idx] = replacement;
                    out.push((RibbonTree::Node(kids), p));
                }
                s += c.inputs();
            }
        }
        if self.upper != RibbonTree::Leaf {
            let mut found = Vec::new();
            unbreak(&self.upper, 0, &self.parts, &mut found);
            for (upper, parts) in found {
                out.push(ShrubType { upper, parts });
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for ShrubType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} ;", self.upper)?;
        for p in &self.parts {
            let s: Vec<String> = p.iter().map(usize::to_string).collect();
            write!(f, " [{}]", s.join(" "))?;
        }
        write!(f, "}}")
    }
}

/// A codimension-one stratum of S̄_d.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShrubBoundary {
    /// `T̄_r × S̄_{d₁} × … × S̄_{d_r}`: the outputs of `r` shrubs attached to
    /// the inputs of a Stasheff tree. For `r = 1` this is the formal term
    /// with T̄₁ of dimension −1 (breaking of the outgoing edge).
    Tree {
        /// The partition `(d₁, …, d_r)`.
        parts: Vec<usize>,
    },
    /// `∨_k(S̄_{d−1})`: a pair of zero-length inputs grafted at input `k` of
    /// a shrub with `d − 1` inputs, so inputs `k` and `k+1` collapse.
    Collapse {
        /// Input of the smaller shrub receiving the pair (1-based).
        k: usize,
    },
}

impl ShrubBoundary {
    /// Dimension as a stratum of S̄_d (the formal T̄₁ counts −1).
    pub fn dim(&self, d: usize) -> i64 {
        match self {
            ShrubBoundary::Tree { parts } => parts.len() as i64 - 2 + parts.iter().map(|&p| p as i64 - 1).sum::<i64>(),
            ShrubBoundary::Collapse { .. } => d as i64 - 2,
        }
    }

    /// The composihedron face of this boundary stratum (`None` for the
    /// formal `r = 1` term).
    pub fn coarse(&self, d: usize) -> Option<ShrubType> {
        match self {
            ShrubBoundary::Tree { parts } if parts.len() >= 2 => Some(ShrubType {
                upper: RibbonTree::corolla(parts.len()),
                parts: parts.iter().map(|&p| vec![1; p]).collect(),
            }),
            ShrubBoundary::Tree { .. } => None,
            ShrubBoundary::Collapse { k } => {
                let mut blocks = vec![1; d - 1];
                blocks[k - 1] = 2;
                Some(ShrubType {
                    upper: RibbonTree::Leaf,
                    parts: vec![blocks],
                })
            }
        }
    }
}

impl fmt::Display for ShrubBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShrubBoundary::Tree { parts } => {
                let s: Vec<String> = parts.iter().map(usize::to_string).collect();
                write!(f, "(tree {})", s.join(" "))
            }
            ShrubBoundary::Collapse { k } => write!(f, "(collapse {k})"),
        }
    }
}

/// Boundary strata of S̄_d of the two families: the tree family with
/// exactly `r` lower shrubs (all partitions of `d` into `r` parts), and the
/// collapse family `∨_k`, `1 ≤ k ≤ d − 1`.
pub fn shrub_boundary_maps(r: usize, d: usize) -> Vec<ShrubBoundary> {
    let mut out: Vec<ShrubBoundary> = compositions_into(d, r)
        .into_iter()
        .map(|parts| ShrubBoundary::Tree { parts })
        .collect();
    out.extend((1..d).map(|k| ShrubBoundary::Collapse { k }));
    out
}

/// The geometric codimension-one faces of S̄_d: tree strata with `r ≥ 2`
/// and collapse strata.
pub fn shrub_boundary(d: usize) -> Vec<ShrubBoundary> {
    let mut out: Vec<ShrubBoundary> = (2..=d)
        .flat_map(|r| compositions_into(d, r))
        .map(|parts| ShrubBoundary::Tree { parts })
        .collect();
    out.extend((1..d).map(|k| ShrubBoundary::Collapse { k }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_of_small_shrubs() {
        assert_eq!(shrub_cells(1), vec![ShrubCell::Leaf]);
        let two = shrub_cells(2);
        assert_eq!(two.len(), 2);
        let dims: Vec<usize> = two.iter().map(ShrubCell::dim).collect();
        assert_eq!(dims, vec![1, 0]);
    }

    #[test]
    fn faces_of_the_interval() {
        let faces = shrub_faces(2);
        assert_eq!(faces.len(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim() == 0).count(), 2);
    }

    #[test]
    fn text_round_trip() {
        for s in ["x", "((x x) [x x x])", "{(x x) ; x [x x]}"] {
            let f: ShrubFace = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("[(x x) x]".parse::<ShrubFace>().is_err());
        assert!("{(x x) ; x}".parse::<ShrubFace>().is_err());
    }

    #[test]
    fn split_and_collapse_are_inverse() {
        let f: ShrubFace = "{(x x) ; x (x x)}".parse().unwrap();
        let g = f.split_input(2).unwrap();
        assert_eq!(g.to_string(), "{(x x) ; x (x [x x])}");
        let (start, m, back) = g.collapse_leftmost_level_vertex().unwrap();
        assert_eq!((start, m), (2, 2));
        assert_eq!(back, f);
        assert_eq!(g.split_input(3).unwrap().to_string(), "{(x x) ; x (x [x x x])}");
    }

    #[test]
    fn boundary_families() {
        assert_eq!(shrub_boundary_maps(1, 1), vec![ShrubBoundary::Tree { parts: vec![1] }]);
        let two = shrub_boundary_maps(2, 2);
        assert_eq!(two.len(), 2);
        for d in 1..=5 {
            for r in 1..=d {
                for b in shrub_boundary_maps(r, d) {
                    assert_eq!(b.dim(d), d as i64 - 2);
                }
            }
        }
    }
}
