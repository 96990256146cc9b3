//! Mushrooms: a stem (a shrub with `r` inputs) whose inputs carry caps with
//! `d₁, …, d_r` inputs, modulo the stable-mushroom relation.
//!
//! The relation identifies `(∨_k(s), p₁, …, p_r)` with
//! `(s, p₁, …, p_k ∘ p_{k+1}, …, p_r)`: two successive zero-length stem
//! inputs are the same configuration as a single stem input carrying the
//! glued cap. [`normalize_mushroom`] rewrites leftmost-first until no stem
//! vertex sits at leaf level, which gives canonical representatives.
//!
//! The resulting stratification of C̄_d refines the face lattice of the
//! multiplihedron: walls where the stem has zero-length inputs, or where a
//! cap is glued from smaller caps, or where stem edges have length zero,
//! are interior. [`Mushroom::coarse`] sends a stratum to the face containing
//! it, described as a [`Painted`] tree: Stasheff vertices above (broken stem
//! edges), one functor vertex per unbroken lower stem, and disc bubbles
//! below (cap components off the outgoing arc).
//!
//! Text forms: a mushroom is `<stem | cap₁ … cap_r>` with caps in disc form;
//! a painted tree is `x`, `(p₁ p₂ …)` for a Stasheff vertex or `f(t₁ …)` for a
//! functor vertex over source trees `tᵢ`.

use super::cap::{cap_types, CapType};
use super::sexpr::{self, Sexp};
use super::shrub::{face_from_sexp, shrub_faces, ShrubCell, ShrubFace};
use super::tree::{compositions, product, tree_from_sexp, RibbonTree};
use crate::error::{Error, Result};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// A stratum of the disjoint union `⊔ S̄_r × P̄_{d₁} × … × P̄_{d_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mushroom {
    /// The stem, a shrub stratum with `r` inputs.
    pub stem: ShrubFace,
    /// One cap per stem input.
    pub caps: Vec<CapType>,
}

impl Mushroom {
    /// Build a mushroom, checking that the stem has one input per cap.
    pub fn new(stem: ShrubFace, caps: Vec<CapType>) -> Result<Mushroom> {
        if stem.inputs() != caps.len() || !stem.is_valid() {
            return Err(Error::InvalidArgument(format!(
                "stem {stem} does not match {} caps",
                caps.len()
            )));
        }
        Ok(Mushroom { stem, caps })
    }

    /// The smooth mushroom with `d` inputs and a single cap.
    pub fn top(d: usize) -> Mushroom {
        Mushroom {
            stem: ShrubFace::Cell(ShrubCell::Leaf),
            caps: vec![CapType::top(d)],
        }
    }

    /// The partition `(d₁, …, d_r)`.
    pub fn partition(&self) -> Vec<usize> {
        self.caps.iter().map(CapType::inputs).collect()
    }

    /// Total number of inputs `d`.
    pub fn inputs(&self) -> usize {
        self.partition().iter().sum()
    }

    /// Dimension of the stratum.
    pub fn dim(&self) -> usize {
        self.stem.dim() + self.caps.iter().map(CapType::dim).sum::<usize>()
    }

    /// Whether the stem has two successive zero-length inputs.
    pub fn is_normal(&self) -> bool {
        !self.stem.cells().iter().any(ShrubCell::has_level_vertex)
    }

    /// Inverse relation move: split cap `j` (0-based) as `a ∘ b` using its
    /// `which`-th splitting and apply `∨` to stem input `j`. `None` if cap
    /// `j` is not decomposable or `which` is out of range.
    pub fn unglue(&self, j: usize, which: usize) -> Option<Mushroom> {
        let (a, b) = self.caps.get(j)?.splittings().into_iter().nth(which)?;
        let stem = self.stem.split_input(j).ok()?;
        let mut caps = self.caps[..j].to_vec();
        caps.push(a);
        caps.push(b);
        caps.extend_from_slice(&self.caps[j + 1..]);
        Some(Mushroom { stem, caps })
    }

    /// The face of the multiplihedron containing this stratum.
    pub fn coarse(&self) -> Painted {
        let m = normalize_mushroom(self);
        let mut next_cap = 0;
        let mut f_node = |cell: &ShrubCell| {
            let mut kids = Vec::new();
            for _ in 0..cell.inputs() {
                kids.extend(m.caps[next_cap].arc_children());
                next_cap += 1;
            }
            Painted::F(kids)
        };
        match &m.stem {
            ShrubFace::Cell(c) => f_node(c),
            ShrubFace::Broken { upper, lower } => {
                let mut fs: Vec<Painted> = lower.iter().map(&mut f_node).collect::<Vec<_>>();
                fs.reverse();
                fn build(t: &RibbonTree, fs: &mut Vec<Painted>) -> Painted {
                    match t {
                        RibbonTree::Leaf => fs.pop().expect("one F node per lower shrub"),
                        RibbonTree::Node(cs) => Painted::Upper(cs.iter().map(|c| build(c, fs)).collect()),
                    }
                }
                build(upper, &mut fs)
            }
        }
    }
}

impl fmt::Display for Mushroom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.stem)?;
        for c in &self.caps {
            write!(f, " {c}")?;
        }
        write!(f, ">")
    }
}

impl FromStr for Mushroom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match sexpr::parse(s)? {
            Sexp::List('<', items) if items.len() >= 3 && items[1].is_atom("|") => {
                let stem = face_from_sexp(&items[0])?;
                let caps = items[2..]
                    .iter()
                    .map(|e| CapType::from_disc(&tree_from_sexp(e)?))
                    .collect::<Result<Vec<_>>>()?;
                Mushroom::new(stem, caps).map_err(|e| Error::Parse(e.to_string()))
            }
            other => Err(Error::Parse(format!("expected <stem | caps…>, found {other:?}"))),
        }
    }
}

/// Canonical representative of the stable-mushroom class: repeatedly take
/// the leftmost stem vertex at leaf level, replace it by a single input and
/// glue the caps on its inputs, left to right. Idempotent.
pub fn normalize_mushroom(m: &Mushroom) -> Mushroom {
    let mut cur = m.clone();
    while let Some((start, count, stem)) = cur.stem.collapse_leftmost_level_vertex() {
        let glued = cur.caps[start + 1..start + count]
            .iter()
            .fold(cur.caps[start].clone(), |acc, c| CapType::glue(&acc, c));
        let mut caps = cur.caps[..start].to_vec();
        caps.push(glued);
        caps.extend_from_slice(&cur.caps[start + count..]);
        cur = Mushroom { stem, caps };
    }
    cur
}

/// A face of the multiplihedron: Stasheff (target) vertices above, functor
/// vertices in the middle, source trees below.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Painted {
    /// A target vertex with at least two children.
    Upper(Vec<Painted>),
    /// A functor vertex over at least one source tree.
    F(Vec<RibbonTree>),
}

impl Painted {
    /// Number of inputs.
    pub fn inputs(&self) -> usize {
        match self {
            Painted::Upper(cs) => cs.iter().map(Painted::inputs).sum(),
            Painted::F(ts) => ts.iter().map(RibbonTree::inputs).sum(),
        }
    }

    /// Dimension: `Σ(a − 2)` over target and source vertices plus `Σ(a − 1)`
    /// over functor vertices, `a` the number of children.
    pub fn dim(&self) -> usize {
        fn src(t: &RibbonTree) -> usize {
            match t {
                RibbonTree::Leaf => 0,
                RibbonTree::Node(cs) => cs.len() - 2 + cs.iter().map(src).sum::<usize>(),
            }
        }
        match self {
            Painted::Upper(cs) => cs.len() - 2 + cs.iter().map(Painted::dim).sum::<usize>(),
            Painted::F(ts) => ts.len() - 1 + ts.iter().map(src).sum::<usize>(),
        }
    }

    /// True iff vertices have the required numbers of children.
    pub fn is_valid(&self) -> bool {
        match self {
            Painted::Upper(cs) => cs.len() >= 2 && cs.iter().all(Painted::is_valid),
            Painted::F(ts) => !ts.is_empty() && ts.iter().all(RibbonTree::is_stable),
        }
    }

    /// Faces of one dimension more containing this one: contract a target or
    /// source edge, absorb a source vertex into its functor vertex, or merge
    /// a target vertex whose children are all functor vertices.
    pub fn cofaces(&self) -> Vec<Painted> {
        let mut out = Vec::new();
        match self {
            Painted::F(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if let RibbonTree::Node(cs) = t {
                        let mut v = ts[..i].to_vec();
                        v.extend(cs.iter().cloned());
                        v.extend_from_slice(&ts[i + 1..]);
                        out.push(Painted::F(v));
                    }
                    for c in t.contractions() {
                        let mut v = ts.clone();
                        v[i] = c;
                        out.push(Painted::F(v));
                    }
                }
            }
            Painted::Upper(cs) => {
                if cs.iter().all(|c| matches!(c, Painted::F(_))) {
                    let merged = cs
                        .iter()
                        .flat_map(|c| match c {
                            Painted::F(ts) => ts.clone(),
                            Painted::Upper(_) => unreachable!(),
                        })
                        .collect();
                    out.push(Painted::F(merged));
                }
                for (i, c) in cs.iter().enumerate() {
                    if let Painted::Upper(gs) = c {
                        let mut v = cs[..i].to_vec();
                        v.extend(gs.iter().cloned());
                        v.extend_from_slice(&cs[i + 1..]);
                        out.push(Painted::Upper(v));
                    }
                    for cf in c.cofaces() {
                        let mut v = cs.clone();
                        v[i] = cf;
                        out.push(Painted::Upper(v));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Painted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, items): (&str, Vec<String>) = match self {
            Painted::Upper(cs) => ("", cs.iter().map(Painted::to_string).collect()),
            Painted::F(ts) => ("f", ts.iter().map(RibbonTree::to_string).collect()),
        };
        write!(f, "{head}({})", items.join(" "))
    }
}

/// A codimension-one stratum of C̄_d.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MushroomBoundary {
    /// `r ≥ 2` mushrooms grafted at the inputs of a Stasheff tree.
    StemBreak {
        /// The partition `(d₁, …, d_r)`.
        parts: Vec<usize>,
    },
    /// A disc with `d2 ≥ 2` inputs attached at input `k` of a mushroom with
    /// `d1` inputs.
    DiscBubble {
        /// Inputs of the mushroom.
        d1: usize,
        /// Inputs of the disc.
        d2: usize,
        /// Input receiving the disc (1-based).
        k: usize,
    },
}

impl MushroomBoundary {
    /// Dimension (always `d − 2`).
    pub fn dim(&self) -> usize {
        match self {
            MushroomBoundary::StemBreak { parts } => parts.len() - 2 + parts.iter().map(|p| p - 1).sum::<usize>(),
            MushroomBoundary::DiscBubble { d1, d2, .. } => d1 - 1 + d2 - 2,
        }
    }

    /// The multiplihedron face.
    pub fn painted(&self) -> Painted {
        match self {
            MushroomBoundary::StemBreak { parts } => {
                Painted::Upper(parts.iter().map(|&p| Painted::F(vec![RibbonTree::Leaf; p])).collect())
            }
            MushroomBoundary::DiscBubble { d1, d2, k } => {
                let mut ts = vec![RibbonTree::Leaf; *d1];
                ts[k - 1] = RibbonTree::corolla(*d2);
                Painted::F(ts)
            }
        }
    }

    /// A representative mushroom stratum of the top part of this face.
    pub fn representative(&self) -> Mushroom {
        match self {
            MushroomBoundary::StemBreak { parts } => Mushroom {
                stem: ShrubFace::Broken {
                    upper: RibbonTree::corolla(parts.len()),
                    lower: vec![ShrubCell::Leaf; parts.len()],
                },
                caps: parts.iter().map(|&p| CapType::top(p)).collect(),
            },
            MushroomBoundary::DiscBubble { d1, d2, k } => {
                let mut kids = vec![RibbonTree::Leaf; d1 + 1];
                kids[k - 1] = RibbonTree::corolla(*d2);
                Mushroom {
                    stem: ShrubFace::Cell(ShrubCell::Leaf),
                    caps: vec![CapType::from_disc(&RibbonTree::Node(kids)).expect("stable")],
                }
            }
        }
    }
}

impl fmt::Display for MushroomBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MushroomBoundary::StemBreak { parts } => {
                let s: Vec<String> = parts.iter().map(usize::to_string).collect();
                write!(f, "(stem-break {})", s.join(" "))
            }
            MushroomBoundary::DiscBubble { d1, d2, k } => write!(f, "(disc {d1} {d2} {k})"),
        }
    }
}

/// The top boundary strata of C̄_d (`d ≥ 1`): stem breakings over every
/// partition into `r ≥ 2` parts, and a disc with `d₂ ≥ 2` inputs attached at
/// each input `k` of a mushroom with `d₁ = d − d₂ + 1` inputs.
pub fn mushroom_boundary(d: usize) -> Vec<MushroomBoundary> {
    let mut out: Vec<MushroomBoundary> = compositions(d)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(|parts| MushroomBoundary::StemBreak { parts })
        .collect();
    for d2 in 2..=d {
        let d1 = d + 1 - d2;
        for k in 1..=d1 {
            out.push(MushroomBoundary::DiscBubble { d1, d2, k });
        }
    }
    out
}

/// Every stratum of `⊔ S̄_r × Π P̄_{d_k}` with `d` inputs, normalized,
/// without duplicates. Keys are normal forms.
pub fn mushroom_strata(d: usize) -> BTreeSet<Mushroom> {
    let mut out = BTreeSet::new();
    for parts in compositions(d) {
        let stems = shrub_faces(parts.len());
        let caps: Vec<Vec<CapType>> = parts.iter().map(|&p| cap_types(p)).collect();
        let cap_choices = product(&caps);
        for s in &stems {
            for cs in &cap_choices {
                out.insert(normalize_mushroom(&Mushroom {
                    stem: s.clone(),
                    caps: cs.clone(),
                }));
            }
        }
    }
    out
}

/// The faces of C̄_d obtained by coarsening all mushroom strata, each with
/// the largest dimension of a stratum it contains.
pub fn mushroom_faces(d: usize) -> BTreeMap<Painted, usize> {
    let mut out: BTreeMap<Painted, usize> = BTreeMap::new();
    for m in mushroom_strata(d) {
        let dim = m.dim();
        let e = out.entry(m.coarse()).or_insert(0);
        *e = (*e).max(dim);
    }
    out
}

/// Dimension of C̄_d: the largest dimension of a mushroom stratum.
///
/// A stratum's dimension is its stem's plus its caps', so the maximum is
/// taken per composition over stems and caps independently rather than
/// over the (much larger) product.
pub fn mushroom_dim(d: usize) -> usize {
    let mut stem_dim: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cap_dim: BTreeMap<usize, usize> = BTreeMap::new();
    compositions(d)
        .into_iter()
        .map(|parts| {
            let stem = *stem_dim
                .entry(parts.len())
                .or_insert_with(|| shrub_faces(parts.len()).iter().map(ShrubFace::dim).max().unwrap_or(0));
            let caps: usize = parts
                .iter()
                .map(|&p| {
                    *cap_dim
                        .entry(p)
                        .or_insert_with(|| cap_types(p).iter().map(CapType::dim).max().unwrap_or(0))
                })
                .sum();
            stem + caps
        })
        .max()
        .unwrap_or(0)
}

fn random_cell<R: Rng>(d: usize, rng: &mut R) -> ShrubCell {
    if d == 1 {
        return ShrubCell::Leaf;
    }
    if rng.gen_bool(0.3) {
        return ShrubCell::Node {
            level: true,
            children: vec![ShrubCell::Leaf; d],
        };
    }
    let parts = random_composition(d, 2, rng);
    ShrubCell::Node {
        level: false,
        children: parts.into_iter().map(|p| random_cell(p, rng)).collect(),
    }
}

fn random_tree<R: Rng>(d: usize, rng: &mut R) -> RibbonTree {
    if d == 1 {
        return RibbonTree::Leaf;
    }
    let parts = random_composition(d, 2, rng);
    RibbonTree::Node(parts.into_iter().map(|p| random_tree(p, rng)).collect())
}

/// A random composition of `d` into at least `min_parts` parts (`d ≥ min_parts`).
fn random_composition<R: Rng>(d: usize, min_parts: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let mut parts = Vec::new();
        let mut cur = 1;
        for _ in 1..d {
            if rng.gen_bool(0.5) {
                parts.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        parts.push(cur);
        if parts.len() >= min_parts {
            return parts;
        }
    }
}

/// A random mushroom stratum with `d` inputs (not necessarily normal).
pub fn random_mushroom<R: Rng>(d: usize, rng: &mut R) -> Mushroom {
    let parts = random_composition(d, 1, rng);
    let r = parts.len();
    let stem = if r >= 2 && rng.gen_bool(0.5) {
        let lower_parts = random_composition(r, 2, rng);
        ShrubFace::Broken {
            upper: random_tree(lower_parts.len(), rng),
            lower: lower_parts.into_iter().map(|p| random_cell(p, rng)).collect(),
        }
    } else {
        ShrubFace::Cell(random_cell(r, rng))
    };
    let caps = parts
        .iter()
        .map(|&p| CapType::from_disc(&random_tree(p + 1, rng)).expect("stable"))
        .collect();
    Mushroom { stem, caps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_input_gluing_relation() {
        let split: Mushroom = "<[x x] | (x x) (x x)>".parse().unwrap();
        let joined: Mushroom = "<x | (x (x x))>".parse().unwrap();
        assert_eq!(normalize_mushroom(&split), joined);
        assert_eq!(normalize_mushroom(&joined), joined);
        assert_eq!(joined.unglue(0, 0).unwrap(), split);
    }

    #[test]
    fn interval_faces() {
        let faces = mushroom_faces(2);
        let mut dims: Vec<(String, usize)> = faces.iter().map(|(p, &d)| (p.to_string(), d)).collect();
        dims.sort();
        assert_eq!(
            dims,
            vec![
                ("(f(x) f(x))".to_string(), 0),
                ("f((x x))".to_string(), 0),
                ("f(x x)".to_string(), 1)
            ]
        );
        assert_eq!(mushroom_boundary(2).len(), 2);
        assert!(mushroom_boundary(1).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let m: Mushroom = "<{(x x) ; x [x x]} | (x x) ((x x) x) (x x)>".parse().unwrap();
        assert_eq!(m.to_string(), "<{(x x) ; x [x x]} | (x x) ((x x) x) (x x)>");
        assert_eq!(m.partition(), vec![1, 2, 1]);
        assert!("<x | (x x) (x x)>".parse::<Mushroom>().is_err());
    }
}
