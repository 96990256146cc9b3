//! Edge orderings of trivalent trees and the orientation forms they define
//! on the open strata of Stasheff trees and shrubs.

use crate::error::{Error, Result};
use crate::polytopes::{trivalent_trees, walls, RibbonTree, Span};
use crate::report::Report;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt;

/// How the edge `e_k` was chosen at the vertex `b_k` where the arcs from
/// inputs `k−1` and `k` meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeChoice {
    /// The edge arriving from input `k−1` (`e_k = e_kʳ`).
    Right,
    /// The edge below `b_k` (`e_k = e_kᵈ`), taken when `e_kʳ` is already used.
    Down,
}

/// The ordering `e₃, …, e_d` of the internal edges of a trivalent tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    /// Internal edges (by span) in order `e₃, …, e_d`.
    pub edges: Vec<Span>,
    /// How each edge was chosen.
    pub choices: Vec<EdgeChoice>,
    /// Number of indices with `e_k = e_kʳ`.
    pub r: usize,
}

/// Order the internal edges of a trivalent tree with `d ≥ 2` inputs.
///
/// Starting from the external edges, step `k = 3, …, d` looks at the
/// vertex `b_k` joining the arcs from inputs `k−1` and `k`. Its edge `e_kʳ`
/// towards input `k−1` is taken if new; otherwise the edge `e_kᵈ` below
/// `b_k` is.
pub fn edge_order(t: &RibbonTree) -> Result<EdgeOrder> {
    let d = t.inputs();
    if d < 2 || !t.is_trivalent() {
        return Err(Error::InvalidArgument(format!(
            "not a trivalent tree with ≥ 2 inputs: {t}"
        )));
    }
    let vertices = t.vertex_children();
    let mut used: BTreeSet<Span> = (1..=d).map(|i| (i, i)).collect();
    used.insert((1, d));
    let mut order = EdgeOrder {
        edges: Vec::with_capacity(d - 2),
        choices: Vec::with_capacity(d - 2),
        r: 0,
    };
    for k in 3..=d {
        // b_k: the smallest vertex whose span contains both k−1 and k.
        let (below, kids) = vertices
            .iter()
            .filter(|(s, _)| s.0 < k && k <= s.1)
            .min_by_key(|(s, _)| s.1 - s.0)
            .expect("the root contains every input");
        let right = *kids.iter().find(|c| c.1 == k - 1).expect("trivalent split at k−1");
        let (edge, choice) = if used.contains(&right) {
            (*below, EdgeChoice::Down)
        } else {
            order.r += 1;
            (right, EdgeChoice::Right)
        };
        if !used.insert(edge) {
            return Err(Error::InvalidArgument(format!("edge {edge:?} chosen twice in {t}")));
        }
        order.edges.push(edge);
        order.choices.push(choice);
    }
    Ok(order)
}

/// A coordinate on a stratum near some boundary or wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    /// Length of the internal edge with this span.
    Length(Span),
    /// Height of a shrub: the distance from the outgoing vertex to the
    /// inputs. Index 0 is the whole shrub; index `k ≥ 1` is the `k`-th
    /// shrub of a broken configuration.
    Height(usize),
    /// The transverse coordinate of a boundary collar or a wall.
    Normal,
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Length((a, b)) => write!(f, "dt[{a},{b}]"),
            Coord::Height(0) => write!(f, "dl"),
            Coord::Height(k) => write!(f, "dl{k}"),
            Coord::Normal => write!(f, "ds"),
        }
    }
}

/// A top-degree form `± dc₁ ∧ … ∧ dc_m` on a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationForm {
    /// `+1` or `−1`.
    pub sign: i8,
    /// Distinct coordinates, in wedge order.
    pub coords: Vec<Coord>,
}

impl OrientationForm {
    /// The positive form on a point.
    pub fn point() -> Self {
        OrientationForm {
            sign: 1,
            coords: Vec::new(),
        }
    }

    /// The form `dc`.
    pub fn coordinate(c: Coord) -> Self {
        OrientationForm {
            sign: 1,
            coords: vec![c],
        }
    }

    /// Orientation of the open Stasheff cell of a trivalent tree:
    /// `(−1)^{r(T)} dt_{e₃} ∧ … ∧ dt_{e_d}`.
    pub fn stasheff(t: &RibbonTree) -> Result<Self> {
        let order = edge_order(t)?;
        Ok(OrientationForm {
            sign: if order.r % 2 == 0 { 1 } else { -1 },
            coords: order.edges.into_iter().map(Coord::Length).collect(),
        })
    }

    /// Orientation of the open shrub cell over a trivalent tree:
    /// `(−1)^{r(T)} dℓ ∧ dt_{e₃} ∧ … ∧ dt_{e_d}`; the one-input shrub is a
    /// positively oriented point.
    pub fn shrub(t: &RibbonTree) -> Result<Self> {
        if *t == RibbonTree::Leaf {
            return Ok(Self::point());
        }
        Ok(Self::coordinate(Coord::Height(0)).wedge(&Self::stasheff(t)?))
    }

    /// `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().copied());
        OrientationForm {
            sign: self.sign * other.sign,
            coords,
        }
    }

    /// Rename every coordinate.
    pub fn map(&self, f: impl Fn(Coord) -> Coord) -> Self {
        OrientationForm {
            sign: self.sign,
            coords: self.coords.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Replace `dc` by `sign · d(to)`. Terms in the other coordinates of a
    /// top-degree form vanish, so this is the full coordinate change
    /// whenever `c − sign·to` is a function of the remaining coordinates.
    pub fn substitute(&self, from: Coord, to: Coord, sign: i8) -> Self {
        let mut out = self.clone();
        for c in &mut out.coords {
            if *c == from {
                *c = to;
                out.sign *= sign;
            }
        }
        out
    }

    /// Parity of the sign relating two forms in the same coordinates
    /// (`Some(false)` when equal), or `None` if the coordinate sets differ.
    pub fn relative_parity(&self, other: &Self) -> Option<bool> {
        if self.coords.len() != other.coords.len() {
            return None;
        }
        let perm: Option<Vec<usize>> = self
            .coords
            .iter()
            .map(|c| other.coords.iter().position(|x| x == c))
            .collect();
        let perm = perm?;
        if perm.iter().collect::<BTreeSet<_>>().len() != perm.len() {
            return None;
        }
        let mut inversions = 0usize;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        Some((inversions % 2 == 1) != (self.sign != other.sign))
    }
}

impl fmt::Display for OrientationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign < 0 { "-" } else { "+" })?;
        if self.coords.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.coords.iter().map(Coord::to_string).collect();
        f.write_str(&parts.join("^"))
    }
}

/// The internal edge of `t` absent from `wall`.
fn new_edge(t: &RibbonTree, wall: &RibbonTree) -> Span {
    let old: BTreeSet<Span> = wall.internal_spans().into_iter().collect();
    t.internal_spans()
        .into_iter()
        .find(|s| !old.contains(s))
        .expect("an expansion has one more edge")
}

/// Check that the orientation forms of the two trivalent cells adjacent to
/// every wall of T_d agree across it. Near a wall, with `e`, `e′` the edges
/// created on either side, the chart uses `u = t_e = −t_{e′}` and keeps
/// all other edge lengths (edges are identified by the inputs above them).
pub fn wall_consistency(d: usize) -> Report {
    let mut report = Report::new();
    let mut bad = Vec::new();
    let mut count = 0usize;
    let ws = if d >= 3 { walls(d).expect("d ≥ 3") } else { Vec::new() };
    for w in &ws {
        let sides = w.expansions();
        if sides.len() != 2 {
            bad.push(json!({"wall": w.to_string(), "sides": sides.len()}));
            continue;
        }
        let forms: Vec<OrientationForm> = sides
            .iter()
            .zip([1i8, -1])
            .map(|(t, sign)| {
                OrientationForm::stasheff(t).expect("trivalent").substitute(
                    Coord::Length(new_edge(t, w)),
                    Coord::Normal,
                    sign,
                )
            })
            .collect();
        count += 1;
        if forms[0].relative_parity(&forms[1]) != Some(false) {
            bad.push(json!({
                "wall": w.to_string(),
                "sides": [sides[0].to_string(), sides[1].to_string()],
                "forms": [forms[0].to_string(), forms[1].to_string()],
            }));
        }
    }
    let ok = bad.is_empty();
    report.push(
        "orientations.wall_consistency",
        json!({"d": d}),
        json!({"walls": ws.len(), "mismatches": []}),
        json!({"walls": count, "mismatches": bad}),
        ok,
    );
    report
}

/// Check the edge-ordering lemma for all trivalent trees with `d` inputs:
/// the order is a bijection onto the internal edges.
pub fn edge_order_check(d: usize) -> Report {
    let mut report = Report::new();
    let mut bad = Value::Null;
    let trees = trivalent_trees(d).expect("d ≥ 2");
    for t in &trees {
        let problem = match edge_order(t) {
            Ok(o) => {
                let got: BTreeSet<Span> = o.edges.iter().copied().collect();
                let want: BTreeSet<Span> = t.internal_spans().into_iter().collect();
                (got != want || o.edges.len() != d - 2 || o.r > d - 2).then(|| format!("{:?}", o.edges))
            }
            Err(e) => Some(e.to_string()),
        };
        if let Some(p) = problem {
            bad = json!({"tree": t.to_string(), "problem": p});
            break;
        }
    }
    let ok = bad.is_null();
    report.push(
        "orientations.edge_order",
        json!({"d": d, "trees": trees.len()}),
        Value::Null,
        bad,
        ok,
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RibbonTree {
        s.parse().unwrap()
    }

    #[test]
    fn three_inputs() {
        let left = edge_order(&t("((x x) x)")).unwrap();
        assert_eq!((left.edges.clone(), left.r), (vec![(1, 2)], 1));
        let right = edge_order(&t("(x (x x))")).unwrap();
        assert_eq!((right.edges.clone(), right.r), (vec![(2, 3)], 0));
        assert_eq!(edge_order(&t("(x x)")).unwrap().edges, vec![]);
        assert!(edge_order(&t("(x x x)")).is_err());
    }

    #[test]
    fn order_is_a_bijection() {
        for d in 2..=7 {
            assert!(edge_order_check(d).all_pass(), "d = {d}");
        }
    }

    #[test]
    fn walls_are_consistent() {
        for d in 3..=6 {
            let r = wall_consistency(d);
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn form_arithmetic() {
        let a = OrientationForm::coordinate(Coord::Height(0));
        let b = OrientationForm::coordinate(Coord::Normal);
        assert_eq!(a.wedge(&b).relative_parity(&b.wedge(&a)), Some(true));
        assert_eq!(a.relative_parity(&b), None);
        assert_eq!(
            a.substitute(Coord::Height(0), Coord::Normal, -1).relative_parity(&b),
            Some(true)
        );
        assert_eq!(
            OrientationForm::shrub(&t("((x x) x)")).unwrap().to_string(),
            "-dl^dt[1,2]"
        );
    }
}
