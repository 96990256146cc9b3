//! Ordered simplicial complexes.

use crate::algebra_core::{ChainComplex, GradedModule, LinComb};
use crate::error::{Error, Result};
use crate::Int;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeSet, HashMap};

/// A simplex given by strictly increasing vertex positions.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex on a totally ordered vertex set.
///
/// Simplices are strictly increasing tuples of vertex *positions* and are
/// indexed in `(dimension, lexicographic)` order. The complex is closed under
/// faces by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    vertices: Vec<String>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// `cofaces[s]` lists `(t, i)` with `t` a codimension-one coface of `s`
    /// and `i` the position in `t` of the vertex missing from `s`.
    cofaces: Vec<Vec<(usize, usize)>>,
}

/// Serialized form: ordered vertex ids and maximal simplices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationFile {
    /// Vertex ids in their global order (strings or integers).
    pub vertices: Vec<Value>,
    /// Simplices (typically maximal ones) as lists of vertex ids.
    pub simplices: Vec<Vec<Value>>,
}

pub(crate) fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!(
            "vertex id must be a string or integer, got {other}"
        ))),
    }
}

impl OrderedComplex {
    /// Build the face closure of `maximal` (simplices given by vertex position,
    /// in any order) on `vertices.len()` vertices.
    pub fn from_positions(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidComplex(format!("duplicate vertex {v}")));
            }
        }
        let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for (i, _) in vertices.iter().enumerate() {
            all.insert((0, vec![i]));
        }
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in simplex {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!("vertex position {v} out of range")));
            }
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert((face.len() - 1, face));
            }
        }
        let simplices: Vec<Simplex> = all.into_iter().map(|(_, s)| s).collect();
        Ok(Self::assemble(vertices, simplices))
    }

    fn assemble(vertices: Vec<String>, simplices: Vec<Simplex>) -> Self {
        let index: HashMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (t, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                cofaces[index[&f]].push((t, i));
            }
        }
        OrderedComplex {
            vertices,
            simplices,
            index,
            cofaces,
        }
    }

    /// Build from vertex ids and simplices named by vertex id.
    pub fn from_ids(vertices: Vec<String>, maximal: &[Vec<String>]) -> Result<Self> {
        let pos: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut simp = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut p = Vec::with_capacity(s.len());
            for v in s {
                p.push(*pos.get(v.as_str()).ok_or_else(|| Error::UnknownId(v.clone()))?);
            }
            simp.push(p);
        }
        Self::from_positions(vertices, &simp)
    }

    /// Build from the serialized form.
    pub fn from_file(f: &TriangulationFile) -> Result<Self> {
        let vertices = f.vertices.iter().map(id_string).collect::<Result<Vec<_>>>()?;
        let simplices = f
            .simplices
            .iter()
            .map(|s| s.iter().map(id_string).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_ids(vertices, &simplices)
    }

    /// Serialized form listing the maximal simplices.
    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            vertices: self.vertices.iter().map(|v| Value::String(v.clone())).collect(),
            simplices: self
                .maximal_simplices()
                .into_iter()
                .map(|i| {
                    self.simplices[i]
                        .iter()
                        .map(|&v| Value::String(self.vertices[v].clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// The standard `n`-simplex on vertices `0..=n`.
    pub fn standard_simplex(n: usize) -> Self {
        let vertices = (0..=n).map(|i| i.to_string()).collect();
        Self::from_positions(vertices, &[(0..=n).collect()]).expect("valid simplex")
    }

    /// The boundary of the standard `(n+1)`-simplex: an `n`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        let vertices = (0..=n + 1).map(|i| i.to_string()).collect::<Vec<_>>();
        let faces: Vec<Vec<usize>> = (0..=n + 1)
            .map(|skip| (0..=n + 1).filter(|&v| v != skip).collect())
            .collect();
        Self::from_positions(vertices, &faces).expect("valid sphere")
    }

    /// Ordered vertex ids.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// All simplices in index order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    /// True iff the complex has no simplices.
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Simplex with index `i`.
    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    /// Dimension of simplex `i`.
    pub fn simplex_dim(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    /// Index of a simplex, if present.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Dimension of the complex (`None` if empty).
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Indices of all `p`-simplices.
    pub fn of_dim(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.simplex_dim(i) == p).collect()
    }

    /// Codimension-one cofaces of simplex `i` with the omitted position.
    pub fn cofaces(&self, i: usize) -> &[(usize, usize)] {
        &self.cofaces[i]
    }

    /// Simplices that are faces of no other simplex.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cofaces[i].is_empty()).collect()
    }

    /// Human-readable name of simplex `i`, e.g. `"[a,b]"`.
    pub fn name(&self, i: usize) -> String {
        let parts: Vec<&str> = self.simplices[i].iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Resolve a simplex named by vertex ids.
    pub fn find_by_ids(&self, ids: &[String]) -> Result<usize> {
        let mut pos = Vec::with_capacity(ids.len());
        for v in ids {
            pos.push(
                self.vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnknownId(v.clone()))?,
            );
        }
        pos.sort_unstable();
        self.index_of(&pos)
            .ok_or_else(|| Error::UnknownId(format!("simplex {ids:?} not in complex")))
    }

    /// Face closure of a set of simplex indices, returned sorted.
    pub fn closure(&self, simplices: &[usize]) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &i in simplices {
            let s = &self.simplices[i];
            for mask in 1u64..(1u64 << s.len()) {
                let f: Simplex = (0..s.len()).filter(|k| mask >> k & 1 == 1).map(|k| s[k]).collect();
                out.insert(self.index[&f]);
            }
        }
        out.into_iter().collect()
    }

    /// The simplicial cochain complex: one generator per simplex, named by
    /// [`OrderedComplex::name`], in degree equal to its dimension.
    pub fn cochain_complex(&self) -> ChainComplex {
        let module = GradedModule::new(
            (0..self.len())
                .map(|i| (self.name(i), self.simplex_dim(i) as i64))
                .collect(),
        )
        .expect("simplex names are unique");
        let d = (0..self.len())
            .map(|i| {
                self.cofaces[i]
                    .iter()
                    .map(|&(t, pos)| (t, if pos % 2 == 0 { Int::from(1) } else { Int::from(-1) }))
                    .collect::<LinComb>()
            })
            .collect();
        ChainComplex::new(module, d).expect("coboundary raises degree by one")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_order() {
        let c = OrderedComplex::standard_simplex(2);
        assert_eq!(c.len(), 7);
        assert_eq!(c.simplex(3), &vec![0, 1]);
        assert_eq!(c.simplex(6), &vec![0, 1, 2]);
        assert_eq!(c.dim(), Some(2));
        let s = OrderedComplex::simplex_boundary(2);
        assert_eq!(s.len(), 14);
        assert_eq!(s.maximal_simplices().len(), 4);
    }

    #[test]
    fn file_round_trip() {
        let c = OrderedComplex::simplex_boundary(1);
        let back = OrderedComplex::from_file(&c.to_file()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(OrderedComplex::from_positions(vec!["a".into()], &[vec![0, 0]]).is_err());
        assert!(OrderedComplex::from_positions(vec!["a".into()], &[vec![0, 1]]).is_err());
        assert!(OrderedComplex::from_positions(vec!["a".into(), "a".into()], &[]).is_err());
    }
}
