//! Graded modules, cochain complexes and their integral cohomology.

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::sparse::{add_scaled, LinComb};
use crate::error::{Error, Result};
use crate::Int;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A free graded ℤ-module with a named, ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    basis: Vec<(String, i64)>,
    index: HashMap<String, usize>,
}

impl GradedModule {
    /// Build from `(generator-id, degree)` pairs; ids must be unique.
    pub fn new(basis: Vec<(String, i64)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, (id, _)) in basis.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator id {id}")));
            }
        }
        Ok(GradedModule { basis, index })
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// True iff the module is zero.
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The basis as `(id, degree)` pairs.
    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    /// Degree of generator `i`.
    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    /// Identifier of generator `i`.
    pub fn id(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    /// Index of a generator by id.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Generators of degree `p`, in basis order.
    pub fn in_degree(&self, p: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) == p).collect()
    }

    /// The set of degrees carrying at least one generator, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.basis
            .iter()
            .map(|(_, d)| *d)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Number of generators in each occupied degree, ascending.
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        self.degrees()
            .into_iter()
            .map(|p| (p, self.in_degree(p).len()))
            .collect()
    }
}

/// A cochain complex: a graded module with a degree +1 differential,
/// stored sparsely as the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    module: GradedModule,
    differential: Vec<LinComb>,
}

impl ChainComplex {
    /// Build a complex, checking that `d` raises degree by exactly one.
    ///
    /// `d²` is *not* checked here; see [`ChainComplex::check_d_squared`].
    pub fn new(module: GradedModule, differential: Vec<LinComb>) -> Result<Self> {
        if differential.len() != module.len() {
            return Err(Error::LengthMismatch {
                expected: module.len(),
                found: differential.len(),
            });
        }
        let mut bad = Vec::new();
        for (i, img) in differential.iter().enumerate() {
            for (&j, c) in img {
                if j >= module.len() {
                    return Err(Error::InvalidArgument(format!(
                        "differential of {} refers to generator index {j}",
                        module.id(i)
                    )));
                }
                if !c.is_zero() && module.degree(j) != module.degree(i) + 1 {
                    bad.push(format!("d({}) has term {}", module.id(i), module.id(j)));
                }
            }
        }
        if !bad.is_empty() {
            return Err(Error::DegreeViolation(bad));
        }
        let differential = differential
            .into_iter()
            .map(|v| v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(ChainComplex { module, differential })
    }

    /// The complex with zero differential on `module`.
    pub fn zero_differential(module: GradedModule) -> Self {
        let n = module.len();
        ChainComplex {
            module,
            differential: vec![LinComb::new(); n],
        }
    }

    /// Underlying graded module.
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// Sparse image of generator `i`.
    pub fn d_of(&self, i: usize) -> &LinComb {
        &self.differential[i]
    }

    /// Apply the differential to a combination.
    pub fn apply(&self, v: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (&i, c) in v {
            add_scaled(&mut out, &self.differential[i], c);
        }
        out
    }

    /// Verify `d ∘ d = 0`; the error names the first offending generator.
    pub fn check_d_squared(&self) -> Result<()> {
        for i in 0..self.module.len() {
            if !self.apply(&self.differential[i]).is_empty() {
                return Err(Error::NotAComplex { generator: i });
            }
        }
        Ok(())
    }

    /// The matrix of `d: C^p → C^{p+1}` in the basis order of each degree.
    pub fn degree_matrix(&self, p: i64) -> IntMatrix {
        let src = self.module.in_degree(p);
        let tgt = self.module.in_degree(p + 1);
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(r, &g)| (g, r)).collect();
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (c, &g) in src.iter().enumerate() {
            for (j, v) in &self.differential[g] {
                m.set(pos[j], c, v.clone());
            }
        }
        m
    }
}

/// One cohomology group `H^p ≅ ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    /// Degree `p`.
    pub degree: i64,
    /// Free rank.
    pub rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<Int>,
}

/// Integral cohomology in every occupied degree, computed by Smith normal
/// form of the adjacent differentials. Rejects inputs with `d² ≠ 0`.
pub fn cohomology(c: &ChainComplex) -> Result<Vec<CohomologyGroup>> {
    c.check_d_squared()?;
    let mut out = Vec::new();
    for p in c.module.degrees() {
        let n_p = c.module.in_degree(p).len();
        let out_rank = smith_normal_form(&c.degree_matrix(p)).rank();
        let incoming = smith_normal_form(&c.degree_matrix(p - 1)).invariant_factors();
        let rank = n_p - out_rank - incoming.len();
        let torsion = incoming.into_iter().filter(|f| !f.is_one()).collect();
        out.push(CohomologyGroup {
            degree: p,
            rank,
            torsion,
        });
    }
    Ok(out)
}

/// Regrade `c` by `[m]`: every degree drops by `m`; coefficients untouched.
pub fn shift(c: &ChainComplex, m: i64) -> ChainComplex {
    let basis = c.module.basis.iter().map(|(id, d)| (id.clone(), d - m)).collect();
    ChainComplex {
        module: GradedModule::new(basis).expect("ids unchanged"),
        differential: c.differential.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(pairs: &[(usize, i64)]) -> LinComb {
        pairs.iter().map(|&(k, v)| (k, Int::from(v))).collect()
    }

    fn circle() -> ChainComplex {
        // Vertices 0,1,2 then edges 01, 02, 12.
        let module = GradedModule::new(
            ["v0", "v1", "v2"]
                .iter()
                .map(|s| (s.to_string(), 0))
                .chain(["e01", "e02", "e12"].iter().map(|s| (s.to_string(), 1)))
                .collect(),
        )
        .unwrap();
        let d = vec![
            lc(&[(3, -1), (4, -1)]),
            lc(&[(3, 1), (5, -1)]),
            lc(&[(4, 1), (5, 1)]),
            lc(&[]),
            lc(&[]),
            lc(&[]),
        ];
        ChainComplex::new(module, d).unwrap()
    }

    #[test]
    fn circle_cohomology() {
        let h = cohomology(&circle()).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!((h[0].rank, h[1].rank), (1, 1));
        assert!(h[0].torsion.is_empty() && h[1].torsion.is_empty());
    }

    #[test]
    fn rejects_non_complex() {
        let module = GradedModule::new(vec![("a".into(), 0), ("b".into(), 1), ("c".into(), 2)]).unwrap();
        let c = ChainComplex::new(module, vec![lc(&[(1, 1)]), lc(&[(2, 1)]), lc(&[])]).unwrap();
        assert!(matches!(cohomology(&c), Err(Error::NotAComplex { generator: 0 })));
    }

    #[test]
    fn shift_round_trip() {
        let c = circle();
        assert_eq!(shift(&c, 0), c);
        assert_eq!(shift(&shift(&c, 2), -2), c);
        assert_eq!(shift(&c, 1).module().degree(3), 0);
    }
}
