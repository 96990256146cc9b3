//! Order-preserving simplicial embeddings, restriction and shriek maps.

use super::cochain::{Cochain, RelativeCochain};
use super::complex::OrderedComplex;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// An injective, order-preserving simplicial map `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialEmbedding {
    source: Arc<OrderedComplex>,
    target: Arc<OrderedComplex>,
    vertex_map: Vec<usize>,
    simplex_map: Vec<usize>,
}

impl SimplicialEmbedding {
    /// Validate and build an embedding from a map on vertex positions.
    pub fn new(source: Arc<OrderedComplex>, target: Arc<OrderedComplex>, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.vertices().len() {
            return Err(Error::InvalidInclusion(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.vertices().len()
            )));
        }
        if vertex_map.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInclusion(
                "vertex map is not strictly order preserving".into(),
            ));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertices().len()) {
            return Err(Error::InvalidInclusion(format!("vertex {v} outside target")));
        }
        let mut simplex_map = Vec::with_capacity(source.len());
        for s in source.simplices() {
            let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            let t = target.index_of(&img).ok_or_else(|| {
                Error::InvalidInclusion(format!("image {img:?} of {s:?} is not a simplex of the target"))
            })?;
            simplex_map.push(t);
        }
        Ok(SimplicialEmbedding {
            source,
            target,
            vertex_map,
            simplex_map,
        })
    }

    /// The identification of the standard simplex with a simplex `top` of
    /// `target`: the unique order-preserving vertex bijection.
    pub fn of_simplex(target: Arc<OrderedComplex>, top: usize) -> Result<Self> {
        let verts = target.simplex(top).clone();
        let source = Arc::new(OrderedComplex::standard_simplex(verts.len() - 1));
        Self::new(source, target, verts)
    }

    /// Source complex.
    pub fn source(&self) -> &Arc<OrderedComplex> {
        &self.source
    }

    /// Target complex.
    pub fn target(&self) -> &Arc<OrderedComplex> {
        &self.target
    }

    /// Vertex map (positions).
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Image of source simplex `s` in the target.
    pub fn image(&self, s: usize) -> usize {
        self.simplex_map[s]
    }

    /// Preimage of target simplex `t`, if it lies in the image.
    pub fn preimage(&self, t: usize) -> Option<usize> {
        self.simplex_map.iter().position(|&x| x == t)
    }
}

/// Pull a cochain on the target back along `incl`; a ring homomorphism.
pub fn restrict(a: &Cochain, incl: &SimplicialEmbedding) -> Result<Cochain> {
    if **a.complex() != *incl.target {
        return Err(Error::ComplexMismatch);
    }
    let values: BTreeMap<_, _> = incl
        .source
        .of_dim(a.degree())
        .into_iter()
        .filter_map(|s| a.values().get(&incl.image(s)).map(|v| (s, v.clone())))
        .collect();
    Cochain::new(incl.source.clone(), a.degree(), values)
}

/// Extend a cochain on the source by zero to the target.
///
/// This is a chain map on cochains vanishing on the frontier of the image;
/// callers guarantee that by passing relative cochains.
pub fn extend_by_zero(a: &Cochain, incl: &SimplicialEmbedding) -> Result<Cochain> {
    if **a.complex() != *incl.source {
        return Err(Error::ComplexMismatch);
    }
    let values = a.values().iter().map(|(&s, v)| (incl.image(s), v.clone())).collect();
    Cochain::new(incl.target.clone(), a.degree(), values)
}

/// The shriek map `ι_!`: a top-degree relative cochain on the source is
/// transported to the image simplices and extended by zero.
pub fn shriek(a: &RelativeCochain, incl: &SimplicialEmbedding) -> Result<Cochain> {
    let n = incl.source.dim().unwrap_or(0);
    if a.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n as i64,
            found: a.degree() as i64,
        });
    }
    extend_by_zero(a.cochain(), incl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Subcomplex;

    fn circle() -> Arc<OrderedComplex> {
        Arc::new(
            OrderedComplex::from_positions(
                vec!["0".into(), "1".into(), "2".into()],
                &[vec![0, 1], vec![1, 2], vec![0, 2]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn shriek_of_generator_is_edge_indicator() {
        let q = circle();
        let e01 = q.index_of(&[0, 1]).unwrap();
        let incl = SimplicialEmbedding::of_simplex(q.clone(), e01).unwrap();
        let delta = incl.source().clone();
        let bd = Arc::new(Subcomplex::pure_boundary(delta.clone()));
        let top = delta.index_of(&[0, 1]).unwrap();
        let gen = RelativeCochain::new(Cochain::delta(delta.clone(), top), bd).unwrap();
        let s = shriek(&gen, &incl).unwrap();
        assert_eq!(s, Cochain::delta(q.clone(), e01));
        // ι*ι_! is the inclusion of relative into absolute cochains.
        assert_eq!(restrict(&s, &incl).unwrap(), *gen.cochain());
    }

    #[test]
    fn restriction_basics() {
        let q = circle();
        let e12 = q.index_of(&[1, 2]).unwrap();
        let incl = SimplicialEmbedding::of_simplex(q.clone(), q.index_of(&[0, 1]).unwrap()).unwrap();
        assert_eq!(
            restrict(&Cochain::unit(q.clone()), &incl).unwrap(),
            Cochain::unit(incl.source().clone())
        );
        assert!(restrict(&Cochain::delta(q.clone(), e12), &incl).unwrap().is_zero());
    }

    #[test]
    fn rejects_order_reversal() {
        let q = circle();
        let d = Arc::new(OrderedComplex::standard_simplex(1));
        assert!(SimplicialEmbedding::new(d, q, vec![1, 0]).is_err());
    }
}
