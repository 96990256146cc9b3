//! Integer cochains, the coboundary and the Alexander–Whitney cup product.

use super::complex::OrderedComplex;
use crate::error::{Error, Result};
use crate::Int;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// An integer cochain of fixed degree on an ordered complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    complex: Arc<OrderedComplex>,
    degree: usize,
    values: BTreeMap<usize, Int>,
}

impl Cochain {
    /// Build from sparse values keyed by simplex index; every key must be a
    /// simplex of dimension `degree`. Zero values are dropped.
    pub fn new(complex: Arc<OrderedComplex>, degree: usize, values: BTreeMap<usize, Int>) -> Result<Self> {
        for &k in values.keys() {
            if k >= complex.len() {
                return Err(Error::InvalidArgument(format!("simplex index {k} out of range")));
            }
            if complex.simplex_dim(k) != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree as i64,
                    found: complex.simplex_dim(k) as i64,
                });
            }
        }
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Cochain {
            complex,
            degree,
            values,
        })
    }

    /// The zero cochain of degree `degree`.
    pub fn zero(complex: Arc<OrderedComplex>, degree: usize) -> Self {
        Cochain {
            complex,
            degree,
            values: BTreeMap::new(),
        }
    }

    /// The unit 0-cochain (value 1 on every vertex).
    pub fn unit(complex: Arc<OrderedComplex>) -> Self {
        let values = complex.of_dim(0).into_iter().map(|i| (i, Int::one())).collect();
        Cochain {
            complex,
            degree: 0,
            values,
        }
    }

    /// The indicator cochain of simplex `i`.
    pub fn delta(complex: Arc<OrderedComplex>, i: usize) -> Self {
        let degree = complex.simplex_dim(i);
        Cochain {
            complex,
            degree,
            values: BTreeMap::from([(i, Int::one())]),
        }
    }

    /// Underlying complex.
    pub fn complex(&self) -> &Arc<OrderedComplex> {
        &self.complex
    }

    /// Degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero values keyed by simplex index.
    pub fn values(&self) -> &BTreeMap<usize, Int> {
        &self.values
    }

    /// Value on simplex `i` (zero off the support).
    pub fn eval(&self, i: usize) -> Int {
        self.values.get(&i).cloned().unwrap_or_else(Int::zero)
    }

    /// True iff all values vanish.
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn same_complex(&self, other: &Cochain) -> Result<()> {
        if Arc::ptr_eq(&self.complex, &other.complex) || *self.complex == *other.complex {
            Ok(())
        } else {
            Err(Error::ComplexMismatch)
        }
    }

    /// Sum of two cochains of equal degree on the same complex.
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_complex(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                found: other.degree as i64,
            });
        }
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            let e = values.entry(*k).or_insert_with(Int::zero);
            *e += v;
            if e.is_zero() {
                values.remove(k);
            }
        }
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            values,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Int) -> Cochain {
        let values = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.values.iter().map(|(k, v)| (*k, v * c)).collect()
        };
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            values,
        }
    }

    /// The coboundary `(da)(v₀…v_{p+1}) = Σ (−1)^i a(v₀…v̂ᵢ…v_{p+1})`.
    pub fn coboundary(&self) -> Cochain {
        let mut values: BTreeMap<usize, Int> = BTreeMap::new();
        for (&s, v) in &self.values {
            for &(t, pos) in self.complex.cofaces(s) {
                let e = values.entry(t).or_insert_with(Int::zero);
                if pos % 2 == 0 {
                    *e += v;
                } else {
                    *e -= v;
                }
            }
        }
        values.retain(|_, v| !v.is_zero());
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree + 1,
            values,
        }
    }

    /// Cup product `(a∪b)(v₀…v_{p+q}) = a(v₀…v_p)·b(v_p…v_{p+q})`.
    pub fn cup(&self, b: &Cochain) -> Result<Cochain> {
        self.same_complex(b)?;
        let cx = &self.complex;
        let mut by_first: HashMap<usize, Vec<(usize, &Int)>> = HashMap::new();
        for (&t, v) in &b.values {
            by_first.entry(cx.simplex(t)[0]).or_default().push((t, v));
        }
        let mut values: BTreeMap<usize, Int> = BTreeMap::new();
        for (&s, va) in &self.values {
            let sv = cx.simplex(s);
            let Some(list) = by_first.get(sv.last().expect("nonempty simplex")) else {
                continue;
            };
            for &(t, vb) in list {
                let mut joined = sv.clone();
                joined.extend_from_slice(&cx.simplex(t)[1..]);
                if let Some(j) = cx.index_of(&joined) {
                    *values.entry(j).or_insert_with(Int::zero) += va * vb;
                }
            }
        }
        values.retain(|_, v| !v.is_zero());
        Ok(Cochain {
            complex: cx.clone(),
            degree: self.degree + b.degree,
            values,
        })
    }
}

/// A subcomplex of an ordered complex, as a face-closed set of simplex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    ambient: Arc<OrderedComplex>,
    members: BTreeSet<usize>,
}

impl Subcomplex {
    /// Build from simplex indices; the set must be closed under faces.
    pub fn new(ambient: Arc<OrderedComplex>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        let closure = ambient.closure(&members.iter().copied().collect::<Vec<_>>());
        if closure.len() != members.len() {
            return Err(Error::InvalidComplex("subcomplex is not closed under faces".into()));
        }
        Ok(Subcomplex { ambient, members })
    }

    /// The boundary of a pure `n`-dimensional complex: the closure of the
    /// `(n−1)`-simplices lying in exactly one `n`-simplex.
    pub fn pure_boundary(ambient: Arc<OrderedComplex>) -> Self {
        let members = match ambient.dim() {
            None | Some(0) => BTreeSet::new(),
            Some(n) => {
                let free: Vec<usize> = ambient
                    .of_dim(n - 1)
                    .into_iter()
                    .filter(|&f| ambient.cofaces(f).len() == 1)
                    .collect();
                ambient.closure(&free).into_iter().collect()
            }
        };
        Subcomplex { ambient, members }
    }

    /// Ambient complex.
    pub fn ambient(&self) -> &Arc<OrderedComplex> {
        &self.ambient
    }

    /// Member simplex indices.
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// Membership test.
    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }
}

/// A cochain vanishing on a subcomplex: an element of `C*(X, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCochain {
    cochain: Cochain,
    sub: Arc<Subcomplex>,
}

impl RelativeCochain {
    /// Wrap `cochain`, checking that it vanishes on `sub`.
    pub fn new(cochain: Cochain, sub: Arc<Subcomplex>) -> Result<Self> {
        if *sub.ambient != *cochain.complex {
            return Err(Error::ComplexMismatch);
        }
        if cochain.values.keys().any(|k| sub.contains(*k)) {
            return Err(Error::NotRelative);
        }
        Ok(RelativeCochain { cochain, sub })
    }

    /// Underlying absolute cochain (the inclusion `C*(X,A) → C*(X)`).
    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    /// The subcomplex on which the cochain vanishes.
    pub fn subcomplex(&self) -> &Arc<Subcomplex> {
        &self.sub
    }

    /// Degree.
    pub fn degree(&self) -> usize {
        self.cochain.degree
    }

    /// Coboundary (relative cochains form a subcomplex).
    pub fn coboundary(&self) -> RelativeCochain {
        RelativeCochain {
            cochain: self.cochain.coboundary(),
            sub: self.sub.clone(),
        }
    }

    /// `self ∪ b`; relative since front and back faces of a simplex of the
    /// subcomplex lie in the subcomplex.
    pub fn cup_right(&self, b: &Cochain) -> Result<RelativeCochain> {
        RelativeCochain::new(self.cochain.cup(b)?, self.sub.clone())
    }

    /// `a ∪ self`.
    pub fn cup_left(a: &Cochain, rel: &RelativeCochain) -> Result<RelativeCochain> {
        RelativeCochain::new(a.cup(&rel.cochain)?, rel.sub.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn coboundary_of_vertex_indicator() {
        let c = circle();
        let v1 = c.index_of(&[1]).unwrap();
        let d = Cochain::delta(c.clone(), v1).coboundary();
        assert_eq!(d.eval(c.index_of(&[0, 1]).unwrap()), Int::from(1));
        assert_eq!(d.eval(c.index_of(&[1, 2]).unwrap()), Int::from(-1));
        assert_eq!(d.eval(c.index_of(&[0, 2]).unwrap()), Int::from(0));
    }

    #[test]
    fn cup_front_back() {
        let c = circle();
        let v1 = Cochain::delta(c.clone(), c.index_of(&[1]).unwrap());
        let e01 = Cochain::delta(c.clone(), c.index_of(&[0, 1]).unwrap());
        assert!(v1.cup(&e01).unwrap().is_zero());
        assert_eq!(e01.cup(&v1).unwrap(), e01);
        let u = Cochain::unit(c.clone());
        assert_eq!(u.cup(&e01).unwrap(), e01);
    }

    #[test]
    fn relative_vanishing_enforced() {
        let d = Arc::new(OrderedComplex::standard_simplex(1));
        let bd = Arc::new(Subcomplex::pure_boundary(d.clone()));
        assert_eq!(bd.members().len(), 2);
        let v0 = Cochain::delta(d.clone(), 0);
        assert!(matches!(RelativeCochain::new(v0, bd.clone()), Err(Error::NotRelative)));
        let e = Cochain::delta(d.clone(), 2);
        assert!(RelativeCochain::new(e, bd).is_ok());
    }
}
