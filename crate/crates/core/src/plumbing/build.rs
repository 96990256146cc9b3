//! Construction of the plumbing DG category from triangulations.

use super::category::{CompositionTable, DGCategory};
use crate::algebra_core::{ChainComplex, GradedModule, LinComb};
use crate::error::{Error, Result};
use crate::simplicial::{extend_by_zero, restrict, Cochain, OrderedComplex, SimplicialEmbedding, Subcomplex};
use crate::Int;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Index of the first object `Q₁`.
pub const Q1: usize = 0;
/// Index of the second object `Q₂`.
pub const Q2: usize = 1;

/// Two triangulated `n`-manifolds with identified top simplices.
#[derive(Clone, Debug)]
pub struct PlumbingSpec {
    /// First triangulation.
    pub q1: Arc<OrderedComplex>,
    /// Second triangulation.
    pub q2: Arc<OrderedComplex>,
    /// Index of the plumbing simplex `Δ₁` in `q1`.
    pub delta1: usize,
    /// Index of the plumbing simplex `Δ₂` in `q2`.
    pub delta2: usize,
    /// Common dimension.
    pub n: usize,
}

impl PlumbingSpec {
    /// Validate dimensions: both complexes and both simplices have dimension `n`.
    pub fn new(q1: Arc<OrderedComplex>, q2: Arc<OrderedComplex>, delta1: usize, delta2: usize) -> Result<Self> {
        let n = q1
            .dim()
            .ok_or_else(|| Error::DimensionMismatch("first triangulation is empty".into()))?;
        if q2.dim() != Some(n) {
            return Err(Error::DimensionMismatch(format!(
                "triangulations have dimensions {n} and {:?}",
                q2.dim()
            )));
        }
        for (q, d, name) in [(&q1, delta1, "delta1"), (&q2, delta2, "delta2")] {
            if d >= q.len() {
                return Err(Error::InvalidArgument(format!("{name} out of range")));
            }
            if q.simplex_dim(d) != n {
                return Err(Error::DimensionMismatch(format!(
                    "{name} {} has dimension {}, expected {n}",
                    q.name(d),
                    q.simplex_dim(d)
                )));
            }
        }
        Ok(PlumbingSpec {
            q1,
            q2,
            delta1,
            delta2,
            n,
        })
    }
}

/// One clean-intersection component: subcomplexes given by top simplices
/// (vertex ids) in each triangulation, plus an integer shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    /// Top simplices of the component in `q1`.
    pub n1: Vec<Vec<String>>,
    /// Top simplices of the component in `q2`.
    pub n2: Vec<Vec<String>>,
    /// Grading shift `m_k`.
    pub shift: i64,
}

/// Two triangulations with a list of identified components.
#[derive(Clone, Debug)]
pub struct CleanPlumbingSpec {
    /// First triangulation.
    pub q1: Arc<OrderedComplex>,
    /// Second triangulation.
    pub q2: Arc<OrderedComplex>,
    /// Components.
    pub components: Vec<ComponentSpec>,
}

/// A component resolved into an abstract complex with two embeddings.
struct Component {
    tag: String,
    n: Arc<OrderedComplex>,
    boundary: Subcomplex,
    iota1: SimplicialEmbedding,
    iota2: SimplicialEmbedding,
    shift: i64,
    /// Generator index in `hom(Q₁,Q₂)` of each simplex of `n`.
    abs_gen: Vec<usize>,
    /// Generator index in `hom(Q₂,Q₁)` of each simplex of `n` off the boundary.
    rel_gen: Vec<Option<usize>>,
}

/// The DG category of a transverse plumbing: `Hom(Qᵢ,Qᵢ) = C*(Qᵢ)`,
/// `Hom(Q₁,Q₂) = C*(Δ)`, `Hom(Q₂,Q₁) = C*(Δ,∂Δ)`, with compositions given
/// by restricting and cupping, and the two shriek compositions.
pub fn build_simp(spec: &PlumbingSpec) -> Result<DGCategory> {
    let iota1 = SimplicialEmbedding::of_simplex(spec.q1.clone(), spec.delta1)?;
    let iota2 = SimplicialEmbedding::of_simplex(spec.q2.clone(), spec.delta2)?;
    let n = iota1.source().clone();
    let iota2 = SimplicialEmbedding::new(n.clone(), spec.q2.clone(), iota2.vertex_map().to_vec())?;
    let boundary = Subcomplex::pure_boundary(n.clone());
    assemble(
        spec.q1.clone(),
        spec.q2.clone(),
        vec![Component {
            tag: "D".into(),
            n,
            boundary,
            iota1,
            iota2,
            shift: 0,
            abs_gen: Vec::new(),
            rel_gen: Vec::new(),
        }],
    )
}

fn resolve_component(q: &Arc<OrderedComplex>, tops: &[Vec<String>], which: &str) -> Result<Vec<usize>> {
    let n = q.dim().unwrap_or(0);
    let mut idx = Vec::with_capacity(tops.len());
    for t in tops {
        let i = q.find_by_ids(t)?;
        if q.simplex_dim(i) != n {
            return Err(Error::DimensionMismatch(format!(
                "{which}: component simplex {} is not top-dimensional",
                q.name(i)
            )));
        }
        idx.push(i);
    }
    if idx.is_empty() {
        return Err(Error::InvalidArgument(format!("{which}: empty component")));
    }
    Ok(q.closure(&idx))
}

fn vertices_of(q: &OrderedComplex, simplices: &[usize]) -> BTreeSet<usize> {
    simplices.iter().flat_map(|&s| q.simplex(s).iter().copied()).collect()
}

/// Simplices of `closure` that are faces of simplices outside it: the face
/// closure of those members having a codimension-one coface outside.
fn frontier(q: &OrderedComplex, closure: &[usize]) -> Vec<usize> {
    let inside: BTreeSet<usize> = closure.iter().copied().collect();
    let exits: Vec<usize> = closure
        .iter()
        .copied()
        .filter(|&s| q.cofaces(s).iter().any(|(t, _)| !inside.contains(t)))
        .collect();
    q.closure(&exits)
}

/// The clean-intersection category `Simp_B`:
/// `Hom(Q₁,Q₂) = ⊕ C*(Nᵏ)[m_k]`, `Hom(Q₂,Q₁) = ⊕ C*(Nᵏ,∂Nᵏ)[−m_k]`.
///
/// Shifted summands use the Koszul convention: the differential on a summand
/// shifted by `m` is `(−1)^m d`, and a product `x·y` whose right factor `y`
/// carries shift `b` picks up `(−1)^{b|x|}`. Cross-component compositions
/// are zero.
pub fn build_simp_clean(spec: &CleanPlumbingSpec) -> Result<DGCategory> {
    let n1 = spec
        .q1
        .dim()
        .ok_or_else(|| Error::DimensionMismatch("first triangulation is empty".into()))?;
    if spec.q2.dim() != Some(n1) {
        return Err(Error::DimensionMismatch(
            "triangulations of different dimensions".into(),
        ));
    }
    let mut comps = Vec::new();
    let mut used1: BTreeSet<usize> = BTreeSet::new();
    let mut used2: BTreeSet<usize> = BTreeSet::new();
    for (k, c) in spec.components.iter().enumerate() {
        let cl1 = resolve_component(&spec.q1, &c.n1, "n1")?;
        let cl2 = resolve_component(&spec.q2, &c.n2, "n2")?;
        let v1 = vertices_of(&spec.q1, &cl1);
        let v2 = vertices_of(&spec.q2, &cl2);
        if !used1.is_disjoint(&v1) || !used2.is_disjoint(&v2) {
            return Err(Error::OverlappingComponents(format!(
                "component {k} meets an earlier component"
            )));
        }
        used1.extend(&v1);
        used2.extend(&v2);
        if v1.len() != v2.len() || cl1.len() != cl2.len() {
            return Err(Error::NonCellular(format!(
                "component {k}: {} vertices / {} simplices in q1 against {} / {} in q2",
                v1.len(),
                cl1.len(),
                v2.len(),
                cl2.len()
            )));
        }
        // Abstract complex on the q1 vertices, in the global order.
        let vmap1: Vec<usize> = v1.iter().copied().collect();
        let vmap2: Vec<usize> = v2.iter().copied().collect();
        let pos1: BTreeMap<usize, usize> = vmap1.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let maximal: Vec<Vec<usize>> = cl1
            .iter()
            .map(|&s| spec.q1.simplex(s).iter().map(|v| pos1[v]).collect())
            .collect();
        let names = vmap1.iter().map(|&v| spec.q1.vertices()[v].clone()).collect();
        let n = Arc::new(OrderedComplex::from_positions(names, &maximal)?);
        let iota1 = SimplicialEmbedding::new(n.clone(), spec.q1.clone(), vmap1)?;
        let iota2 = SimplicialEmbedding::new(n.clone(), spec.q2.clone(), vmap2)
            .map_err(|e| Error::NonCellular(format!("component {k}: {e}")))?;
        let image2: BTreeSet<usize> = (0..n.len()).map(|s| iota2.image(s)).collect();
        if image2 != cl2.iter().copied().collect() {
            return Err(Error::NonCellular(format!(
                "component {k}: the order-preserving vertex bijection does not carry n1 onto n2"
            )));
        }
        let boundary = Subcomplex::pure_boundary(n.clone());
        for (q, iota, which) in [(&spec.q1, &iota1, "q1"), (&spec.q2, &iota2, "q2")] {
            let cl: Vec<usize> = (0..n.len()).map(|s| iota.image(s)).collect();
            for f in frontier(q, &cl) {
                let pre = iota.preimage(f).expect("frontier lies in the component");
                if !boundary.contains(pre) {
                    return Err(Error::InvalidComplex(format!(
                        "component {k}: {} lies on the frontier in {which} but not on the component boundary",
                        q.name(f)
                    )));
                }
            }
        }
        comps.push(Component {
            tag: format!("N{}", k + 1),
            n,
            boundary,
            iota1,
            iota2,
            shift: c.shift,
            abs_gen: Vec::new(),
            rel_gen: Vec::new(),
        });
    }
    assemble(spec.q1.clone(), spec.q2.clone(), comps)
}

fn parity_sign(odd: bool) -> Int {
    if odd {
        Int::from(-1)
    } else {
        Int::from(1)
    }
}

/// Convert a cochain into a combination of generators via `map`.
fn to_lin(c: &Cochain, map: impl Fn(usize) -> usize, scale: &Int) -> LinComb {
    c.values().iter().map(|(&s, v)| (map(s), v * scale)).collect()
}

/// The simplicial cochain complex of `q` with generators named `tag:[..]`.
fn cochain_hom(q: &OrderedComplex, tag: &str) -> ChainComplex {
    let module = GradedModule::new(
        (0..q.len())
            .map(|i| (format!("{tag}:{}", q.name(i)), q.simplex_dim(i) as i64))
            .collect(),
    )
    .expect("unique names");
    let d = (0..q.len())
        .map(|i| {
            q.cofaces(i)
                .iter()
                .map(|&(t, pos)| (t, parity_sign(pos % 2 == 1)))
                .collect()
        })
        .collect();
    ChainComplex::new(module, d).expect("coboundary")
}

fn cup_table(q: &Arc<OrderedComplex>) -> Result<CompositionTable> {
    let mut table = CompositionTable::new();
    for a in 0..q.len() {
        let da = Cochain::delta(q.clone(), a);
        for b in 0..q.len() {
            let p = da.cup(&Cochain::delta(q.clone(), b))?;
            if !p.values().is_empty() {
                table.insert((a, b), to_lin(&p, |s| s, &Int::from(1)));
            }
        }
    }
    Ok(table)
}

fn unit_of(q: &OrderedComplex) -> LinComb {
    q.of_dim(0).into_iter().map(|v| (v, Int::from(1))).collect()
}

/// The one-object DG category of simplicial cochains of `q` under the
/// Alexander–Whitney cup product; generators are named `name:[..]`.
pub fn cochain_category(q: Arc<OrderedComplex>, name: &str) -> Result<DGCategory> {
    Ok(DGCategory {
        objects: vec![name.to_string()],
        homs: BTreeMap::from([((0, 0), cochain_hom(&q, name))]),
        compose: BTreeMap::from([((0, 0, 0), cup_table(&q)?)]),
        units: BTreeMap::from([(0, unit_of(&q))]),
    })
}

fn assemble(q1: Arc<OrderedComplex>, q2: Arc<OrderedComplex>, mut comps: Vec<Component>) -> Result<DGCategory> {
    let q_hom = cochain_hom;

    // Mixed homs.
    let mut abs_basis = Vec::new();
    let mut rel_basis = Vec::new();
    for c in comps.iter_mut() {
        c.abs_gen = Vec::with_capacity(c.n.len());
        c.rel_gen = Vec::with_capacity(c.n.len());
        for s in 0..c.n.len() {
            let dim = c.n.simplex_dim(s) as i64;
            c.abs_gen.push(abs_basis.len());
            abs_basis.push((format!("{}:{}", c.tag, c.n.name(s)), dim - c.shift));
            if c.boundary.contains(s) {
                c.rel_gen.push(None);
            } else {
                c.rel_gen.push(Some(rel_basis.len()));
                rel_basis.push((format!("{}rel:{}", c.tag, c.n.name(s)), dim + c.shift));
            }
        }
    }
    let mut abs_d = vec![LinComb::new(); abs_basis.len()];
    let mut rel_d = vec![LinComb::new(); rel_basis.len()];
    for c in &comps {
        let eps = parity_sign(c.shift.rem_euclid(2) == 1);
        for s in 0..c.n.len() {
            let img: Vec<(usize, Int)> =
                c.n.cofaces(s)
                    .iter()
                    .map(|&(t, pos)| (t, parity_sign(pos % 2 == 1) * &eps))
                    .collect();
            abs_d[c.abs_gen[s]] = img.iter().map(|(t, v)| (c.abs_gen[*t], v.clone())).collect();
            if let Some(g) = c.rel_gen[s] {
                rel_d[g] = img
                    .iter()
                    .map(|(t, v)| {
                        (
                            c.rel_gen[*t].expect("cofaces of interior simplices are interior"),
                            v.clone(),
                        )
                    })
                    .collect();
            }
        }
    }
    let hom01 = ChainComplex::new(GradedModule::new(abs_basis)?, abs_d)?;
    let hom10 = ChainComplex::new(GradedModule::new(rel_basis)?, rel_d)?;

    let mut homs = BTreeMap::new();
    homs.insert((Q1, Q1), q_hom(&q1, "Q1"));
    homs.insert((Q2, Q2), q_hom(&q2, "Q2"));
    homs.insert((Q1, Q2), hom01);
    homs.insert((Q2, Q1), hom10);

    // Locate the component and simplex of each mixed generator.
    let mut abs_owner = Vec::new();
    let mut rel_owner = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        for s in 0..c.n.len() {
            abs_owner.push((k, s));
            if c.rel_gen[s].is_some() {
                rel_owner.push((k, s));
            }
        }
    }
    let one = Int::from(1);
    let koszul = |shift: i64, x_dim: usize| parity_sign(shift.rem_euclid(2) == 1 && x_dim % 2 == 1);
    let rel_map = |c: &Component| {
        let rg = c.rel_gen.clone();
        move |s: usize| rg[s].expect("relative products vanish on the boundary")
    };

    let mut compose: BTreeMap<(usize, usize, usize), CompositionTable> = BTreeMap::new();
    for (q, obj) in [(&q1, Q1), (&q2, Q2)] {
        compose.insert((obj, obj, obj), cup_table(q)?);
    }

    let mut put = |key: (usize, usize, usize), g2: usize, g1: usize, v: LinComb| {
        if !v.is_empty() {
            compose.entry(key).or_default().insert((g2, g1), v);
        }
    };

    for c in &comps {
        let nn = &c.n;
        let abs = |s: usize| c.abs_gen[s];
        let rel = rel_map(c);
        // Restrictions of every generator of C*(Q₁), C*(Q₂) to N.
        let r1: Vec<Cochain> = (0..q1.len())
            .map(|g| restrict(&Cochain::delta(q1.clone(), g), &c.iota1))
            .collect::<Result<_>>()?;
        let r2: Vec<Cochain> = (0..q2.len())
            .map(|g| restrict(&Cochain::delta(q2.clone(), g), &c.iota2))
            .collect::<Result<_>>()?;
        for s in 0..nn.len() {
            let ds = Cochain::delta(nn.clone(), s);
            let s_dim = nn.simplex_dim(s);
            // (Q1,Q1,Q2): a₂ = s ∈ Hom(Q₁,Q₂), a₁ ∈ C*(Q₁) (shift 0).
            for (g, r) in r1.iter().enumerate() {
                let p = ds.cup(r)?;
                put((Q1, Q1, Q2), abs(s), g, to_lin(&p, abs, &one));
            }
            // (Q1,Q2,Q2): a₂ ∈ C*(Q₂), a₁ = s ∈ Hom(Q₁,Q₂) (shift m).
            for (g, r) in r2.iter().enumerate() {
                let sign = koszul(c.shift, r.degree());
                let p = r.cup(&ds)?;
                put((Q1, Q2, Q2), g, abs(s), to_lin(&p, abs, &sign));
            }
            let Some(sr) = c.rel_gen[s] else { continue };
            // (Q2,Q2,Q1): a₂ = s ∈ Hom(Q₂,Q₁), a₁ ∈ C*(Q₂) (shift 0).
            for (g, r) in r2.iter().enumerate() {
                let p = ds.cup(r)?;
                put((Q2, Q2, Q1), sr, g, to_lin(&p, &rel, &one));
            }
            // (Q2,Q1,Q1): a₂ ∈ C*(Q₁), a₁ = s ∈ Hom(Q₂,Q₁) (shift −m).
            for (g, r) in r1.iter().enumerate() {
                let sign = koszul(-c.shift, r.degree());
                let p = r.cup(&ds)?;
                put((Q2, Q1, Q1), g, sr, to_lin(&p, &rel, &sign));
            }
            for t in 0..nn.len() {
                let dt = Cochain::delta(nn.clone(), t);
                // (Q1,Q2,Q1): a₂ = s ∈ Hom(Q₂,Q₁), a₁ = t ∈ Hom(Q₁,Q₂) ↦ ι₁!(a₂ ∪ a₁).
                let p = extend_by_zero(&ds.cup(&dt)?, &c.iota1)?;
                put((Q1, Q2, Q1), sr, abs(t), to_lin(&p, |x| x, &koszul(c.shift, s_dim)));
                // (Q2,Q1,Q2): a₂ = t ∈ Hom(Q₁,Q₂), a₁ = s ∈ Hom(Q₂,Q₁) ↦ ι₂!(a₂ ∪ a₁).
                let p = extend_by_zero(&dt.cup(&ds)?, &c.iota2)?;
                put(
                    (Q2, Q1, Q2),
                    abs(t),
                    sr,
                    to_lin(&p, |x| x, &koszul(-c.shift, nn.simplex_dim(t))),
                );
            }
        }
    }
    for i in [Q1, Q2] {
        for j in [Q1, Q2] {
            for k in [Q1, Q2] {
                compose.entry((i, j, k)).or_default();
            }
        }
    }

    let units = BTreeMap::from([(Q1, unit_of(&q1)), (Q2, unit_of(&q2))]);
    Ok(DGCategory {
        objects: vec!["Q1".into(), "Q2".into()],
        homs,
        compose,
        units,
    })
}
