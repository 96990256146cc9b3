//! Minimal models by homological perturbation.
//!
//! Each hom complex is split as `C = B' ⊕ B ⊕ H` with `μ₁: B' ≅ B` and `H`
//! a complement of the boundaries inside the cycles. The splitting gives an
//! inclusion `i: H → C`, a projection `p: C → H` and a homotopy `h` with
//! `id − i∘p = μ₁h + hμ₁`. The minimal operations and the components of
//! the inclusion functor are then built arity by arity:
//! with `Ψ` the part of the functor equation that only involves lower
//! arities, `μ_min^d = pΨ` and `F^d = −hΨ`.

use super::category::{AInfCategory, Generator, OpTable};
use super::functor::{functor_sides, hom_complex, AInfFunctor};
use crate::algebra_core::{add_scaled, smith_normal_form, smith_normal_form_mod, IntMatrix, LinComb, Snf};
use crate::error::{Error, Result};
use crate::Int;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Splitting data of one degree of a hom complex.
#[derive(Clone, Debug)]
pub(crate) struct DegreeSplitting {
    /// Global generator indices of `C^p`, in order.
    pub gens: Vec<usize>,
    /// `i: H^p → C^p`.
    pub incl: IntMatrix,
    /// `p: C^p → H^p`.
    pub proj: IntMatrix,
    /// `h: C^p → C^{p−1}` (columns: `C^p`, rows: `C^{p−1}`).
    pub homotopy: IntMatrix,
}

/// Splitting of a whole hom complex, by degree.
#[derive(Clone, Debug)]
pub(crate) struct HomSplitting {
    pub degrees: BTreeMap<i64, DegreeSplitting>,
}

fn reduce_matrix(mut m: IntMatrix, modulus: &Option<Int>) -> IntMatrix {
    if let Some(p) = modulus {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j).mod_floor(p);
                m.set(i, j, v);
            }
        }
    }
    m
}

fn mul(a: &IntMatrix, b: &IntMatrix, modulus: &Option<Int>) -> IntMatrix {
    reduce_matrix(a.mul(b), modulus)
}

fn snf(m: &IntMatrix, modulus: &Option<Int>) -> Snf {
    match modulus {
        Some(p) => smith_normal_form_mod(m, p),
        None => smith_normal_form(m),
    }
}

/// Split `hom(x, y)` of `cat`. Over ℤ every invariant factor of the
/// differential and of the boundary inclusion must be one.
pub(crate) fn split_hom(cat: &AInfCategory, x: usize, y: usize) -> Result<HomSplitting> {
    let modulus = &cat.modulus;
    let (c, gens) = hom_complex(cat, x, y);
    if c.check_d_squared().is_err() {
        return Err(Error::TransferFailure(format!(
            "μ₁ does not square to zero on hom({}, {})",
            cat.objects[x], cat.objects[y]
        )));
    }
    let mut degrees_snf: BTreeMap<i64, (Snf, usize)> = BTreeMap::new();
    let mut get = |p: i64| -> (Snf, usize) {
        degrees_snf
            .entry(p)
            .or_insert_with(|| {
                let s = snf(&c.degree_matrix(p), modulus);
                let r = s.rank();
                (s, r)
            })
            .clone()
    };
    let mut out = BTreeMap::new();
    for p in c.module().degrees() {
        let local = c.module().in_degree(p);
        let n_p = local.len();
        let (sp, r_p) = get(p);
        let (sq, r_q) = get(p - 1);
        let torsion = |factors: Vec<Int>, degree: i64| -> Result<()> {
            let bad: Vec<String> = factors.iter().filter(|f| !f.is_one()).map(|f| f.to_string()).collect();
            if bad.is_empty() {
                Ok(())
            } else {
                Err(Error::TorsionObstruction {
                    from: cat.objects[x].clone(),
                    to: cat.objects[y].clone(),
                    degree,
                    factors: bad,
                })
            }
        };
        if modulus.is_none() {
            torsion(sp.invariant_factors(), p + 1)?;
        }
        let r1_prev = sq.right.select_cols(&(0..r_q).collect::<Vec<_>>());
        let boundaries = mul(&c.degree_matrix(p - 1), &r1_prev, modulus);
        let kernel_rows: Vec<usize> = (r_p..n_p).collect();
        let to_kernel = sp.right_inv.select_rows(&kernel_rows);
        let x_mat = mul(&to_kernel, &boundaries, modulus);
        let sx = snf(&x_mat, modulus);
        if modulus.is_none() {
            torsion(sx.invariant_factors(), p)?;
        }
        if sx.rank() != r_q {
            return Err(Error::TransferFailure(format!(
                "boundaries in degree {p} of hom({}, {}) are not cycles",
                cat.objects[x], cat.objects[y]
            )));
        }
        let q = mul(&sx.left, &to_kernel, modulus);
        let k = n_p - r_p;
        let proj = q.select_rows(&(r_q..k).collect::<Vec<_>>());
        let beta = q.select_rows(&(0..r_q).collect::<Vec<_>>());
        let homotopy = mul(&mul(&r1_prev, &sx.right, modulus), &beta, modulus);
        let kernel = sp.right.select_cols(&(r_p..n_p).collect::<Vec<_>>());
        let incl = mul(
            &kernel,
            &sx.left_inv.select_cols(&(r_q..k).collect::<Vec<_>>()),
            modulus,
        );
        out.insert(
            p,
            DegreeSplitting {
                gens: local.iter().map(|&l| gens[l]).collect(),
                incl,
                proj,
                homotopy,
            },
        );
    }
    Ok(HomSplitting { degrees: out })
}

/// Minimal generator data: hom, degree and position inside `H^p`.
struct MinGen {
    hom: (usize, usize),
    degree: i64,
    slot: usize,
}

/// The minimal model of `cat` up to arity `d_max`, with the inclusion
/// functor `min → cat`.
///
/// Generators of the minimal model are named `H[x,y]^p.j`. Over ℤ the
/// construction requires torsion-free hom cohomology and otherwise returns
/// [`Error::TorsionObstruction`]; over a prime field it always applies.
pub fn minimal_model(cat: &AInfCategory, d_max: usize) -> Result<(AInfCategory, AInfFunctor)> {
    let modulus = cat.modulus.clone();
    let nobj = cat.objects.len();
    let mut splittings: BTreeMap<(usize, usize), HomSplitting> = BTreeMap::new();
    for x in 0..nobj {
        for y in 0..nobj {
            if !cat.hom_generators(x, y).is_empty() {
                splittings.insert((x, y), split_hom(cat, x, y)?);
            }
        }
    }
    let mut generators = Vec::new();
    let mut info = Vec::new();
    let mut first: HashMap<((usize, usize), i64), usize> = HashMap::new();
    for (&(x, y), s) in &splittings {
        for (&p, ds) in &s.degrees {
            first.insert(((x, y), p), generators.len());
            for j in 0..ds.incl.cols() {
                generators.push(Generator {
                    id: format!("H[{},{}]^{p}.{j}", cat.objects[x], cat.objects[y]),
                    source: x,
                    target: y,
                    degree: p,
                });
                info.push(MinGen {
                    hom: (x, y),
                    degree: p,
                    slot: j,
                });
            }
        }
    }
    let min = AInfCategory::new(cat.objects.clone(), generators, cat.n, BTreeMap::new(), modulus.clone())?;
    let f1: OpTable = info
        .iter()
        .enumerate()
        .map(|(g, m)| {
            let ds = &splittings[&m.hom].degrees[&m.degree];
            let v: LinComb = ds
                .gens
                .iter()
                .enumerate()
                .map(|(r, &cg)| (cg, ds.incl.get(r, m.slot).clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (vec![g], v)
        })
        .collect();
    let mut functor = AInfFunctor {
        source: min,
        target: cat.clone(),
        object_map: (0..nobj).collect(),
        components: BTreeMap::from([(1, f1)]),
    };

    for d in 2..=d_max {
        let strings = functor.source.strings(d);
        let results = strings
            .par_iter()
            .map(|s| -> Result<Option<(Vec<usize>, LinComb, LinComb)>> {
                let (lhs, rhs) = functor_sides(&functor, s);
                let mut psi = lhs;
                add_scaled(&mut psi, &rhs, &Int::from(-1));
                let psi = cat.reduce(psi);
                if psi.is_empty() {
                    return Ok(None);
                }
                if !cat.mu_lin(&[&psi]).is_empty() {
                    return Err(Error::TransferFailure(format!(
                        "obstruction for {:?} is not a cycle; the input does not satisfy the A∞ relations",
                        functor.source.names(s)
                    )));
                }
                let (x, y) = functor.source.endpoints(s);
                let degree = s.iter().map(|&g| functor.source.degree(g)).sum::<i64>() + 2 - d as i64;
                let ds = &splittings[&(x, y)].degrees[&degree];
                let pos: HashMap<usize, usize> = ds.gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
                let mut coords = vec![Int::zero(); ds.gens.len()];
                for (g, c) in &psi {
                    coords[pos[g]] = c.clone();
                }
                let base = first[&((x, y), degree)];
                let mu: LinComb = ds
                    .proj
                    .apply(&coords)
                    .into_iter()
                    .enumerate()
                    .map(|(j, c)| (base + j, c))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                let below = &splittings[&(x, y)].degrees.get(&(degree - 1));
                let fd: LinComb = match below {
                    Some(prev) => ds
                        .homotopy
                        .apply(&coords)
                        .into_iter()
                        .enumerate()
                        .map(|(r, c)| (prev.gens[r], -c))
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                    None => LinComb::new(),
                };
                Ok(Some((s.clone(), cat.reduce(mu), cat.reduce(fd))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut mu_table = OpTable::new();
        let mut f_table = OpTable::new();
        for (s, mu, fd) in results.into_iter().flatten() {
            if !mu.is_empty() {
                mu_table.insert(s.clone(), mu);
            }
            if !fd.is_empty() {
                f_table.insert(s, fd);
            }
        }
        if !mu_table.is_empty() {
            functor.source.mu.insert(d, mu_table);
        }
        if !f_table.is_empty() {
            functor.components.insert(d, f_table);
        }
    }
    let min = AInfCategory::new(
        functor.source.objects.clone(),
        functor.source.generators.clone(),
        cat.n,
        functor.source.mu.clone(),
        modulus,
    )?;
    let incl = AInfFunctor::new(min.clone(), cat.clone(), functor.object_map, functor.components)?;
    Ok((min, incl))
}
