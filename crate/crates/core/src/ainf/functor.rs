//! A∞ functors, the functor equation and the quasi-isomorphism check.

use super::category::{maltese, multilinear, sign, AInfCategory, OpTable};
use super::formal::{build_formal_category, int_json, resolve_generators, FormalCountData};
use super::relations::{strings_for, CheckConfig};
use crate::algebra_core::{
    add_scaled, normalize_mod, smith_normal_form, smith_normal_form_mod, ChainComplex, GradedModule, IntMatrix, LinComb,
};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::Int;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::{BTreeMap, HashMap};

/// An A∞ functor `F: source → target` with components `F^d` of degree
/// `1 − d`, tabulated on generator strings in argument order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfFunctor {
    /// Source category.
    pub source: AInfCategory,
    /// Target category.
    pub target: AInfCategory,
    /// Image of each source object.
    pub object_map: Vec<usize>,
    /// Components by arity; outputs are target generator indices.
    pub components: BTreeMap<usize, OpTable>,
}

impl AInfFunctor {
    /// Validate: the object map is total, inputs are composable in the
    /// source, and outputs lie in the right target hom with degree
    /// `Σ deg + 1 − d`.
    pub fn new(
        source: AInfCategory,
        target: AInfCategory,
        object_map: Vec<usize>,
        components: BTreeMap<usize, OpTable>,
    ) -> Result<Self> {
        if object_map.len() != source.objects.len() {
            return Err(Error::LengthMismatch {
                expected: source.objects.len(),
                found: object_map.len(),
            });
        }
        if object_map.iter().any(|&o| o >= target.objects.len()) {
            return Err(Error::UnknownId("object map refers to a missing target object".into()));
        }
        let mut bad = Vec::new();
        for (&d, table) in &components {
            for (inputs, out) in table {
                if let Err(e) = source.validate_inputs(d, inputs) {
                    bad.push(e);
                    continue;
                }
                let (s, t) = source.endpoints(inputs);
                let want = inputs.iter().map(|&g| source.degree(g)).sum::<i64>() + 1 - d as i64;
                for &o in out.keys() {
                    let Some(g) = target.generators.get(o) else {
                        bad.push(format!("output index {o} out of range"));
                        continue;
                    };
                    if g.source != object_map[s] || g.target != object_map[t] || g.degree != want {
                        bad.push(format!(
                            "F^{d}({:?}) has output {} of degree {} (expected degree {want} in hom({}, {}))",
                            source.names(inputs),
                            g.id,
                            g.degree,
                            target.objects[object_map[s]],
                            target.objects[object_map[t]]
                        ));
                    }
                }
            }
        }
        if !bad.is_empty() {
            bad.sort();
            return Err(Error::DegreeViolation(bad));
        }
        let components = components
            .into_iter()
            .map(|(d, t)| {
                let t: OpTable = t
                    .into_iter()
                    .map(|(k, v)| (k, target.reduce(v)))
                    .filter(|(_, v)| !v.is_empty())
                    .collect();
                (d, t)
            })
            .collect();
        Ok(AInfFunctor {
            source,
            target,
            object_map,
            components,
        })
    }

    /// The identity functor of `cat`.
    pub fn identity(cat: &AInfCategory) -> Self {
        let f1: OpTable = (0..cat.generators.len())
            .map(|g| (vec![g], LinComb::from([(g, Int::one())])))
            .collect();
        AInfFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.objects.len()).collect(),
            components: BTreeMap::from([(1, f1)]),
        }
    }

    /// `F^d` on a generator string.
    pub fn component(&self, inputs: &[usize]) -> Option<&LinComb> {
        self.components.get(&inputs.len()).and_then(|t| t.get(inputs))
    }

    /// `F^d` extended multilinearly (argument order).
    pub fn component_lin(&self, args: &[&LinComb]) -> LinComb {
        let Some(table) = self.components.get(&args.len()) else {
            return LinComb::new();
        };
        let mut out = LinComb::new();
        let mut key = vec![0usize; args.len()];
        multilinear(args, 0, &mut key, &Int::one(), &mut |k, c| {
            if let Some(v) = table.get(k) {
                add_scaled(&mut out, v, c);
            }
        });
        self.target.reduce(out)
    }
}

/// Compositions `(d_1, …, d_r)` of `d` into positive parts.
pub(crate) fn compositions(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=d {
        for mut rest in compositions(d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Both sides of the functor equation on `s = [a_d, …, a_1]`:
/// `Σ μ_r(F^{d_r}(…), …, F^{d_1}(…, a_1))` and
/// `Σ (−1)^{✠_n} F^{d−m+1}(…, μ_m(a_{n+m}, …, a_{n+1}), a_n, …, a_1)`.
pub fn functor_sides(f: &AInfFunctor, s: &[usize]) -> (LinComb, LinComb) {
    let d = s.len();
    let mut lhs = LinComb::new();
    for parts in compositions(d) {
        let r = parts.len();
        if !f.target.has_arity(r) {
            continue;
        }
        // parts[0] = d_1 acts on the last d_1 entries of s.
        let mut args: Vec<&LinComb> = Vec::with_capacity(r);
        let mut end = d;
        let mut ok = true;
        let mut pieces = Vec::with_capacity(r);
        for &p in &parts {
            match f.component(&s[end - p..end]) {
                Some(v) => pieces.push(v),
                None => {
                    ok = false;
                    break;
                }
            }
            end -= p;
        }
        if !ok {
            continue;
        }
        pieces.reverse();
        args.extend(pieces);
        let v = f.target.mu_lin(&args);
        add_scaled(&mut lhs, &v, &Int::one());
    }
    let mut rhs = LinComb::new();
    for m in 1..=d {
        if !f.source.has_arity(m) || !f.components.contains_key(&(d - m + 1)) {
            continue;
        }
        for n in 0..=d - m {
            let Some(inner) = f.source.mu_gen(&s[d - n - m..d - n]) else {
                continue;
            };
            let eps = sign(maltese(&f.source, s, n) & 1 == 1);
            let mut key: Vec<usize> = Vec::with_capacity(d - m + 1);
            key.extend_from_slice(&s[..d - n - m]);
            key.push(0);
            key.extend_from_slice(&s[d - n..]);
            let slot = d - n - m;
            for (g, c) in inner {
                key[slot] = *g;
                if let Some(v) = f.component(&key) {
                    add_scaled(&mut rhs, v, &(c * &eps));
                }
            }
        }
    }
    (f.target.reduce(lhs), f.target.reduce(rhs))
}

/// Check the functor equation for string lengths `1..=d_max` (default
/// [`CheckConfig`]).
pub fn check_functor_equation(f: &AInfFunctor, d_max: usize) -> Report {
    check_functor_equation_with(f, &CheckConfig::new(d_max))
}

/// Check the functor equation; one entry per string length with the first
/// witness in sorted string order.
pub fn check_functor_equation_with(f: &AInfFunctor, cfg: &CheckConfig) -> Report {
    let mut report = Report::new();
    for d in 1..=cfg.d_max {
        let (strings, exhaustive, total) = strings_for(&f.source, d, cfg);
        let witness = strings.par_iter().find_map_first(|s| {
            let (l, r) = functor_sides(f, s);
            (l != r).then(
                || json!({"inputs": f.source.names(s), "lhs": f.target.lin_json(&l), "rhs": f.target.lin_json(&r)}),
            )
        });
        let params = json!({
            "d": d,
            "mode": if exhaustive { "exhaustive" } else { "sampled" },
            "strings": if exhaustive { total.to_string() } else { strings.len().to_string() },
        });
        report.push(
            "functor.equation",
            params,
            json!("lhs = rhs"),
            witness.clone().unwrap_or(json!("lhs = rhs")),
            witness.is_none(),
        );
    }
    report
}

/// The hom complex `(hom(x, y), μ₁)` of an A∞ category, with generator ids
/// and the global generator index of each basis element.
pub fn hom_complex(cat: &AInfCategory, x: usize, y: usize) -> (ChainComplex, Vec<usize>) {
    let gens = cat.hom_generators(x, y);
    let local: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let module = GradedModule::new(
        gens.iter()
            .map(|&g| (cat.generators[g].id.clone(), cat.degree(g)))
            .collect(),
    )
    .expect("generator ids are unique");
    let d = gens
        .iter()
        .map(|&g| {
            cat.mu_gen(&[g])
                .map(|v| v.iter().map(|(o, c)| (local[o], c.clone())).collect())
                .unwrap_or_default()
        })
        .collect();
    (ChainComplex::new(module, d).expect("μ₁ has degree one"), gens)
}

/// Rank of a matrix over ℤ (or ℤ/p), with the invariant factors over ℤ.
fn rank_and_factors(m: &IntMatrix, modulus: &Option<Int>) -> (usize, Vec<Int>) {
    match modulus {
        Some(p) => (smith_normal_form_mod(m, p).rank(), Vec::new()),
        None => {
            let f = smith_normal_form(m).invariant_factors();
            (f.len(), f)
        }
    }
}

/// Per-degree `(degree, free rank, torsion)` of a complex over ℤ or ℤ/p.
pub fn cohomology_ranks(c: &ChainComplex, modulus: &Option<Int>) -> Vec<(i64, usize, Vec<Int>)> {
    c.module()
        .degrees()
        .into_iter()
        .map(|p| {
            let n = c.module().in_degree(p).len();
            let (out_rank, _) = rank_and_factors(&c.degree_matrix(p), modulus);
            let (in_rank, factors) = rank_and_factors(&c.degree_matrix(p - 1), modulus);
            (
                p,
                n - out_rank - in_rank,
                factors.into_iter().filter(|f| !f.is_one()).collect(),
            )
        })
        .collect()
}

/// The mapping cone of a chain map `f: A → B` given on generators:
/// `Cone^p = A^{p+1} ⊕ B^p`, `d(a, b) = (−d a, f a + d b)`.
fn mapping_cone(a: &ChainComplex, b: &ChainComplex, f: &[LinComb]) -> ChainComplex {
    let na = a.module().len();
    let mut basis: Vec<(String, i64)> = a
        .module()
        .basis()
        .iter()
        .map(|(id, d)| (format!("s{id}"), d - 1))
        .collect();
    basis.extend(b.module().basis().iter().map(|(id, d)| (format!("t{id}"), *d)));
    let mut d = Vec::with_capacity(basis.len());
    for (g, fg) in f.iter().enumerate().take(na) {
        let mut v: LinComb = a.d_of(g).iter().map(|(k, c)| (*k, -c.clone())).collect();
        for (k, c) in fg {
            v.insert(na + k, c.clone());
        }
        d.push(v);
    }
    for g in 0..b.module().len() {
        d.push(b.d_of(g).iter().map(|(k, c)| (na + k, c.clone())).collect());
    }
    ChainComplex::new(GradedModule::new(basis).expect("prefixed ids are unique"), d)
        .expect("cone differential has degree one")
}

/// `d ∘ d = 0`, over ℤ or modulo `p`.
fn squares_to_zero(c: &ChainComplex, modulus: &Option<Int>) -> bool {
    match modulus {
        None => c.check_d_squared().is_ok(),
        Some(p) => (0..c.module().len()).all(|g| {
            let mut v = c.apply(c.d_of(g));
            normalize_mod(&mut v, p);
            v.is_empty()
        }),
    }
}

/// For each source hom, decide whether `F¹` induces an isomorphism on
/// cohomology, by checking that its mapping cone is acyclic (over ℤ: also
/// torsion-free). Reports the cohomology ranks on both sides.
pub fn cohomology_functor_check(f: &AInfFunctor) -> Report {
    let mut report = Report::new();
    let modulus = f.target.modulus.clone().or_else(|| f.source.modulus.clone());
    let n = f.source.objects.len();
    for x in 0..n {
        for y in 0..n {
            let (a, agens) = hom_complex(&f.source, x, y);
            let (b, bgens) = hom_complex(&f.target, f.object_map[x], f.object_map[y]);
            if a.module().is_empty() && b.module().is_empty() {
                continue;
            }
            let bpos: HashMap<usize, usize> = bgens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let fmap: Vec<LinComb> = agens
                .iter()
                .map(|&g| {
                    f.component(&[g])
                        .map(|v| v.iter().map(|(o, c)| (bpos[o], c.clone())).collect())
                        .unwrap_or_default()
                })
                .collect();
            let cone = mapping_cone(&a, &b, &fmap);
            let is_complex = squares_to_zero(&cone, &modulus);
            let cone_h = if is_complex {
                cohomology_ranks(&cone, &modulus)
            } else {
                Vec::new()
            };
            let acyclic = is_complex && cone_h.iter().all(|(_, r, t)| *r == 0 && t.is_empty());
            let fmt = |h: Vec<(i64, usize, Vec<Int>)>| -> serde_json::Value {
                h.into_iter()
                    .map(|(p, r, t)| json!({"degree": p, "rank": r, "torsion": t.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
                    .collect()
            };
            let computed = json!({
                "chain_map": is_complex,
                "cone_acyclic": acyclic,
                "source_cohomology": fmt(cohomology_ranks(&a, &modulus)),
                "target_cohomology": if squares_to_zero(&b, &modulus) { fmt(cohomology_ranks(&b, &modulus)) } else { json!("not a complex") },
            });
            report.push(
                "functor.quasi_isomorphism",
                json!({"source": f.source.objects[x], "target": f.source.objects[y]}),
                json!({"chain_map": true, "cone_acyclic": true}),
                computed,
                acyclic,
            );
        }
    }
    report
}

/// One functor component as it appears in a functor file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    /// Arity.
    pub d: usize,
    /// Output id (a target generator).
    pub out: String,
    /// Input ids (source generators) in argument order.
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    /// Coefficient.
    #[serde(with = "int_json")]
    pub coeff: Int,
}

/// Functor file: two count files, an object map and raw components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    /// Source category counts.
    pub source: FormalCountData,
    /// Target category counts.
    pub target: FormalCountData,
    /// Source object name → target object name.
    pub object_map: BTreeMap<String, String>,
    /// Components `F^d`.
    pub components: Vec<ComponentEntry>,
}

impl FunctorFile {
    /// Parse from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Build the functor (categories are built with their declared modes).
    pub fn build(&self) -> Result<AInfFunctor> {
        let source = build_formal_category(&self.source)?;
        let target = build_formal_category(&self.target)?;
        let object_map = source
            .objects
            .iter()
            .map(|o| {
                let t = self
                    .object_map
                    .get(o)
                    .ok_or_else(|| Error::UnknownId(format!("object map lacks {o}")))?;
                target
                    .object_index(t)
                    .ok_or_else(|| Error::UnknownId(format!("target object {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let _ = resolve_generators(&self.source.objects, &self.source.generators)?;
        let mut components: BTreeMap<usize, OpTable> = BTreeMap::new();
        for e in &self.components {
            let out = target.index_of(&e.out).ok_or_else(|| Error::UnknownId(e.out.clone()))?;
            let inputs = e
                .inputs
                .iter()
                .map(|s| source.index_of(s).ok_or_else(|| Error::UnknownId(s.clone())))
                .collect::<Result<Vec<_>>>()?;
            if inputs.len() != e.d {
                return Err(Error::DegreeViolation(vec![format!(
                    "component d={} has {} inputs",
                    e.d,
                    inputs.len()
                )]));
            }
            let slot = components.entry(e.d).or_default().entry(inputs).or_default();
            let v = slot.entry(out).or_insert_with(Int::zero);
            *v += &e.coeff;
            if v.is_zero() {
                slot.remove(&out);
            }
        }
        AInfFunctor::new(source, target, object_map, components)
    }
}
