//! A∞ categories given by sparse operation tables.

use crate::algebra_core::{add_scaled, normalize_mod, LinComb};
use crate::error::{Error, Result};
use crate::Int;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// A basis morphism `source → target` of the given degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    /// Unique identifier.
    pub id: String,
    /// Source object index.
    pub source: usize,
    /// Target object index.
    pub target: usize,
    /// Cohomological degree.
    pub degree: i64,
}

/// Operation table of one arity: inputs in argument order
/// `[a_d, …, a_1]` (so `a_1` is applied first) to an output combination.
pub type OpTable = HashMap<Vec<usize>, LinComb>;

/// An A∞ category over ℤ (or over ℤ/p when `modulus` is set).
///
/// `mu[d]` is the table of `μ_d`, of degree `2 − d`. Inputs
/// `a_1: X₀ → X₁, …, a_d: X_{d−1} → X_d` produce an output `X₀ → X_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfCategory {
    /// Object names.
    pub objects: Vec<String>,
    /// All generators of all hom modules.
    pub generators: Vec<Generator>,
    /// Ambient dimension used by sign twists.
    pub n: i64,
    /// Operation tables by arity.
    pub mu: BTreeMap<usize, OpTable>,
    /// Coefficients are read modulo this prime when set.
    pub modulus: Option<Int>,
    index: HashMap<String, usize>,
    from_object: Vec<Vec<usize>>,
}

impl AInfCategory {
    /// Build and validate: unique ids, valid objects, composable inputs,
    /// outputs with the right endpoints and degree `Σ deg + 2 − d`.
    pub fn new(
        objects: Vec<String>,
        generators: Vec<Generator>,
        n: i64,
        mu: BTreeMap<usize, OpTable>,
        modulus: Option<Int>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.source >= objects.len() || g.target >= objects.len() {
                return Err(Error::UnknownId(format!("object of generator {}", g.id)));
            }
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator id {}", g.id)));
            }
        }
        let mut from_object = vec![Vec::new(); objects.len()];
        for (i, g) in generators.iter().enumerate() {
            from_object[g.source].push(i);
        }
        let mut cat = AInfCategory {
            objects,
            generators,
            n,
            mu: BTreeMap::new(),
            modulus,
            index,
            from_object,
        };
        let mut bad = Vec::new();
        for (&d, table) in &mu {
            if d == 0 {
                return Err(Error::InvalidArgument("arity 0 operations are not supported".into()));
            }
            for (inputs, out) in table {
                if let Err(e) = cat.validate_entry(d, inputs, out, 2 - d as i64) {
                    bad.push(e);
                }
            }
        }
        if !bad.is_empty() {
            bad.sort();
            return Err(Error::DegreeViolation(bad));
        }
        cat.mu = mu
            .into_iter()
            .map(|(d, t)| {
                let t: OpTable = t
                    .into_iter()
                    .map(|(k, v)| (k, cat.reduce(v)))
                    .filter(|(_, v)| !v.is_empty())
                    .collect();
                (d, t)
            })
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Ok(cat)
    }

    /// Check one table entry of arity `d` and degree `shift` (`2−d` for μ,
    /// `1−d` for functor components). Returns a description on failure.
    pub(crate) fn validate_entry(
        &self,
        d: usize,
        inputs: &[usize],
        out: &LinComb,
        shift: i64,
    ) -> std::result::Result<(), String> {
        self.validate_inputs(d, inputs)?;
        let (src, tgt) = self.endpoints(inputs);
        let want = inputs.iter().map(|&g| self.generators[g].degree).sum::<i64>() + shift;
        for &o in out.keys() {
            let g = self
                .generators
                .get(o)
                .ok_or_else(|| format!("output index {o} out of range"))?;
            if g.source != src || g.target != tgt {
                return Err(format!(
                    "{}: output {} has wrong endpoints",
                    self.describe(d, inputs),
                    g.id
                ));
            }
            if g.degree != want {
                return Err(format!(
                    "{}: output {} has degree {} but expected {want}",
                    self.describe(d, inputs),
                    g.id,
                    g.degree
                ));
            }
        }
        Ok(())
    }

    pub(crate) fn validate_inputs(&self, d: usize, inputs: &[usize]) -> std::result::Result<(), String> {
        if inputs.len() != d {
            return Err(format!("arity {d} entry with {} inputs", inputs.len()));
        }
        if let Some(&g) = inputs.iter().find(|&&g| g >= self.generators.len()) {
            return Err(format!("input index {g} out of range"));
        }
        if !self.composable(inputs) {
            return Err(format!("{}: inputs are not composable", self.describe(d, inputs)));
        }
        Ok(())
    }

    fn describe(&self, d: usize, inputs: &[usize]) -> String {
        let ids: Vec<&str> = inputs.iter().map(|&g| self.generators[g].id.as_str()).collect();
        format!("d={d} in={ids:?}")
    }

    /// Index of a generator by id.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index of an object by name.
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Generators with the given source object.
    pub fn generators_from(&self, obj: usize) -> &[usize] {
        &self.from_object[obj]
    }

    /// Generators of `hom(source, target)` in index order.
    pub fn hom_generators(&self, source: usize, target: usize) -> Vec<usize> {
        self.from_object[source]
            .iter()
            .copied()
            .filter(|&g| self.generators[g].target == target)
            .collect()
    }

    /// Degree of generator `g`.
    pub fn degree(&self, g: usize) -> i64 {
        self.generators[g].degree
    }

    /// True iff `[a_d, …, a_1]` is composable.
    pub fn composable(&self, inputs: &[usize]) -> bool {
        inputs
            .windows(2)
            .all(|w| self.generators[w[0]].source == self.generators[w[1]].target)
    }

    /// `(source of a_1, target of a_d)` for a nonempty input string.
    pub fn endpoints(&self, inputs: &[usize]) -> (usize, usize) {
        (
            self.generators[*inputs.last().expect("nonempty")].source,
            self.generators[inputs[0]].target,
        )
    }

    /// Reduce a combination modulo the coefficient ring.
    pub fn reduce(&self, mut v: LinComb) -> LinComb {
        match &self.modulus {
            Some(p) => {
                normalize_mod(&mut v, p);
                v
            }
            None => v,
        }
    }

    /// True iff the table of arity `d` has entries.
    pub fn has_arity(&self, d: usize) -> bool {
        self.mu.get(&d).is_some_and(|t| !t.is_empty())
    }

    /// Highest arity with a nonempty table (0 if none).
    pub fn max_arity(&self) -> usize {
        self.mu.keys().copied().max().unwrap_or(0)
    }

    /// `μ_d` on a string of generators.
    pub fn mu_gen(&self, inputs: &[usize]) -> Option<&LinComb> {
        self.mu.get(&inputs.len()).and_then(|t| t.get(inputs))
    }

    /// `μ_d` extended multilinearly to combinations (argument order).
    pub fn mu_lin(&self, args: &[&LinComb]) -> LinComb {
        let d = args.len();
        let Some(table) = self.mu.get(&d) else {
            return LinComb::new();
        };
        let mut out = LinComb::new();
        let mut key = vec![0usize; d];
        multilinear(args, 0, &mut key, &Int::from(1), &mut |k, c| {
            if let Some(v) = table.get(k) {
                add_scaled(&mut out, v, c);
            }
        });
        self.reduce(out)
    }

    /// Number of composable strings of length `d`.
    pub fn count_strings(&self, d: usize) -> u128 {
        // ways[o] = number of strings of the current length starting at object o.
        let mut ways: Vec<u128> = vec![1; self.objects.len()];
        for _ in 0..d {
            ways = (0..self.objects.len())
                .map(|o| {
                    self.from_object[o]
                        .iter()
                        .map(|&g| ways[self.generators[g].target])
                        .sum()
                })
                .collect();
        }
        ways.iter().sum()
    }

    /// All composable strings of length `d`, in argument order, sorted.
    pub fn strings(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        for g in 0..self.generators.len() {
            cur.push(g);
            self.extend_strings(d, &mut cur, &mut out);
            cur.pop();
        }
        for s in &mut out {
            s.reverse();
        }
        out.sort();
        out
    }

    fn extend_strings(&self, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("nonempty");
        for &g in &self.from_object[self.generators[last].target] {
            cur.push(g);
            self.extend_strings(d, cur, out);
            cur.pop();
        }
    }

    /// A uniformly random composable string of length `d ≥ 1` (if any).
    pub fn sample_string<R: Rng>(&self, d: usize, rng: &mut R) -> Option<Vec<usize>> {
        // tails[j][o]: strings of length j starting at object o.
        let mut tails: Vec<Vec<u128>> = vec![vec![1; self.objects.len()]];
        for j in 1..=d {
            let prev = &tails[j - 1];
            let next = (0..self.objects.len())
                .map(|o| {
                    self.from_object[o]
                        .iter()
                        .map(|&g| prev[self.generators[g].target])
                        .sum()
                })
                .collect();
            tails.push(next);
        }
        let total: u128 = tails[d].iter().sum();
        if total == 0 {
            return None;
        }
        let mut pick = rng.gen_range(0..total);
        let mut obj = 0;
        for (o, &w) in tails[d].iter().enumerate() {
            if pick < w {
                obj = o;
                break;
            }
            pick -= w;
        }
        let mut s = Vec::with_capacity(d);
        for remaining in (1..=d).rev() {
            let mut chosen = None;
            let mut pick = rng.gen_range(0..tails[remaining][obj]);
            for &g in &self.from_object[obj] {
                let w = tails[remaining - 1][self.generators[g].target];
                if pick < w {
                    chosen = Some(g);
                    break;
                }
                pick -= w;
            }
            let g = chosen.expect("weights sum to total");
            s.push(g);
            obj = self.generators[g].target;
        }
        s.reverse();
        Some(s)
    }

    /// Display names of a generator string.
    pub fn names(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&g| self.generators[g].id.clone()).collect()
    }

    /// Combination rendered with generator ids (for witnesses).
    pub fn lin_json(&self, v: &LinComb) -> serde_json::Value {
        serde_json::Value::Object(
            v.iter()
                .map(|(g, c)| (self.generators[*g].id.clone(), serde_json::json!(c.to_string())))
                .collect(),
        )
    }
}

/// Expand a multilinear operation over the supports of `args`, calling
/// `f(key, coefficient)` for each generator tuple.
pub(crate) fn multilinear(
    args: &[&LinComb],
    pos: usize,
    key: &mut Vec<usize>,
    coeff: &Int,
    f: &mut impl FnMut(&[usize], &Int),
) {
    if pos == args.len() {
        f(key, coeff);
        return;
    }
    for (g, c) in args[pos] {
        key[pos] = *g;
        multilinear(args, pos + 1, key, &(coeff * c), f);
    }
}

/// `(−1)^{odd}` as an integer.
pub(crate) fn sign(odd: bool) -> Int {
    if odd {
        Int::from(-1)
    } else {
        Int::from(1)
    }
}

/// The sign exponent `✠_n = n + Σ_{j≤n} deg a_j` for a string in argument
/// order (`a_j = s[d−j]`).
pub(crate) fn maltese(cat: &AInfCategory, s: &[usize], n: usize) -> i64 {
    let d = s.len();
    n as i64 + (d - n..d).map(|i| cat.degree(s[i])).sum::<i64>()
}
