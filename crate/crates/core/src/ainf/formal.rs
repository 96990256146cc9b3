//! Formal count data: A∞ structures from user-supplied signed counts, the
//! Morse and Fukaya sign twists, and the JSON exchange format.
//!
//! ```json
//! {"n": 1, "mode": "raw|morse|fukaya", "objects": ["L"],
//!  "generators": [{"id": "m", "source": "L", "target": "L", "degree": 0}],
//!  "counts": [{"d": 2, "out": "m", "in": ["m", "m"], "coeff": 1}]}
//! ```
//! `in` lists inputs in argument order `[x_d, …, x_1]`. An optional
//! `"modulus": p` declares coefficients in ℤ/p.

use super::category::{AInfCategory, Generator, OpTable};
use crate::error::{Error, Result};
use crate::Int;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// How counts are turned into structure coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Coefficients verbatim.
    #[default]
    Raw,
    /// Multiply by `(−1)^{(n+1)(deg x₀ + †(x⃗))}`, and additionally by
    /// `(−1)^n` for the differential.
    Morse,
    /// Multiply by `(−1)^{†(p⃗)}`.
    Fukaya,
}

/// A generator as it appears in a count file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Unique id.
    pub id: String,
    /// Source object name.
    pub source: String,
    /// Target object name.
    pub target: String,
    /// Degree.
    pub degree: i64,
}

/// One signed count: `coeff · out` in `μ_d(in)` (or `F^d(in)` for functors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    /// Arity.
    pub d: usize,
    /// Output generator id.
    pub out: String,
    /// Input generator ids in argument order `[x_d, …, x_1]`.
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    /// Signed count.
    #[serde(with = "int_json")]
    pub coeff: Int,
}

/// The count-file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalCountData {
    /// Ambient dimension.
    pub n: i64,
    /// Twisting mode.
    #[serde(default)]
    pub mode: CountMode,
    /// Object names.
    pub objects: Vec<String>,
    /// Generators.
    pub generators: Vec<GeneratorSpec>,
    /// Counts.
    pub counts: Vec<CountEntry>,
    /// Prime modulus of the coefficient ring, if not ℤ.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int_json")]
    pub modulus: Option<Int>,
}

/// Integers serialize as JSON numbers when they fit in `i64`, otherwise as
/// decimal strings; both forms are accepted on input.
pub(crate) mod int_json {
    use crate::Int;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(v) {
            Ok(x) => x.serialize(s),
            Err(_) => v.to_string().serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => n
                .as_i64()
                .map(Int::from)
                .ok_or_else(|| D::Error::custom(format!("integer expected, got {n}"))),
            Value::String(s) => s
                .parse()
                .map_err(|_| D::Error::custom(format!("integer expected, got {s:?}"))),
            other => Err(D::Error::custom(format!("integer expected, got {other}"))),
        }
    }
}

pub(crate) mod opt_int_json {
    use crate::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::int_json::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super::int_json")] Int);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

/// `†(x⃗) = Σ_k k·deg(x_k)` for degrees listed as `x_1, …, x_d`.
pub fn dagger(degrees: &[i64]) -> i64 {
    degrees.iter().enumerate().map(|(i, d)| (i as i64 + 1) * d).sum()
}

/// Degrees of an input list given in argument order, reordered `x_1..x_d`.
fn ascending(in_degrees: &[i64]) -> Vec<i64> {
    in_degrees.iter().rev().copied().collect()
}

/// Morse twist exponent for output degree `deg_out` and inputs given in
/// argument order: `(n+1)(deg x₀ + †(x⃗))`, plus `n` when `d = 1`.
pub fn morse_twist_exponent(n: i64, deg_out: i64, in_degrees: &[i64]) -> i64 {
    let base = (n + 1) * (deg_out + dagger(&ascending(in_degrees)));
    if in_degrees.len() == 1 {
        base + n
    } else {
        base
    }
}

/// Fukaya twist exponent `†(p⃗)` for inputs given in argument order.
pub fn fukaya_twist_exponent(in_degrees: &[i64]) -> i64 {
    dagger(&ascending(in_degrees))
}

impl FormalCountData {
    /// Parse from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub(crate) fn resolve_generators(data_objects: &[String], gens: &[GeneratorSpec]) -> Result<Vec<Generator>> {
    let obj = |name: &str| {
        data_objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownId(format!("object {name}")))
    };
    gens.iter()
        .map(|g| {
            Ok(Generator {
                id: g.id.clone(),
                source: obj(&g.source)?,
                target: obj(&g.target)?,
                degree: g.degree,
            })
        })
        .collect()
}

/// Build an A∞ category from counts, applying the mode's sign twist.
///
/// Entries with the same inputs are summed. Degree violations are all
/// collected into one [`Error::DegreeViolation`].
pub fn build_formal_category(data: &FormalCountData) -> Result<AInfCategory> {
    let generators = resolve_generators(&data.objects, &data.generators)?;
    let index: BTreeMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.id.as_str(), i)).collect();
    let look = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownId(id.to_string()));
    let mut mu: BTreeMap<usize, OpTable> = BTreeMap::new();
    let mut bad = Vec::new();
    for e in &data.counts {
        if e.inputs.len() != e.d {
            bad.push(format!("d={} out={} has {} inputs", e.d, e.out, e.inputs.len()));
            continue;
        }
        let out = look(&e.out)?;
        let inputs = e.inputs.iter().map(|s| look(s)).collect::<Result<Vec<_>>>()?;
        let in_deg: Vec<i64> = inputs.iter().map(|&g| generators[g].degree).collect();
        let exponent = match data.mode {
            CountMode::Raw => 0,
            CountMode::Morse => morse_twist_exponent(data.n, generators[out].degree, &in_deg),
            CountMode::Fukaya => fukaya_twist_exponent(&in_deg),
        };
        let c = if exponent.rem_euclid(2) == 1 {
            -e.coeff.clone()
        } else {
            e.coeff.clone()
        };
        let slot = mu.entry(e.d).or_default().entry(inputs).or_default();
        let v = slot.entry(out).or_insert_with(Int::zero);
        *v += c;
        if v.is_zero() {
            slot.remove(&out);
        }
    }
    if !bad.is_empty() {
        return Err(Error::DegreeViolation(bad));
    }
    AInfCategory::new(data.objects.clone(), generators, data.n, mu, data.modulus.clone())
}

/// Export in raw mode with counts sorted by `(d, in, out)`.
pub fn to_formal(cat: &AInfCategory) -> FormalCountData {
    let mut counts = Vec::new();
    for (&d, table) in &cat.mu {
        for (inputs, out) in table {
            for (o, c) in out {
                counts.push(CountEntry {
                    d,
                    out: cat.generators[*o].id.clone(),
                    inputs: cat.names(inputs),
                    coeff: c.clone(),
                });
            }
        }
    }
    counts.sort_by(|a, b| (a.d, &a.inputs, &a.out).cmp(&(b.d, &b.inputs, &b.out)));
    FormalCountData {
        n: cat.n,
        mode: CountMode::Raw,
        objects: cat.objects.clone(),
        generators: cat
            .generators
            .iter()
            .map(|g| GeneratorSpec {
                id: g.id.clone(),
                source: cat.objects[g.source].clone(),
                target: cat.objects[g.target].clone(),
                degree: g.degree,
            })
            .collect(),
        counts,
        modulus: cat.modulus.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_exponents() {
        // n = 1, x₀ of degree 1, inputs (x₂, x₁) of degrees (0, 1): † = 1.
        assert_eq!(morse_twist_exponent(1, 1, &[0, 1]) % 2, 0);
        assert_eq!(dagger(&[1, 0, 2]), 7);
        assert_eq!(fukaya_twist_exponent(&[]), 0);
        // The differential carries the extra global (−1)^n.
        assert_eq!(morse_twist_exponent(2, 1, &[0]), 3 + 2);
    }

    #[test]
    fn coefficient_serialization() {
        let e = CountEntry {
            d: 1,
            out: "a".into(),
            inputs: vec!["b".into()],
            coeff: Int::from(-3),
        };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"d":1,"out":"a","in":["b"],"coeff":-3}"#);
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let e2 = CountEntry {
            coeff: big.clone(),
            ..e
        };
        let back: CountEntry = serde_json::from_str(&serde_json::to_string(&e2).unwrap()).unwrap();
        assert_eq!(back.coeff, big);
    }
}
