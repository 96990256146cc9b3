//! The A∞ relations.

use super::category::{maltese, sign, AInfCategory};
use crate::algebra_core::{add_scaled, LinComb};
use crate::report::Report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

/// How thoroughly to check identities indexed by composable strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest string length checked.
    pub d_max: usize,
    /// Strings are enumerated exhaustively when there are at most this many.
    pub exhaustive_limit: u128,
    /// Number of uniformly sampled strings above the limit.
    pub samples: usize,
    /// Seed of the sampler.
    pub seed: u64,
}

impl CheckConfig {
    /// Defaults: exhaustive up to 500 000 strings per length, otherwise
    /// 20 000 samples, seed 0.
    pub fn new(d_max: usize) -> Self {
        CheckConfig {
            d_max,
            exhaustive_limit: 500_000,
            samples: 20_000,
            seed: 0,
        }
    }

    /// Builder-style seed override.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// The strings of length `d` to check, and whether they are exhaustive.
pub(crate) fn strings_for(cat: &AInfCategory, d: usize, cfg: &CheckConfig) -> (Vec<Vec<usize>>, bool, u128) {
    let total = cat.count_strings(d);
    if total <= cfg.exhaustive_limit {
        (cat.strings(d), true, total)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let s = (0..cfg.samples)
            .filter_map(|_| cat.sample_string(d, &mut rng))
            .collect();
        (s, false, total)
    }
}

/// Left side of the A∞ relation on the string `s = [a_d, …, a_1]`:
/// `Σ_{m,n} (−1)^{✠_n} μ_{d−m+1}(a_d, …, a_{n+m+1}, μ_m(a_{n+m}, …, a_{n+1}), a_n, …, a_1)`.
pub fn relation_value(cat: &AInfCategory, s: &[usize]) -> LinComb {
    let d = s.len();
    let mut total = LinComb::new();
    for m in 1..=d {
        let outer = d - m + 1;
        if !cat.has_arity(m) || !cat.has_arity(outer) {
            continue;
        }
        for n in 0..=d - m {
            let Some(inner) = cat.mu_gen(&s[d - n - m..d - n]) else {
                continue;
            };
            let eps = sign(maltese(cat, s, n) & 1 == 1);
            let mut key: Vec<usize> = Vec::with_capacity(outer);
            key.extend_from_slice(&s[..d - n - m]);
            key.push(0);
            key.extend_from_slice(&s[d - n..]);
            let slot = d - n - m;
            for (g, c) in inner {
                key[slot] = *g;
                if let Some(v) = cat.mu_gen(&key) {
                    add_scaled(&mut total, v, &(c * &eps));
                }
            }
        }
    }
    cat.reduce(total)
}

/// Check the A∞ relations for every string length `1..=d_max` with the
/// default [`CheckConfig`].
pub fn check_ainf_relations(cat: &AInfCategory, d_max: usize) -> Report {
    check_ainf_relations_with(cat, &CheckConfig::new(d_max))
}

/// Check the A∞ relations; one report entry per string length, carrying the
/// first nonzero witness in sorted string order.
pub fn check_ainf_relations_with(cat: &AInfCategory, cfg: &CheckConfig) -> Report {
    let mut report = Report::new();
    for d in 1..=cfg.d_max {
        let contributing = (1..=d).any(|m| cat.has_arity(m) && cat.has_arity(d - m + 1));
        let (strings, exhaustive, total) = if contributing {
            strings_for(cat, d, cfg)
        } else {
            (Vec::new(), true, cat.count_strings(d))
        };
        let witness = strings.par_iter().find_map_first(|s| {
            let v = relation_value(cat, s);
            (!v.is_empty()).then(|| json!({"inputs": cat.names(s), "value": cat.lin_json(&v)}))
        });
        let params = json!({
            "d": d,
            "mode": if exhaustive { "exhaustive" } else { "sampled" },
            "strings": if exhaustive { total.to_string() } else { strings.len().to_string() },
        });
        report.push(
            "ainf.relation",
            params,
            json!(0),
            witness.clone().unwrap_or(json!(0)),
            witness.is_none(),
        );
    }
    report
}
