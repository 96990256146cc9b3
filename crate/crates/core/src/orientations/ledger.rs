//! Symbolic Koszul ledgers for the two gluing arguments: a shrub breaking
//! into a gradient tree carrying shrubs, and the internal boundary of
//! mushrooms where two caps merge.
//!
//! Every orientation line is a [`Symbol`] whose degree is the dimension of
//! the corresponding space (only parities matter). Each rearrangement is
//! recorded as a [`SignLedgerStep`], and its sign is recomputed from the
//! explicit permutation, independently of the closed form it is compared
//! against. Boundary-lemma signs enter as inputs from
//! [`boundary_sign_stasheff`] and [`boundary_sign_shrub`], which are checked
//! separately.

use super::boundary::{boundary_sign_shrub, boundary_sign_stasheff, ShrubBoundaryKind};
use super::twists::{cap_degree, sign_twist};
use crate::ainf::dagger;
use crate::algebra_core::{GradedWord, Symbol};
use crate::error::Result;
use crate::report::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// One rearrangement of orientation lines with the sign exponent claimed
/// for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignLedgerStep {
    /// Short label for reports.
    pub name: String,
    /// The word before rearranging.
    pub before: GradedWord,
    /// The rearranged word (a permutation of `before`).
    pub after: GradedWord,
    /// The claimed exponent of `−1`.
    pub claimed: i64,
}

impl SignLedgerStep {
    /// Koszul parity of the permutation, computed from the words.
    pub fn recomputed(&self) -> Result<bool> {
        self.before.koszul_to(&self.after)
    }

    /// True iff the recomputed parity equals the claimed exponent mod 2.
    pub fn holds(&self) -> Result<bool> {
        Ok(self.recomputed()? == odd(self.claimed))
    }
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn sym(id: impl Into<String>, degree: i64) -> Symbol {
    Symbol::new(id, degree)
}

fn word(symbols: impl IntoIterator<Item = Symbol>) -> GradedWord {
    GradedWord::from_symbols(symbols.into_iter().collect())
}

/// Parameters of a boundary point of a one-dimensional shrub moduli space:
/// a rigid gradient tree with output `x₀` and inputs `x₁, …, x_r`, and on
/// input `k` a rigid shrub with inputs `σ⃗[k]` (cochain degrees).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShrubSample {
    /// Dimension of the manifold.
    pub n: i64,
    /// Degree of the output critical point.
    pub x0: i64,
    /// Degrees of the intermediate critical points.
    pub x: Vec<i64>,
    /// Degrees of the cochain inputs, grouped by shrub.
    pub sigma: Vec<Vec<i64>>,
}

impl ShrubSample {
    fn r(&self) -> usize {
        self.x.len()
    }

    fn d(&self, k: usize) -> i64 {
        self.sigma[k].len() as i64
    }

    fn deg_sigma(&self, k: usize) -> i64 {
        self.sigma[k].iter().sum()
    }

    /// Rigidity of the tree and of every shrub, mod 2.
    pub fn is_admissible(&self) -> bool {
        let r = self.r();
        r >= 1
            && self.sigma.len() == r
            && self.sigma.iter().all(|s| !s.is_empty())
            && !odd(self.x0 + dagger(&self.x)
                - r as i64
                - self.x.iter().enumerate().map(|(k, x)| k as i64 * x).sum::<i64>())
            && (0..r).all(|k| !odd(self.x[k] - (1 - self.d(k) + self.deg_sigma(k))))
    }

    fn sigma_block(&self, k: usize) -> Vec<Symbol> {
        self.sigma[k]
            .iter()
            .enumerate()
            .map(|(i, &s)| sym(format!("sig{}.{}", k + 1, i + 1), self.n - s))
            .collect()
    }

    /// The four rearrangements, with the exponents as displayed (the fourth
    /// in its unsimplified form).
    pub fn steps(&self) -> Vec<SignLedgerStep> {
        let (n, r) = (self.n, self.r());
        let ws = |k: usize| sym(format!("Ws{}", k + 1), self.x[k]);
        let wu = |k: usize| sym(format!("Wu{}", k + 1), n - self.x[k]);
        let wsinv = |k: usize| sym(format!("Ws{}^-1", k + 1), self.x[k]);
        let shrub = |k: usize| sym(format!("S{}", k + 1), self.d(k) - 1);
        let q = |k: usize| (0..self.d(k)).map(move |i| sym(format!("Q{}.{}", k + 1, i + 1), n));
        let d_before = |k: usize| (0..k).map(|j| self.d(j)).sum::<i64>();

        let first = SignLedgerStep {
            name: "first".into(),
            before: word((0..r).flat_map(|k| [ws(k), wu(k)])),
            after: word((0..r).map(ws).chain((0..r).map(wu))),
            claimed: (0..r)
                .map(|k| self.x[k] * (n * k as i64 + self.x[..k].iter().sum::<i64>()))
                .sum(),
        };
        let second = SignLedgerStep {
            name: "second".into(),
            before: word((0..r).flat_map(|k| [shrub(k), ws(k)].into_iter().chain(self.sigma_block(k)))),
            after: word((0..r).flat_map(|k| [ws(k), shrub(k)].into_iter().chain(self.sigma_block(k)))),
            claimed: (0..r).map(|k| self.x[k] * (self.d(k) + 1)).sum(),
        };
        let third = SignLedgerStep {
            name: "third".into(),
            before: word(
                (0..r)
                    .map(ws)
                    .chain((0..r).flat_map(|k| std::iter::once(wsinv(k)).chain(q(k)))),
            ),
            after: word((0..r).flat_map(|k| [wsinv(k), ws(k)]).chain((0..r).flat_map(q))),
            claimed: (0..r)
                .map(|k| self.x[k] * (n * d_before(k) + self.x[k..].iter().sum::<i64>()))
                .sum(),
        };
        let tree = sym("T", r as i64 - 2);
        let w0 = sym("W0", self.x0);
        let fourth = SignLedgerStep {
            name: "fourth".into(),
            before: word(
                [tree.clone(), w0.clone()]
                    .into_iter()
                    .chain((0..r).flat_map(|k| std::iter::once(shrub(k)).chain(self.sigma_block(k)))),
            ),
            after: word(
                std::iter::once(tree)
                    .chain((0..r).map(shrub))
                    .chain(std::iter::once(w0))
                    .chain((0..r).flat_map(|k| self.sigma_block(k))),
            ),
            claimed: (0..r)
                .map(|k| (self.d(k) + 1) * (self.x0 + (0..k).map(|j| self.deg_sigma(j) + n * self.d(j)).sum::<i64>()))
                .sum(),
        };
        vec![first, second, third, fourth]
    }

    /// The simplified form of the fourth sign as it is usually quoted:
    /// `(r+d)deg x₀ + Σ_{j<k} n d_j(d_k+1) + Σ_k deg σ⃗[k](r−k−1+Σ_{j>k} d_j)`.
    pub fn fourth_simplified(&self) -> i64 {
        let (n, r) = (self.n, self.r() as i64);
        let d: i64 = (0..self.r()).map(|k| self.d(k)).sum();
        let mut e = (r + d) * self.x0;
        for k in 0..self.r() {
            for j in 0..k {
                e += n * self.d(j) * (self.d(k) + 1);
            }
            let later: i64 = (k + 1..self.r()).map(|j| self.d(j)).sum();
            e += self.deg_sigma(k) * (r - (k as i64 + 1) - 1 + later);
        }
        e
    }

    /// Closed form for the sum of the first three signs.
    pub fn first_three_closed(&self) -> i64 {
        let (n, r) = (self.n, self.r() as i64);
        (0..self.r())
            .map(|k| {
                let kk = k as i64 + 1;
                let before: i64 = (0..k).map(|j| self.d(j)).sum();
                self.x[k] * ((kk + 1) * (n + 1) + kk + self.d(k) + n * before + r + self.x0)
            })
            .sum()
    }

    /// Closed form after adding the gradient-tree twist
    /// `(n+1)(deg x₀ + †(x⃗))`.
    pub fn with_tree_twist_closed(&self) -> i64 {
        let (n, r) = (self.n, self.r() as i64);
        (n + 1) * r
            + (0..self.r())
                .map(|k| {
                    let before: i64 = (0..k).map(|j| self.d(j)).sum();
                    (self.deg_sigma(k) + self.d(k) + 1) * (1 + k as i64 + 1 + self.d(k) + n * before)
                })
                .sum::<i64>()
    }

    /// Twists of the rigid tree, the rigid shrubs, and the reorientation of
    /// the one-dimensional space.
    pub fn twists(&self) -> Result<(bool, bool)> {
        let n = self.n;
        let tree = odd((n + 1) * (self.x0 + dagger(&self.x)));
        let flat: Vec<i64> = self.sigma.iter().flatten().copied().collect();
        let mut functor = sign_twist("reorient_shrub_1dim", n, &[vec![self.r() as i64], flat])?;
        for s in &self.sigma {
            functor ^= odd(n + 1) && sign_twist("dagger_shrub", n, std::slice::from_ref(s))?;
        }
        Ok((tree, functor))
    }

    /// `(n+1)(r + Σ_k deg σ⃗[k] Σ_{j<k} d_j)`: the combined functor and
    /// reorientation twist.
    pub fn functor_closed(&self) -> i64 {
        let r = self.r();
        (self.n + 1)
            * (r as i64
                + (0..r)
                    .map(|k| self.deg_sigma(k) * (0..k).map(|j| self.d(j)).sum::<i64>())
                    .sum::<i64>())
    }

    /// `Σ_k (d_k+1)(r+k)`.
    pub fn total_closed(&self) -> i64 {
        let r = self.r() as i64;
        (0..self.r()).map(|k| (self.d(k) + 1) * (r + k as i64 + 1)).sum()
    }

    /// `Σ deg σ⃗`.
    pub fn sigma_degree(&self) -> i64 {
        (0..self.r()).map(|k| self.deg_sigma(k)).sum()
    }

    fn parts(&self) -> Vec<usize> {
        self.sigma.iter().map(Vec::len).collect()
    }
}

/// Parameters of an internal boundary point of a one-dimensional mushroom
/// moduli space: caps on inputs `p⃗[1], …, p⃗[r]` (degrees), where caps `k−1`
/// and `k` merge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MushroomSample {
    /// Dimension of the manifold.
    pub n: i64,
    /// Degree of the output critical point.
    pub x0: i64,
    /// Degrees of the inputs of each cap.
    pub caps: Vec<Vec<i64>>,
    /// The higher of the two merging caps, `2 ≤ k ≤ r`.
    pub k: usize,
}

impl MushroomSample {
    fn r(&self) -> usize {
        self.caps.len()
    }

    fn d(&self, j: usize) -> i64 {
        self.caps[j - 1].len() as i64
    }

    fn deg_p(&self, j: usize) -> i64 {
        self.caps[j - 1].iter().sum()
    }

    /// `1 + d_j + deg p⃗[j] ≡ deg P(p⃗[j])`.
    fn a(&self, j: usize) -> i64 {
        1 + self.d(j) + self.deg_p(j)
    }

    /// One-dimensionality mod 2 and a valid merge index.
    pub fn is_admissible(&self) -> bool {
        let d: i64 = self.caps.iter().map(|c| c.len() as i64).sum();
        let p: i64 = self.caps.iter().flatten().sum();
        self.caps.iter().all(|c| !c.is_empty()) && (2..=self.r()).contains(&self.k) && !odd(self.x0 - d - p)
    }

    /// The caps after merging `k−1` and `k`.
    pub fn merged(&self) -> Vec<Vec<i64>> {
        let k = self.k;
        let mut out: Vec<Vec<i64>> = self.caps[..k - 2].to_vec();
        out.push(self.caps[k - 2].iter().chain(&self.caps[k - 1]).copied().collect());
        out.extend(self.caps[k..].iter().cloned());
        out
    }

    fn cap_line(&self, j: usize) -> Symbol {
        sym(format!("P{j}"), self.n - cap_degree(&self.caps[j - 1]))
    }

    fn cap_parts(&self, j: usize) -> Vec<Symbol> {
        std::iter::once(sym(format!("Pd{j}"), self.d(j) - 1))
            .chain(
                self.caps[j - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| sym(format!("o{j}.{}", i + 1), -p)),
            )
            .collect()
    }

    /// The rearrangements with their claimed exponents; the second and third
    /// steps also carry the boundary-lemma sign they invoke.
    pub fn steps(&self) -> Result<Vec<(SignLedgerStep, bool)>> {
        let (n, r, k) = (self.n, self.r(), self.k);
        let qs = |skip: Option<usize>| {
            (1..=r)
                .filter(move |&j| Some(j) != skip)
                .map(move |j| sym(format!("Q{j}"), n))
        };
        // Cancel the (k−1)-st copy of Q on the left with the Q factor of cap k−1.
        let lhs_before = word(std::iter::once(sym("C", 1)).chain(qs(None)));
        let lhs_after = word(
            [sym(format!("Q{}", k - 1), n), sym("C", 1)]
                .into_iter()
                .chain(qs(Some(k - 1))),
        );
        let lhs = SignLedgerStep {
            name: "first.left".into(),
            before: lhs_before,
            after: lhs_after,
            claimed: n * (k as i64 + 1),
        };
        let head = || {
            [sym("S", r as i64 - 1), sym("W0", self.x0)]
                .into_iter()
                .chain((1..k - 1).map(|j| self.cap_line(j)))
        };
        let tail = || (k..=r).map(|j| self.cap_line(j));
        let qk = sym(format!("Q{}", k - 1), n);
        let rhs = SignLedgerStep {
            name: "first.right".into(),
            before: word(head().chain(self.cap_parts(k - 1)).chain([qk.clone()]).chain(tail())),
            after: word(
                std::iter::once(qk)
                    .chain(head())
                    .chain(self.cap_parts(k - 1))
                    .chain(tail()),
            ),
            claimed: n
                * (r as i64
                    + 1
                    + self.x0
                    + n * (k as i64 - 2)
                    + (1..k).map(|j| cap_degree(&self.caps[j - 1])).sum::<i64>()),
        };
        // Bring the two disc factors together, then glue them.
        let (a, b) = (self.cap_parts(k - 1), self.cap_parts(k));
        let second = SignLedgerStep {
            name: "second".into(),
            before: word(a.iter().chain(&b).cloned()),
            after: word(
                [a[0].clone(), b[0].clone()]
                    .into_iter()
                    .chain(a[1..].iter().cloned())
                    .chain(b[1..].iter().cloned()),
            ),
            claimed: self.d(k - 1) + (self.d(k) + 1) * self.deg_p(k - 1),
        };
        let glue = boundary_sign_stasheff(
            self.caps[k - 2].len() + 1,
            self.caps[k - 1].len() + 1,
            self.caps[k - 2].len(),
        )?;
        // Move the normal line to the front and cancel it against the stem collapse.
        let merged_line = sym("P*", n - cap_degree(&self.merged()[k - 2]));
        let later = || (k + 1..=r).map(|j| self.cap_line(j));
        let normal = sym("R", 1);
        let third = SignLedgerStep {
            name: "third".into(),
            before: word(head().chain([normal.clone(), merged_line.clone()]).chain(later())),
            after: word(
                std::iter::once(normal)
                    .chain(head())
                    .chain([merged_line])
                    .chain(later()),
            ),
            claimed: k as i64 + r as i64 + self.x0 + (1..k - 1).map(|j| self.a(j) + n).sum::<i64>(),
        };
        let collapse = boundary_sign_shrub(&ShrubBoundaryKind::Collapse { d: r, k })?;
        Ok(vec![(lhs, false), (rhs, false), (second, glue), (third, collapse)])
    }

    /// `n(r + deg x₀ + Σ_{j<k}(1 + d_j + deg p⃗[j]))`.
    pub fn first_simplified(&self) -> i64 {
        self.n * (self.r() as i64 + self.x0 + (1..self.k).map(|j| self.a(j)).sum::<i64>())
    }

    /// `1 + d_k deg p⃗[k−1] + (n+1)(k + r + deg x₀ + Σ_{j<k}(1 + d_j + deg p⃗[j]))`.
    pub fn difference_closed(&self) -> i64 {
        let k = self.k;
        1 + self.d(k) * self.deg_p(k - 1)
            + (self.n + 1) * (k as i64 + self.r() as i64 + self.x0 + (1..k).map(|j| self.a(j)).sum::<i64>())
    }

    /// `(n+1)(k + Σ_{j≥k}(1 + d_j + deg p⃗[j]))`.
    pub fn contribution_closed(&self) -> i64 {
        (self.n + 1) * (self.k as i64 + (self.k..=self.r()).map(|j| self.a(j)).sum::<i64>())
    }
}

fn reorient_mushroom(n: i64, caps: &[Vec<i64>]) -> Result<bool> {
    sign_twist("reorient_mushroom_1dim", n, caps)
}

/// The `(n+1)(r + †(Π⃗))` part of the mushroom reorientation.
fn stem_part(n: i64, caps: &[Vec<i64>]) -> bool {
    odd((n + 1) * (caps.len() as i64 + super::twists::dagger_caps(caps)))
}

/// Accumulates per-check pass counts over many samples.
struct Tally {
    prefix: &'static str,
    rows: Vec<(String, Value, usize, usize, Value)>,
}

impl Tally {
    fn new(prefix: &'static str) -> Self {
        Tally {
            prefix,
            rows: Vec::new(),
        }
    }

    fn record(&mut self, check: &str, expected: Value, ok: bool, sample: impl FnOnce() -> Value) {
        let i = match self.rows.iter().position(|r| r.0 == check) {
            Some(i) => i,
            None => {
                self.rows.push((check.to_string(), expected, 0, 0, Value::Null));
                self.rows.len() - 1
            }
        };
        let row = &mut self.rows[i];
        row.2 += 1;
        if !ok {
            row.3 += 1;
            if row.4.is_null() {
                row.4 = sample();
            }
        }
    }

    fn into_report(self, params: Value) -> Report {
        let mut report = Report::new();
        for (check, expected, count, failures, first) in self.rows {
            report.push(
                format!("{}.{check}", self.prefix),
                json!({"rule": expected, "run": params.clone(), "cases": count}),
                json!({"failures": 0}),
                json!({"failures": failures, "first_failure": first}),
                failures == 0,
            );
        }
        report
    }
}

fn parity_of(bits: u64, i: usize) -> i64 {
    ((bits >> i) & 1) as i64
}

/// All shrub-ledger samples with parameters in {0,1}, `r ≤ 3`, `d_k ≤ 2`.
pub fn shrub_corners() -> Vec<ShrubSample> {
    let mut out = Vec::new();
    for n in 0..2 {
        for r in 1..=3usize {
            for shape in 0..(1u64 << r) {
                let parts: Vec<usize> = (0..r).map(|k| 1 + parity_of(shape, k) as usize).collect();
                let total: usize = parts.iter().sum();
                for degs in 0..(1u64 << total) {
                    let mut sigma = Vec::new();
                    let mut at = 0;
                    for &p in &parts {
                        sigma.push((at..at + p).map(|i| parity_of(degs, i)).collect::<Vec<_>>());
                        at += p;
                    }
                    out.push(complete_shrub(n, sigma, |_, parity| parity, |parity| parity));
                }
            }
        }
    }
    out
}

/// Fill in `x_k` and `x₀` with the parities forced by rigidity.
fn complete_shrub(
    n: i64,
    sigma: Vec<Vec<i64>>,
    mut lift_x: impl FnMut(usize, i64) -> i64,
    lift_x0: impl FnOnce(i64) -> i64,
) -> ShrubSample {
    let x: Vec<i64> = sigma
        .iter()
        .enumerate()
        .map(|(k, s)| lift_x(k, (1 - s.len() as i64 + s.iter().sum::<i64>()).rem_euclid(2)))
        .collect();
    let x0 = lift_x0((x.len() as i64 + x.iter().sum::<i64>()).rem_euclid(2));
    ShrubSample { n, x0, x, sigma }
}

/// A random shrub-ledger sample: `n, degrees ∈ [0,3]`, `r ≤ 4`, `d_k ≤ 3`.
pub fn random_shrub(rng: &mut impl Rng) -> ShrubSample {
    let n = rng.gen_range(0..=3);
    let r = rng.gen_range(1..=4usize);
    let sigma: Vec<Vec<i64>> = (0..r)
        .map(|_| {
            let d = rng.gen_range(1..=3usize);
            (0..d).map(|_| rng.gen_range(0..=3)).collect()
        })
        .collect();
    let lifts: Vec<i64> = (0..=r).map(|_| 2 * rng.gen_range(0..=1)).collect();
    complete_shrub(n, sigma, |k, p| p + lifts[k], |p| p + lifts[r])
}

/// All mushroom-ledger samples with parameters in {0,1}, `r ≤ 3`, `d_j ≤ 2`.
pub fn mushroom_corners() -> Vec<MushroomSample> {
    let mut out = Vec::new();
    for n in 0..2 {
        for r in 2..=3usize {
            for shape in 0..(1u64 << r) {
                let parts: Vec<usize> = (0..r).map(|j| 1 + parity_of(shape, j) as usize).collect();
                let total: usize = parts.iter().sum();
                for degs in 0..(1u64 << total) {
                    let mut caps = Vec::new();
                    let mut at = 0;
                    for &p in &parts {
                        caps.push((at..at + p).map(|i| parity_of(degs, i)).collect::<Vec<_>>());
                        at += p;
                    }
                    for k in 2..=r {
                        out.push(complete_mushroom(n, caps.clone(), k, 0));
                    }
                }
            }
        }
    }
    out
}

fn complete_mushroom(n: i64, caps: Vec<Vec<i64>>, k: usize, lift: i64) -> MushroomSample {
    let d: i64 = caps.iter().map(|c| c.len() as i64).sum();
    let p: i64 = caps.iter().flatten().sum();
    MushroomSample {
        n,
        x0: (d + p).rem_euclid(2) + lift,
        caps,
        k,
    }
}

/// A random mushroom-ledger sample: `n, degrees ∈ [0,3]`, `2 ≤ r ≤ 4`,
/// `d_j ≤ 3`.
pub fn random_mushroom_sample(rng: &mut impl Rng) -> MushroomSample {
    let n = rng.gen_range(0..=3);
    let r = rng.gen_range(2..=4usize);
    let caps: Vec<Vec<i64>> = (0..r)
        .map(|_| {
            let d = rng.gen_range(1..=3usize);
            (0..d).map(|_| rng.gen_range(0..=3)).collect()
        })
        .collect();
    let k = rng.gen_range(2..=r);
    let lift = 2 * rng.gen_range(0..=1);
    complete_mushroom(n, caps, k, lift)
}

/// Run every shrub-ledger check on one sample.
fn check_shrub(t: &mut Tally, s: &ShrubSample) -> Result<()> {
    let dump = || serde_json::to_value(s).expect("serializable");
    let steps = s.steps();
    let mut parity = [false; 4];
    for (i, step) in steps.iter().enumerate() {
        parity[i] = step.recomputed()?;
        t.record(
            &step.name,
            json!("permutation sign = displayed exponent"),
            step.holds()?,
            dump,
        );
    }
    let simplified_offset = parity[3] ^ odd(s.fourth_simplified());
    t.record(
        "fourth.simplified.discrepancy",
        json!("permutation sign − simplified exponent = Σ deg σ⃗"),
        simplified_offset == odd(s.sigma_degree()),
        dump,
    );
    let first_three = parity[0] ^ parity[1] ^ parity[2];
    t.record(
        "first_three",
        json!("= closed form"),
        first_three == odd(s.first_three_closed()),
        dump,
    );
    let (tree, functor) = s.twists()?;
    t.record(
        "tree_twist",
        json!("first three + tree twist = closed form"),
        (first_three ^ tree) == odd(s.with_tree_twist_closed()),
        dump,
    );
    t.record(
        "functor_twist",
        json!("= (n+1)(r + Σ_k deg σ⃗[k] Σ_{j<k} d_j)"),
        functor == odd(s.functor_closed()),
        dump,
    );
    let total = first_three ^ tree ^ parity[3] ^ functor;
    t.record("total", json!("= Σ(d_k+1)(r+k)"), total == odd(s.total_closed()), dump);
    t.record(
        "total.discrepancy",
        json!("total − Σ(d_k+1)(r+k) = Σ deg σ⃗"),
        (total ^ odd(s.total_closed())) == odd(s.sigma_degree()),
        dump,
    );
    let lemma = boundary_sign_shrub(&ShrubBoundaryKind::Break { parts: s.parts() })?;
    t.record("opposite", json!("total + break sign is odd"), total ^ lemma, dump);
    Ok(())
}

/// Run every mushroom-ledger check on one sample.
fn check_mushroom(t: &mut Tally, s: &MushroomSample) -> Result<()> {
    let dump = || serde_json::to_value(s).expect("serializable");
    let steps = s.steps()?;
    let mut total = false;
    let mut first = false;
    for (step, lemma) in &steps {
        let sign = step.recomputed()? ^ lemma;
        t.record(
            &step.name,
            json!("permutation sign + lemma sign = displayed exponent"),
            sign == odd(step.claimed),
            dump,
        );
        if step.name.starts_with("first") {
            first ^= sign;
        }
        total ^= sign;
    }
    t.record(
        "first.simplified",
        json!("= n(r + deg x₀ + Σ_{j<k}(1+d_j+deg p⃗[j]))"),
        first == odd(s.first_simplified()),
        dump,
    );
    t.record(
        "difference",
        json!("sum of the steps = closed form"),
        total == odd(s.difference_closed()),
        dump,
    );
    let merged = s.merged();
    let stem = stem_part(s.n, &s.caps) ^ stem_part(s.n, &merged);
    t.record(
        "contribution",
        json!("change of (n+1)(r + †Π⃗) = closed form"),
        stem == odd(s.contribution_closed()),
        dump,
    );
    let twist = reorient_mushroom(s.n, &s.caps)? ^ reorient_mushroom(s.n, &merged)?;
    let rest = twist ^ stem;
    t.record(
        "caps_twist",
        json!("change of Σ(1 + †p⃗[j] + d_j deg p⃗[j]) = 1 + d_k deg p⃗[k−1]"),
        rest == odd(1 + s.d(s.k) * s.deg_p(s.k - 1)),
        dump,
    );
    t.record(
        "cancel",
        json!("difference + reorientations is even"),
        !(total ^ twist),
        dump,
    );
    Ok(())
}

/// Verify the shrub-breaking ledger on all {0,1} corners and `samples`
/// seeded random parameter choices.
pub fn verify_ledger_shrub(samples: usize, seed: u64) -> Result<Report> {
    let mut tally = Tally::new("orientations.ledger.shrub");
    let corners = shrub_corners();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<ShrubSample> = (0..samples).map(|_| random_shrub(&mut rng)).collect();
    for s in corners.iter().chain(&random) {
        debug_assert!(s.is_admissible());
        check_shrub(&mut tally, s)?;
    }
    Ok(tally.into_report(json!({"corners": corners.len(), "samples": samples, "seed": seed})))
}

/// Verify the mushroom internal-boundary ledger on all {0,1} corners and
/// `samples` seeded random parameter choices.
pub fn verify_ledger_mushroom(samples: usize, seed: u64) -> Result<Report> {
    let mut tally = Tally::new("orientations.ledger.mushroom");
    let corners = mushroom_corners();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<MushroomSample> = (0..samples).map(|_| random_mushroom_sample(&mut rng)).collect();
    for s in corners.iter().chain(&random) {
        debug_assert!(s.is_admissible());
        check_mushroom(&mut tally, s)?;
    }
    Ok(tally.into_report(json!({"corners": corners.len(), "samples": samples, "seed": seed})))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(report: &Report) -> Vec<String> {
        report.failures().map(|e| e.check.clone()).collect()
    }

    #[test]
    fn smallest_shrub_break() {
        let s = ShrubSample {
            n: 0,
            x0: 0,
            x: vec![0],
            sigma: vec![vec![0]],
        };
        assert!(!s.is_admissible(), "x₀ must be odd");
        let s = ShrubSample { x0: 1, ..s };
        assert!(s.is_admissible());
        assert_eq!(s.total_closed(), 4);
        let mut t = Tally::new("t");
        check_shrub(&mut t, &s).unwrap();
        assert!(t.into_report(Value::Null).all_pass());
    }

    #[test]
    fn shrub_steps_match_displays() {
        let report = verify_ledger_shrub(300, 7).unwrap();
        for e in &report.entries {
            let name = e.check.rsplit_once("shrub.").unwrap().1;
            let expect_pass = !matches!(name, "total" | "opposite");
            assert_eq!(e.pass, expect_pass, "{}", report.to_text());
        }
    }

    #[test]
    fn total_fails_exactly_on_odd_cochain_degree() {
        for s in shrub_corners() {
            let mut t = Tally::new("t");
            check_shrub(&mut t, &s).unwrap();
            let r = t.into_report(Value::Null);
            let expected: Vec<String> = if odd(s.sigma_degree()) {
                vec!["t.total".into(), "t.opposite".into()]
            } else {
                vec![]
            };
            assert_eq!(failing(&r), expected, "{s:?}");
        }
    }

    #[test]
    fn mushroom_ledger_closes() {
        let report = verify_ledger_mushroom(1000, 11).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        assert_eq!(report.len(), 9);
    }

    #[test]
    fn smallest_mushroom_merge() {
        let s = MushroomSample {
            n: 0,
            x0: 0,
            caps: vec![vec![0], vec![0]],
            k: 2,
        };
        assert!(s.is_admissible());
        let mut t = Tally::new("t");
        check_mushroom(&mut t, &s).unwrap();
        assert!(t.into_report(Value::Null).all_pass());
        assert_eq!(s.merged(), vec![vec![0, 0]]);
        assert!(!MushroomSample { k: 1, ..s.clone() }.is_admissible());
        // A single cap has nothing to merge with: no internal boundary.
        let single = MushroomSample {
            caps: vec![vec![0]],
            ..s
        };
        assert!((2..=single.caps.len()).all(|k| !MushroomSample { k, ..single.clone() }.is_admissible()));
    }

    #[test]
    fn step_words_are_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            for step in random_shrub(&mut rng).steps() {
                assert!(step.recomputed().is_ok());
            }
            for (step, _) in random_mushroom_sample(&mut rng).steps().unwrap() {
                assert!(step.recomputed().is_ok());
            }
        }
    }
}
