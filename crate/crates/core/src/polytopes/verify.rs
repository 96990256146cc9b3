//! The polytope verification suite: enumerations against the oracles,
//! face-lattice axioms, boundary descriptors and the mushroom relation.

use super::cap::{cap_types, CapType};
use super::labels::{is_compatible, label_edges};
use super::mushroom::{mushroom_boundary, mushroom_dim, mushroom_faces, normalize_mushroom, random_mushroom, Painted};
use super::oracles;
use super::shrub::{shrub_boundary, shrub_faces, ShrubType};
use super::tree::{enumerate_tree_types, stasheff_boundary, RibbonTree};
use crate::report::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

/// Check that a finite graded poset, given by its faces with dimensions and
/// a coface function, is graded, has a unique top face, Euler
/// characteristic 1 (a ball) and the diamond property.
pub fn check_face_poset<F: Ord + Clone + Display>(
    name: &str,
    d: usize,
    faces: &BTreeMap<F, usize>,
    cofaces: impl Fn(&F) -> Vec<F>,
    report: &mut Report,
) {
    let params = json!({"d": d});
    let mut graded_witness = Value::Null;
    let mut pairs: BTreeMap<(&F, F), usize> = BTreeMap::new();
    'outer: for (f, &dim) in faces {
        for g in cofaces(f) {
            match faces.get(&g) {
                Some(&gd) if gd == dim + 1 => {
                    for h in cofaces(&g) {
                        *pairs.entry((f, h)).or_default() += 1;
                    }
                }
                other => {
                    graded_witness = json!({"face": f.to_string(), "coface": g.to_string(), "coface_dim": other});
                    break 'outer;
                }
            }
        }
    }
    report.push(
        format!("{name}.graded"),
        params.clone(),
        Value::Null,
        graded_witness.clone(),
        graded_witness.is_null(),
    );
    let bad_diamond = pairs.iter().find(|(_, &n)| n != 2);
    report.push(
        format!("{name}.diamond"),
        params.clone(),
        json!(2),
        match bad_diamond {
            None => json!(2),
            Some(((f, h), n)) => json!({"lower": f.to_string(), "upper": h.to_string(), "between": n}),
        },
        bad_diamond.is_none(),
    );
    let euler: i64 = faces.values().map(|&k| if k % 2 == 0 { 1 } else { -1 }).sum();
    report.push_eq(format!("{name}.euler"), params.clone(), json!(1), json!(euler));
    let top = faces.values().filter(|&&k| k + 1 == d).count();
    report.push_eq(format!("{name}.top"), params, json!(1), json!(top));
}

fn count_by_dim<'a>(dims: impl Iterator<Item = &'a usize>) -> Vec<usize> {
    let mut v = Vec::new();
    for &k in dims {
        if v.len() <= k {
            v.resize(k + 1, 0);
        }
        v[k] += 1;
    }
    v
}

/// Stasheff trees: counts, face lattice, boundary and labellings.
fn stasheff_checks(d_max: usize, r: &mut Report) {
    for d in 2..=d_max.max(7) {
        let types = enumerate_tree_types(d).expect("d ≥ 2");
        let tri = types.iter().filter(|t| t.is_trivalent()).count();
        r.push_eq(
            "polytopes.trivalent_count",
            json!({"d": d}),
            json!(oracles::trivalent_count(d).to_string()),
            json!(tri.to_string()),
        );
        r.push_eq(
            "polytopes.tree_type_count",
            json!({"d": d}),
            json!(oracles::tree_type_count(d).to_string()),
            json!(types.len().to_string()),
        );
    }
    for d in 2..=d_max {
        let types = enumerate_tree_types(d).expect("d ≥ 2");
        let faces: BTreeMap<RibbonTree, usize> = types.iter().map(|t| (t.clone(), t.face_dim() as usize)).collect();
        check_face_poset("polytopes.stasheff", d - 1, &faces, |t| t.contractions(), r);
        // Incidence from both sides: expansions are exactly the inverse of contractions.
        let mut asym = Value::Null;
        for t in &types {
            for e in t.expansions() {
                if !e.contractions().contains(t) {
                    asym = json!({"tree": t.to_string(), "expansion": e.to_string()});
                }
            }
            for c in t.contractions() {
                if !c.expansions().contains(t) {
                    asym = json!({"tree": t.to_string(), "contraction": c.to_string()});
                }
            }
        }
        r.push(
            "polytopes.stasheff.symmetric",
            json!({"d": d}),
            Value::Null,
            asym.clone(),
            asym.is_null(),
        );
        let facets: BTreeSet<RibbonTree> = types
            .iter()
            .filter(|t| t.face_dim() as usize + 3 == d)
            .cloned()
            .collect();
        let grafted: BTreeSet<RibbonTree> = stasheff_boundary(d).iter().map(|b| b.tree()).collect();
        r.push_eq(
            "polytopes.stasheff.boundary",
            json!({"d": d}),
            json!(facets.iter().map(RibbonTree::to_string).collect::<Vec<_>>()),
            json!(grafted.iter().map(RibbonTree::to_string).collect::<Vec<_>>()),
        );
    }
    // Labellings: every tree with ≤ 5 inputs and every boundary sequence.
    let mut bad = Value::Null;
    let mut checked = 0usize;
    for d in 2..=d_max.min(5) {
        for t in enumerate_tree_types(d).expect("d ≥ 2") {
            for mask in 0u32..(1 << (d + 1)) {
                let seq: Vec<u8> = (0..=d).map(|i| 1 + (mask >> i & 1) as u8).collect();
                let l = label_edges(&t, &seq).expect("valid sequence");
                checked += 1;
                if !is_compatible(&t, &l) || !is_compatible(&t, &l.swapped()) {
                    bad = json!({"tree": t.to_string(), "seq": seq});
                }
            }
        }
    }
    r.push(
        "polytopes.labels.compatible",
        json!({"labellings": checked}),
        Value::Null,
        bad.clone(),
        bad.is_null(),
    );
}

/// Shrubs: vertex counts, composihedron lattice, boundary descriptors.
fn shrub_checks(d_max: usize, r: &mut Report) {
    for d in 1..=d_max {
        let faces = shrub_faces(d);
        let vertices = faces.iter().filter(|f| f.dim() == 0).count();
        r.push_eq(
            "polytopes.shrub.vertices",
            json!({"d": d}),
            json!(oracles::composihedron_vertex_count(d).to_string()),
            json!(vertices.to_string()),
        );
        let mut coarse: BTreeMap<ShrubType, usize> = BTreeMap::new();
        for f in &faces {
            let e = coarse.entry(f.coarse()).or_insert(0);
            *e = (*e).max(f.dim());
        }
        let mismatched: Vec<String> = coarse
            .iter()
            .filter(|(t, &k)| t.dim() != k)
            .map(|(t, _)| t.to_string())
            .collect();
        r.push_eq(
            "polytopes.shrub.coarse_dims",
            json!({"d": d}),
            json!([]),
            json!(mismatched),
        );
        let top = faces.iter().map(|f| f.dim()).max().unwrap_or(0);
        r.push_eq("polytopes.shrub.dim", json!({"d": d}), json!(d - 1), json!(top));
        check_face_poset("polytopes.shrub", d, &coarse, ShrubType::cofaces, r);
        let codim1: BTreeSet<String> = coarse
            .iter()
            .filter(|(_, &k)| k + 2 == d)
            .map(|(t, _)| t.to_string())
            .collect();
        let descriptors: BTreeSet<String> = shrub_boundary(d)
            .iter()
            .filter_map(|b| b.coarse(d))
            .map(|t| t.to_string())
            .collect();
        r.push_eq(
            "polytopes.shrub.boundary",
            json!({"d": d}),
            json!(codim1),
            json!(descriptors),
        );
    }
}

/// Caps: the identification with discs.
fn cap_checks(d_max: usize, r: &mut Report) {
    for d in 1..=d_max {
        let caps = cap_types(d);
        let discs = enumerate_tree_types(d + 1).expect("d + 1 ≥ 2");
        let images: BTreeSet<RibbonTree> = caps.iter().map(CapType::to_disc).collect();
        let round_trip = caps.iter().all(|c| CapType::from_disc(&c.to_disc()).as_ref() == Ok(c));
        r.push_eq(
            "polytopes.cap.bijection",
            json!({"d": d}),
            json!({"count": discs.len(), "round_trip": true}),
            json!({"count": images.len(), "round_trip": round_trip}),
        );
    }
}

/// Mushrooms: vertex counts, faces against painted trees, dimension,
/// boundary and the normal form.
fn mushroom_checks(d_max: usize, seed: u64, samples: usize, r: &mut Report) {
    let j = oracles::multiplihedron_vertex_counts(d_max.max(1));
    for d in 1..=d_max {
        if d > 5 {
            r.push_eq(
                "polytopes.mushroom.dim",
                json!({"d": d}),
                json!(d - 1),
                json!(mushroom_dim(d)),
            );
            continue;
        }
        let faces = mushroom_faces(d);
        let top = faces.values().copied().max().unwrap_or(0);
        r.push_eq("polytopes.mushroom.dim", json!({"d": d}), json!(d - 1), json!(top));
        let vertices = faces.values().filter(|&&k| k == 0).count();
        r.push_eq(
            "polytopes.mushroom.vertices",
            json!({"d": d}),
            json!(j[d - 1].to_string()),
            json!(vertices.to_string()),
        );
        let oracle: BTreeMap<String, usize> = oracles::painted_trees(d)
            .iter()
            .map(|p| (p.to_string(), p.dim()))
            .collect();
        let ours: BTreeMap<String, usize> = faces.iter().map(|(p, &k)| (p.to_string(), k)).collect();
        r.push_eq(
            "polytopes.mushroom.faces",
            json!({"d": d}),
            json!({"faces": oracle.len(), "by_dim": count_by_dim(oracle.values())}),
            json!({"faces": ours.len(), "by_dim": count_by_dim(ours.values())}),
        );
        let missing: Vec<&String> = oracle.keys().filter(|k| ours.get(*k) != oracle.get(*k)).collect();
        r.push_eq(
            "polytopes.mushroom.faces_match",
            json!({"d": d}),
            json!([]),
            json!(missing),
        );
        check_face_poset("polytopes.mushroom", d, &faces, Painted::cofaces, r);
        let codim1: BTreeSet<String> = faces
            .iter()
            .filter(|(_, &k)| k + 2 == d)
            .map(|(p, _)| p.to_string())
            .collect();
        let boundary = mushroom_boundary(d);
        let described: BTreeSet<String> = boundary.iter().map(|b| b.painted().to_string()).collect();
        let reps_ok = boundary
            .iter()
            .all(|b| b.representative().coarse() == b.painted() && b.dim() + 2 == d);
        r.push_eq(
            "polytopes.mushroom.boundary",
            json!({"d": d}),
            json!({"faces": codim1, "representatives": true}),
            json!({"faces": described, "representatives": reps_ok}),
        );
    }
    // The normal form is idempotent and constant on relation classes.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = Value::Null;
    for _ in 0..samples {
        let d = rng.gen_range(1..=d_max.clamp(1, 6));
        let m = random_mushroom(d, &mut rng);
        let n = normalize_mushroom(&m);
        if normalize_mushroom(&n) != n || !n.is_normal() || n.dim() != m.dim() {
            witness = json!({"mushroom": m.to_string(), "normal": n.to_string()});
            break;
        }
        // A random sequence of inverse relation moves stays in the class.
        let mut cur = m.clone();
        for _ in 0..4 {
            let choices: Vec<usize> = (0..cur.caps.len()).filter(|&j| cur.caps[j].is_decomposable()).collect();
            if choices.is_empty() {
                break;
            }
            let j = choices[rng.gen_range(0..choices.len())];
            let splits = cur.caps[j].splittings().len();
            cur = cur.unglue(j, rng.gen_range(0..splits)).expect("decomposable cap");
        }
        if normalize_mushroom(&cur) != n {
            witness = json!({"mushroom": m.to_string(), "moved": cur.to_string(), "normal": n.to_string()});
            break;
        }
    }
    r.push(
        "polytopes.mushroom.normal_form",
        json!({"samples": samples, "seed": seed}),
        Value::Null,
        witness.clone(),
        witness.is_null(),
    );
}

/// Run the whole polytope suite for sizes up to `d_max`.
pub fn verify_polytopes(d_max: usize, seed: u64) -> Report {
    let mut r = Report::new();
    stasheff_checks(d_max, &mut r);
    shrub_checks(d_max, &mut r);
    cap_checks(d_max, &mut r);
    mushroom_checks(d_max, seed, 1000, &mut r);
    r
}
