use plumbing_core::ainf::{
    build_formal_category, check_ainf_relations, check_functor_equation, cohomology_functor_check, dg_to_ainf,
    dg_to_ainf_unchecked, minimal_model, morse_twist_exponent, to_formal, AInfCategory, AInfFunctor, CountMode,
    FormalCountData, FunctorFile,
};
use plumbing_core::algebra_core::{cohomology, LinComb};
use plumbing_core::plumbing::{build_simp, circle_plumbing, cochain_category, sphere_plumbing, Q1, Q2};
use plumbing_core::report::Report;
use plumbing_core::simplicial::OrderedComplex;
use plumbing_core::{Error, Int};
use std::collections::BTreeMap;
use std::sync::Arc;

fn assert_all_pass(r: &Report) {
    let fails: Vec<_> = r.failures().collect();
    assert!(fails.is_empty(), "failures: {fails:#?}");
}

fn circle_cat() -> AInfCategory {
    dg_to_ainf(&build_simp(&circle_plumbing()).unwrap(), 1).unwrap()
}

fn sphere_cat() -> AInfCategory {
    dg_to_ainf(&build_simp(&sphere_plumbing()).unwrap(), 2).unwrap()
}

const MORSE: &str = r#"{
  "n": 1, "mode": "raw", "objects": ["L"],
  "generators": [
    {"id": "m", "source": "L", "target": "L", "degree": 0},
    {"id": "M", "source": "L", "target": "L", "degree": 1}
  ],
  "counts": [
    {"d": 2, "out": "m", "in": ["m", "m"], "coeff": 1},
    {"d": 2, "out": "M", "in": ["m", "M"], "coeff": -1},
    {"d": 2, "out": "M", "in": ["M", "m"], "coeff": 1}
  ]
}"#;

fn morse_functor() -> AInfFunctor {
    let source = build_formal_category(&FormalCountData::from_json(MORSE).unwrap()).unwrap();
    let circle = Arc::new(OrderedComplex::simplex_boundary(1));
    let target = dg_to_ainf(&cochain_category(circle, "C").unwrap(), 1).unwrap();
    let g = |id: &str| target.index_of(id).unwrap();
    let one = Int::from(1);
    let unit: LinComb = ["C:[0]", "C:[1]", "C:[2]"]
        .iter()
        .map(|v| (g(v), one.clone()))
        .collect();
    let f1 = [
        (vec![source.index_of("m").unwrap()], unit),
        (
            vec![source.index_of("M").unwrap()],
            LinComb::from([(g("C:[0,2]"), one.clone())]),
        ),
    ]
    .into_iter()
    .collect();
    AInfFunctor::new(source, target, vec![0], BTreeMap::from([(1, f1)])).unwrap()
}

#[test]
fn plumbings_are_ainf_categories() {
    for cat in [circle_cat(), sphere_cat()] {
        let r = check_ainf_relations(&cat, 4);
        assert_eq!(r.len(), 4);
        assert_all_pass(&r);
    }
}

#[test]
fn dg_to_ainf_rejects_broken_dg_categories() {
    let mut dg = build_simp(&circle_plumbing()).unwrap();
    let table = dg.compose.get_mut(&(Q1, Q2, Q1)).unwrap();
    let key = *table.keys().next().unwrap();
    table.remove(&key);
    assert!(matches!(dg_to_ainf(&dg, 1), Err(Error::InvalidArgument(_))));
}

#[test]
fn untwisted_composition_fails_with_witness() {
    let cat = circle_cat();
    let mut mu = cat.mu.clone();
    // Undo the sign twist (−1)^{deg a₁} of μ₂.
    for (inputs, out) in mu.get_mut(&2).unwrap().iter_mut() {
        if cat.degree(inputs[1]) % 2 != 0 {
            for c in out.values_mut() {
                *c = -c.clone();
            }
        }
    }
    let broken = AInfCategory::new(cat.objects.clone(), cat.generators.clone(), 1, mu, None).unwrap();
    let r = check_ainf_relations(&broken, 3);
    let fail = r.failures().next().expect("a relation fails");
    assert!(fail.computed.get("inputs").is_some());
}

#[test]
fn identity_functor_passes() {
    for cat in [circle_cat(), sphere_cat()] {
        let id = AInfFunctor::identity(&cat);
        assert_all_pass(&check_functor_equation(&id, 4));
        assert_all_pass(&cohomology_functor_check(&id));
    }
}

#[test]
fn morse_model_of_the_circle() {
    let f = morse_functor();
    assert_all_pass(&check_ainf_relations(&f.source, 4));
    assert_all_pass(&check_functor_equation(&f, 4));
    let q = cohomology_functor_check(&f);
    assert_eq!(q.len(), 1);
    assert_all_pass(&q);
}

#[test]
fn non_chain_map_fails_at_arity_one() {
    let cat = circle_cat();
    let mut id = AInfFunctor::identity(&cat);
    let a = cat.index_of("Q1:[0]").unwrap();
    let b = cat.index_of("Q1:[1]").unwrap();
    id.components
        .get_mut(&1)
        .unwrap()
        .insert(vec![a], LinComb::from([(b, Int::from(1))]));
    let r = check_functor_equation(&id, 2);
    let fail = r.failures().next().expect("functor equation fails");
    assert_eq!(fail.params["d"], 1);
    assert_eq!(fail.computed["inputs"][0], "Q1:[0]");
}

#[test]
fn zero_functor_is_not_a_quasi_isomorphism() {
    let mut f = morse_functor();
    f.components.clear();
    assert_all_pass(&check_functor_equation(&f, 3));
    let q = cohomology_functor_check(&f);
    assert!(!q.all_pass());
}

#[test]
fn functor_file_round_trip() {
    let text = format!(
        r#"{{"source": {MORSE}, "target": {MORSE}, "object_map": {{"L": "L"}},
            "components": [{{"d": 1, "out": "m", "in": ["m"], "coeff": 1}},
                           {{"d": 1, "out": "M", "in": ["M"], "coeff": 1}}]}}"#
    );
    let f = FunctorFile::from_json(&text).unwrap().build().unwrap();
    assert_all_pass(&check_functor_equation(&f, 3));
    assert_all_pass(&cohomology_functor_check(&f));
}

#[test]
fn morse_mode_equals_raw_mode_with_manual_twist() {
    let raw = FormalCountData::from_json(MORSE).unwrap();
    let mut twisted = raw.clone();
    twisted.mode = CountMode::Morse;
    let deg = |id: &str| raw.generators.iter().find(|g| g.id == id).unwrap().degree;
    let mut manual = raw.clone();
    for e in &mut manual.counts {
        let ins: Vec<i64> = e.inputs.iter().map(|i| deg(i)).collect();
        if morse_twist_exponent(raw.n, deg(&e.out), &ins).rem_euclid(2) == 1 {
            e.coeff = -e.coeff.clone();
        }
    }
    assert_eq!(
        build_formal_category(&twisted).unwrap(),
        build_formal_category(&manual).unwrap()
    );
}

#[test]
fn degree_violations_are_collected() {
    let mut data = FormalCountData::from_json(MORSE).unwrap();
    data.counts[0].out = "M".into();
    data.counts[1].out = "m".into();
    match build_formal_category(&data) {
        Err(Error::DegreeViolation(v)) => assert_eq!(v.len(), 2),
        other => panic!("unexpected {other:?}"),
    }
}

fn check_minimal(cat: &AInfCategory, d_max: usize) {
    let (min, incl) = minimal_model(cat, d_max).unwrap();
    // Generator counts per hom and degree agree with the integral cohomology.
    for x in 0..cat.objects.len() {
        for y in 0..cat.objects.len() {
            let (c, _) = plumbing_core::ainf::hom_complex(cat, x, y);
            let mut want: Vec<(i64, usize)> = cohomology(&c)
                .unwrap()
                .into_iter()
                .filter(|h| h.rank > 0)
                .map(|h| (h.degree, h.rank))
                .collect();
            want.sort();
            let mut got: BTreeMap<i64, usize> = BTreeMap::new();
            for g in min.hom_generators(x, y) {
                *got.entry(min.degree(g)).or_default() += 1;
            }
            assert_eq!(got.into_iter().collect::<Vec<_>>(), want, "hom({x},{y})");
        }
    }
    assert!(!min.mu.contains_key(&1));
    assert_all_pass(&check_ainf_relations(&min, d_max));
    assert_all_pass(&check_functor_equation(&incl, d_max));
    assert_all_pass(&cohomology_functor_check(&incl));
    // The exported model re-imports to the same category.
    let text = to_formal(&min).to_json();
    let back = build_formal_category(&FormalCountData::from_json(&text).unwrap()).unwrap();
    assert_eq!(back, min);
}

#[test]
fn minimal_model_of_circle_plumbing() {
    check_minimal(&circle_cat(), 4);
}

#[test]
fn minimal_model_of_sphere_plumbing() {
    check_minimal(&sphere_cat(), 4);
}

#[test]
fn minimal_model_of_three_sphere_cochains() {
    let s3 = Arc::new(OrderedComplex::simplex_boundary(3));
    let cat = dg_to_ainf(&cochain_category(s3, "S").unwrap(), 3).unwrap();
    check_minimal(&cat, 4);
}

#[test]
fn minimal_model_is_deterministic() {
    let cat = circle_cat();
    let a = to_formal(&minimal_model(&cat, 4).unwrap().0).to_json();
    let b = to_formal(&minimal_model(&cat, 4).unwrap().0).to_json();
    assert_eq!(a, b);
}

#[test]
fn unchecked_conversion_keeps_tables() {
    let dg = build_simp(&circle_plumbing()).unwrap();
    assert_eq!(dg_to_ainf_unchecked(&dg, 1).unwrap(), circle_cat());
    assert_eq!(circle_cat().hom_generators(Q2, Q1).len(), 1);
}
