use plumbing_core::algebra_core::{cohomology, LinComb};
use plumbing_core::plumbing::{
    build_simp, build_simp_clean, circle_plumbing, sphere_plumbing, verify_dg_axioms, CleanPlumbingSpec, ComponentSpec,
    Q1, Q2,
};
use plumbing_core::simplicial::OrderedComplex;
use plumbing_core::{Error, Int};
use std::sync::Arc;

fn ids(s: &[&[&str]]) -> Vec<Vec<String>> {
    s.iter().map(|t| t.iter().map(|v| v.to_string()).collect()).collect()
}

fn hexagon() -> Arc<OrderedComplex> {
    let v: Vec<String> = (0..6).map(|i| i.to_string()).collect();
    let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    Arc::new(OrderedComplex::from_positions(v, &edges).unwrap())
}

/// The 3×3 grid torus, each square split along its diagonal.
fn torus() -> Arc<OrderedComplex> {
    let v: Vec<String> = (0..9).map(|i| i.to_string()).collect();
    let at = |r: usize, c: usize| (r % 3) * 3 + (c % 3);
    let mut tris = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            tris.push(vec![at(r, c), at(r, c + 1), at(r + 1, c + 1)]);
            tris.push(vec![at(r, c), at(r + 1, c), at(r + 1, c + 1)]);
        }
    }
    Arc::new(OrderedComplex::from_positions(v, &tris).unwrap())
}

fn assert_all_pass(r: &plumbing_core::report::Report) {
    let fails: Vec<_> = r.failures().collect();
    assert!(fails.is_empty(), "failures: {fails:#?}");
}

#[test]
fn circle_and_sphere_plumbings_satisfy_dg_axioms() {
    for spec in [circle_plumbing(), sphere_plumbing()] {
        let cat = build_simp(&spec).unwrap();
        let r = verify_dg_axioms(&cat);
        assert_all_pass(&r);
        assert_eq!(r.entries.iter().filter(|e| e.check == "dg.associativity").count(), 16);
    }
}

#[test]
fn hom_ranks_of_circle_plumbing() {
    let cat = build_simp(&circle_plumbing()).unwrap();
    assert_eq!(cat.hom(Q2, Q1).module().ranks(), vec![(1, 1)]);
    assert_eq!(cat.hom(Q1, Q2).module().len(), 3);
    let h = cohomology(cat.hom(Q1, Q2)).unwrap();
    assert_eq!(
        h.iter().map(|g| (g.degree, g.rank)).collect::<Vec<_>>(),
        vec![(0, 1), (1, 0)]
    );
}

#[test]
fn triple_mixed_composition_vanishes() {
    let cat = build_simp(&sphere_plumbing()).unwrap();
    let (h10, h01) = (cat.hom(Q2, Q1), cat.hom(Q1, Q2));
    for a in 0..h10.module().len() {
        for b in 0..h01.module().len() {
            let ab = cat.compose_gen(Q1, Q2, Q1, a, b);
            for c in 0..h10.module().len() {
                let one = LinComb::from([(c, Int::from(1))]);
                assert!(cat.compose_lin(Q2, Q1, Q1, &ab, &one).is_empty());
            }
        }
    }
}

#[test]
fn corrupted_shriek_yields_associativity_witness() {
    let mut cat = build_simp(&circle_plumbing()).unwrap();
    let table = cat.compose.get_mut(&(Q1, Q2, Q1)).unwrap();
    let key = *table.keys().next().unwrap();
    let v = table.get_mut(&key).unwrap();
    for c in v.values_mut() {
        *c = -c.clone();
    }
    let r = verify_dg_axioms(&cat);
    assert!(r.failures().any(|e| e.check == "dg.associativity"));
}

#[test]
fn clean_single_component_matches_transverse() {
    let c = Arc::new(OrderedComplex::simplex_boundary(1));
    let clean = build_simp_clean(&CleanPlumbingSpec {
        q1: c.clone(),
        q2: c.clone(),
        components: vec![ComponentSpec {
            n1: ids(&[&["0", "1"]]),
            n2: ids(&[&["0", "1"]]),
            shift: 0,
        }],
    })
    .unwrap();
    let plain = build_simp(&circle_plumbing()).unwrap();
    assert_eq!(clean.compose, plain.compose);
    for (k, h) in &plain.homs {
        assert_eq!(clean.homs[k].module().ranks(), h.module().ranks());
    }
}

#[test]
fn clean_two_components_with_shifts() {
    for shifts in [(0, 1), (1, 0), (2, 3), (-1, 1)] {
        let h = hexagon();
        let spec = CleanPlumbingSpec {
            q1: h.clone(),
            q2: h.clone(),
            components: vec![
                ComponentSpec {
                    n1: ids(&[&["0", "1"]]),
                    n2: ids(&[&["0", "1"]]),
                    shift: shifts.0,
                },
                ComponentSpec {
                    n1: ids(&[&["3", "4"]]),
                    n2: ids(&[&["3", "4"]]),
                    shift: shifts.1,
                },
            ],
        };
        let cat = build_simp_clean(&spec).unwrap();
        assert_all_pass(&verify_dg_axioms(&cat));
    }
}

#[test]
fn clean_annulus_in_torus() {
    for m in [0, 1] {
        let t = torus();
        let row = ids(&[
            &["0", "1", "4"],
            &["0", "3", "4"],
            &["1", "2", "5"],
            &["1", "4", "5"],
            &["0", "2", "3"],
            &["2", "3", "5"],
        ]);
        let spec = CleanPlumbingSpec {
            q1: t.clone(),
            q2: t.clone(),
            components: vec![ComponentSpec {
                n1: row.clone(),
                n2: row,
                shift: m,
            }],
        };
        let cat = build_simp_clean(&spec).unwrap();
        assert_all_pass(&verify_dg_axioms(&cat));
    }
}

#[test]
fn clean_errors() {
    let h = hexagon();
    let overlap = CleanPlumbingSpec {
        q1: h.clone(),
        q2: h.clone(),
        components: vec![
            ComponentSpec {
                n1: ids(&[&["0", "1"]]),
                n2: ids(&[&["0", "1"]]),
                shift: 0,
            },
            ComponentSpec {
                n1: ids(&[&["1", "2"]]),
                n2: ids(&[&["3", "4"]]),
                shift: 0,
            },
        ],
    };
    assert!(matches!(
        build_simp_clean(&overlap),
        Err(Error::OverlappingComponents(_))
    ));
    let mismatch = CleanPlumbingSpec {
        q1: h.clone(),
        q2: h.clone(),
        components: vec![ComponentSpec {
            n1: ids(&[&["0", "1"], &["1", "2"]]),
            n2: ids(&[&["0", "1"], &["3", "4"]]),
            shift: 0,
        }],
    };
    assert!(matches!(build_simp_clean(&mismatch), Err(Error::NonCellular(_))));
}
