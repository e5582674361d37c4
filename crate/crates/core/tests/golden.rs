mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;

use qgraph::catalog;
use qgraph::orbits::{default_deletions, ghost_reduce, EnumerationOptions, OrbitExpansion};
use qgraph::rational::{int, ratio};
use qgraph::resonance::{find_roots, reduce_to_polynomial, FamilyKind};
use qgraph::scattering::{dirichlet_vertex_scattering, effective_vertex_scattering};
use qgraph::{MetricGraph, Rational, ScatteringSystem, VertexId};

use support::rat_rows;

/// Rotates each cycle so its smallest label leads.
fn canonical(cycles: Vec<Vec<String>>) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = cycles
        .into_iter()
        .map(|c| {
            let start = (0..c.len()).min_by_key(|&i| &c[i]).unwrap_or(0);
            c[start..].iter().chain(&c[..start]).cloned().collect()
        })
        .collect();
    out.sort();
    out
}

fn labels(cycle: &[&str]) -> Vec<String> {
    canonical(vec![cycle.iter().map(|s| s.to_string()).collect()]).remove(0)
}

fn reduced(g: &MetricGraph) -> OrbitExpansion {
    let (bonds, sys) = ScatteringSystem::from_graph(g).unwrap();
    let red = ghost_reduce(g, &bonds, &sys, &default_deletions(g, &bonds)).unwrap();
    OrbitExpansion::new(red.digraph, EnumerationOptions::default()).unwrap()
}

#[test]
fn vertex_matrices() {
    let cases: [(usize, usize, Vec<Vec<Rational>>); 4] = [
        (1, 1, rat_rows(&[&[(0, 1)]])),
        (2, 0, rat_rows(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]])),
        (2, 2, rat_rows(&[&[(-1, 2), (1, 2)], &[(1, 2), (-1, 2)]])),
        (
            3,
            1,
            rat_rows(&[
                &[(-1, 2), (1, 2), (1, 2)],
                &[(1, 2), (-1, 2), (1, 2)],
                &[(1, 2), (1, 2), (-1, 2)],
            ]),
        ),
    ];
    for (n, m, want) in cases {
        let got = effective_vertex_scattering(n, m).unwrap().to_rows();
        assert_eq!(got, want, "n = {n}, m = {m}");
    }
    assert_eq!(
        dirichlet_vertex_scattering().to_rows(),
        rat_rows(&[&[(-1, 1)]])
    );
    assert!(effective_vertex_scattering(0, 2).is_err());
}

#[test]
fn condition_displays() {
    let shown = |g: &MetricGraph| {
        let (bonds, sys) = ScatteringSystem::from_graph(g).unwrap();
        OrbitExpansion::for_system(&sys, &bonds, EnumerationOptions::default())
            .unwrap()
            .condition()
            .unwrap()
            .display()
    };
    assert_eq!(shown(&catalog::two_abscissas()), "1 − e^(2ik)");
    assert_eq!(shown(&catalog::triangle()), "1 − 3/4·e^(2ik) − 1/4·e^(3ik)");
    assert_eq!(shown(&catalog::square()), "1 − e^(2ik)");
}

#[test]
fn triangle_reduced_inventory() {
    let e = reduced(&catalog::triangle());
    let single: Vec<(Rational, Vec<String>)> = e
        .orbits
        .iter()
        .filter(|o| o.m() == 1)
        .map(|o| {
            (
                o.length.exact().unwrap().clone(),
                canonical(e.orbit_labels(o)).remove(0),
            )
        })
        .collect();
    let at = |l: i64| -> BTreeSet<Vec<String>> {
        single
            .iter()
            .filter(|(len, _)| *len == int(l))
            .map(|(_, c)| c.clone())
            .collect()
    };
    assert_eq!(
        at(2),
        BTreeSet::from([
            labels(&["1", "2", "2^'"]),
            labels(&["2", "3", "3^'"]),
            labels(&["3", "1", "1^'"])
        ])
    );
    assert_eq!(
        at(3),
        BTreeSet::from([
            labels(&["1", "2", "3"]),
            labels(&["1", "1^'", "3", "3^'", "2", "2^'"])
        ])
    );
    assert!(single.iter().all(|(l, _)| *l == int(2) || *l == int(3)));
}

#[test]
fn two_abscissas_reduced_inventory() {
    let g = catalog::two_abscissas();
    let (bonds, sys) = ScatteringSystem::from_graph(&g).unwrap();
    let deletions = BTreeMap::from([(VertexId(2), bonds.parse_label("1").unwrap())]);
    let red = ghost_reduce(&g, &bonds, &sys, &deletions).unwrap();
    let e = OrbitExpansion::new(red.digraph, EnumerationOptions::default()).unwrap();
    let got: BTreeSet<Vec<Vec<String>>> = e
        .orbits
        .iter()
        .map(|o| canonical(e.orbit_labels(o)))
        .collect();
    let want = BTreeSet::from([
        vec![],
        vec![labels(&["2", "2^"])],
        vec![labels(&["1^", "1'", "2^"])],
    ]);
    assert_eq!(got, want);
    for o in &e.orbits {
        if o.m() == 1 {
            assert_eq!(o.amplitude, ratio(1, 2));
        }
    }

    let by_default = canonical_set(&reduced(&g));
    assert_eq!(
        by_default,
        BTreeSet::from([
            vec![],
            vec![labels(&["1", "1^"])],
            vec![labels(&["1", "2", "2^'"])]
        ])
    );
}

fn canonical_set(e: &OrbitExpansion) -> BTreeSet<Vec<Vec<String>>> {
    e.orbits
        .iter()
        .map(|o| canonical(e.orbit_labels(o)))
        .collect()
}

#[test]
fn square_orbit_reduction() {
    let g = catalog::square();
    let (bonds, sys) = ScatteringSystem::from_graph(&g).unwrap();
    let full = OrbitExpansion::for_system(&sys, &bonds, EnumerationOptions::default()).unwrap();
    let small = reduced(&g);
    assert_eq!((full.orbits.len(), small.orbits.len()), (49, 9));
    assert_eq!(full.condition().unwrap(), small.condition().unwrap());
}

#[test]
fn triangle_families() {
    let g = catalog::triangle();
    let (bonds, sys) = ScatteringSystem::from_graph(&g).unwrap();
    let cond = OrbitExpansion::for_system(&sys, &bonds, EnumerationOptions::default())
        .unwrap()
        .condition()
        .unwrap();
    let red = reduce_to_polynomial(&cond).unwrap();
    assert_eq!(red.degree(), 3);
    assert_eq!(red.effective_size(), ratio(3, 2));
    let fams = find_roots(&red).unwrap();
    assert_eq!(fams.len(), 2);
    let eig = fams
        .iter()
        .find(|f| f.kind == FamilyKind::Eigenvalue)
        .unwrap();
    let res = fams
        .iter()
        .find(|f| f.kind == FamilyKind::Resonance)
        .unwrap();
    assert_eq!((eig.multiplicity, res.multiplicity), (1, 2));
    assert!((eig.k(1) - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-12);
    let want = Complex64::new(3.0 * PI, -(2f64).ln());
    assert!((res.k(1) - want).norm() < 1e-12, "{}", res.k(1));
}

#[test]
fn graph_json_round_trip() {
    for g in [
        catalog::two_abscissas(),
        catalog::triangle(),
        catalog::square(),
    ] {
        let back = MetricGraph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back.to_json_string(), g.to_json_string());
    }
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/graphs");
    for (file, g) in [
        ("two_abscissas.json", catalog::two_abscissas()),
        ("triangle.json", catalog::triangle()),
        ("square.json", catalog::square()),
    ] {
        let parsed = MetricGraph::from_json_file(dir.join(file)).unwrap();
        let (_, a) = ScatteringSystem::from_graph(&parsed).unwrap();
        let (_, b) = ScatteringSystem::from_graph(&g).unwrap();
        assert_eq!(a.s().to_rows(), b.s().to_rows(), "{file}");
    }
}
