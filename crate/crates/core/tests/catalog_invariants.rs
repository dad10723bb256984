//! Cross-module invariants exercised over the whole verification catalog.

mod support;

use clarcube_core::hexsys::{catalog, catalog_suite};
use clarcube_core::poly::IntPolynomial;
use clarcube_core::{bijection, clar, cube, matching, resonance, Limits};

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn kekule_counts_match_permanent_oracle() {
    for (name, system) in catalog_suite() {
        let enumerated =
            matching::enumerate_perfect_matchings(&system, &limits()).unwrap().len() as u64;
        let permanent = support::kekule_count_by_permanent(&system);
        assert_eq!(enumerated, permanent, "{name}");
    }
}

#[test]
fn zz_constant_and_linear_terms_match_resonance_graph() {
    for (name, system) in catalog_suite() {
        let zz = clar::zz_polynomial(&system, &limits()).unwrap();
        let rg = resonance::build_resonance_graph(&system, &limits()).unwrap();
        assert_eq!(
            zz.coeff(0),
            num_bigint::BigInt::from(rg.vertex_count()),
            "{name}: z(H,0)"
        );
        assert_eq!(
            zz.coeff(1),
            num_bigint::BigInt::from(rg.edge_count()),
            "{name}: z(H,1) first Herndon number"
        );
    }
}

#[test]
fn resonance_graphs_are_connected_for_kekulean_catalog() {
    for (name, system) in catalog_suite() {
        let rg = resonance::build_resonance_graph(&system, &limits()).unwrap();
        assert!(rg.to_simple_graph().is_connected(), "{name}");
    }
}

#[test]
fn sextet_polynomial_at_one_counts_patterns() {
    // on a catafusene every disjoint hexagon set is a sextet pattern, so
    // B(1) equals the Kekulé count by the classic correspondence
    for n in 1..=6 {
        let system = catalog("zigzag", Some(n), None).unwrap();
        let b = clar::sextet_polynomial(&system, &limits()).unwrap();
        let k = clar::zz_polynomial(&system, &limits()).unwrap().coeff(0);
        let total: num_bigint::BigInt = b.coeffs().iter().sum();
        assert_eq!(total, k, "zigzag({n})");
    }
}

#[test]
fn full_verification_passes_on_small_named_systems() {
    for name in ["benzene", "naphthalene", "anthracene", "phenanthrene", "triphenylene"] {
        let system = catalog(name, None, None).unwrap();
        let report = bijection::full_verification(name, &system, &limits()).unwrap();
        for check in &report.checks {
            assert!(check.pass, "{name}: {} failed: {:?}", check.name, check.witness);
        }
    }
}

#[test]
fn zigzag_resonance_graphs_are_fibonacci_cubes() {
    for n in 1..=6 {
        let system = catalog("zigzag", Some(n), None).unwrap();
        let rg = resonance::build_resonance_graph(&system, &limits()).unwrap();
        let gamma = cube::fibonacci_cube(n, &limits()).unwrap();
        assert!(
            cube::graph_isomorphic(&rg.to_simple_graph(), &gamma, &limits()).unwrap(),
            "zigzag({n})"
        );
    }
}

#[test]
fn cube_polynomial_brute_force_cross_check_on_resonance_graphs() {
    // brute force over all vertex subsets, validated by graph isomorphism,
    // against the level-wise enumerator
    for name in ["benzene", "naphthalene", "anthracene", "pyrene"] {
        let system = catalog(name, None, None).unwrap();
        let rg = resonance::build_resonance_graph(&system, &limits()).unwrap();
        let graph = rg.to_simple_graph();
        let n = graph.vertex_count();
        assert!(n <= 16, "{name} too big for the subset oracle");
        let mut counts = std::collections::BTreeMap::new();
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size & (size - 1) != 0 {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let mut edges = Vec::new();
            for (a, &u) in verts.iter().enumerate() {
                for (b, &v) in verts.iter().enumerate() {
                    if a < b && graph.adjacent(u, v) {
                        edges.push((a, b));
                    }
                }
            }
            let induced = cube::SimpleGraph::new(size, &edges).unwrap();
            let dim = size.trailing_zeros() as usize;
            if cube::graph_isomorphic(&induced, &cube::hypercube_graph(dim), &limits()).unwrap() {
                *counts.entry(dim).or_insert(0u64) += 1;
            }
        }
        let top = counts.keys().max().copied().unwrap_or(0);
        let mut coeffs = vec![num_bigint::BigInt::from(0); top + 1];
        for (d, c) in counts {
            coeffs[d] = num_bigint::BigInt::from(c);
        }
        let expected = IntPolynomial::new(coeffs);
        assert_eq!(
            cube::cube_polynomial(&graph, &limits()).unwrap(),
            expected,
            "{name}"
        );
    }
}

#[test]
fn maximal_covers_match_maximal_hypercubes_on_pyrene() {
    let system = catalog("pyrene", None, None).unwrap();
    let rg = resonance::build_resonance_graph(&system, &limits()).unwrap();
    let covers = clar::maximal_clar_covers(&system, &limits()).unwrap();
    let cubes = cube::maximal_hypercubes(&rg.to_simple_graph(), &limits()).unwrap();
    assert_eq!(covers.len(), cubes.len());
}

#[test]
fn derivative_identity_spot_values() {
    // naphthalene: zz' = 2 and each hexagon deletion leaves a 4-path with
    // exactly one matching
    let naphthalene = catalog("naphthalene", None, None).unwrap();
    let zz = clar::zz_polynomial(&naphthalene, &limits()).unwrap();
    assert_eq!(zz.derivative(1), IntPolynomial::from_i64(&[2]));
    for h in 0..2 {
        let deleted = naphthalene.delete_hexagon(h).unwrap();
        assert_eq!(
            clar::zz_polynomial(&deleted, &limits()).unwrap(),
            IntPolynomial::one()
        );
    }
    // benzene: zz' = 1 = zz(empty)
    let benzene = catalog("benzene", None, None).unwrap();
    let zz = clar::zz_polynomial(&benzene, &limits()).unwrap();
    assert_eq!(zz.derivative(1), IntPolynomial::one());
}
