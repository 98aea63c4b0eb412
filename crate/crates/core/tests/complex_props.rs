mod common;

use std::collections::BTreeSet;

use prodcurves_core::algebra::IntMatrix;
use prodcurves_core::gallery::{self, Payload, NAMES};
use prodcurves_core::graph::shapes;
use prodcurves_core::{
    boundary_matrices, classify, graph_profile, homology_summary, smith_normal_form,
    surface_summary, Coord, FacePoset, ProductCell, ProductSubcomplex, SimplicialComplex,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn gallery_posets() -> Vec<(String, FacePoset)> {
    NAMES
        .iter()
        .map(|n| {
            (
                n.to_string(),
                gallery::make(n, &[]).unwrap().payload.to_face_poset(),
            )
        })
        .collect()
}

fn product_is_zero(a: &IntMatrix, b: &IntMatrix) -> bool {
    (0..a.rows()).all(|i| {
        (0..b.cols()).all(|j| {
            (0..a.cols())
                .map(|k| a.get(i, k) * b.get(k, j))
                .sum::<i64>()
                == 0
        })
    })
}

fn squares_of_theta_theta(mask: u32, extra_edges: &[usize]) -> ProductSubcomplex {
    let full = ProductSubcomplex::full(vec![shapes::theta("P"), shapes::theta("Q")]);
    let mut tops: Vec<ProductCell> = (0..9)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| ProductCell::new(vec![Coord::E(i / 3), Coord::E(i % 3)]))
        .collect();
    let edges: Vec<ProductCell> = full.cells_of_dim(1).cloned().collect();
    tops.extend(extra_edges.iter().map(|&e| edges[e % edges.len()].clone()));
    full.with_cells(tops)
}

#[test]
fn boundary_squares_to_zero_on_gallery() {
    for (name, x) in gallery_posets() {
        let d = boundary_matrices(&x);
        for w in d.windows(2) {
            assert!(product_is_zero(&w[0], &w[1]), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boundary_squares_to_zero_on_theta_theta(mask in 0u32..512, extra in proptest::collection::vec(0usize..64, 0..4)) {
        let m = squares_of_theta_theta(mask, &extra);
        prop_assume!(!m.is_empty());
        let d = boundary_matrices(&m.to_face_poset());
        for w in d.windows(2) {
            prop_assert!(product_is_zero(&w[0], &w[1]));
        }
    }
}

proptest! {
    #[test]
    fn closure_is_idempotent(mask in 1u32..512, extra in proptest::collection::vec(0usize..64, 0..4)) {
        let m = squares_of_theta_theta(mask, &extra);
        let again = m.with_cells(m.cells().iter().cloned());
        prop_assert_eq!(again.cells(), m.cells());
        prop_assert!(m.is_face_closed());
    }

    #[test]
    fn snf_rank_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(rows.clone()));
        prop_assert_eq!(snf.rank, bareiss_rank(&rows));
    }

    #[test]
    fn kunneth_on_random_graphs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, "g", 5, 7, false);
        let h = random_graph(&mut rng, "h", 5, 7, false);
        let (g0, g1) = graph_betti(&g);
        let (h0, h1) = graph_betti(&h);
        let b = homology_summary(&ProductSubcomplex::full(vec![g, h]).to_face_poset());
        prop_assert_eq!(b.b(0), g0 * h0);
        prop_assert_eq!(b.b(1), g1 * h0 + g0 * h1);
        prop_assert_eq!(b.b(2), g1 * h1);
    }

    #[test]
    fn graph_profile_b1_matches_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let connected = rng.gen_bool(0.5);
        let g = random_graph(&mut rng, "g", 7, 10, connected);
        prop_assert_eq!(graph_profile(&g).b1, homology_summary(&g.to_face_poset()).b(1));
    }
}

#[test]
fn gallery_graph_b1_matches_homology() {
    for name in NAMES {
        if let Payload::Graph(g) = gallery::make(name, &[]).unwrap().payload {
            assert_eq!(
                graph_profile(&g).b1,
                homology_summary(&g.to_face_poset()).b(1),
                "{name}"
            );
        }
    }
}

#[test]
fn homology_survives_relabeling_and_subdivision() {
    for (name, x) in gallery_posets() {
        let h = homology_summary(&x);
        let relabeled = x.relabeled(|i, l| format!("{l}#{i}")).unwrap();
        let perm: Vec<usize> = (0..x.len()).rev().collect();
        let shuffled = relabeled.permuted(&perm);
        let h2 = homology_summary(&shuffled);
        assert_eq!(
            (h.betti.clone(), h.torsion.clone()),
            (h2.betti, h2.torsion),
            "{name} relabeled"
        );
        if x.len() > 400 {
            continue;
        }
        let sd = SimplicialComplex::order_complex(&x).complex.to_face_poset();
        let h3 = homology_summary(&sd);
        assert_eq!(
            (h.betti, h.torsion, h.euler),
            (h3.betti, h3.torsion, h3.euler),
            "{name} subdivided"
        );
    }
}

#[test]
fn surface_euler_characteristic_two_ways() {
    for (name, x) in gallery_posets() {
        if let Ok(s) = surface_summary(&x) {
            let h = homology_summary(&x);
            assert_eq!(s.chi, x.euler(), "{name}");
            assert_eq!(s.chi, h.euler_from_betti(), "{name}");
        }
    }
}

#[test]
fn gallery_complexes_have_proper_cells() {
    for name in NAMES {
        if let Payload::Product(m) = gallery::make(name, &[]).unwrap().payload {
            assert!(m.has_proper_cells(), "{name}");
        }
    }
    for n in 4..=6 {
        let item = gallery::make("example_2B4", &[("n", n)]).unwrap();
        let Payload::Product(m) = item.payload else {
            unreachable!()
        };
        assert!(m.has_proper_cells());
    }
}

/// Every ramified subcomplex of a torus generated by top cells is the torus.
fn ramified_subtori_are_everything(p: usize, q: usize) {
    let k = ProductSubcomplex::full(vec![shapes::circle("A", p), shapes::circle("B", q)]);
    let squares: Vec<ProductCell> = k.cells_of_dim(2).cloned().collect();
    let total = squares.len();
    for mask in 1u32..(1 << total) {
        let tops: Vec<ProductCell> = (0..total)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| squares[i].clone())
            .collect();
        let l = k.with_cells(tops);
        if classify(&l.to_face_poset(), 2).unwrap().ramified {
            assert_eq!(l.cells(), k.cells(), "mask {mask:#b}");
        }
    }
}

#[test]
fn ramified_subcomplexes_of_tori_are_the_torus() {
    ramified_subtori_are_everything(2, 2);
    ramified_subtori_are_everything(3, 3);
}

fn flag_shape(x: &FacePoset) -> (bool, bool, bool, bool, usize, Vec<usize>) {
    let f = classify(x, 2).unwrap();
    let mut comps: Vec<usize> = f.combinatorial_components.iter().map(|c| c.len()).collect();
    comps.sort();
    (
        f.top_cover,
        f.ramified,
        f.pseudo,
        f.simple,
        f.free_faces.len(),
        comps,
    )
}

proptest! {
    #[test]
    fn classify_ignores_labels_and_factor_order(mask in 1u32..512) {
        let m = squares_of_theta_theta(mask, &[]);
        let x = m.to_face_poset();
        let base = flag_shape(&x);
        let perm: Vec<usize> = (0..x.len()).rev().collect();
        let y = x.relabeled(|i, _| format!("c{}", i * 31 % 997)).unwrap().permuted(&perm);
        prop_assert_eq!(&base, &flag_shape(&y));
        prop_assert_eq!(&base, &flag_shape(&m.permute_factors(&[1, 0]).to_face_poset()));
    }
}

#[test]
fn closed_surfaces_in_the_census_with_small_b1_are_tori() {
    let tori = circle_product_masks();
    let mut surfaces = BTreeSet::new();
    for (mask, m) in theta_census() {
        let x = m.to_face_poset();
        if let Ok(s) = surface_summary(&x) {
            if homology_summary(&x).b(1) <= 3 {
                assert!(s.orientable);
                surfaces.insert(mask);
            }
        }
    }
    assert_eq!(surfaces, tori);
}
