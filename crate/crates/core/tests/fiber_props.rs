mod common;

use std::collections::BTreeSet;

use prodcurves_core::fibers::factorize;
use prodcurves_core::{classify, homology_summary, Coord, ProductSubcomplex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// Directions whose coordinate image is a circle, found by looking at the
/// vertex and edge sets directly.
fn circle_directions_oracle(m: &ProductSubcomplex) -> Vec<usize> {
    (0..m.factor_count())
        .filter(|&j| {
            let g = &m.factors()[j];
            let mut verts = BTreeSet::new();
            let mut edges = BTreeSet::new();
            for c in m.cells() {
                match c.coords()[j] {
                    Coord::V(v) => {
                        verts.insert(v);
                    }
                    Coord::E(e) => {
                        edges.insert(e);
                    }
                }
            }
            if verts.len() != edges.len() || verts.is_empty() {
                return false;
            }
            let mut deg = std::collections::BTreeMap::new();
            for &e in &edges {
                let edge = &g.edges()[e];
                *deg.entry(edge.tail).or_insert(0) += 1;
                *deg.entry(edge.head).or_insert(0) += 1;
            }
            if deg.values().any(|&d| d != 2) {
                return false;
            }
            // one cycle: walk from the smallest vertex and count steps
            let start = *verts.iter().next().unwrap();
            let (mut prev, mut cur, mut steps) = (usize::MAX, start, 0);
            loop {
                let next = edges
                    .iter()
                    .map(|&e| &g.edges()[e])
                    .find_map(|e| {
                        let other = if e.tail == cur {
                            e.head
                        } else if e.head == cur {
                            e.tail
                        } else {
                            return None;
                        };
                        (other != prev || edges.len() == 2).then_some(other)
                    })
                    .unwrap();
                steps += 1;
                if next == start {
                    break;
                }
                (prev, cur) = (cur, next);
                if steps > edges.len() {
                    return false;
                }
            }
            steps == edges.len()
        })
        .collect()
}

#[test]
fn census_directions_match_oracle() {
    let mut seen = 0;
    for (mask, m) in theta_census() {
        if !classify(&m.to_face_poset(), 2).unwrap().ramified {
            assert!(factorize(&m).is_err(), "mask {mask:#b}");
            continue;
        }
        seen += 1;
        let r = factorize(&m).unwrap();
        let expect = circle_directions_oracle(&m);
        assert_eq!(r.j_m.members(), &expect[..], "mask {mask:#b}");
        assert_eq!(
            r.rank_data.b1,
            betti_oracle(&m.to_face_poset())[1],
            "mask {mask:#b}"
        );
        if r.is_full_torus {
            assert!(circle_product_masks().contains(&mask), "mask {mask:#b}");
        }
        let b = homology_summary(&m.to_face_poset());
        if b.b(1) == 2 && b.b(2) == 1 {
            assert!(r.is_full_torus, "mask {mask:#b}");
        }
    }
    assert!(seen > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circle_times_graph_splits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(3..=6);
        let c = scrambled_circle(&mut rng, "c", k);
        let parts = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let t = subdivided_theta("t", parts);
        let flip = rng.gen_bool(0.5);
        let factors = if flip { vec![t.clone(), c.clone()] } else { vec![c.clone(), t.clone()] };
        let m = ProductSubcomplex::full(factors);
        let r = factorize(&m).unwrap();
        let circle_slot = usize::from(flip);
        prop_assert_eq!(r.j_m.members(), &[circle_slot][..]);
        prop_assert!(!r.is_full_torus);
        let residual = r.residual.unwrap();
        prop_assert_eq!(residual.cells().len(), t.vertex_count() + t.edge_count());
        prop_assert_eq!(r.torus_factors.len(), 1);
        prop_assert_eq!(r.torus_factors[0].cells().len(), 2 * k);
        prop_assert_eq!(m.cells().len(), 2 * k * residual.cells().len());
        prop_assert_eq!(r.rank_data.b1, 1 + graph_betti(&t).1);
        prop_assert!(r.rank_data.at_least_fiber_sum);
    }

    #[test]
    fn three_tori_are_full(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ks: Vec<usize> = (0..3).map(|_| rng.gen_range(2..=4)).collect();
        let factors = ks.iter().enumerate().map(|(i, &k)| scrambled_circle(&mut rng, &format!("c{i}"), k)).collect();
        let m = ProductSubcomplex::full(factors);
        let r = factorize(&m).unwrap();
        prop_assert!(r.is_full_torus);
        prop_assert_eq!(r.j_m.members(), &[0, 1, 2][..]);
        prop_assert_eq!(r.rank_data.b1, 3);
    }
}
