use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::staircase::{normalize_staircase, staircase_disc, EdgePath};
use super::verify::CellwiseMap;
use crate::collapse::{replay, CollapseStep};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::FacePoset;
use crate::product::{Coord, ProductCell};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEmbedding {
    pub t1: Graph,
    pub t2: Graph,
    pub map: CellwiseMap,
    /// Number of disc-family items used by each 2-cell expansion.
    pub disc_items: Vec<usize>,
}

/// Embeds a collapsible 2-complex into a product of two trees by running
/// the collapse `witness` backwards.
pub fn embed_in_trees(x: &FacePoset, witness: &[CollapseStep]) -> Result<TreeEmbedding> {
    embed_in_trees_observed(x, witness, |_, _| {})
}

/// As [`embed_in_trees`], calling `observe(m, images)` after expansion `m`
/// (1-based) with the images built so far (`None` for cells not yet added).
pub fn embed_in_trees_observed<F>(
    x: &FacePoset,
    witness: &[CollapseStep],
    mut observe: F,
) -> Result<TreeEmbedding>
where
    F: FnMut(usize, &[Option<BTreeSet<ProductCell>>]),
{
    if let Some(d) = x.dimension() {
        if d > 2 {
            return Err(Error::Not2Dimensional(d));
        }
    }
    let seq = replay(x, witness)?;
    if seq.remainder.len() != 1 {
        return Err(Error::BadWitness(format!(
            "witness stops at {} cells, not a point",
            seq.remainder.len()
        )));
    }
    let star = seq.kept[0];
    let mut t1 = Graph::empty("T1");
    let mut t2 = Graph::empty("T2");
    t1.add_vertex("x0").expect("fresh graph");
    t2.add_vertex("y0").expect("fresh graph");
    let mut image: Vec<Option<BTreeSet<ProductCell>>> = vec![None; x.len()];
    let mut point: Vec<Option<[usize; 2]>> = vec![None; x.len()];
    let mut paths: Vec<Option<EdgePath>> = vec![None; x.len()];
    let vertex_cell = |p: [usize; 2]| ProductCell::new(vec![Coord::V(p[0]), Coord::V(p[1])]);
    point[star] = Some([0, 0]);
    image[star] = Some([vertex_cell([0, 0])].into_iter().collect());
    let mut disc_items = Vec::new();
    observe(0, &image);
    for (m, step) in witness.iter().rev().enumerate() {
        let (free, tau) = (step.free_cell, step.coface);
        match x.dim(tau) {
            1 => {
                // a new edge sticking out of the image of its old endpoint
                let (t, h) = x.edge_endpoints(tau);
                let old = if t == free { h } else { t };
                let p =
                    point[old].ok_or_else(|| Error::BadWitness("endpoint not yet built".into()))?;
                let tip = t2.fresh_id("y");
                let eid = t2.fresh_id("g");
                let (w, e) = t2.add_pendant(p[1], &tip, &eid).expect("fresh ids");
                let q = [p[0], w];
                let edge = ProductCell::new(vec![Coord::V(p[0]), Coord::E(e)]);
                point[free] = Some(q);
                image[free] = Some([vertex_cell(q)].into_iter().collect());
                let out = EdgePath {
                    vertices: vec![p, q],
                    edges: vec![edge],
                };
                let oriented = if old == t { out } else { out.reversed() };
                image[tau] = Some(oriented.cells());
                paths[tau] = Some(oriented);
            }
            2 => {
                let walk = x.boundary(tau);
                let k = walk
                    .iter()
                    .position(|b| b.0 == free)
                    .ok_or_else(|| Error::BadWitness("free edge not on the 2-cell".into()))?;
                // A' runs from the end of the free edge around to its start
                let mut arc: Option<EdgePath> = None;
                for i in 1..walk.len() {
                    let (e, s) = walk[(k + i) % walk.len()];
                    let p = paths[e]
                        .as_ref()
                        .ok_or_else(|| Error::BadWitness("boundary edge not yet built".into()))?;
                    let piece = if s > 0 { p.clone() } else { p.reversed() };
                    match arc.as_mut() {
                        None => arc = Some(piece),
                        Some(a) => a.extend(&piece),
                    }
                }
                let arc = arc.expect("2-cells have at least two edges");
                let factors = [t1.clone(), t2.clone()];
                let st = normalize_staircase(&factors, &arc)?;
                let d = staircase_disc(&t1, &t2, &st)?;
                disc_items.push(d.items.len());
                let free_path = d.free_boundary.clone();
                image[tau] = Some(d.closure());
                let (ft, _) = x.edge_endpoints(free);
                let oriented = if point[ft] == Some(free_path.start()) {
                    free_path
                } else {
                    free_path.reversed()
                };
                image[free] = Some(oriented.cells());
                paths[free] = Some(oriented);
                t1 = d.k1;
                t2 = d.k2;
            }
            d => return Err(Error::Not2Dimensional(d)),
        }
        observe(m + 1, &image);
    }
    let image: Vec<BTreeSet<ProductCell>> = image
        .into_iter()
        .map(|i| i.ok_or_else(|| Error::BadWitness("some cell was never built".into())))
        .collect::<Result<_>>()?;
    for g in [&t1, &t2] {
        if !g.profile().is_tree {
            return Err(Error::InvalidComplex("target factor is not a tree".into()));
        }
    }
    Ok(TreeEmbedding {
        t1: t1.clone(),
        t2: t2.clone(),
        map: CellwiseMap {
            source: x.clone(),
            factors: vec![t1, t2],
            image,
        },
        disc_items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{maximal_collapse, Strategy};
    use crate::poset::PosetBuilder;
    use crate::treeembed::verify_cellwise_map;

    fn square() -> FacePoset {
        let mut b = PosetBuilder::new();
        let v: Vec<usize> = ["a", "b", "c", "d"].iter().map(|l| b.vertex(l)).collect();
        b.polygon("sq", &v);
        b.build().unwrap()
    }

    #[test]
    fn point_maps_to_point() {
        let mut b = PosetBuilder::new();
        b.vertex("*");
        let x = b.build().unwrap();
        let e = embed_in_trees(&x, &[]).unwrap();
        assert_eq!((e.t1.vertex_count(), e.t2.vertex_count()), (1, 1));
        assert!(verify_cellwise_map(&e.map).passed());
    }

    #[test]
    fn square_embeds() {
        let x = square();
        let seq = maximal_collapse(&x, Strategy::LowestId);
        assert_eq!(seq.remainder.len(), 1);
        let e = embed_in_trees(&x, &seq.steps).unwrap();
        assert!(e.t1.profile().is_tree && e.t2.profile().is_tree);
        let r = verify_cellwise_map(&e.map);
        assert!(r.passed(), "{:?}", r.violation);
        assert_eq!(e.disc_items, vec![2]);
    }

    #[test]
    fn partial_maps_only_grow() {
        let x = square();
        let seq = maximal_collapse(&x, Strategy::HighestId);
        let mut prev: Vec<Option<BTreeSet<ProductCell>>> = Vec::new();
        embed_in_trees_observed(&x, &seq.steps, |_, now| {
            for (a, b) in prev.iter().zip(now) {
                if a.is_some() {
                    assert_eq!(a, b);
                }
            }
            prev = now.to_vec();
        })
        .unwrap();
    }

    #[test]
    fn witness_must_reach_a_point() {
        let x = square();
        assert!(matches!(embed_in_trees(&x, &[]), Err(Error::BadWitness(_))));
    }
}
