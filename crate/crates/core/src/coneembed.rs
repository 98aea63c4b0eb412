//! Skeleton/dual join decompositions and the recursive embedding of cones
//! over simplicial complexes into products of stars (m-ods).
//!
//! For `P′` the vertex set of `K` and `P″` its dual in the barycentric
//! subdivision, `K ⊂ P′ ∗ P″` and `cone(P′ ∗ P″) ≅ cone P′ × cone P″`. On
//! cells: a chain `v < ρ` of the subdivision goes to
//! `{v} × cone(ρ) ∪ [a′, v] × ρ`, a chain `ρ` inside `P″` goes to
//! `{a′} × ρ`, and coning multiplies by the segment `[a′, v]` (or by the
//! point `a′`). The recursion runs on `P″`, whose dimension is one lower.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{shapes, Graph};
use crate::poset::FacePoset;
use crate::product::{Coord, ProductCell, ProductSubcomplex};
use crate::simplicial::SimplicialComplex;
use crate::treeembed::CellwiseMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub base: SimplicialComplex,
    pub k: usize,
    pub l: usize,
    /// The `k`-skeleton of `K`.
    pub skeleton_part: SimplicialComplex,
    /// Simplices of the barycentric subdivision missing the `k`-skeleton.
    pub dual_part: SimplicialComplex,
    pub subdivision: SimplicialComplex,
    /// For each simplex of the subdivision, its vertices split into those
    /// over simplices of dimension `≤ k` and the rest (subdivision indices).
    pub splits: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Splits `K` (of dimension `k + l + 1`) into its `k`-skeleton and the dual
/// part of dimension `l`.
pub fn join_decomposition(base: &SimplicialComplex, k: usize) -> Result<JoinDecomposition> {
    let dim = base.dimension().unwrap_or(0);
    if base.is_empty() || dim < k + 1 {
        return Err(Error::BadDimensionSplit { dim, k });
    }
    let l = dim - k - 1;
    let sd = base.barycentric_subdivision();
    let low = |v: usize| base.simplices()[sd.barycenter_of[v]].len() <= k + 1;
    let mut splits = Vec::with_capacity(sd.complex.len());
    let mut dual = Vec::new();
    for (i, s) in sd.complex.simplices().iter().enumerate() {
        let (a, b): (Vec<usize>, Vec<usize>) = s.iter().partition(|&&v| low(v));
        if a.is_empty() {
            dual.push(i);
        }
        splits.push((a, b));
    }
    let dual_part = sd.complex.subcomplex(&dual);
    let d = JoinDecomposition {
        base: base.clone(),
        k,
        l,
        skeleton_part: base.skeleton(k),
        dual_part,
        subdivision: sd.complex.clone(),
        splits,
    };
    if d.skeleton_part.dimension() != Some(k) || d.dual_part.dimension() != Some(l) {
        return Err(Error::InvalidComplex(
            "join parts have the wrong dimensions".into(),
        ));
    }
    for (i, (a, b)) in d.splits.iter().enumerate() {
        // the low part is a chain in the subdivided skeleton, the high part
        // a simplex of the dual, and together they span the simplex
        let s = &sd.complex.simplices()[i];
        if a.len() + b.len() != s.len() {
            return Err(Error::InvalidComplex("split lost a vertex".into()));
        }
        if !b.is_empty() {
            let names: Vec<&str> = b
                .iter()
                .map(|&v| sd.complex.vertices()[v].as_str())
                .collect();
            if dual_index(&d.dual_part, &names).is_none() {
                return Err(Error::InvalidComplex("high part is not in the dual".into()));
            }
        }
    }
    Ok(d)
}

fn dual_index(c: &SimplicialComplex, names: &[&str]) -> Option<usize> {
    let mut idx = Vec::with_capacity(names.len());
    for n in names {
        idx.push(c.vertex_index(n)?);
    }
    idx.sort_unstable();
    c.simplex_index(&idx)
}

/// A cone embedded cellwise in a product of stars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModProductEmbedding {
    /// The stars, first factor first.
    pub mods: Vec<Graph>,
    /// Leaf count of each star.
    pub m: Vec<usize>,
    /// Source: the cone over the input, one cell per simplex.
    pub map: CellwiseMap,
    /// Name of the cone apex in the source.
    pub apex: String,
}

/// Images of a complex `L` and of its cone under the recursive embedding.
struct Level {
    factors: Vec<Graph>,
    base: Vec<BTreeSet<ProductCell>>,
    cone: Vec<BTreeSet<ProductCell>>,
    apex: ProductCell,
}

fn product(a: &BTreeSet<ProductCell>, b: &BTreeSet<ProductCell>) -> BTreeSet<ProductCell> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.concat(y));
        }
    }
    out
}

fn single(c: Coord) -> ProductCell {
    ProductCell::new(vec![c])
}

fn level(l: &SimplicialComplex, depth: usize) -> Level {
    let dim = l.dimension().unwrap_or(0);
    let nv = l.vertices().len();
    let mut star = shapes::star(&format!("M{depth}"), nv);
    star.set_name(&format!("M{depth}"));
    let center = single(Coord::V(0));
    // leaf i is vertex i + 1, spoke i is edge i
    let leaf = |i: usize| single(Coord::V(i + 1));
    let spoke = |i: usize| -> BTreeSet<ProductCell> {
        [center.clone(), leaf(i), single(Coord::E(i))]
            .into_iter()
            .collect()
    };
    if dim == 0 {
        let base = (0..l.len())
            .map(|s| [leaf(l.simplices()[s][0])].into_iter().collect())
            .collect();
        let cone = (0..l.len()).map(|s| spoke(l.simplices()[s][0])).collect();
        return Level {
            factors: vec![star],
            base,
            cone,
            apex: center,
        };
    }
    let sd = l.barycentric_subdivision();
    let high = |v: usize| l.simplices()[sd.barycenter_of[v]].len() > 1;
    let dual_ids: Vec<usize> = (0..sd.complex.len())
        .filter(|&i| sd.complex.simplices()[i].iter().all(|&v| high(v)))
        .collect();
    let dual = sd.complex.subcomplex(&dual_ids);
    let rec = level(&dual, depth + 1);
    let apex_rec: BTreeSet<ProductCell> = [rec.apex.clone()].into_iter().collect();
    let a_point: BTreeSet<ProductCell> = [center.clone()].into_iter().collect();
    let mut base_direct: Vec<BTreeSet<ProductCell>> = vec![BTreeSet::new(); l.len()];
    let mut cone_direct: Vec<BTreeSet<ProductCell>> = vec![BTreeSet::new(); l.len()];
    for (i, s) in sd.complex.simplices().iter().enumerate() {
        let low: Vec<usize> = s.iter().copied().filter(|&v| !high(v)).collect();
        let rest: Vec<&str> = s
            .iter()
            .filter(|&&v| high(v))
            .map(|&v| sd.complex.vertices()[v].as_str())
            .collect();
        let (rho_base, rho_cone) = if rest.is_empty() {
            (BTreeSet::new(), apex_rec.clone())
        } else {
            let r = dual_index(&dual, &rest).expect("high chains lie in the dual");
            (rec.base[r].clone(), rec.cone[r].clone())
        };
        let (b, c) = match low[..] {
            [] => (product(&a_point, &rho_base), product(&a_point, &rho_cone)),
            [v] => {
                let vk = l.simplices()[sd.barycenter_of[v]][0];
                let lf: BTreeSet<ProductCell> = [leaf(vk)].into_iter().collect();
                let mut b = product(&lf, &rho_cone);
                b.extend(product(&spoke(vk), &rho_base));
                (b, product(&spoke(vk), &rho_cone))
            }
            _ => unreachable!("a chain has at most one vertex of K"),
        };
        let carrier = sd.carrier[i];
        base_direct[carrier].extend(b);
        cone_direct[carrier].extend(c);
    }
    let mut base = Vec::with_capacity(l.len());
    let mut cone = Vec::with_capacity(l.len());
    for s in 0..l.len() {
        let mut b = BTreeSet::new();
        let mut c = BTreeSet::new();
        for f in faces_of(l, s) {
            b.extend(base_direct[f].iter().cloned());
            c.extend(cone_direct[f].iter().cloned());
        }
        base.push(b);
        cone.push(c);
    }
    let mut factors = vec![star];
    factors.extend(rec.factors);
    Level {
        factors,
        base,
        cone,
        apex: center.concat(&rec.apex),
    }
}

/// Indices of all nonempty faces of simplex `s`, itself included.
fn faces_of(l: &SimplicialComplex, s: usize) -> Vec<usize> {
    let verts = &l.simplices()[s];
    let k = verts.len();
    (1u32..(1 << k))
        .map(|mask| {
            let sub: Vec<usize> = (0..k)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| verts[b])
                .collect();
            l.simplex_index(&sub)
                .expect("faces of simplices are simplices")
        })
        .collect()
}

/// Embeds the cone over `k` into a product of `dim k + 1` stars.
pub fn cone_embed_mods(k: &SimplicialComplex) -> Result<ModProductEmbedding> {
    if k.is_empty() {
        return Err(Error::InvalidComplex("cone over the empty complex".into()));
    }
    let lv = level(k, 0);
    let mut apex = String::from("apex");
    while k.vertex_index(&apex).is_some() {
        apex.push('\'');
    }
    let cone = k.cone(&apex)?;
    let a = cone.vertex_index(&apex).expect("apex was added");
    // source simplex → image
    let mut image = vec![BTreeSet::new(); cone.len()];
    let to_k: BTreeMap<&str, usize> = k
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let ambient = ProductSubcomplex::empty(lv.factors.clone());
    for (i, s) in cone.simplices().iter().enumerate() {
        let mut base: Vec<usize> = s
            .iter()
            .filter(|&&v| v != a)
            .map(|&v| to_k[cone.vertices()[v].as_str()])
            .collect();
        base.sort_unstable();
        let coned = s.contains(&a);
        let set = if base.is_empty() {
            [lv.apex.clone()].into_iter().collect()
        } else {
            let j = k.simplex_index(&base).expect("base simplex exists");
            if coned {
                lv.cone[j].clone()
            } else {
                lv.base[j].clone()
            }
        };
        image[i] = ambient.closure_of(set);
    }
    let m = lv.factors.iter().map(|g| g.vertex_count() - 1).collect();
    Ok(ModProductEmbedding {
        mods: lv.factors.clone(),
        m,
        map: CellwiseMap {
            source: cone.to_face_poset(),
            factors: lv.factors,
            image,
        },
        apex,
    })
}

/// Triangulates a regular CW complex by its order complex and embeds the
/// cone over it.
pub fn cone_embed_poset(x: &FacePoset) -> Result<ModProductEmbedding> {
    let sd = SimplicialComplex::order_complex(x);
    cone_embed_mods(&sd.complex)
}

/// Stars have one center of degree `m` and `m` leaves.
pub fn is_star(g: &Graph) -> bool {
    let deg = g.degrees();
    let m = g.vertex_count().saturating_sub(1);
    g.profile().is_tree
        && (m <= 1 || deg.iter().filter(|&&d| d == m).count() == 1)
        && deg.iter().filter(|&&d| d == 1).count()
            == m.max(if m == 1 { 2 } else { 0 }).min(g.vertex_count())
}

impl ModProductEmbedding {
    pub fn target(&self) -> ProductSubcomplex {
        self.map.target()
    }

    /// Source cell label of the apex.
    pub fn apex_label(&self) -> String {
        format!("{{{}}}", self.apex)
    }
}
