//! Elementary collapses, maximal collapse sequences, collapsibility search
//! and the collapse-based non-embeddability test for 2-polyhedra in products
//! of two curves.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{homology_summary, surface_summary};
use crate::error::{Error, Result};
use crate::poset::FacePoset;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Removal of `free_cell` together with its unique coface `coface`. Cell
/// ids refer to the complex the sequence started from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CollapseStep {
    pub free_cell: usize,
    pub coface: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<CollapseStep>,
    pub remainder: FacePoset,
    /// For each remainder cell, its id in the start complex.
    pub kept: Vec<usize>,
}

/// Order in which free faces are tried by [`maximal_collapse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LowestId,
    HighestId,
    /// A fixed pseudo-random priority derived from the seed.
    Seeded(u64),
}

/// The unique alive coface of `f`, if `f` is alive and free.
fn free_partner(x: &FacePoset, alive: &[bool], f: usize) -> Option<usize> {
    if !alive[f] {
        return None;
    }
    let mut it = x.cofaces(f).iter().copied().filter(|&c| alive[c]);
    match (it.next(), it.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn finish(x: &FacePoset, steps: Vec<CollapseStep>, alive: &[bool]) -> CollapseSequence {
    let (remainder, kept) = x
        .restrict(alive)
        .expect("collapses keep the complex face-closed");
    CollapseSequence {
        steps,
        remainder,
        kept,
    }
}

/// Collapses greedily until no free face remains.
pub fn maximal_collapse(x: &FacePoset, strategy: Strategy) -> CollapseSequence {
    let n = x.len();
    let priority: Vec<usize> = match strategy {
        Strategy::LowestId => (0..n).collect(),
        Strategy::HighestId => (0..n).map(|c| n - 1 - c).collect(),
        Strategy::Seeded(seed) => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let mut p = vec![0; n];
            for (rank, &c) in order.iter().enumerate() {
                p[c] = rank;
            }
            p
        }
    };
    let mut alive = vec![true; n];
    let mut work: BTreeSet<(usize, usize)> = (0..n).map(|c| (priority[c], c)).collect();
    let mut steps = Vec::new();
    while let Some((_, f)) = work.pop_first() {
        let Some(c) = free_partner(x, &alive, f) else {
            continue;
        };
        alive[f] = false;
        alive[c] = false;
        steps.push(CollapseStep {
            free_cell: f,
            coface: c,
        });
        for &(g, _) in x.boundary(c).iter().chain(x.boundary(f)) {
            if alive[g] {
                work.insert((priority[g], g));
            }
        }
    }
    finish(x, steps, &alive)
}

/// Replays `steps` on `x`, failing on the first illegal step.
pub fn replay(x: &FacePoset, steps: &[CollapseStep]) -> Result<CollapseSequence> {
    let mut alive = vec![true; x.len()];
    for (i, s) in steps.iter().enumerate() {
        if s.free_cell >= x.len() || s.coface >= x.len() {
            return Err(Error::BadWitness(alloc::format!(
                "step {i} names a missing cell"
            )));
        }
        if free_partner(x, &alive, s.free_cell) != Some(s.coface) {
            return Err(Error::BadWitness(alloc::format!(
                "step {i}: `{}` is not a free face of `{}`",
                x.label(s.free_cell),
                x.label(s.coface)
            )));
        }
        alive[s.free_cell] = false;
        alive[s.coface] = false;
    }
    Ok(finish(x, steps.to_vec(), &alive))
}

/// Result of an exhaustive search over collapse orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A maximal sequence whose remainder was accepted.
    Found(CollapseSequence),
    /// Every maximal sequence was examined and none was accepted.
    Exhausted,
    /// The node budget ran out first.
    Unknown,
}

struct Search<'a, F> {
    x: &'a FacePoset,
    accept: F,
    budget: u64,
    nodes: u64,
    truncated: bool,
    failed: BTreeSet<Vec<u64>>,
}

fn pack(alive: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; alive.len().div_ceil(64)];
    for (i, &a) in alive.iter().enumerate() {
        if a {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

impl<F: FnMut(&FacePoset) -> bool> Search<'_, F> {
    fn dfs(
        &mut self,
        alive: &mut [bool],
        steps: &mut Vec<CollapseStep>,
    ) -> Option<CollapseSequence> {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return None;
        }
        let x = self.x;
        // collapses of free vertices commute with everything else
        let mark = steps.len();
        loop {
            let leaf = x
                .cells_of_dim(0)
                .into_iter()
                .find_map(|v| free_partner(x, alive, v).map(|e| (v, e)));
            match leaf {
                Some((v, e)) => {
                    alive[v] = false;
                    alive[e] = false;
                    steps.push(CollapseStep {
                        free_cell: v,
                        coface: e,
                    });
                }
                None => break,
            }
        }
        let key = pack(alive);
        let mut found = None;
        if !self.failed.contains(&key) {
            let moves: Vec<(usize, usize)> = (0..x.len())
                .filter(|&f| x.dim(f) >= 1)
                .filter_map(|f| free_partner(x, alive, f).map(|c| (f, c)))
                .collect();
            if moves.is_empty() {
                let seq = finish(x, steps.clone(), alive);
                if (self.accept)(&seq.remainder) {
                    found = Some(seq);
                }
            } else {
                for (f, c) in moves {
                    let mut child = alive.to_vec();
                    child[f] = false;
                    child[c] = false;
                    steps.push(CollapseStep {
                        free_cell: f,
                        coface: c,
                    });
                    found = self.dfs(&mut child, steps);
                    steps.pop();
                    if found.is_some() || self.truncated {
                        break;
                    }
                }
            }
            if found.is_none() && !self.truncated {
                self.failed.insert(key);
            }
        }
        for s in steps.drain(mark..).rev() {
            alive[s.free_cell] = true;
            alive[s.coface] = true;
        }
        found
    }
}

/// Depth-first search over maximal collapse sequences for one whose
/// remainder satisfies `accept`. Dead states are memoized by their set of
/// surviving cells.
pub fn search_maximal<F>(x: &FacePoset, budget: u64, accept: F) -> SearchOutcome
where
    F: FnMut(&FacePoset) -> bool,
{
    let mut s = Search {
        x,
        accept,
        budget,
        nodes: 0,
        truncated: false,
        failed: BTreeSet::new(),
    };
    let mut alive = vec![true; x.len()];
    match s.dfs(&mut alive, &mut Vec::new()) {
        Some(seq) => SearchOutcome::Found(seq),
        None if s.truncated => SearchOutcome::Unknown,
        None => SearchOutcome::Exhausted,
    }
}

/// Searches for a collapse of `x` onto a single vertex.
pub fn search_collapsible(x: &FacePoset, budget: u64) -> SearchOutcome {
    search_maximal(x, budget, |r| r.len() == 1)
}

/// Shape of the remainder of a maximal collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemainderClass {
    Point,
    Circle,
    Torus,
    Quasi1Manifold,
    OtherGraph,
    Other2Dim,
}

impl RemainderClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RemainderClass::Point => "point",
            RemainderClass::Circle => "circle",
            RemainderClass::Torus => "torus",
            RemainderClass::Quasi1Manifold => "quasi_1_manifold",
            RemainderClass::OtherGraph => "other_graph",
            RemainderClass::Other2Dim => "other_2dim",
        }
    }
}

pub fn classify_remainder(r: &FacePoset) -> RemainderClass {
    match r.dimension() {
        None | Some(0) => RemainderClass::Point,
        Some(1) => {
            let p = r.one_skeleton().profile();
            if p.is_circle {
                RemainderClass::Circle
            } else if p.components == 1 && p.endpoint_vertices.is_empty() {
                RemainderClass::Quasi1Manifold
            } else {
                RemainderClass::OtherGraph
            }
        }
        Some(2) => match surface_summary(r) {
            Ok(s) if s.orientable && s.chi == 0 => RemainderClass::Torus,
            _ => RemainderClass::Other2Dim,
        },
        Some(_) => RemainderClass::Other2Dim,
    }
}

/// Remainder classes that an embeddable complex with this `b_1` may reach;
/// `None` when `b_1 ≥ 3` and nothing is claimed.
fn allowed(b1: usize) -> Option<&'static [RemainderClass]> {
    match b1 {
        0 => Some(&[RemainderClass::Point]),
        1 => Some(&[RemainderClass::Circle]),
        2 => Some(&[RemainderClass::Torus, RemainderClass::Quasi1Manifold]),
        _ => None,
    }
}

fn rule(b1: usize) -> &'static str {
    match b1 {
        0 => "2E.1(i)",
        1 => "2E.1(ii)",
        _ => "2E.1(iii)",
    }
}

/// Evidence that a 2-polyhedron admits no embedding in a product of two
/// curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rule: String,
    pub b1: usize,
    /// Cell counts of the remainder, by dimension.
    pub remainder_counts: Vec<usize>,
    pub steps: Vec<CollapseStep>,
    /// Further statements that apply, e.g. `"1.7"` for acyclic complexes
    /// without free edges.
    pub corollaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddabilityVerdict {
    pub b1: usize,
    pub remainder_class: RemainderClass,
    pub certificate: Option<Certificate>,
    /// Outcome of asking whether *some* maximal sequence reaches an allowed
    /// class, when the greedy sequence did not: `Some(true)` if the two
    /// readings of the collapse classification agree on this input.
    pub readings_agree: Option<bool>,
    pub sequence: CollapseSequence,
}

/// Runs a maximal collapse and compares its remainder with the classes
/// permitted for complexes embeddable in a product of two curves.
pub fn certify_nonembeddable(x: &FacePoset) -> Result<EmbeddabilityVerdict> {
    certify_with_budget(x, DEFAULT_BUDGET)
}

pub fn certify_with_budget(x: &FacePoset, budget: u64) -> Result<EmbeddabilityVerdict> {
    match x.dimension() {
        Some(2) => {}
        d => return Err(Error::Not2Dimensional(d.unwrap_or(0))),
    }
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let h = homology_summary(x);
    let b1 = h.b(1);
    let sequence = maximal_collapse(x, Strategy::LowestId);
    let class = classify_remainder(&sequence.remainder);
    let mut certificate = None;
    let mut readings_agree = Some(true);
    if let Some(ok) = allowed(b1) {
        if !ok.contains(&class) {
            let mut corollaries = Vec::new();
            let acyclic = h.betti.iter().skip(1).all(|&b| b == 0) && !h.has_torsion();
            let free_edges = x.cells_of_dim(1).iter().any(|&e| x.cofaces(e).len() == 1);
            if acyclic && !free_edges {
                corollaries.push(String::from("1.7"));
            }
            certificate = Some(Certificate {
                rule: String::from(rule(b1)),
                b1,
                remainder_counts: sequence.remainder.counts(),
                steps: sequence.steps.clone(),
                corollaries,
            });
            readings_agree =
                match search_maximal(x, budget, |r| ok.contains(&classify_remainder(r))) {
                    SearchOutcome::Found(_) => Some(false),
                    SearchOutcome::Exhausted => Some(true),
                    SearchOutcome::Unknown => None,
                };
        }
    }
    Ok(EmbeddabilityVerdict {
        b1,
        remainder_class: class,
        certificate,
        readings_agree,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shapes;
    use crate::poset::PosetBuilder;
    use crate::product::ProductSubcomplex;

    fn triangle() -> FacePoset {
        let mut b = PosetBuilder::new();
        let v: Vec<usize> = ["a", "b", "c"].iter().map(|l| b.vertex(l)).collect();
        b.polygon("t", &v);
        b.build().unwrap()
    }

    fn annulus() -> FacePoset {
        // two triangles per square of a 3-square ring
        let mut b = PosetBuilder::new();
        let inner: Vec<usize> = (0..3).map(|i| b.vertex(&alloc::format!("i{i}"))).collect();
        let outer: Vec<usize> = (0..3).map(|i| b.vertex(&alloc::format!("o{i}"))).collect();
        for i in 0..3 {
            let j = (i + 1) % 3;
            b.polygon(&alloc::format!("p{i}"), &[inner[i], outer[i], outer[j]]);
            b.polygon(&alloc::format!("q{i}"), &[inner[i], outer[j], inner[j]]);
        }
        b.build().unwrap()
    }

    #[test]
    fn triangle_collapses_to_point() {
        let t = triangle();
        for s in [Strategy::LowestId, Strategy::HighestId, Strategy::Seeded(3)] {
            let seq = maximal_collapse(&t, s);
            assert_eq!(seq.remainder.len(), 1);
            assert_eq!(replay(&t, &seq.steps).unwrap(), seq);
        }
        assert!(matches!(
            search_collapsible(&t, 100),
            SearchOutcome::Found(_)
        ));
    }

    #[test]
    fn annulus_collapses_to_circle() {
        let a = annulus();
        let seq = maximal_collapse(&a, Strategy::LowestId);
        assert_eq!(classify_remainder(&seq.remainder), RemainderClass::Circle);
        assert!(matches!(
            search_collapsible(&a, 10_000),
            SearchOutcome::Exhausted
        ));
        let v = certify_nonembeddable(&a).unwrap();
        assert_eq!((v.b1, v.remainder_class), (1, RemainderClass::Circle));
        assert!(v.certificate.is_none());
    }

    #[test]
    fn torus_has_no_free_faces() {
        let t = ProductSubcomplex::full(vec![shapes::circle("A", 2), shapes::circle("B", 2)]);
        let p = t.to_face_poset();
        let v = certify_nonembeddable(&p).unwrap();
        assert!(v.sequence.steps.is_empty());
        assert_eq!((v.b1, v.remainder_class), (2, RemainderClass::Torus));
        assert!(v.certificate.is_none());
    }

    #[test]
    fn bad_witness_is_rejected() {
        let t = triangle();
        let e = t.cells_of_dim(1)[0];
        let v = t.cells_of_dim(0)[0];
        let r = replay(
            &t,
            &[CollapseStep {
                free_cell: v,
                coface: e,
            }],
        );
        assert!(matches!(r, Err(Error::BadWitness(_))));
    }

    #[test]
    fn inputs_must_be_connected_2_complexes() {
        let c = shapes::circle("C", 3).to_face_poset();
        assert!(matches!(
            certify_nonembeddable(&c),
            Err(Error::Not2Dimensional(1))
        ));
    }
}
