//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the library's own linear algebra.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use prodcurves_core::graph::shapes;
use prodcurves_core::treeembed::EdgePath;
use prodcurves_core::{Coord, FacePoset, Graph, ProductCell, ProductSubcomplex};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rank by fraction-free Gaussian elimination over `BigInt`.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dense `∂_k` read straight off the face poset records.
pub fn boundary_rows(x: &FacePoset, k: usize) -> Vec<Vec<i64>> {
    let lower = x.cells_of_dim(k - 1);
    let upper = x.cells_of_dim(k);
    let pos = |c: usize| lower.iter().position(|&l| l == c).unwrap();
    let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, &u) in upper.iter().enumerate() {
        for &(f, s) in x.boundary(u) {
            rows[pos(f)][j] += s as i64;
        }
    }
    rows
}

const PRIME: u128 = (1 << 61) - 1;

/// Rank modulo the prime `2^61 − 1`. Equals the rational rank unless the
/// prime divides every maximal nonzero minor, which boundary matrices of
/// the sizes used here do not come close to.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<u128>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| (x as i128).rem_euclid(PRIME as i128) as u128)
                .collect()
        })
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let inv = |x: u128| {
        let (mut base, mut e, mut acc) = (x, PRIME - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_inv = inv(a[rank][col]);
        for r in rank + 1..m {
            if a[r][col] == 0 {
                continue;
            }
            let f = a[r][col] * pivot_inv % PRIME;
            let (top, bottom) = a.split_at_mut(r);
            for (x, &p) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x = (*x + PRIME - f * p % PRIME) % PRIME;
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Betti numbers from cell counts and oracle ranks.
pub fn betti_oracle(x: &FacePoset) -> Vec<usize> {
    let d = x.dimension().unwrap_or(0);
    let counts: Vec<usize> = (0..=d).map(|k| x.cells_of_dim(k).len()).collect();
    let ranks: Vec<usize> = (0..=d + 1)
        .map(|k| {
            if k == 0 || k > d {
                0
            } else {
                rank_mod_p(&boundary_rows(x, k))
            }
        })
        .collect();
    (0..=d)
        .map(|k| counts[k] - ranks[k] - ranks[k + 1])
        .collect()
}

/// `(b0, b1)` of a graph by union–find.
pub fn graph_betti(g: &Graph) -> (usize, usize) {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut b0 = g.vertex_count();
    for e in g.edges() {
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        if a != b {
            parent[a] = b;
            b0 -= 1;
        }
    }
    (b0, g.edge_count() + b0 - g.vertex_count())
}

/// Random graph without loops; parallel edges allowed.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    name: &str,
    max_v: usize,
    max_e: usize,
    connected: bool,
) -> Graph {
    let nv = rng.gen_range(2..=max_v);
    let mut g = Graph::empty(name);
    for i in 0..nv {
        g.add_vertex(&format!("{name}{i}")).unwrap();
    }
    let mut k = 0;
    if connected {
        for i in 1..nv {
            let j = rng.gen_range(0..i);
            g.add_edge(&format!("{name}e{k}"), j, i).unwrap();
            k += 1;
        }
    }
    let extra = rng.gen_range(0..=max_e.saturating_sub(k));
    for _ in 0..extra {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        if a != b {
            g.add_edge(&format!("{name}e{k}"), a, b).unwrap();
            k += 1;
        }
    }
    g
}

/// A `k`-edge circle with shuffled ids, insertion order and orientations.
pub fn scrambled_circle<R: Rng>(rng: &mut R, name: &str, k: usize) -> Graph {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut g = Graph::empty(name);
    let mut idx = vec![0; k];
    for (slot, &v) in order.iter().enumerate() {
        idx[v] = g
            .add_vertex(&format!("{name}_{}", (slot * 7 + 3) % 1000))
            .unwrap();
    }
    let mut edges: Vec<usize> = (0..k).collect();
    edges.shuffle(rng);
    for (slot, &i) in edges.iter().enumerate() {
        let (a, b) = (idx[i], idx[(i + 1) % k]);
        let (t, h) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        g.add_edge(&format!("{name}e{slot}"), t, h).unwrap();
    }
    g
}

/// θ-curve whose arcs carry `parts[i]` edges each.
pub fn subdivided_theta(name: &str, parts: [usize; 3]) -> Graph {
    let mut g = Graph::empty(name);
    let a0 = g.add_vertex("a0").unwrap();
    let a1 = g.add_vertex("a1").unwrap();
    for (i, &m) in parts.iter().enumerate() {
        let mut prev = a0;
        for s in 0..m {
            let next = if s + 1 == m {
                a1
            } else {
                g.add_vertex(&format!("s{i}_{s}")).unwrap()
            };
            g.add_edge(&format!("s{i}e{s}"), prev, next).unwrap();
            prev = next;
        }
    }
    g
}

/// All subcomplexes of `θ ⊠ θ` generated by nonempty sets of 2-cells, with
/// their generating mask.
pub fn theta_census() -> Vec<(u32, ProductSubcomplex)> {
    let factors = vec![shapes::theta("P"), shapes::theta("Q")];
    let squares: Vec<ProductCell> = (0..3)
        .flat_map(|a| (0..3).map(move |b| ProductCell::new(vec![Coord::E(a), Coord::E(b)])))
        .collect();
    (1u32..512)
        .map(|mask| {
            let tops = (0..9)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| squares[i].clone())
                .collect();
            (
                mask,
                ProductSubcomplex::build(factors.clone(), tops).unwrap(),
            )
        })
        .collect()
}

/// Masks of the nine products `{s_i, s_j} × {s_k, s_l}` of θ-circles.
pub fn circle_product_masks() -> BTreeSet<u32> {
    let circles = [[0, 1], [0, 2], [1, 2]];
    let mut out = BTreeSet::new();
    for a in circles {
        for b in circles {
            let mut m = 0;
            for x in a {
                for y in b {
                    m |= 1 << (3 * x + y);
                }
            }
            out.insert(m);
        }
    }
    out
}

/// χ and the boundary-circle test for a closed set of cells in a product of
/// two graphs, counted directly.
pub fn disc_shape(cells: &BTreeSet<ProductCell>, factors: &[Graph]) -> (i64, bool) {
    let chi = cells
        .iter()
        .map(|c| if c.dim() % 2 == 0 { 1i64 } else { -1 })
        .sum();
    let mut uses = std::collections::BTreeMap::new();
    for c in cells.iter().filter(|c| c.dim() == 2) {
        for (f, _) in c.signed_faces(factors) {
            *uses.entry(f).or_insert(0) += 1;
        }
    }
    if uses.values().any(|&u| u > 2) {
        return (chi, false);
    }
    let rim: Vec<&ProductCell> = uses
        .iter()
        .filter(|(_, &u)| u == 1)
        .map(|(e, _)| e)
        .collect();
    let mut deg = std::collections::BTreeMap::new();
    let mut adj: std::collections::BTreeMap<ProductCell, Vec<ProductCell>> = Default::default();
    for e in &rim {
        let ends: Vec<ProductCell> = e
            .signed_faces(factors)
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        for v in &ends {
            *deg.entry(v.clone()).or_insert(0) += 1;
        }
        adj.entry(ends[0].clone())
            .or_default()
            .push(ends[1].clone());
        adj.entry(ends[1].clone())
            .or_default()
            .push(ends[0].clone());
    }
    if rim.is_empty() || deg.values().any(|&d| d != 2) {
        return (chi, false);
    }
    let start = adj.keys().next().unwrap().clone();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in &adj[&v] {
            if seen.insert(w.clone()) {
                stack.push(w.clone());
            }
        }
    }
    (chi, seen.len() == deg.len())
}

/// Random self-avoiding edge path of at most `len` steps in `k1 ⊠ k2`.
pub fn random_walk<R: Rng>(rng: &mut R, k1: &Graph, k2: &Graph, len: usize) -> EdgePath {
    let mut cur = [
        rng.gen_range(0..k1.vertex_count()),
        rng.gen_range(0..k2.vertex_count()),
    ];
    let mut path = EdgePath::point(cur);
    for _ in 0..len {
        let mut moves = Vec::new();
        for (f, g) in [k1, k2].into_iter().enumerate() {
            for (e, edge) in g.edges().iter().enumerate() {
                let other = if edge.tail == cur[f] {
                    edge.head
                } else if edge.head == cur[f] {
                    edge.tail
                } else {
                    continue;
                };
                let mut next = cur;
                next[f] = other;
                if !path.vertices.contains(&next) {
                    moves.push((f, e, next));
                }
            }
        }
        let Some(&(f, e, next)) = moves.choose(rng) else {
            break;
        };
        let cell = if f == 0 {
            ProductCell::new(vec![Coord::E(e), Coord::V(cur[1])])
        } else {
            ProductCell::new(vec![Coord::V(cur[0]), Coord::E(e)])
        };
        path.edges.push(cell);
        path.vertices.push(next);
        cur = next;
    }
    path
}
