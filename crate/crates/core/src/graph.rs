//! Graphs as regular 1-dimensional CW complexes.
//!
//! Parallel edges are allowed, loops are not: every edge is an arc with two
//! distinct endpoints.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{FacePoset, PosetBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite regular 1-dimensional CW complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: BTreeMap<String, Ident>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ident {
    Vertex(usize),
    Edge(usize),
}

/// Degree and cycle data of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProfile {
    pub components: usize,
    pub endpoint_vertices: Vec<String>,
    pub is_circle: bool,
    pub is_tree: bool,
    pub b1: usize,
}

impl Graph {
    pub fn empty(name: &str) -> Self {
        Graph {
            name: name.to_string(),
            vertices: Vec::new(),
            edges: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Validates raw vertex and edge lists. Edges are `(id, tail, head)`.
    pub fn build<V, E>(name: &str, vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut g = Graph::empty(name);
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (id, tail, head) in edges {
            let t = g
                .vertex_index(&tail)
                .ok_or_else(|| Error::DanglingEndpoint {
                    edge: id.clone(),
                    vertex: tail.clone(),
                })?;
            let h = g
                .vertex_index(&head)
                .ok_or_else(|| Error::DanglingEndpoint {
                    edge: id.clone(),
                    vertex: head.clone(),
                })?;
            g.add_edge(&id, t, h)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(id.to_string());
        self.index.insert(id.to_string(), Ident::Vertex(i));
        Ok(i)
    }

    pub fn add_edge(&mut self, id: &str, tail: usize, head: usize) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        if tail == head {
            return Err(Error::LoopEdge(id.to_string()));
        }
        for v in [tail, head] {
            if v >= self.vertices.len() {
                return Err(Error::DanglingEndpoint {
                    edge: id.to_string(),
                    vertex: alloc::format!("#{v}"),
                });
            }
        }
        let i = self.edges.len();
        self.edges.push(Edge {
            id: id.to_string(),
            tail,
            head,
        });
        self.index.insert(id.to_string(), Ident::Edge(i));
        Ok(i)
    }

    /// Attaches a new vertex to `at` by a new edge and returns `(vertex, edge)`.
    pub fn add_pendant(
        &mut self,
        at: usize,
        vertex_id: &str,
        edge_id: &str,
    ) -> Result<(usize, usize)> {
        let v = self.add_vertex(vertex_id)?;
        let e = self.add_edge(edge_id, at, v)?;
        Ok((v, e))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        match self.index.get(id) {
            Some(Ident::Vertex(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        match self.index.get(id) {
            Some(Ident::Edge(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Fresh identifier with the given prefix that is not used in this graph.
    pub fn fresh_id(&self, prefix: &str) -> String {
        let mut k = self.vertices.len() + self.edges.len();
        loop {
            let id = alloc::format!("{prefix}{k}");
            if !self.index.contains_key(&id) {
                return id;
            }
            k += 1;
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.tail] += 1;
            deg[e.head] += 1;
        }
        deg
    }

    /// Incident edges per vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = alloc::vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.tail].push(i);
            inc[e.head].push(i);
        }
        inc
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let edge = &self.edges[e];
        if edge.tail == v {
            edge.head
        } else {
            edge.tail
        }
    }

    /// Component label per vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        uf.labels()
    }

    /// The subgraph spanned by the given vertex and edge sets, keeping ids.
    pub fn subgraph(&self, vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>) -> Graph {
        let mut g = Graph::empty(&self.name);
        let mut map = BTreeMap::new();
        for &v in vertices {
            map.insert(v, g.add_vertex(&self.vertices[v]).expect("ids unique"));
        }
        for &e in edges {
            let edge = &self.edges[e];
            g.add_edge(&edge.id, map[&edge.tail], map[&edge.head])
                .expect("subgraph edge endpoints present");
        }
        g
    }

    pub fn profile(&self) -> GraphProfile {
        let deg = self.degrees();
        let (_, components) = self.component_labels();
        let b1 = self.edges.len() + components - self.vertices.len();
        let connected = components == 1;
        GraphProfile {
            components,
            endpoint_vertices: deg
                .iter()
                .enumerate()
                .filter(|(_, d)| **d == 1)
                .map(|(v, _)| self.vertices[v].clone())
                .collect(),
            is_circle: connected && !self.edges.is_empty() && deg.iter().all(|d| *d == 2),
            is_tree: connected && b1 == 0,
            b1,
        }
    }

    /// True when no two edges share both endpoints.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| seen.insert((e.tail.min(e.head), e.tail.max(e.head))))
    }

    /// Lowers the graph to a face poset with `∂e = head − tail`.
    pub fn to_face_poset(&self) -> FacePoset {
        let mut b = PosetBuilder::new();
        for v in &self.vertices {
            b.vertex(v);
        }
        for e in &self.edges {
            b.edge(&e.id, e.tail, e.head);
        }
        b.build().expect("graphs lower to valid face posets")
    }
}

/// Free function form of [`Graph::profile`].
pub fn graph_profile(g: &Graph) -> GraphProfile {
    g.profile()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense component labels in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut dense = BTreeMap::new();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let r = self.find(i);
            let next = dense.len();
            out.push(*dense.entry(r).or_insert(next));
        }
        (out, dense.len())
    }
}

/// Convenience constructors used by the gallery and tests.
pub mod shapes {
    use super::*;

    /// Circle with `k ≥ 2` edges `e0..` on vertices `v0..`.
    pub fn circle(name: &str, k: usize) -> Graph {
        assert!(k >= 2, "a regular circle needs at least two edges");
        let mut g = Graph::empty(name);
        for i in 0..k {
            g.add_vertex(&alloc::format!("v{i}")).unwrap();
        }
        for i in 0..k {
            g.add_edge(&alloc::format!("e{i}"), i, (i + 1) % k).unwrap();
        }
        g
    }

    /// Path with `k` edges.
    pub fn path(name: &str, k: usize) -> Graph {
        let mut g = Graph::empty(name);
        for i in 0..=k {
            g.add_vertex(&alloc::format!("v{i}")).unwrap();
        }
        for i in 0..k {
            g.add_edge(&alloc::format!("e{i}"), i, i + 1).unwrap();
        }
        g
    }

    /// The θ-curve: three arcs joining `a0` and `a1`.
    pub fn theta(name: &str) -> Graph {
        let mut g = Graph::empty(name);
        g.add_vertex("a0").unwrap();
        g.add_vertex("a1").unwrap();
        for i in 0..3 {
            g.add_edge(&alloc::format!("s{i}"), 0, 1).unwrap();
        }
        g
    }

    /// Star with a center `c` and `m` leaves `l0..`.
    pub fn star(name: &str, m: usize) -> Graph {
        let mut g = Graph::empty(name);
        g.add_vertex("c").unwrap();
        for i in 0..m {
            g.add_pendant(0, &alloc::format!("l{i}"), &alloc::format!("r{i}"))
                .unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(id: &str, t: &str, h: &str) -> (String, String, String) {
        (id.to_string(), t.to_string(), h.to_string())
    }

    #[test]
    fn minimal_circle_is_valid() {
        let g = Graph::build("C", ["a", "b"], vec![e("x", "a", "b"), e("y", "a", "b")]).unwrap();
        let p = g.profile();
        assert!(p.is_circle);
        assert_eq!(p.b1, 1);
        assert!(!g.is_simple());
    }

    #[test]
    fn loops_and_duplicates_are_rejected() {
        assert_eq!(
            Graph::build("L", ["a"], vec![e("x", "a", "a")]),
            Err(Error::LoopEdge("x".into()))
        );
        assert_eq!(
            Graph::build("D", ["a", "a"], Vec::new()),
            Err(Error::DuplicateId("a".into()))
        );
        assert_eq!(
            Graph::build("D", ["a", "b"], vec![e("a", "a", "b")]),
            Err(Error::DuplicateId("a".into()))
        );
        assert!(matches!(
            Graph::build("M", ["a"], vec![e("x", "a", "z")]),
            Err(Error::DanglingEndpoint { .. })
        ));
    }

    #[test]
    fn profiles() {
        let c5 = shapes::circle("C", 5).profile();
        assert!(c5.is_circle && c5.endpoint_vertices.is_empty() && c5.b1 == 1);

        let th = shapes::theta("P").profile();
        assert!(!th.is_circle && th.endpoint_vertices.is_empty());
        assert_eq!(th.b1, 2);

        let seg = shapes::path("I", 1).profile();
        assert_eq!(
            seg.endpoint_vertices,
            vec!["v0".to_string(), "v1".to_string()]
        );
        assert!(seg.is_tree && !seg.is_circle && seg.b1 == 0);

        let two = Graph::build("two", ["a", "b"], Vec::new())
            .unwrap()
            .profile();
        assert_eq!(two.components, 2);
        assert!(!two.is_tree);
    }

    #[test]
    fn star_degrees() {
        let s = shapes::star("S", 4);
        let mut d = s.degrees();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 1, 4]);
        assert!(s.profile().is_tree);
    }
}
