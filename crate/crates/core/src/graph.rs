//! Simple undirected graphs with stable vertex and edge identifiers.
//!
//! Vertices are dense `0..n`. Edge ids are assigned densely in first-seen
//! order when a graph is built; [`Graph::delete_edge`] leaves a hole so that
//! the ids of the remaining edges never move.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("no live edge with id {0}")]
    InvalidEdge(EdgeId),
    #[error("no vertex with id {0}")]
    InvalidVertex(VertexId),
}

/// A finite simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Edge slots; `None` marks a deleted edge.
    edges: Vec<Option<[usize; 2]>>,
    /// Per vertex, `(neighbor, edge)` sorted by neighbor.
    adj: Vec<Vec<(usize, EdgeId)>>,
    live: usize,
}

impl Graph {
    /// Builds a graph, rejecting duplicate pairs.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, pairs, true)
    }

    /// Builds a graph, silently dropping repeated pairs.
    pub fn new_dedup(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, pairs, false)
    }

    fn build(n: usize, pairs: &[(usize, usize)], strict: bool) -> Result<Self, GraphError> {
        let mut g = Graph {
            n,
            edges: Vec::with_capacity(pairs.len()),
            adj: vec![Vec::new(); n],
            live: 0,
        };
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.edge_between(VertexId(u), VertexId(v)).is_some() {
                if strict {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                continue;
            }
            let id = EdgeId(g.edges.len());
            g.edges.push(Some([u, v]));
            g.insert_adj(u, v, id);
            g.insert_adj(v, u, id);
            g.live += 1;
        }
        Ok(g)
    }

    fn insert_adj(&mut self, u: usize, v: usize, id: EdgeId) {
        let list = &mut self.adj[u];
        let pos = list.partition_point(|&(w, _)| w < v);
        list.insert(pos, (v, id));
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            live: 0,
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Self::new(n, &pairs).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..a {
            for v in 0..b {
                pairs.push((u, a + v));
            }
        }
        Self::new(a + b, &pairs).expect("complete bipartite graph is simple")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &pairs).expect("star is simple")
    }

    pub fn petersen() -> Self {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, &pairs).expect("Petersen graph is simple")
    }

    /// The `d`-dimensional hypercube.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let mut pairs = Vec::new();
        for u in 0..n {
            for b in 0..d {
                let v = u ^ (1 << b);
                if u < v {
                    pairs.push((u, v));
                }
            }
        }
        Self::new(n, &pairs).expect("hypercube is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of live edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.live
    }

    /// One past the largest edge id ever assigned; colorings are indexed by slot.
    #[inline]
    pub fn edge_slots(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }

    /// Live edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|[u, v]| (EdgeId(i), VertexId(u), VertexId(v))))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _, _)| e)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.0), Some(Some(_)))
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        match self.edges.get(e.0) {
            Some(Some([u, v])) => Ok((VertexId(*u), VertexId(*v))),
            _ => Err(GraphError::InvalidEdge(e)),
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// `(neighbor, edge)` pairs at `v`, sorted by neighbor.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[(usize, EdgeId)] {
        &self.adj[v.0]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.0].iter().map(|&(w, _)| VertexId(w))
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.adj.get(u.0)?;
        list.binary_search_by_key(&v.0, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    /// `d(v)` together with `n_k(v)` for every degree `k` present among the neighbors.
    pub fn degree_profile(&self, v: VertexId) -> Result<DegreeProfile, GraphError> {
        self.check_vertex(v)?;
        let mut by_degree = BTreeMap::new();
        for w in self.neighbors(v) {
            *by_degree.entry(self.degree(w)).or_insert(0) += 1;
        }
        Ok(DegreeProfile {
            degree: self.degree(v),
            by_degree,
        })
    }

    /// Number of neighbors of `v` with degree exactly `k`.
    pub fn neighbors_of_degree(&self, v: VertexId, k: usize) -> usize {
        self.neighbors(v).filter(|&w| self.degree(w) == k).count()
    }

    /// Number of neighbors of `v` with degree at least `k`.
    pub fn neighbors_of_degree_at_least(&self, v: VertexId, k: usize) -> usize {
        self.neighbors(v).filter(|&w| self.degree(w) >= k).count()
    }

    /// Removes one edge. The receiver is untouched and the ids of all other
    /// edges are preserved in the result.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Graph, GraphError> {
        let (u, v) = self.endpoints(e)?;
        let mut g = self.clone();
        g.edges[e.0] = None;
        g.adj[u.0].retain(|&(_, id)| id != e);
        g.adj[v.0].retain(|&(_, id)| id != e);
        g.live -= 1;
        Ok(g)
    }

    /// Renumbers live edges densely, returning the new graph and the old id of
    /// each new edge.
    pub fn compact(&self) -> (Graph, Vec<EdgeId>) {
        let mut pairs = Vec::with_capacity(self.live);
        let mut old = Vec::with_capacity(self.live);
        for (e, u, v) in self.edges() {
            pairs.push((u.0, v.0));
            old.push(e);
        }
        (Graph::new(self.n, &pairs).expect("live edges are simple"), old)
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                // Nothing found deeper can beat the current best.
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                for &(y, _) in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_count_without(None) == 1
    }

    /// Connected, at least three vertices and no cut vertex.
    pub fn is_2_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// Cut vertices, found with the low-link DFS.
    pub fn articulation_points(&self) -> Vec<VertexId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (x, p, ref mut i)) = stack.last_mut() {
                if let Some(&(y, _)) = self.adj[x].get(*i) {
                    *i += 1;
                    if disc[y] == usize::MAX {
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, 0));
                    } else if y != p {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if p != usize::MAX {
                        low[p] = low[p].min(low[x]);
                        if p != root && low[x] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).map(VertexId).collect()
    }

    /// Components of the graph with `removed` deleted.
    pub(crate) fn component_count_without(&self, removed: Option<usize>) -> usize {
        let mut seen = vec![false; self.n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Vertex ordering from repeatedly removing a minimum-degree vertex
    /// (ties to the lowest id). Returns the removal order.
    pub fn smallest_last_order(&self) -> Vec<VertexId> {
        let mut deg = self.degrees();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("vertices remain");
            removed[v] = true;
            for &(w, _) in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
            order.push(VertexId(v));
        }
        order
    }

    /// The graph6 encoding; used as a compact, stable graph identifier.
    pub fn graph6(&self) -> String {
        let n = self.n;
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            out.push(126);
            out.push(126);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for v in 1..n {
            for u in 0..v {
                bits.push(self.edge_between(VertexId(u), VertexId(v)).is_some());
            }
        }
        for chunk in bits.chunks(6) {
            let mut byte = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    byte |= 1 << (5 - i);
                }
            }
            out.push(byte + 63);
        }
        String::from_utf8(out).expect("graph6 is printable ASCII")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degree: usize,
    /// `k -> n_k(v)`; degrees with no neighbors are omitted.
    pub by_degree: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    pub fn count(&self, k: usize) -> usize {
        self.by_degree.get(&k).copied().unwrap_or(0)
    }
}

/// Shortest cycle length; forests have no cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_sharing_vertex() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    /// Independent of the low-link DFS: remove each vertex and recount components.
    fn has_cut_vertex_by_removal(g: &Graph) -> bool {
        let base = g.component_count_without(None);
        (0..g.vertex_count()).any(|v| {
            let isolated = g.degree(VertexId(v)) == 0;
            let after = g.component_count_without(Some(v));
            after > base - usize::from(isolated)
        })
    }

    #[test]
    fn build_triangle_and_k4() {
        let t = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(t.edge_count(), 3);
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.max_degree(), 3);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        let g = Graph::new_dedup(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.endpoints(EdgeId(1)).unwrap(), (VertexId(1), VertexId(2)));
    }

    #[test]
    fn degree_profiles() {
        let k4 = Graph::complete(4);
        let p = k4.degree_profile(VertexId(2)).unwrap();
        assert_eq!((p.degree, p.count(3)), (3, 3));
        let star = Graph::star(4);
        let p = star.degree_profile(VertexId(0)).unwrap();
        assert_eq!((p.degree, p.count(1)), (4, 4));
        let p3 = Graph::path(3);
        let p = p3.degree_profile(VertexId(1)).unwrap();
        assert_eq!((p.degree, p.count(1)), (2, 2));
        assert!(p3.degree_profile(VertexId(3)).is_err());
    }

    #[test]
    fn girth_values() {
        assert_eq!(Graph::complete(4).girth(), Girth::Finite(3));
        assert_eq!(Graph::hypercube(3).girth(), Girth::Finite(4));
        assert_eq!(Graph::petersen().girth(), Girth::Finite(5));
        assert_eq!(Graph::star(5).girth(), Girth::Infinite);
        assert_eq!(Graph::path(6).girth(), Girth::Infinite);
        assert_eq!(Graph::cycle(7).girth(), Girth::Finite(7));
        assert_eq!(Girth::Infinite.to_string(), "inf");
    }

    #[test]
    fn two_connectivity() {
        assert!(Graph::complete(4).is_2_connected());
        assert!(!Graph::path(3).is_2_connected());
        let bowtie = two_triangles_sharing_vertex();
        assert!(has_cut_vertex_by_removal(&bowtie));
        assert!(!bowtie.is_2_connected());
        assert_eq!(bowtie.articulation_points(), vec![VertexId(2)]);
        assert!(Graph::cycle(5).is_2_connected());
        assert!(!Graph::empty(3).is_2_connected());
    }

    #[test]
    fn delete_edges() {
        let k4 = Graph::complete(4);
        let g = k4.delete_edge(EdgeId(0)).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(k4.edge_count(), 6);
        assert!(g.contains_edge(EdgeId(5)));
        assert_eq!(g.endpoints(EdgeId(5)).unwrap(), k4.endpoints(EdgeId(5)).unwrap());
        assert_eq!(
            g.delete_edge(EdgeId(0)),
            Err(GraphError::InvalidEdge(EdgeId(0)))
        );

        let c3 = Graph::cycle(3);
        let p = c3.delete_edge(EdgeId(2)).unwrap();
        assert_eq!(p.girth(), Girth::Infinite);
        assert_eq!(p.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn graph6_matches_known_encodings() {
        assert_eq!(Graph::complete(4).graph6(), "C~");
        assert_eq!(Graph::empty(0).graph6(), "?");
        assert_eq!(Graph::path(3).graph6(), "Bg");
    }

    #[test]
    fn smallest_last_order_removes_leaves_first() {
        let star = Graph::star(3);
        let order = star.smallest_last_order();
        assert_eq!(order, vec![VertexId(1), VertexId(2), VertexId(0), VertexId(3)]);
    }
}
