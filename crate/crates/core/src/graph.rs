//! Simple undirected architecture graphs, cuts and bipartite matchings.
//!
//! Vertices are dense integers `0..n`. Edges are stored canonically as
//! `(min, max)` pairs sorted lexicographically so that serialization and
//! iteration order are reproducible.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// How `Graph::with_policy` treats a repeated edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// Silently keep one copy.
    #[default]
    Merge,
    /// Fail with [`GraphError::DuplicateEdge`].
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Vertex>>,
}

#[inline]
pub fn canonical_edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, merging duplicate edges.
    pub fn new(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        Self::with_policy(n, edges, DuplicatePolicy::Merge)
    }

    pub fn with_policy(
        n: usize,
        edges: &[Edge],
        duplicates: DuplicatePolicy,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert(canonical_edge(u, v)) && duplicates == DuplicatePolicy::Reject {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    /// Graph on `n ≤ 64` vertices from an upper-triangle edge bitmask, as
    /// produced by the enumeration helpers in [`crate::catalog`].
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::new(n, &edges).expect("mask edges are simple and in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `source`; unreachable vertices are `None`.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `root`; the root maps to itself.
    pub fn bfs_tree(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::new();
        parent[root] = Some(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if parent[w].is_none() {
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Exact diameter by BFS from every vertex.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        DegreeStats::of(self)
    }

    /// Builds the cut structure for a vertex subset `x`.
    pub fn cut(&self, x: &[Vertex]) -> Result<Cut, GraphError> {
        Cut::new(self, x)
    }

    /// Edges with exactly one endpoint in `set`.
    pub fn edge_boundary(&self, in_set: &[bool]) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| in_set[u] != in_set[v])
            .collect()
    }

    /// Vertices outside `set` with a neighbor inside it.
    pub fn vertex_boundary(&self, in_set: &[bool]) -> Vec<Vertex> {
        (0..self.n)
            .filter(|&v| !in_set[v] && self.adjacency[v].iter().any(|&u| in_set[u]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    /// `max / min` as an exact fraction `[num, den]` in lowest terms.
    pub ratio: (usize, usize),
}

impl DegreeStats {
    fn of(g: &Graph) -> Self {
        let (min, max) = (g.min_degree(), g.max_degree());
        let ratio = if min == 0 {
            (max, 0)
        } else {
            let d = gcd(max, min);
            (max / d, min / d)
        };
        DegreeStats { min, max, ratio }
    }

    /// The degree ratio `d_*`; infinite when a vertex is isolated.
    pub fn ratio_f64(&self) -> f64 {
        if self.ratio.1 == 0 {
            f64::INFINITY
        } else {
            self.ratio.0 as f64 / self.ratio.1 as f64
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut flags = vec![false; n];
    for &v in set {
        flags[v] = true;
    }
    flags
}

/// A vertex bipartition `X | X̄` with its boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub x: Vec<Vertex>,
    pub xbar: Vec<Vertex>,
    /// `δX`: vertices of `X̄` adjacent to `X`.
    pub delta_x: Vec<Vertex>,
    /// `δX̄`: vertices of `X` adjacent to `X̄`.
    pub delta_xbar: Vec<Vertex>,
    /// `∂X = ∂X̄`.
    pub boundary_edges: Vec<Edge>,
    /// `∂(δX)`, the edge boundary of `δX` taken as its own subset.
    pub boundary_of_delta_x: Vec<Edge>,
    pub boundary_of_delta_xbar: Vec<Edge>,
}

impl Cut {
    pub fn new(g: &Graph, x: &[Vertex]) -> Result<Self, GraphError> {
        let n = g.n();
        if let Some(&v) = x.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        let in_x = membership(n, x);
        let x: Vec<Vertex> = (0..n).filter(|&v| in_x[v]).collect();
        if x.is_empty() || x.len() == n {
            return Err(GraphError::EmptySide);
        }
        let xbar: Vec<Vertex> = (0..n).filter(|&v| !in_x[v]).collect();
        let in_xbar: Vec<bool> = in_x.iter().map(|b| !b).collect();
        let delta_x = g.vertex_boundary(&in_x);
        let delta_xbar = g.vertex_boundary(&in_xbar);
        let boundary_edges = g.edge_boundary(&in_x);
        let boundary_of_delta_x = g.edge_boundary(&membership(n, &delta_x));
        let boundary_of_delta_xbar = g.edge_boundary(&membership(n, &delta_xbar));
        Ok(Cut {
            x,
            xbar,
            delta_x,
            delta_xbar,
            boundary_edges,
            boundary_of_delta_x,
            boundary_of_delta_xbar,
        })
    }

    /// `M(∂X)`, a maximum matching across the cut.
    pub fn boundary_matching(&self) -> Matching {
        max_matching(&self.boundary_edges, &self.x, &self.xbar)
            .expect("boundary edges cross the cut")
    }

    /// `M(∂(δX))`.
    pub fn delta_x_matching(&self, n: usize) -> Matching {
        let complement: Vec<Vertex> = complement(n, &self.delta_x);
        max_matching(&self.boundary_of_delta_x, &self.delta_x, &complement)
            .expect("boundary edges cross the cut")
    }

    /// `M(∂(δX̄))`.
    pub fn delta_xbar_matching(&self, n: usize) -> Matching {
        let complement: Vec<Vertex> = complement(n, &self.delta_xbar);
        max_matching(&self.boundary_of_delta_xbar, &self.delta_xbar, &complement)
            .expect("boundary edges cross the cut")
    }
}

fn complement(n: usize, set: &[Vertex]) -> Vec<Vertex> {
    let flags = membership(n, set);
    (0..n).filter(|&v| !flags[v]).collect()
}

/// A set of vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_matching(edges: &[Edge]) -> bool {
        let mut seen = BTreeSet::new();
        edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert(u) && seen.insert(v))
    }
}

/// Maximum-cardinality matching of `edge_set`, every edge of which must
/// join `left` to `right`.
///
/// Augmenting paths (Kuhn); every matching needed here lives in an edge
/// boundary, which is bipartite.
pub fn max_matching(
    edge_set: &[Edge],
    left: &[Vertex],
    right: &[Vertex],
) -> Result<Matching, GraphError> {
    let size = left
        .iter()
        .chain(right)
        .chain(edge_set.iter().flat_map(|(u, v)| [u, v]))
        .max()
        .map_or(0, |m| m + 1);
    let in_left = membership(size, left);
    let in_right = membership(size, right);
    if let Some(v) = (0..size).find(|&v| in_left[v] && in_right[v]) {
        return Err(GraphError::NotBipartiteAcrossHint(v, v));
    }

    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); size];
    for &(u, v) in edge_set {
        let (l, r) = if in_left[u] && in_right[v] {
            (u, v)
        } else if in_left[v] && in_right[u] {
            (v, u)
        } else {
            return Err(GraphError::NotBipartiteAcrossHint(u, v));
        };
        adj[l].push(r);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut match_of_right: Vec<Option<Vertex>> = vec![None; size];
    for &l in left {
        let mut visited = vec![false; size];
        augment(l, &adj, &mut visited, &mut match_of_right);
    }
    let mut edges: Vec<Edge> = match_of_right
        .iter()
        .enumerate()
        .filter_map(|(r, l)| l.map(|l| canonical_edge(l, r)))
        .collect();
    edges.sort_unstable();
    Ok(Matching { edges })
}

fn augment(
    l: Vertex,
    adj: &[Vec<Vertex>],
    visited: &mut [bool],
    match_of_right: &mut [Option<Vertex>],
) -> bool {
    for &r in &adj[l] {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match match_of_right[r] {
            None => true,
            Some(other) => augment(other, adj, visited, match_of_right),
        };
        if free {
            match_of_right[r] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn builds_path_with_degrees() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            Graph::with_policy(2, &[(0, 1), (1, 0)], DuplicatePolicy::Reject),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn star_center_degree() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.degree(0), 4);
        let stats = g.degree_stats();
        assert_eq!((stats.min, stats.max, stats.ratio), (1, 4, (4, 1)));
    }

    #[test]
    fn connectivity_and_diameter() {
        assert!(path(4).is_connected());
        assert!(!Graph::new(2, &[]).unwrap().is_connected());
        assert_eq!(path(6).diameter(), Ok(5));
        assert_eq!(
            Graph::new(2, &[]).unwrap().diameter(),
            Err(GraphError::Disconnected)
        );
        assert_eq!(path(1).diameter(), Ok(0));
    }

    #[test]
    fn path_cut() {
        let g = path(4);
        let cut = g.cut(&[0, 1]).unwrap();
        assert_eq!(cut.boundary_edges, vec![(1, 2)]);
        assert_eq!(cut.delta_x, vec![2]);
        assert_eq!(cut.delta_xbar, vec![1]);
        assert_eq!(cut.boundary_of_delta_x, vec![(1, 2), (2, 3)]);
        assert!(matches!(g.cut(&[]), Err(GraphError::EmptySide)));
        assert!(matches!(g.cut(&[0, 1, 2, 3]), Err(GraphError::EmptySide)));
    }

    #[test]
    fn star_cut_two_leaves() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let cut = g.cut(&[1, 2]).unwrap();
        assert_eq!(cut.delta_x, vec![0]);
        assert_eq!(cut.boundary_edges.len(), 2);
        assert_eq!(cut.boundary_matching().size(), 1);
    }

    #[test]
    fn matching_basics() {
        let m = max_matching(&[(0, 1)], &[0], &[1]).unwrap();
        assert_eq!(m.size(), 1);
        assert!(matches!(
            max_matching(&[(0, 1)], &[0, 1], &[]),
            Err(GraphError::NotBipartiteAcrossHint(..))
        ));
        assert!(matches!(
            max_matching(&[(0, 2)], &[0], &[1]),
            Err(GraphError::NotBipartiteAcrossHint(0, 2))
        ));
    }

    #[test]
    fn complete_graph_half_cut_matching() {
        let edges: Vec<Edge> = (0..4)
            .flat_map(|u| ((u + 1)..4).map(move |v| (u, v)))
            .collect();
        let g = Graph::new(4, &edges).unwrap();
        let cut = g.cut(&[0, 1]).unwrap();
        assert_eq!(cut.boundary_edges.len(), 4);
        assert_eq!(cut.boundary_matching().size(), 2);
    }
}
