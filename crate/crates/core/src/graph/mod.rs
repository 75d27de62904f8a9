//! Immutable simple-graph representation and the neighborhood, component,
//! and induced-path primitives the rest of the crate is built on.
//!
//! Vertices are dense indices in `[0, n)`. Induced subgraphs are never
//! materialized: operations take a [`VertexSet`] mask over the host graph.

mod vertex_set;
mod weights;

pub use vertex_set::VertexSet;
pub use weights::{
    format_rational, parse_rational, rat, serde_rational, Rational, WeightAssignment, WeightError,
};

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("sets must be disjoint but share vertex {0}")]
    NotDisjoint(usize),
}

/// Simple undirected graph with per-vertex sorted neighbor lists and bitset
/// adjacency rows. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let neighbors = adj.iter().map(|s| s.to_vec()).collect();
        Ok(Graph {
            n,
            adj,
            neighbors,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adjacency(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_degree_within(&self, mask: &VertexSet) -> usize {
        mask.iter()
            .map(|v| self.adj[v].intersection(mask).len())
            .max()
            .unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    /// Open neighborhood of `set` restricted to `mask`: vertices of
    /// `mask \ set` with a neighbor in `set`.
    pub fn open_neighborhood(&self, mask: &VertexSet, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in set.iter() {
            out.union_with(&self.adj[v]);
        }
        out.intersect_with(mask);
        out.remove_all(set);
        out
    }

    /// Closed neighborhood of `set` restricted to `mask`.
    pub fn closed_neighborhood(&self, mask: &VertexSet, set: &VertexSet) -> VertexSet {
        let mut out = self.open_neighborhood(mask, set);
        out.union_with(&set.intersection(mask));
        out
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let vs = set.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal connected subsets of `within`, ordered by smallest member.
    pub fn components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut queue = VecDeque::new();
            queue.push_back(start);
            comp.insert(start);
            seen.insert(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if within.contains(v) && !comp.contains(v) {
                        comp.insert(v);
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected_within(&self, mask: &VertexSet) -> bool {
        self.components(mask).len() <= 1
    }

    /// Closed ball `N^radius[seeds]` by breadth-first layering, restricted to
    /// `within` (seeds outside `within` are ignored).
    pub fn ball(&self, within: &VertexSet, seeds: &VertexSet, radius: usize) -> VertexSet {
        let mut reached = seeds.intersection(within);
        let mut frontier: Vec<usize> = reached.to_vec();
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &self.neighbors[u] {
                    if within.contains(v) && !reached.contains(v) {
                        reached.insert(v);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        reached
    }

    /// True iff no edge joins `x` to `y`. Rejects non-disjoint inputs.
    pub fn is_anticomplete(&self, x: &VertexSet, y: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = x.intersection(y).min() {
            return Err(GraphError::NotDisjoint(v));
        }
        for u in x.iter() {
            if self.adj[u].intersects(y) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Shortest (hence induced) path from `from` to any vertex of `to`,
    /// through `mask`, avoiding `forbidden`. BFS tie-breaks by ascending
    /// vertex index, so the result is deterministic.
    pub fn path_avoiding(
        &self,
        mask: &VertexSet,
        from: usize,
        to: &VertexSet,
        forbidden: &VertexSet,
    ) -> Option<PathRecord> {
        assert!(!forbidden.contains(from), "start vertex is forbidden");
        if !mask.contains(from) {
            return None;
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = VertexSet::new(self.n);
        seen.insert(from);
        if to.contains(from) {
            return Some(PathRecord::new(vec![from]));
        }
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !mask.contains(v) || forbidden.contains(v) || seen.contains(v) {
                    continue;
                }
                seen.insert(v);
                parent[v] = Some(u);
                if to.contains(v) {
                    let mut path = vec![v];
                    let mut cur = v;
                    while let Some(p) = parent[cur] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(PathRecord::new(path));
                }
                queue.push_back(v);
            }
        }
        None
    }

    /// Pairwise distances within `mask` (usize::MAX when unreachable).
    /// Used by oracle checks; quadratic and unapologetic about it.
    pub fn distance_matrix(&self, mask: &VertexSet) -> Vec<Vec<usize>> {
        let mut dist = vec![vec![usize::MAX; self.n]; self.n];
        for s in mask.iter() {
            dist[s][s] = 0;
            let mut queue = VecDeque::new();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if mask.contains(v) && dist[s][v] == usize::MAX {
                        dist[s][v] = dist[s][u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Graph", 3)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges())?;
        st.serialize_field("labels", &self.labels().map(|l| l.to_vec()))?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            edges: Vec<(usize, usize)>,
            labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let g = Graph::new(raw.n, &raw.edges).map_err(D::Error::custom)?;
        Ok(match raw.labels {
            Some(l) => g.with_labels(l),
            None => g,
        })
    }
}

/// Induced path, stored as its ordered vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    vertices: Vec<usize>,
}

impl PathRecord {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathRecord { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// Interior `P*`: everything but the two ends.
    pub fn interior(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn len_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.vertices.iter().copied())
    }

    /// Consecutive vertices adjacent, all other pairs non-adjacent.
    pub fn validate(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.is_empty() {
            return false;
        }
        let mut distinct = std::collections::HashSet::new();
        if !vs.iter().all(|v| distinct.insert(*v)) {
            return false;
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let adjacent = g.has_edge(vs[i], vs[j]);
                if (j == i + 1) != adjacent {
                    return false;
                }
            }
        }
        true
    }
}

/// Induced cycle of length at least 4, stored as a cyclic vertex sequence in
/// canonical form (starts at its minimum vertex, second vertex the smaller
/// of the two neighbors on the hole).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoleRecord {
    vertices: Vec<usize>,
}

impl HoleRecord {
    pub fn new(vertices: Vec<usize>) -> Self {
        HoleRecord {
            vertices: canonical_cycle(vertices),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.vertices.iter().copied())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Neighbors of `v` on the hole (exactly two for hole members).
    pub fn hole_neighbors(&self, v: usize) -> Option<(usize, usize)> {
        let k = self.vertices.len();
        let i = self.vertices.iter().position(|&u| u == v)?;
        Some((self.vertices[(i + k - 1) % k], self.vertices[(i + 1) % k]))
    }

    /// The subpath between two hole vertices that avoids `avoid`.
    /// `avoid` must be a hole vertex distinct from both ends.
    pub fn arc_avoiding(&self, from: usize, to: usize, avoid: usize) -> Vec<usize> {
        let k = self.vertices.len();
        let start = self.vertices.iter().position(|&u| u == from).unwrap();
        for dir in [1usize, k - 1] {
            let mut arc = vec![from];
            let mut i = start;
            loop {
                i = (i + dir) % k;
                let u = self.vertices[i];
                if u == avoid {
                    break;
                }
                arc.push(u);
                if u == to {
                    return arc;
                }
            }
        }
        panic!("no arc from {from} to {to} avoiding {avoid}");
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.len() < 4 {
            return false;
        }
        let mut distinct = std::collections::HashSet::new();
        if !vs.iter().all(|v| distinct.insert(*v)) {
            return false;
        }
        let k = vs.len();
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if g.has_edge(vs[i], vs[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

fn canonical_cycle(vertices: Vec<usize>) -> Vec<usize> {
    let k = vertices.len();
    let (start, _) = vertices
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .expect("nonempty cycle");
    let fwd: Vec<usize> = (0..k).map(|i| vertices[(start + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| vertices[(start + k - i) % k]).collect();
    if fwd[1] <= bwd[1] {
        fwd
    } else {
        bwd
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_respect_mask() {
        // path v1-v2-v3 with the middle masked out
        let g = Graph::path(3);
        let within = VertexSet::from_iter(3, [0, 2]);
        let comps = g.components(&within);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0]);
        assert_eq!(comps[1].to_vec(), vec![2]);

        assert!(g.components(&VertexSet::new(3)).is_empty());

        let c6 = Graph::cycle(6);
        let comps = c6.components(&c6.vertices());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 6);
    }

    #[test]
    fn ball_examples() {
        let c6 = Graph::cycle(6);
        let all = c6.vertices();
        let b = c6.ball(&all, &VertexSet::from_iter(6, [0]), 2);
        assert_eq!(b.to_vec(), vec![0, 1, 2, 4, 5]);
        assert_eq!(
            c6.ball(&all, &VertexSet::from_iter(6, [0]), 0).to_vec(),
            vec![0]
        );

        let p5 = Graph::path(5);
        let b = p5.ball(&p5.vertices(), &VertexSet::from_iter(5, [2]), 1);
        assert_eq!(b.to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn anticomplete_examples() {
        let c6 = Graph::cycle(6);
        let s = |vs: &[usize]| VertexSet::from_iter(6, vs.iter().copied());
        assert_eq!(c6.is_anticomplete(&s(&[0]), &s(&[3])), Ok(true));
        assert_eq!(c6.is_anticomplete(&s(&[0]), &s(&[1])), Ok(false));
        assert_eq!(c6.is_anticomplete(&VertexSet::new(6), &s(&[1])), Ok(true));
        assert!(c6.is_anticomplete(&s(&[0, 1]), &s(&[1])).is_err());
    }

    #[test]
    fn path_avoiding_examples() {
        let c6 = Graph::cycle(6);
        let all = c6.vertices();
        let s = |vs: &[usize]| VertexSet::from_iter(6, vs.iter().copied());
        let p = c6.path_avoiding(&all, 0, &s(&[3]), &s(&[1])).unwrap();
        assert_eq!(p.vertices(), &[0, 5, 4, 3]);
        assert!(p.validate(&c6));
        assert!(c6.path_avoiding(&all, 0, &s(&[3]), &s(&[1, 5])).is_none());

        let p3 = Graph::path(3);
        let p = p3
            .path_avoiding(
                &p3.vertices(),
                0,
                &VertexSet::from_iter(3, [2]),
                &VertexSet::new(3),
            )
            .unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn hole_canonical_form() {
        let h1 = HoleRecord::new(vec![3, 4, 5, 0, 1, 2]);
        let h2 = HoleRecord::new(vec![2, 1, 0, 5, 4, 3]);
        assert_eq!(h1, h2);
        assert_eq!(h1.vertices()[0], 0);
        assert_eq!(h1.vertices()[1], 1);
        let c6 = Graph::cycle(6);
        assert!(h1.validate(&c6));
    }

    #[test]
    fn hole_arcs() {
        let h = HoleRecord::new(vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(h.arc_avoiding(1, 5, 3), vec![1, 0, 5]);
        assert_eq!(h.arc_avoiding(1, 3, 0), vec![1, 2, 3]);
        assert_eq!(h.hole_neighbors(0), Some((5, 1)));
    }
}
