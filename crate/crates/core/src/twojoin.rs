//! 2-joins, blocks of decomposition with length-3 marker paths, recognition
//! of the basic class (cliques, holes, long pyramids, extended nontrivial
//! basic graphs), and 2-join decomposition trees for star-cutset-free
//! graphs.

use crate::detect::{is_c4free_odd_signable, CapExceeded, Search, SearchBudget};
use crate::graph::{Graph, PathRecord, VertexSet};
use crate::separation::find_star_cutset;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TwoJoinError {
    #[error("graph is not C4-free odd-signable: {0}")]
    NotClassMember(String),
    #[error("class membership check exceeded its budget")]
    ClassCheckCapped,
    #[error("graph has a star cutset centered at {0}")]
    HasStarCutset(usize),
    #[error("block acquired a star cutset centered at {0}")]
    BlockStarCutset(usize),
    #[error("block left the class: {0}")]
    BlockNotClassMember(String),
    #[error("marker path stopped being flat in a block")]
    MarkerNotFlat,
    #[error(
        "node has no marker-respecting 2-join and no basic tag: \
             decomposition guarantee falsified on this graph"
    )]
    FalsificationCandidate,
    #[error("2-join search budget exhausted")]
    Capped,
    #[error("decomposition recursion exceeded {0} nodes")]
    RecursionLimit(usize),
}

impl From<CapExceeded> for TwoJoinError {
    fn from(_: CapExceeded) -> Self {
        TwoJoinError::Capped
    }
}

/// A split `(X1, X2, A1, B1, A2, B2)` of a 2-join: `A1` complete to `A2`,
/// `B1` complete to `B2`, no other edges across, each side carries a
/// connecting path and is not itself a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoJoinSplit {
    pub x1: VertexSet,
    pub x2: VertexSet,
    pub a1: VertexSet,
    pub b1: VertexSet,
    pub a2: VertexSet,
    pub b2: VertexSet,
}

impl TwoJoinSplit {
    pub fn validate(&self, g: &Graph, mask: &VertexSet) -> bool {
        validate_split(g, mask, &self.x1, &self.x2)
            .map(|s| s == *self)
            .unwrap_or(false)
    }
}

fn is_path_graph(g: &Graph, set: &VertexSet) -> bool {
    let k = set.len();
    if k == 0 {
        return false;
    }
    let mut ones = 0;
    for v in set.iter() {
        match g.adjacency(v).intersection(set).len() {
            0 if k == 1 => return true,
            1 => ones += 1,
            2 => {}
            _ => return false,
        }
    }
    ones == 2 && g.is_connected_within(set)
}

fn side_has_connecting_path(g: &Graph, x: &VertexSet, a: &VertexSet, b: &VertexSet) -> bool {
    // direct edge counts as a path with empty interior
    for u in a.iter() {
        if g.adjacency(u).intersects(b) {
            return true;
        }
    }
    let interior = x.difference(a).difference(b);
    let mut reach = VertexSet::new(g.n());
    let mut frontier: Vec<usize> = Vec::new();
    for u in a.iter() {
        for &v in g.neighbors(u) {
            if interior.contains(v) && !reach.contains(v) {
                reach.insert(v);
                frontier.push(v);
            }
        }
    }
    while let Some(u) = frontier.pop() {
        if g.adjacency(u).intersects(b) {
            return true;
        }
        for &v in g.neighbors(u) {
            if interior.contains(v) && !reach.contains(v) {
                reach.insert(v);
                frontier.push(v);
            }
        }
    }
    false
}

fn validate_split(
    g: &Graph,
    _mask: &VertexSet,
    x1: &VertexSet,
    x2: &VertexSet,
) -> Option<TwoJoinSplit> {
    // cross neighborhoods on side 1 must take exactly two distinct
    // nonempty values, and symmetrically
    let mut n_a2: Option<VertexSet> = None;
    let mut n_b2: Option<VertexSet> = None;
    let mut a1 = VertexSet::new(g.n());
    let mut b1 = VertexSet::new(g.n());
    for v in x1.iter() {
        let cross = g.adjacency(v).intersection(x2);
        if cross.is_empty() {
            continue;
        }
        if n_a2.as_ref() == Some(&cross) {
            a1.insert(v);
        } else if n_b2.as_ref() == Some(&cross) {
            b1.insert(v);
        } else if n_a2.is_none() {
            n_a2 = Some(cross);
            a1.insert(v);
        } else if n_b2.is_none() {
            n_b2 = Some(cross);
            b1.insert(v);
        } else {
            return None;
        }
    }
    let (a2, b2) = (n_a2?, n_b2?);
    if !a2.is_disjoint(&b2) {
        return None;
    }
    // the reverse cross neighborhoods must match exactly
    for v in a2.iter() {
        if g.adjacency(v).intersection(x1) != a1 {
            return None;
        }
    }
    for v in b2.iter() {
        if g.adjacency(v).intersection(x1) != b1 {
            return None;
        }
    }
    for v in x2.difference(&a2).difference(&b2).iter() {
        if g.adjacency(v).intersects(x1) {
            return None;
        }
    }
    if is_path_graph(g, x1) || is_path_graph(g, x2) {
        return None;
    }
    if !side_has_connecting_path(g, x1, &a1, &b1) || !side_has_connecting_path(g, x2, &a2, &b2) {
        return None;
    }
    // canonical orientation: the A pair holds the lowest cross vertex
    let min_a = a1.min().min(a2.min());
    let min_b = b1.min().min(b2.min());
    let (a1, b1, a2, b2) = if min_a <= min_b {
        (a1, b1, a2, b2)
    } else {
        (b1, a1, b2, a2)
    };
    Some(TwoJoinSplit {
        x1: x1.clone(),
        x2: x2.clone(),
        a1,
        b1,
        a2,
        b2,
    })
}

/// Exhaustive 2-join search over bipartitions of the mask (the lowest mask
/// vertex pinned to `X1`), respecting the protected paths: each must stay
/// wholly inside one side. Splits where both sides have at least five
/// vertices are preferred (their blocks strictly shrink); otherwise the
/// first valid split wins.
pub fn find_2join(
    g: &Graph,
    mask: &VertexSet,
    protected: &[PathRecord],
    budget: &mut SearchBudget,
) -> Search<TwoJoinSplit> {
    let ids = mask.to_vec();
    let k = ids.len();
    if k < 4 {
        return Search::Absent;
    }
    let mut fallback: Option<TwoJoinSplit> = None;
    let total: u64 = 1u64 << (k - 1);
    for code in 1..total {
        if budget.spend(1).is_err() {
            return Search::Capped;
        }
        let mut x1 = VertexSet::from_iter(g.n(), [ids[0]]);
        let mut x2 = VertexSet::new(g.n());
        for (i, &v) in ids.iter().enumerate().skip(1) {
            if code >> (i - 1) & 1 == 1 {
                x1.insert(v);
            } else {
                x2.insert(v);
            }
        }
        if x2.is_empty() {
            continue;
        }
        let keeps_paths = protected.iter().all(|p| {
            let pv = p.vertex_set(g.n());
            pv.is_subset(&x1) || pv.is_subset(&x2)
        });
        if !keeps_paths {
            continue;
        }
        if let Some(split) = validate_split(g, mask, &x1, &x2) {
            if split.x1.len() >= 5 && split.x2.len() >= 5 {
                return Search::Found(split);
            }
            if fallback.is_none() {
                fallback = Some(split);
            }
        }
    }
    match fallback {
        Some(s) => Search::Found(s),
        None => Search::Absent,
    }
}

/// One block of a 2-join decomposition: a fresh graph over its own vertex
/// universe, the marker path within it, and the map back to host vertices
/// (markers map to `usize::MAX`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Block {
    pub graph: Graph,
    pub marker: PathRecord,
    pub host_vertex: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockPair {
    pub block1: Block,
    pub block2: Block,
}

/// Blocks of decomposition: `G1` is `G[X1]` plus a marker path
/// `a2 - m - m' - b2` of length 3, with `a2` complete to `A1` and `b2`
/// complete to `B1`; `G2` symmetrically.
pub fn blocks(g: &Graph, _mask: &VertexSet, split: &TwoJoinSplit) -> BlockPair {
    let build = |side: &VertexSet, a: &VertexSet, b: &VertexSet| -> Block {
        let ids = side.to_vec();
        let index: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let base = ids.len();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, &v) in ids.iter().enumerate() {
            for &u in g.neighbors(v) {
                if u > v && side.contains(u) {
                    edges.push((i, index[&u]));
                }
            }
        }
        // marker path base .. base+3
        edges.push((base, base + 1));
        edges.push((base + 1, base + 2));
        edges.push((base + 2, base + 3));
        for v in a.iter() {
            edges.push((index[&v], base));
        }
        for v in b.iter() {
            edges.push((index[&v], base + 3));
        }
        let mut labels: Vec<String> = ids.iter().map(|&v| g.label_of(v)).collect();
        for tag in ["marker.a", "marker.m1", "marker.m2", "marker.b"] {
            labels.push(tag.to_string());
        }
        let graph = Graph::new(base + 4, &edges).unwrap().with_labels(labels);
        let mut host_vertex = ids;
        host_vertex.extend([usize::MAX; 4]);
        Block {
            graph,
            marker: PathRecord::new(vec![base, base + 1, base + 2, base + 3]),
            host_vertex,
        }
    };
    BlockPair {
        block1: build(&split.x1, &split.a1, &split.b1),
        block2: build(&split.x2, &split.a2, &split.b2),
    }
}

/// Flat path: length at least 2, interior vertices of degree exactly 2,
/// and the ends share no neighbor outside the path.
pub fn is_flat_path(g: &Graph, mask: &VertexSet, p: &PathRecord) -> bool {
    if p.len_edges() < 2 || !p.validate(g) {
        return false;
    }
    for &v in p.interior() {
        if g.adjacency(v).intersection(mask).len() != 2 {
            return false;
        }
    }
    let (s, t) = p.ends();
    let common = g
        .adjacency(s)
        .intersection(g.adjacency(t))
        .intersection(mask);
    common.is_subset(&p.vertex_set(g.n()))
}

/// Basic-class membership tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BstarTag {
    Clique,
    Hole,
    LongPyramid,
    ExtendedNontrivialBasic {
        x: usize,
        y: usize,
        /// Reconstructed root tree: nodes are arbitrary ids, one edge per
        /// line-graph vertex.
        tree_edges: Vec<(usize, usize)>,
    },
}

/// Recognize the root tree of a line graph: partition the edges into
/// maximal cliques with every vertex in at most two, then rebuild the tree
/// and confirm `L(T)` matches exactly. Returns the tree edges (one per
/// line-graph vertex, aligned with `verts`) and the leaf line-vertices.
fn line_graph_of_tree(
    g: &Graph,
    l_set: &VertexSet,
) -> Option<(Vec<(usize, usize)>, VertexSet, Vec<VertexSet>)> {
    let verts = l_set.to_vec();
    let k = verts.len();
    if k == 0 {
        return None;
    }
    if !g.is_connected_within(l_set) {
        return None;
    }
    let maximal = maximal_cliques(g, l_set);
    // every edge of L must lie in exactly one maximal clique
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !g.has_edge(u, v) {
                continue;
            }
            let holding = maximal
                .iter()
                .filter(|c| c.contains(u) && c.contains(v))
                .count();
            if holding != 1 {
                return None;
            }
        }
    }
    let chosen: Vec<&VertexSet> = maximal.iter().filter(|c| c.len() >= 2).collect();
    // tree nodes: one per chosen clique, plus a fresh node per deficit
    let mut next_node = chosen.len();
    let mut tree_edges = Vec::with_capacity(k);
    for &v in &verts {
        let homes: Vec<usize> = chosen
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(v))
            .map(|(i, _)| i)
            .collect();
        let edge = match homes.len() {
            0 => {
                // isolated line vertex: a lone tree edge
                let (a, b) = (next_node, next_node + 1);
                next_node += 2;
                (a, b)
            }
            1 => {
                let a = homes[0];
                let b = next_node;
                next_node += 1;
                (a, b)
            }
            2 => (homes[0], homes[1]),
            _ => return None,
        };
        tree_edges.push(edge);
    }
    // the reconstruction must be a tree
    let node_count = next_node;
    if node_count != k + 1 {
        return None;
    }
    let tree = Graph::new(node_count, &tree_edges).ok()?;
    if tree.edge_count() != k || !tree.is_connected_within(&tree.vertices()) {
        return None;
    }
    // confirm L(T) is exactly L
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate().skip(i + 1) {
            let (a1, b1) = tree_edges[i];
            let (a2, b2) = tree_edges[j];
            let share = a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
            if share != g.has_edge(u, v) {
                return None;
            }
        }
    }
    let mut degree = vec![0usize; node_count];
    for &(a, b) in &tree_edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut leaves = VertexSet::new(g.n());
    for (i, &v) in verts.iter().enumerate() {
        let (a, b) = tree_edges[i];
        if degree[a] == 1 || degree[b] == 1 {
            leaves.insert(v);
        }
    }
    let big_cliques: Vec<VertexSet> = maximal.into_iter().filter(|c| c.len() >= 3).collect();
    Some((tree_edges, leaves, big_cliques))
}

fn maximal_cliques(g: &Graph, mask: &VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut r = VertexSet::new(g.n());
    let mut p = mask.clone();
    let mut x = VertexSet::new(g.n());
    bron_kerbosch(g, &mut r, &mut p, &mut x, mask, &mut out);
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut VertexSet,
    p: &mut VertexSet,
    x: &mut VertexSet,
    mask: &VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let candidates = p.clone();
    for v in candidates.iter() {
        if !p.contains(v) {
            continue;
        }
        let nbrs = g.adjacency(v).intersection(mask);
        r.insert(v);
        let mut p2 = p.intersection(&nbrs);
        let mut x2 = x.intersection(&nbrs);
        bron_kerbosch(g, r, &mut p2, &mut x2, mask, out);
        r.remove(v);
        p.remove(v);
        x.insert(v);
    }
}

fn is_long_pyramid(g: &Graph, mask: &VertexSet) -> bool {
    let mut threes = Vec::new();
    for v in mask.iter() {
        match g.adjacency(v).intersection(mask).len() {
            2 => {}
            3 => threes.push(v),
            _ => return false,
        }
    }
    if threes.len() != 4 || !g.is_connected_within(mask) {
        return false;
    }
    'apex: for pick in 0..4 {
        let apex = threes[pick];
        let tri: Vec<usize> = threes.iter().copied().filter(|&v| v != apex).collect();
        let tri_ok = tri
            .iter()
            .enumerate()
            .all(|(i, &u)| tri[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        // long: the apex touches no triangle vertex
        if !tri_ok || tri.iter().any(|&t| g.has_edge(apex, t)) {
            continue;
        }
        let mut seen = VertexSet::from_iter(g.n(), tri.iter().copied());
        seen.insert(apex);
        let mut terminals = Vec::new();
        for &start in g.neighbors(apex) {
            if !mask.contains(start) {
                continue;
            }
            let mut prev = apex;
            let mut cur = start;
            loop {
                if tri.contains(&cur) {
                    terminals.push(cur);
                    break;
                }
                if seen.contains(cur) || g.adjacency(cur).intersection(mask).len() != 2 {
                    continue 'apex;
                }
                seen.insert(cur);
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&u| mask.contains(u) && u != prev);
                match next {
                    Some(u) => {
                        prev = cur;
                        cur = u;
                    }
                    None => continue 'apex,
                }
            }
        }
        terminals.sort_unstable();
        terminals.dedup();
        if terminals.len() == 3 && seen == *mask {
            return true;
        }
    }
    false
}

/// Recognize membership in the basic class: cliques, holes, long pyramids,
/// then extended nontrivial basic graphs (a line graph of a tree with at
/// least two maximal cliques of size 3 or more, plus an edge `xy` whose
/// endpoints split the leaf vertices between them).
pub fn bstar_tag(g: &Graph, mask: &VertexSet) -> Option<BstarTag> {
    if g.is_clique(mask) {
        return Some(BstarTag::Clique);
    }
    let is_hole = mask.len() >= 4
        && mask
            .iter()
            .all(|v| g.adjacency(v).intersection(mask).len() == 2)
        && g.is_connected_within(mask);
    if is_hole {
        return Some(BstarTag::Hole);
    }
    if is_long_pyramid(g, mask) {
        return Some(BstarTag::LongPyramid);
    }
    // extended nontrivial basic: try each edge as {x, y}
    let verts = mask.to_vec();
    for (i, &x) in verts.iter().enumerate() {
        for &y in &verts[i + 1..] {
            if !g.has_edge(x, y) {
                continue;
            }
            let mut l_set = mask.clone();
            l_set.remove(x);
            l_set.remove(y);
            if l_set.is_empty() {
                continue;
            }
            let Some((tree_edges, leaves, big_cliques)) = line_graph_of_tree(g, &l_set) else {
                continue;
            };
            if big_cliques.len() < 2 {
                continue;
            }
            let ok = l_set.iter().all(|v| {
                let to_x = g.has_edge(v, x);
                let to_y = g.has_edge(v, y);
                if leaves.contains(v) {
                    to_x != to_y
                } else {
                    !to_x && !to_y
                }
            });
            if ok {
                return Some(BstarTag::ExtendedNontrivialBasic { x, y, tree_edges });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoJoinNode {
    pub graph: Graph,
    pub markers: Vec<PathRecord>,
    pub split: Option<TwoJoinSplit>,
    pub children: Option<(usize, usize)>,
    pub tag: Option<BstarTag>,
}

/// Rooted decomposition tree: the root is the input graph with no markers;
/// each internal node decomposes by a marker-respecting 2-join into its two
/// blocks; leaves carry basic-class tags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoJoinTree {
    pub nodes: Vec<TwoJoinNode>,
    pub root: usize,
}

impl TwoJoinTree {
    pub fn leaves(&self) -> impl Iterator<Item = &TwoJoinNode> {
        self.nodes.iter().filter(|n| n.children.is_none())
    }
}

/// Recursively decompose a star-cutset-free class member along 2-joins
/// until every leaf tags into the basic class. Blocks are re-asserted to
/// stay in the class, stay star-cutset-free, and keep their marker paths
/// flat; a node with neither a tag nor a 2-join is reported as a
/// falsification candidate.
pub fn build_2join_tree(g: &Graph, budget: &mut SearchBudget) -> Result<TwoJoinTree, TwoJoinError> {
    match is_c4free_odd_signable(g, &g.vertices(), budget) {
        crate::detect::ClassCheck::Member => {}
        crate::detect::ClassCheck::NotMember(v) => {
            return Err(TwoJoinError::NotClassMember(v.describe()))
        }
        crate::detect::ClassCheck::Capped => return Err(TwoJoinError::ClassCheckCapped),
    }
    if let Some(sc) = find_star_cutset(g, &g.vertices()) {
        return Err(TwoJoinError::HasStarCutset(sc.center));
    }
    let limit = 4 * g.n() + 16;
    let mut tree = TwoJoinTree {
        nodes: vec![TwoJoinNode {
            graph: g.clone(),
            markers: Vec::new(),
            split: None,
            children: None,
            tag: None,
        }],
        root: 0,
    };
    let mut work = vec![0usize];
    while let Some(idx) = work.pop() {
        if tree.nodes.len() > limit {
            return Err(TwoJoinError::RecursionLimit(limit));
        }
        let (graph, markers) = {
            let n = &tree.nodes[idx];
            (n.graph.clone(), n.markers.clone())
        };
        let mask = graph.vertices();
        if let Some(tag) = bstar_tag(&graph, &mask) {
            tree.nodes[idx].tag = Some(tag);
            continue;
        }
        let split = match find_2join(&graph, &mask, &markers, budget) {
            Search::Found(s) => s,
            Search::Absent => return Err(TwoJoinError::FalsificationCandidate),
            Search::Capped => return Err(TwoJoinError::Capped),
        };
        let pair = blocks(&graph, &mask, &split);
        let mut children = Vec::with_capacity(2);
        for (block, side) in [(&pair.block1, &split.x1), (&pair.block2, &split.x2)] {
            let bg = &block.graph;
            match is_c4free_odd_signable(bg, &bg.vertices(), budget) {
                crate::detect::ClassCheck::Member => {}
                crate::detect::ClassCheck::NotMember(v) => {
                    return Err(TwoJoinError::BlockNotClassMember(v.describe()))
                }
                crate::detect::ClassCheck::Capped => return Err(TwoJoinError::ClassCheckCapped),
            }
            if let Some(sc) = find_star_cutset(bg, &bg.vertices()) {
                return Err(TwoJoinError::BlockStarCutset(sc.center));
            }
            // carry over the markers that live in this side, re-indexed
            let index: std::collections::HashMap<usize, usize> = block
                .host_vertex
                .iter()
                .enumerate()
                .filter(|(_, &h)| h != usize::MAX)
                .map(|(i, &h)| (h, i))
                .collect();
            let mut child_markers = Vec::new();
            for m in &markers {
                if m.vertex_set(graph.n()).is_subset(side) {
                    child_markers.push(PathRecord::new(
                        m.vertices().iter().map(|v| index[v]).collect(),
                    ));
                }
            }
            child_markers.push(block.marker.clone());
            for m in &child_markers {
                if !is_flat_path(bg, &bg.vertices(), m) {
                    return Err(TwoJoinError::MarkerNotFlat);
                }
            }
            let child_idx = tree.nodes.len();
            tree.nodes.push(TwoJoinNode {
                graph: bg.clone(),
                markers: child_markers,
                split: None,
                children: None,
                tag: None,
            });
            children.push(child_idx);
        }
        tree.nodes[idx].split = Some(split);
        tree.nodes[idx].children = Some((children[0], children[1]));
        work.extend(children);
    }
    Ok(tree)
}

/// The width bounds consumed as cited constants: the bipartite-exclusion
/// bound `tw + 1 ≤ 3(r−1)(2^{rw+1} − 1)`, the star-cutset-free treewidth
/// bound `45δ − 1`, and the rankwidth bound 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthBounds {
    pub tw_plus_1_from_rankwidth: u64,
    pub star_cutset_free_tw: u64,
    pub rankwidth_bound: u64,
}

pub fn width_bounds(delta: u64, r: u64, rw: u64) -> WidthBounds {
    WidthBounds {
        tw_plus_1_from_rankwidth: 3 * (r - 1) * ((1u64 << (rw + 1)) - 1),
        star_cutset_free_tw: 45 * delta - 1,
        rankwidth_bound: 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_gadget() -> Graph {
        // triangle {a=0, b=1, c=2} with pendant d=3 at c; mirror 4..7;
        // cross edges a-a' and d-d'
        Graph::new(
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
                (0, 4),
                (3, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn find_2join_examples() {
        let g = two_gadget();
        let split = find_2join(&g, &g.vertices(), &[], &mut SearchBudget::default_budget())
            .found()
            .expect("two-gadget graph has a 2-join");
        assert!(split.validate(&g, &g.vertices()));
        // the first valid bipartition splits off the triangle side
        assert_eq!(split.x1.to_vec(), vec![0, 1, 2]);
        assert_eq!(split.a1.to_vec(), vec![0]);
        assert_eq!(split.b1.to_vec(), vec![2]);
        // the gadget-per-side bipartition is a valid 2-join as well
        let x1 = VertexSet::from_iter(8, [0, 1, 2, 3]);
        let x2 = VertexSet::from_iter(8, [4, 5, 6, 7]);
        let alt = validate_split(&g, &g.vertices(), &x1, &x2).expect("also a 2-join");
        assert_eq!(alt.a1.to_vec(), vec![0]);
        assert_eq!(alt.b1.to_vec(), vec![3]);

        let c7 = Graph::cycle(7);
        assert!(find_2join(
            &c7,
            &c7.vertices(),
            &[],
            &mut SearchBudget::default_budget()
        )
        .is_absent());

        let k5 = Graph::complete(5);
        assert!(find_2join(
            &k5,
            &k5.vertices(),
            &[],
            &mut SearchBudget::default_budget()
        )
        .is_absent());
    }

    #[test]
    fn blocks_shape() {
        let g = two_gadget();
        let split = find_2join(&g, &g.vertices(), &[], &mut SearchBudget::default_budget())
            .found()
            .unwrap();
        let pair = blocks(&g, &g.vertices(), &split);
        assert_eq!(pair.block1.graph.n(), split.x1.len() + 4);
        assert_eq!(pair.block2.graph.n(), split.x2.len() + 4);
        for block in [&pair.block1, &pair.block2] {
            assert_eq!(block.marker.len_edges(), 3);
            for &v in block.marker.interior() {
                assert_eq!(block.graph.degree(v), 2);
            }
            assert!(is_flat_path(
                &block.graph,
                &block.graph.vertices(),
                &block.marker
            ));
        }
    }

    #[test]
    fn bstar_tags() {
        let k6 = Graph::complete(6);
        assert_eq!(bstar_tag(&k6, &k6.vertices()), Some(BstarTag::Clique));

        let c9 = Graph::cycle(9);
        assert_eq!(bstar_tag(&c9, &c9.vertices()), Some(BstarTag::Hole));

        let lp = Graph::new(
            7,
            &[
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 2),
                (0, 6),
                (6, 3),
            ],
        )
        .unwrap();
        assert_eq!(bstar_tag(&lp, &lp.vertices()), Some(BstarTag::LongPyramid));

        // short pyramid (one path of length 1) is not long
        let sp = Graph::new(
            6,
            &[
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 1),
                (0, 4),
                (4, 2),
                (0, 5),
                (5, 3),
            ],
        )
        .unwrap();
        assert_eq!(bstar_tag(&sp, &sp.vertices()), None);
    }

    #[test]
    fn extended_nontrivial_basic_tag() {
        // tree: two centers 0,1 joined by an edge, three leaves on each;
        // L(T) has 7 vertices: the center edge plus six leaf edges
        // L-vertices: 0 = center edge, 1..3 = leaf edges at center 0,
        // 4..6 = leaf edges at center 1
        let mut edges = vec![];
        // clique at tree node 0: {0,1,2,3}, clique at node 1: {0,4,5,6}
        for u in [0, 1, 2, 3] {
            for v in [0, 1, 2, 3] {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        for u in [0usize, 4, 5, 6] {
            for v in [0usize, 4, 5, 6] {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        // leaves 1..6 attach: x = 7 takes {1,2,5}, y = 8 takes {3,4,6}
        let x = 7;
        let y = 8;
        edges.push((x, y));
        for l in [1, 2, 5] {
            edges.push((x, l));
        }
        for l in [3, 4, 6] {
            edges.push((y, l));
        }
        let g = Graph::new(9, &edges).unwrap();
        match bstar_tag(&g, &g.vertices()) {
            Some(BstarTag::ExtendedNontrivialBasic {
                x: gx,
                y: gy,
                tree_edges,
            }) => {
                assert_eq!((gx, gy), (7, 8));
                assert_eq!(tree_edges.len(), 7);
            }
            other => panic!("expected extended nontrivial basic, got {other:?}"),
        }
    }

    #[test]
    fn width_bound_numerics() {
        let b = width_bounds(3, 2, 3);
        assert_eq!(b.tw_plus_1_from_rankwidth, 45);
        assert_eq!(b.star_cutset_free_tw, 134);
        assert_eq!(b.rankwidth_bound, 3);
        assert_eq!(width_bounds(1, 2, 3).star_cutset_free_tw, 44);
    }

    #[test]
    fn tree_on_basic_graphs() {
        let mut budget = SearchBudget::default_budget();
        let lp = Graph::new(
            7,
            &[
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 2),
                (0, 6),
                (6, 3),
            ],
        )
        .unwrap();
        let tree = build_2join_tree(&lp, &mut budget).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert_eq!(tree.nodes[0].tag, Some(BstarTag::LongPyramid));

        let k4 = Graph::complete(4);
        let tree = build_2join_tree(&k4, &mut SearchBudget::default_budget()).unwrap();
        assert_eq!(tree.nodes[0].tag, Some(BstarTag::Clique));
    }

    #[test]
    fn line_graph_rejects_cycles() {
        let c4 = Graph::cycle(4);
        assert!(line_graph_of_tree(&c4, &c4.vertices()).is_none());
        // a path P3 is the line graph of P4
        let p3 = Graph::path(3);
        let (te, leaves, _) = line_graph_of_tree(&p3, &p3.vertices()).unwrap();
        assert_eq!(te.len(), 3);
        assert_eq!(leaves.to_vec(), vec![0, 2]);
    }
}
