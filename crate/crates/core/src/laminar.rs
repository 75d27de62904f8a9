//! Laminar collections of separations and their tree decompositions, the
//! skew orientation toward heavy shores, central-bag extraction with
//! anchor-based reweighting, and the radius-2 separator lift.

use crate::graph::{Graph, Rational, VertexSet, WeightAssignment};
use crate::separation::{crosses, Separation, StarSeparation};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LaminarError {
    #[error("separations {0} and {1} cross")]
    Crossing(usize, usize),
    #[error("separations {0} and {1} are identical")]
    Duplicate(usize, usize),
    #[error("no tree node admits separation {0}")]
    NoSplitNode(usize),
    #[error("tree decomposition axiom violated: {0}")]
    AxiomViolated(String),
    #[error("edge separations do not biject onto the input collection")]
    BijectionFailed,
    #[error("separation {index} is not eps-skewed (light shore weighs {weight})")]
    SkewednessViolated { index: usize, weight: String },
    #[error("orientation is not an in-arborescence: sinks at nodes {0} and {1}")]
    NotInArborescence(usize, usize),
    #[error("central bag is not perpendicular: meets A of separation {0}")]
    PerpendicularityFailed(usize),
    #[error("central bag is disconnected")]
    CentralBagDisconnected,
    #[error("reweighting failed: {0}")]
    ReweightFailed(String),
}

/// Tree decomposition `(T, χ)` over a mask of the host graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, edges }
    }

    pub fn single(bag: VertexSet) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            edges: Vec::new(),
        }
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1) - 1
    }

    pub fn neighbors_of(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == node {
                    Some(v)
                } else if v == node {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Nodes of the component of `T \ {avoid}` containing `start`.
    fn subtree_nodes(&self, start: usize, avoid: usize) -> Vec<usize> {
        let mut seen = vec![false; self.bags.len()];
        seen[avoid] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.neighbors_of(u) {
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                    stack.push(v);
                }
            }
        }
        out
    }

    /// Union of bags strictly beyond `edge` as seen from `from`.
    pub fn far_union(&self, n: usize, from: usize, to: usize) -> VertexSet {
        let mut u = VertexSet::new(n);
        for node in self.subtree_nodes(to, from) {
            u.union_with(&self.bags[node]);
        }
        u
    }

    /// The separation of the host graph corresponding to a tree edge:
    /// `C_e = χ(t1) ∩ χ(t2)` and the two shore unions minus `C_e`.
    pub fn edge_separation(&self, n: usize, edge_idx: usize) -> (VertexSet, VertexSet, VertexSet) {
        let (t1, t2) = self.edges[edge_idx];
        let c = self.bags[t1].intersection(&self.bags[t2]);
        let d1 = self.far_union(n, t2, t1).difference(&c);
        let d2 = self.far_union(n, t1, t2).difference(&c);
        (d1, c, d2)
    }

    /// The three tree-decomposition axioms over `mask`.
    pub fn verify_axioms(&self, g: &Graph, mask: &VertexSet) -> Result<(), LaminarError> {
        let mut covered = VertexSet::new(g.n());
        for b in &self.bags {
            covered.union_with(b);
        }
        if &covered != mask {
            return Err(LaminarError::AxiomViolated(
                "bags do not cover the mask exactly".into(),
            ));
        }
        for u in mask.iter() {
            for &v in g.neighbors(u) {
                if v > u && mask.contains(v) {
                    let inside = self.bags.iter().any(|b| b.contains(u) && b.contains(v));
                    if !inside {
                        return Err(LaminarError::AxiomViolated(format!(
                            "edge {u}-{v} in no bag"
                        )));
                    }
                }
            }
        }
        for v in mask.iter() {
            let holding: Vec<usize> = (0..self.bags.len())
                .filter(|&i| self.bags[i].contains(v))
                .collect();
            if holding.is_empty() {
                return Err(LaminarError::AxiomViolated(format!("vertex {v} in no bag")));
            }
            // connectivity of the holding set in T
            let mut seen = vec![false; self.bags.len()];
            let mut stack = vec![holding[0]];
            seen[holding[0]] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for t in self.neighbors_of(u) {
                    if !seen[t] && self.bags[t].contains(v) {
                        seen[t] = true;
                        count += 1;
                        stack.push(t);
                    }
                }
            }
            if count != holding.len() {
                return Err(LaminarError::AxiomViolated(format!(
                    "bag set of vertex {v} is disconnected in T"
                )));
            }
        }
        Ok(())
    }
}

/// True iff no pair crosses; otherwise the first crossing pair.
pub fn is_laminar(seps: &[Separation]) -> Result<(), (usize, usize)> {
    for i in 0..seps.len() {
        for j in i + 1..seps.len() {
            if crosses(&seps[i], &seps[j]) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Build a tree decomposition whose edge separations are exactly `seps`
/// (a bijection, verified post hoc). Construction is by iterated node
/// splitting: each separation splits the unique tree node whose bag
/// contains its cut and whose incident subtrees each fall inside one shore.
pub fn build_tree_decomposition(
    g: &Graph,
    mask: &VertexSet,
    seps: &[Separation],
) -> Result<TreeDecomposition, LaminarError> {
    for i in 0..seps.len() {
        for j in i + 1..seps.len() {
            if seps[i] == seps[j] || seps[i] == seps[j].swapped() {
                return Err(LaminarError::Duplicate(i, j));
            }
        }
    }
    if let Err((i, j)) = is_laminar(seps) {
        return Err(LaminarError::Crossing(i, j));
    }

    let mut td = TreeDecomposition::single(mask.clone());
    for (idx, sep) in seps.iter().enumerate() {
        insert_separation(g, mask, &mut td, sep).ok_or(LaminarError::NoSplitNode(idx))?;
    }

    td.verify_axioms(g, mask)?;
    verify_bijection(g, &td, seps)?;
    Ok(td)
}

fn insert_separation(
    g: &Graph,
    _mask: &VertexSet,
    td: &mut TreeDecomposition,
    sep: &Separation,
) -> Option<()> {
    let n = g.n();
    let x_side = sep.x_side();
    let y_side = sep.y_side();
    'nodes: for t in 0..td.bags.len() {
        if !sep.c().is_subset(&td.bags[t]) {
            continue;
        }
        // every incident subtree must live inside one shore
        let nbrs = td.neighbors_of(t);
        let mut go_left = Vec::new();
        for &u in &nbrs {
            let far = td.far_union(n, t, u);
            if far.is_subset(&x_side) {
                go_left.push(true);
            } else if far.is_subset(&y_side) {
                go_left.push(false);
            } else {
                continue 'nodes;
            }
        }
        let bag_a = td.bags[t].intersection(&x_side);
        let bag_b = td.bags[t].intersection(&y_side);
        let new_node = td.bags.len();
        td.bags[t] = bag_a;
        td.bags.push(bag_b);
        for (&u, left) in nbrs.iter().zip(&go_left) {
            if !left {
                for e in td.edges.iter_mut() {
                    if (e.0 == t && e.1 == u) || (e.0 == u && e.1 == t) {
                        *e = (u, new_node);
                    }
                }
            }
        }
        td.edges.push((t, new_node));
        return Some(());
    }
    None
}

fn verify_bijection(
    g: &Graph,
    td: &TreeDecomposition,
    seps: &[Separation],
) -> Result<(), LaminarError> {
    if td.edges.len() != seps.len() {
        return Err(LaminarError::BijectionFailed);
    }
    let mut matched = vec![false; seps.len()];
    for e in 0..td.edges.len() {
        let (d1, c, d2) = td.edge_separation(g.n(), e);
        let hit = seps.iter().enumerate().find(|(i, s)| {
            !matched[*i]
                && *s.c() == c
                && ((*s.a() == d1 && *s.b() == d2) || (*s.a() == d2 && *s.b() == d1))
        });
        match hit {
            Some((i, _)) => matched[i] = true,
            None => return Err(LaminarError::BijectionFailed),
        }
    }
    Ok(())
}

/// Orientation of the decomposition tree: every edge points away from the
/// light shore of its separation. `root` is the unique sink when the
/// orientation is an in-arborescence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkewOrientation {
    /// Per tree edge: (tail, head) node indices.
    pub directed: Vec<(usize, usize)>,
    pub root: usize,
}

/// One root-incident separation folded into the reweighting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnchoredFold {
    pub sep_index: usize,
    pub anchor: usize,
    #[serde(with = "crate::graph::serde_rational")]
    pub folded_weight: Rational,
}

/// A central bag: the root bag of the skew orientation, its reweighted
/// assignment, and the audit trail needed by the weight lemmas.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralBag {
    pub beta: VertexSet,
    pub weights: WeightAssignment,
    pub tree: TreeDecomposition,
    pub orientation: SkewOrientation,
    /// (separation index, anchor vertex, folded weight) per root-incident edge.
    pub anchored: Vec<AnchoredFold>,
    /// `ε + max w(C)` stayed below 1/2 (the in-arborescence hypothesis).
    pub arborescence_hypothesis_held: bool,
    /// Every center appeared on at most one separation.
    pub centers_unique: bool,
}

/// Decompose `mask` simultaneously by a laminar collection of eps-skewed
/// star separations and return the central bag with its reweighting:
/// `w_X(v) = w(v) + Σ w(A_e)` over the root-incident separations anchored
/// at `v` (anchor = least vertex of the center clique).
pub fn central_bag(
    g: &Graph,
    mask: &VertexSet,
    w: &WeightAssignment,
    seps: &[StarSeparation],
    eps: &Rational,
) -> Result<CentralBag, LaminarError> {
    for (i, s) in seps.iter().enumerate() {
        let wa = w.weight_of(s.sep.a());
        if &wa >= eps {
            return Err(LaminarError::SkewednessViolated {
                index: i,
                weight: crate::graph::format_rational(&wa),
            });
        }
    }
    let plain: Vec<Separation> = seps.iter().map(|s| s.sep.clone()).collect();
    if seps.is_empty() {
        let weights = w
            .reweighted(mask, &[])
            .map_err(|e| LaminarError::ReweightFailed(e.to_string()))?;
        return Ok(CentralBag {
            beta: mask.clone(),
            weights,
            tree: TreeDecomposition::single(mask.clone()),
            orientation: SkewOrientation {
                directed: Vec::new(),
                root: 0,
            },
            anchored: Vec::new(),
            arborescence_hypothesis_held: true,
            centers_unique: true,
        });
    }
    let td = build_tree_decomposition(g, mask, &plain)?;

    // match (in construction order) each edge to its separation index;
    // edges are appended one per insertion, so edge i realizes seps[i]
    // every edge points from its A-side node toward its B-side node; when
    // both shores are light the designated A (fixed deterministically at
    // normalization) still decides, which keeps the root on the C ∪ B side
    // of every separation and hence perpendicular
    let n = g.n();
    let mut directed = Vec::with_capacity(td.edges().len());
    for (e, &(t1, t2)) in td.edges().iter().enumerate() {
        let (d1, _, _) = td.edge_separation(n, e);
        let sep = &seps[e].sep;
        if d1 == *sep.a() {
            directed.push((t1, t2));
        } else {
            debug_assert_eq!(d1, *sep.b());
            directed.push((t2, t1));
        }
    }
    let mut sink_flags = vec![true; td.bags().len()];
    for &(tail, _) in &directed {
        sink_flags[tail] = false;
    }
    let sinks: Vec<usize> = (0..td.bags().len()).filter(|&i| sink_flags[i]).collect();
    if sinks.len() != 1 {
        return Err(LaminarError::NotInArborescence(sinks[0], sinks[1]));
    }
    let root = sinks[0];
    let beta = td.bags()[root].clone();

    for (i, s) in seps.iter().enumerate() {
        if beta.intersects(s.sep.a()) {
            return Err(LaminarError::PerpendicularityFailed(i));
        }
    }
    if !g.is_connected_within(&beta) {
        return Err(LaminarError::CentralBagDisconnected);
    }

    let mut anchored = Vec::new();
    let mut increments = Vec::new();
    for (e, &(t1, t2)) in td.edges().iter().enumerate() {
        if t1 != root && t2 != root {
            continue;
        }
        let sep = &seps[e];
        let anchor = sep.center.min().expect("nonempty center");
        let folded = w.weight_of(sep.sep.a());
        increments.push((anchor, folded.clone()));
        anchored.push(AnchoredFold {
            sep_index: e,
            anchor,
            folded_weight: folded,
        });
    }
    let weights = w
        .reweighted(&beta, &increments)
        .map_err(|e| LaminarError::ReweightFailed(e.to_string()))?;
    assert!(
        weights.total().is_one(),
        "reweighting must conserve total 1"
    );

    let eps0 = seps
        .iter()
        .map(|s| w.weight_of(s.sep.c()))
        .max()
        .unwrap_or_else(Rational::zero);
    let hypothesis = eps.clone() + eps0 < crate::graph::rat(1, 2);
    let mut centers_unique = true;
    for i in 0..seps.len() {
        for j in i + 1..seps.len() {
            if seps[i].center == seps[j].center {
                centers_unique = false;
            }
        }
    }

    Ok(CentralBag {
        beta,
        weights,
        tree: td,
        orientation: SkewOrientation { directed, root },
        anchored,
        arborescence_hypothesis_held: hypothesis,
        centers_unique,
    })
}

/// Radius-2 closed ball of `y` inside the induced subgraph on `beta`.
/// When `y` is a balanced separator of a central bag, this lift is a
/// balanced separator of the parent (with the distance budget grown by 2);
/// the caller verifies that against the parent's weights.
pub fn lift_separator(g: &Graph, beta: &VertexSet, y: &VertexSet) -> VertexSet {
    g.ball(beta, y, 2)
}
