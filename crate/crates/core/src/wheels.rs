//! Wheel taxonomy (universal / twin / short pyramid / proper), twin-wheel
//! richness, forcer records, and the clique-star cutset certificates that
//! proper wheels, universal wheels, short pyramids, and poor terminal twin
//! wheels guarantee in a C4-free odd-signable graph.

use crate::detect::{enumerate_holes, CapExceeded, SearchBudget};
use crate::graph::{Graph, HoleRecord, PathRecord, VertexSet};
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WheelError {
    #[error("record is not a wheel: {0}")]
    NotAWheel(String),
    #[error("wheel is not a twin wheel")]
    NotTwinWheel,
    #[error("cutset certificate failed verification: {detail}")]
    VerificationFailed {
        detail: String,
        certificate: Option<CutsetCertificate>,
    },
    #[error("search budget exhausted")]
    CapExceeded,
}

impl From<CapExceeded> for WheelError {
    fn from(_: CapExceeded) -> Self {
        WheelError::CapExceeded
    }
}

/// Wheel classes. `Proper` here means the non-universal proper wheels;
/// universal wheels are proper wheels too but get their own cutset lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WheelKind {
    Universal,
    Twin { clone: usize },
    ShortPyramid { x1: usize, x2: usize, y: usize },
    Proper,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WheelClass {
    pub kind: WheelKind,
    /// Hole subpaths between cyclically consecutive spokes; ends are hub
    /// neighbors, interiors are hub-free.
    pub sectors: Vec<PathRecord>,
}

impl WheelClass {
    pub fn long_sectors(&self) -> impl Iterator<Item = &PathRecord> {
        self.sectors.iter().filter(|s| !s.interior().is_empty())
    }
}

/// Classify a wheel and compute its sectors.
pub fn classify_wheel(g: &Graph, w: &crate::detect::WheelRecord) -> WheelClass {
    debug_assert!(w.validate(g));
    let hole = w.hole.vertices();
    let k = hole.len();
    let spoke_positions: Vec<usize> = (0..k)
        .filter(|&i| w.hub_neighbors_on_hole.contains(hole[i]))
        .collect();
    let s = spoke_positions.len();

    let mut sectors = Vec::with_capacity(s);
    for j in 0..s {
        let from = spoke_positions[j];
        let to = spoke_positions[(j + 1) % s];
        let mut verts = vec![hole[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % k;
            verts.push(hole[i]);
        }
        sectors.push(PathRecord::new(verts));
    }

    let kind = if s == k {
        WheelKind::Universal
    } else if s == 3 {
        let adj_pairs: Vec<(usize, usize)> = (0..3)
            .filter_map(|j| {
                let p = spoke_positions[j];
                let q = spoke_positions[(j + 1) % 3];
                let cyclic_gap = (q + k - p) % k;
                if cyclic_gap == 1 || cyclic_gap == k - 1 {
                    Some((hole[p], hole[q]))
                } else {
                    None
                }
            })
            .collect();
        match adj_pairs.len() {
            2 => {
                // the clone is adjacent to both other spokes on the hole
                let spokes: Vec<usize> = spoke_positions.iter().map(|&p| hole[p]).collect();
                let clone = *spokes
                    .iter()
                    .find(|&&v| adj_pairs.iter().all(|&(a, b)| a == v || b == v))
                    .expect("twin wheel has a middle spoke");
                WheelKind::Twin { clone }
            }
            1 => {
                let (x1, x2) = adj_pairs[0];
                let y = spoke_positions
                    .iter()
                    .map(|&p| hole[p])
                    .find(|&v| v != x1 && v != x2)
                    .expect("third spoke");
                WheelKind::ShortPyramid { x1, x2, y }
            }
            _ => WheelKind::Proper,
        }
    } else {
        WheelKind::Proper
    };
    WheelClass { kind, sectors }
}

/// Richness flags of a twin wheel `(hole, x)` with clone `x2`:
/// `x_rich` iff some path leaves `x` for `H \ N[x]` while touching no
/// neighbor of `x2` other than `x` (symmetrically for `x2_rich`);
/// terminal iff either side is poor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinRichness {
    pub x_rich: bool,
    pub x2_rich: bool,
    pub terminal: bool,
}

pub fn twin_richness(
    g: &Graph,
    mask: &VertexSet,
    hole: &HoleRecord,
    x: usize,
    x2: usize,
) -> TwinRichness {
    let n = g.n();
    let hole_set = hole.vertex_set(n);
    let closed_x = g.closed_neighborhood(mask, &VertexSet::from_iter(n, [x]));
    let destinations = hole_set.difference(&closed_x);

    let mut forbid_for_x = g.closed_neighborhood(mask, &VertexSet::from_iter(n, [x2]));
    forbid_for_x.remove(x);
    let x_rich = g
        .path_avoiding(mask, x, &destinations, &forbid_for_x)
        .is_some();

    let mut forbid_for_x2 = closed_x.clone();
    forbid_for_x2.remove(x2);
    let x2_rich = g
        .path_avoiding(mask, x2, &destinations, &forbid_for_x2)
        .is_some();

    TwinRichness {
        x_rich,
        x2_rich,
        terminal: !(x_rich && x2_rich),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForcerKind {
    /// Proper wheel (universal or not); center is the hub alone.
    ProperWheel,
    /// Short pyramid; center is the hub plus its non-triangle hole neighbor.
    ShortPyramid,
    /// Terminal twin wheel, poor on the clone side; center is the hub alone.
    TwinWheel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcerFamily {
    /// Proper-wheel and short-pyramid forcers.
    Strong,
    Twin,
}

/// A hole plus a clique center guaranteeing a clique star cutset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcerRecord {
    pub hole: HoleRecord,
    pub center: VertexSet,
    pub kind: ForcerKind,
    pub hub: usize,
    /// For twin-wheel forcers: the clone `x2` (the poor side).
    pub clone: Option<usize>,
}

impl ForcerRecord {
    pub fn is_strong(&self) -> bool {
        self.kind != ForcerKind::TwinWheel
    }

    /// Active for an induced subgraph iff hole and center both survive.
    pub fn is_active(&self, n: usize, mask: &VertexSet) -> bool {
        self.hole.vertex_set(n).is_subset(mask) && self.center.is_subset(mask)
    }

    pub fn validate(&self, g: &Graph, mask: &VertexSet) -> bool {
        let wheel = crate::detect::WheelRecord::new(g, self.hole.clone(), self.hub);
        if !wheel.validate(g) || !self.hole.vertex_set(g.n()).is_subset(mask) {
            return false;
        }
        let class = classify_wheel(g, &wheel);
        match (self.kind, &class.kind) {
            (ForcerKind::ProperWheel, WheelKind::Proper)
            | (ForcerKind::ProperWheel, WheelKind::Universal) => {
                self.center == VertexSet::from_iter(g.n(), [self.hub])
            }
            (ForcerKind::ShortPyramid, WheelKind::ShortPyramid { y, .. }) => {
                self.center == VertexSet::from_iter(g.n(), [self.hub, *y])
            }
            (ForcerKind::TwinWheel, WheelKind::Twin { clone }) => {
                let r = twin_richness(g, mask, &self.hole, self.hub, *clone);
                self.center == VertexSet::from_iter(g.n(), [self.hub])
                    && self.clone == Some(*clone)
                    && !r.x2_rich
            }
            _ => false,
        }
    }
}

/// A cutset plus two nonempty specimen sides that must land in different
/// components once the cutset is removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutsetCertificate {
    pub cutset: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl CutsetCertificate {
    /// Component check: both sides nonempty, each inside a single component
    /// of `mask \ cutset`, and those components differ.
    pub fn verify(&self, g: &Graph, mask: &VertexSet) -> bool {
        if self.side_a.is_empty() || self.side_b.is_empty() {
            return false;
        }
        if self.side_a.intersects(&self.cutset)
            || self.side_b.intersects(&self.cutset)
            || self.side_a.intersects(&self.side_b)
        {
            return false;
        }
        let rest = mask.difference(&self.cutset);
        let comps = g.components(&rest);
        let home = |side: &VertexSet| -> Option<usize> {
            let mut found = None;
            for (i, c) in comps.iter().enumerate() {
                if side.intersects(c) {
                    if !side.intersection(c).is_subset(c) || found.is_some() {
                        return None;
                    }
                    if !side.is_subset(c) {
                        return None;
                    }
                    found = Some(i);
                }
            }
            found
        };
        match (home(&self.side_a), home(&self.side_b)) {
            (Some(i), Some(j)) => i != j,
            _ => false,
        }
    }
}

/// The cutset certificate a forcer guarantees, per its kind:
///
/// * proper non-universal wheel: `(N(x) \ W) ∪ {x}` separates a long-sector
///   interior from `W ∪ Z`, where `W` collects the spokes whose subpath of
///   `H \ {x1}` from `x2` contains an even number of spokes (endpoints
///   counted) and `Z = H \ (Q ∪ N(x))`;
/// * universal wheel: `N[x]` minus a non-adjacent rim pair (when the mask is
///   `N[x]`), else `N[x]` minus a rim vertex with no neighbor in some
///   outside component;
/// * short pyramid: `N(x) ∪ N(y)` separates the two long-sector interiors;
/// * poor terminal twin wheel: `N[x] \ {x2}` separates `x2` from `H \ N[x]`.
///
/// The certificate is verified by the component check before being returned.
pub fn forcer_cutset(
    g: &Graph,
    mask: &VertexSet,
    forcer: &ForcerRecord,
) -> Result<CutsetCertificate, WheelError> {
    let n = g.n();
    let wheel = crate::detect::WheelRecord::new(g, forcer.hole.clone(), forcer.hub);
    if !wheel.validate(g) {
        return Err(WheelError::NotAWheel(format!(
            "hub {} against hole {:?}",
            forcer.hub,
            forcer.hole.vertices()
        )));
    }
    let class = classify_wheel(g, &wheel);
    let x = forcer.hub;
    let hole_set = forcer.hole.vertex_set(n);
    let open_x = g.open_neighborhood(mask, &VertexSet::from_iter(n, [x]));
    let closed_x = {
        let mut s = open_x.clone();
        s.insert(x);
        s
    };

    let cert = match (&forcer.kind, &class.kind) {
        (ForcerKind::ProperWheel, WheelKind::Universal) => {
            let outside = mask.difference(&closed_x);
            if outside.is_empty() {
                // mask = N[x]: isolate any two non-adjacent rim vertices
                let rim = forcer.hole.vertices();
                let mut pick = None;
                'outer: for (i, &a) in rim.iter().enumerate() {
                    for &b in &rim[i + 1..] {
                        if !g.has_edge(a, b) {
                            pick = Some((a, b));
                            break 'outer;
                        }
                    }
                }
                let (a, b) = pick.ok_or_else(|| WheelError::VerificationFailed {
                    detail: "universal wheel with a complete rim".into(),
                    certificate: None,
                })?;
                let mut cutset = closed_x.clone();
                cutset.remove(a);
                cutset.remove(b);
                CutsetCertificate {
                    cutset,
                    side_a: VertexSet::from_iter(n, [a]),
                    side_b: VertexSet::from_iter(n, [b]),
                }
            } else {
                let comps = g.components(&outside);
                let comp = comps[0].clone();
                let rim_witness = forcer
                    .hole
                    .vertices()
                    .iter()
                    .copied()
                    .find(|&a| !g.adjacency(a).intersects(&comp));
                let a = rim_witness.ok_or_else(|| WheelError::VerificationFailed {
                    detail: "no rim vertex avoids the outside component".into(),
                    certificate: None,
                })?;
                let mut cutset = closed_x.clone();
                cutset.remove(a);
                CutsetCertificate {
                    cutset,
                    side_a: VertexSet::from_iter(n, [a]),
                    side_b: comp,
                }
            }
        }
        (ForcerKind::ProperWheel, WheelKind::Proper) => {
            let sector =
                class
                    .long_sectors()
                    .next()
                    .ok_or_else(|| WheelError::VerificationFailed {
                        detail: "proper non-universal wheel must have a long sector".into(),
                        certificate: None,
                    })?;
            let (x1, x2) = sector.ends();
            // linear order of the hole with x1 deleted
            let hole = forcer.hole.vertices();
            let k = hole.len();
            let p1 = hole.iter().position(|&v| v == x1).unwrap();
            let line: Vec<usize> = (1..k).map(|i| hole[(p1 + i) % k]).collect();
            let pos = |v: usize| line.iter().position(|&u| u == v).unwrap();
            let px2 = pos(x2);
            let spokes_on_hole: Vec<usize> = hole
                .iter()
                .copied()
                .filter(|&h| wheel.hub_neighbors_on_hole.contains(h))
                .collect();
            let mut w_set = VertexSet::new(n);
            for &h in &spokes_on_hole {
                if h == x1 {
                    continue;
                }
                let ph = pos(h);
                let (lo, hi) = (px2.min(ph), px2.max(ph));
                let count = line[lo..=hi]
                    .iter()
                    .filter(|&&v| wheel.hub_neighbors_on_hole.contains(v))
                    .count();
                if count % 2 == 0 {
                    w_set.insert(h);
                }
            }
            let mut cutset = open_x.difference(&w_set);
            cutset.insert(x);
            let side_a = sector.vertex_set(n).difference(&cutset);
            let q_set = sector.vertex_set(n);
            let z = hole_set.difference(&q_set).difference(&open_x);
            let side_b = w_set.union(&z);
            CutsetCertificate {
                cutset,
                side_a,
                side_b,
            }
        }
        (ForcerKind::ShortPyramid, WheelKind::ShortPyramid { y, .. }) => {
            let open_y = g.open_neighborhood(mask, &VertexSet::from_iter(n, [*y]));
            let cutset = open_x.union(&open_y);
            let mut long: Vec<&PathRecord> = class
                .sectors
                .iter()
                .filter(|s| {
                    let (a, b) = s.ends();
                    a == *y || b == *y
                })
                .collect();
            if long.len() != 2 {
                return Err(WheelError::VerificationFailed {
                    detail: "short pyramid must have two sectors at y".into(),
                    certificate: None,
                });
            }
            let h1 = long.remove(0).vertex_set(n).difference(&cutset);
            let h2 = long.remove(0).vertex_set(n).difference(&cutset);
            CutsetCertificate {
                cutset,
                side_a: h1,
                side_b: h2,
            }
        }
        (ForcerKind::TwinWheel, WheelKind::Twin { clone }) => {
            let x2 = *clone;
            let mut cutset = closed_x.clone();
            cutset.remove(x2);
            let side_b = hole_set.difference(&closed_x);
            CutsetCertificate {
                cutset,
                side_a: VertexSet::from_iter(n, [x2]),
                side_b,
            }
        }
        (kind, class_kind) => {
            return Err(WheelError::VerificationFailed {
                detail: format!("forcer kind {kind:?} does not match wheel class {class_kind:?}"),
                certificate: None,
            })
        }
    };

    if !cert.verify(g, mask) {
        return Err(WheelError::VerificationFailed {
            detail: "component check failed".into(),
            certificate: Some(cert),
        });
    }
    Ok(cert)
}

/// All forcers of the requested families discoverable within the budget,
/// in canonical hole-enumeration order with hubs ascending. Twin-wheel
/// forcers are emitted only in their clone-poor orientation; the swapped
/// orientation of an `x`-poor wheel surfaces on its own because the swapped
/// hole is itself enumerated.
pub fn enumerate_forcers(
    g: &Graph,
    mask: &VertexSet,
    families: &[ForcerFamily],
    budget: &mut SearchBudget,
) -> Result<Vec<ForcerRecord>, CapExceeded> {
    let strong = families.contains(&ForcerFamily::Strong);
    let twin = families.contains(&ForcerFamily::Twin);
    let n = g.n();
    let mut out = Vec::new();
    let max_len = mask.len().max(4);
    let status = enumerate_holes(g, mask, max_len, budget, &mut |hole| {
        let hole_set = hole.vertex_set(n);
        for hub in mask.iter() {
            if hole_set.contains(hub) {
                continue;
            }
            let nbrs = g.adjacency(hub).intersection(&hole_set);
            if nbrs.len() < 3 {
                continue;
            }
            let wheel = crate::detect::WheelRecord::new(g, hole.clone(), hub);
            let class = classify_wheel(g, &wheel);
            match class.kind {
                WheelKind::Universal | WheelKind::Proper => {
                    if strong {
                        out.push(ForcerRecord {
                            hole: hole.clone(),
                            center: VertexSet::from_iter(n, [hub]),
                            kind: ForcerKind::ProperWheel,
                            hub,
                            clone: None,
                        });
                    }
                }
                WheelKind::ShortPyramid { y, .. } => {
                    if strong {
                        out.push(ForcerRecord {
                            hole: hole.clone(),
                            center: VertexSet::from_iter(n, [hub, y]),
                            kind: ForcerKind::ShortPyramid,
                            hub,
                            clone: None,
                        });
                    }
                }
                WheelKind::Twin { clone } => {
                    if twin {
                        let r = twin_richness(g, mask, hole, hub, clone);
                        if !r.x2_rich {
                            out.push(ForcerRecord {
                                hole: hole.clone(),
                                center: VertexSet::from_iter(n, [hub]),
                                kind: ForcerKind::TwinWheel,
                                hub,
                                clone: Some(clone),
                            });
                        }
                    }
                }
            }
        }
        ControlFlow::Continue(())
    });
    if status == crate::detect::HoleEnumStatus::Capped {
        return Err(CapExceeded);
    }
    Ok(out)
}

/// Outcome of evaluating a lemma-shaped implication on an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicationCheck {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

impl ImplicationCheck {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis_holds || self.conclusion_holds
    }
}

/// For a twin wheel `(hole, x)` with spokes `x1-x2-x3`: if some vertex `u`
/// outside the wheel attaches to it exactly at `{x, x1, x1'}`, where `x1'`
/// is `x1`'s hole neighbor away from `x2` (or the symmetric pattern at
/// `x3`), then the wheel must be clone-poor. Both sides of the implication are
/// evaluated independently; callers use this on clean graphs where the
/// implication is guaranteed.
pub fn check_u_x_poor_predicate(
    g: &Graph,
    mask: &VertexSet,
    hole: &HoleRecord,
    x: usize,
    u: usize,
) -> Result<ImplicationCheck, WheelError> {
    let n = g.n();
    let wheel = crate::detect::WheelRecord::new(g, hole.clone(), x);
    if !wheel.validate(g) {
        return Err(WheelError::NotAWheel(format!("hub {x}")));
    }
    let class = classify_wheel(g, &wheel);
    let clone = match class.kind {
        WheelKind::Twin { clone } => clone,
        _ => return Err(WheelError::NotTwinWheel),
    };
    let (n1, n2) = hole.hole_neighbors(clone).expect("clone on hole");
    let mut hypothesis = false;
    if mask.contains(u) && !hole.contains(u) && u != x {
        let mut wheel_verts = hole.vertex_set(n);
        wheel_verts.insert(x);
        let attach = g.adjacency(u).intersection(&wheel_verts);
        for end_spoke in [n1, n2] {
            let (a, b) = hole.hole_neighbors(end_spoke).expect("spoke on hole");
            let away = if a == clone { b } else { a };
            let expected = VertexSet::from_iter(n, [x, end_spoke, away]);
            if attach == expected {
                hypothesis = true;
            }
        }
    }
    let richness = twin_richness(g, mask, hole, x, clone);
    Ok(ImplicationCheck {
        hypothesis_holds: hypothesis,
        conclusion_holds: !richness.x2_rich,
    })
}

/// For a non-terminal twin wheel, search for the two escape paths the
/// structure theory promises: `P` leaves the hub and `Q` leaves the clone,
/// each attaching at its far end to exactly one edge of the hole away from
/// the spokes, with interiors anticomplete to the wheel.
pub fn check_paths_shapes_predicate(
    g: &Graph,
    mask: &VertexSet,
    hole: &HoleRecord,
    x: usize,
    budget: &mut SearchBudget,
) -> Result<Option<(PathRecord, PathRecord)>, WheelError> {
    let n = g.n();
    let wheel = crate::detect::WheelRecord::new(g, hole.clone(), x);
    if !wheel.validate(g) {
        return Err(WheelError::NotAWheel(format!("hub {x}")));
    }
    let class = classify_wheel(g, &wheel);
    let clone = match class.kind {
        WheelKind::Twin { clone } => clone,
        _ => return Err(WheelError::NotTwinWheel),
    };
    let mut wheel_verts = hole.vertex_set(n);
    wheel_verts.insert(x);
    let spokes = wheel.hub_neighbors_on_hole.clone();

    let find_from = |start_attach: usize,
                     budget: &mut SearchBudget|
     -> Result<Option<PathRecord>, CapExceeded> {
        // kick off at vertices attached to the wheel exactly at the start,
        // then wander through wheel-anticomplete vertices until one attaches
        // to exactly one spoke-free hole edge
        let attach_of = |v: usize| g.adjacency(v).intersection(&wheel_verts);
        let is_terminal = |v: usize| -> bool {
            let attach = attach_of(v);
            if attach.len() != 2 {
                return false;
            }
            let pair = attach.to_vec();
            if spokes.contains(pair[0]) || spokes.contains(pair[1]) || pair[0] == x || pair[1] == x
            {
                return false;
            }
            g.has_edge(pair[0], pair[1]) && hole.contains(pair[0]) && hole.contains(pair[1])
        };
        let mut stack: Vec<Vec<usize>> = mask
            .iter()
            .filter(|&v| {
                !wheel_verts.contains(v) && attach_of(v) == VertexSet::from_iter(n, [start_attach])
            })
            .map(|v| vec![v])
            .collect();
        stack.reverse();
        while let Some(path) = stack.pop() {
            budget.spend(1)?;
            let last = *path.last().unwrap();
            for &u in g.neighbors(last) {
                if !mask.contains(u) || path.contains(&u) || wheel_verts.contains(u) {
                    continue;
                }
                // induced continuation only
                if path[..path.len() - 1].iter().any(|&p| g.has_edge(u, p)) {
                    continue;
                }
                let mut next = path.clone();
                next.push(u);
                if is_terminal(u) {
                    // interior must be wheel-anticomplete
                    let interior_ok = next[..next.len() - 1]
                        .iter()
                        .skip(1)
                        .all(|&p| attach_of(p).is_empty());
                    if interior_ok && next.len() >= 2 {
                        return Ok(Some(PathRecord::new(next)));
                    }
                } else if attach_of(u).is_empty() {
                    stack.push(next);
                }
            }
        }
        Ok(None)
    };

    let p = find_from(x, budget)?;
    let q = find_from(clone, budget)?;
    Ok(match (p, q) {
        (Some(p), Some(q)) => Some((p, q)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{is_c4free_odd_signable, WheelRecord};

    fn wheel_graph(hole_len: usize, spokes: &[usize]) -> (Graph, HoleRecord, usize) {
        let hub = hole_len;
        let mut edges: Vec<(usize, usize)> =
            (0..hole_len).map(|i| (i, (i + 1) % hole_len)).collect();
        for &s in spokes {
            edges.push((hub, s));
        }
        let g = Graph::new(hole_len + 1, &edges).unwrap();
        let hole = HoleRecord::new((0..hole_len).collect());
        (g, hole, hub)
    }

    #[test]
    fn classification() {
        let (g, hole, hub) = wheel_graph(5, &[0, 1, 2]);
        let c = classify_wheel(&g, &WheelRecord::new(&g, hole, hub));
        assert_eq!(c.kind, WheelKind::Twin { clone: 1 });

        let (g, hole, hub) = wheel_graph(5, &[0, 1, 2, 3, 4]);
        let c = classify_wheel(&g, &WheelRecord::new(&g, hole, hub));
        assert_eq!(c.kind, WheelKind::Universal);
        assert_eq!(c.long_sectors().count(), 0);

        let (g, hole, hub) = wheel_graph(5, &[0, 1, 3]);
        let c = classify_wheel(&g, &WheelRecord::new(&g, hole, hub));
        assert_eq!(c.kind, WheelKind::ShortPyramid { x1: 0, x2: 1, y: 3 });

        let (g, hole, hub) = wheel_graph(9, &[0, 3, 6]);
        let c = classify_wheel(&g, &WheelRecord::new(&g, hole, hub));
        assert_eq!(c.kind, WheelKind::Proper);
        assert_eq!(c.long_sectors().count(), 3);
    }

    #[test]
    fn twin_richness_bare_wheel() {
        let (g, hole, hub) = wheel_graph(5, &[0, 1, 2]);
        let r = twin_richness(&g, &g.vertices(), &hole, hub, 1);
        assert!(!r.x_rich && !r.x2_rich && r.terminal);
    }

    #[test]
    fn twin_richness_with_escape() {
        // pendant path from the hub to the far side of the hole, avoiding
        // the clone's neighborhood, makes the wheel hub-rich
        let (g0, hole, hub) = wheel_graph(5, &[0, 1, 2]);
        let mut edges = g0.edges();
        let p1 = 6;
        let p2 = 7;
        edges.push((hub, p1));
        edges.push((p1, p2));
        edges.push((p2, 4));
        let g = Graph::new(8, &edges).unwrap();
        let r = twin_richness(&g, &g.vertices(), &hole, hub, 1);
        assert!(r.x_rich);
        assert!(!r.x2_rich);
        assert!(r.terminal);
    }

    #[test]
    fn twin_forcer_cutset() {
        let (g, hole, hub) = wheel_graph(5, &[0, 1, 2]);
        let forcer = ForcerRecord {
            hole,
            center: VertexSet::from_iter(6, [hub]),
            kind: ForcerKind::TwinWheel,
            hub,
            clone: Some(1),
        };
        let cert = forcer_cutset(&g, &g.vertices(), &forcer).unwrap();
        assert!(cert.verify(&g, &g.vertices()));
        assert_eq!(cert.side_a.to_vec(), vec![1]);
        assert_eq!(cert.side_b.to_vec(), vec![3, 4]);
    }

    #[test]
    fn universal_forcer_cutsets() {
        // whole mask equals N[x]
        let (g, hole, hub) = wheel_graph(5, &[0, 1, 2, 3, 4]);
        assert!(
            is_c4free_odd_signable(&g, &g.vertices(), &mut SearchBudget::default_budget())
                .is_member()
        );
        let forcer = ForcerRecord {
            hole: hole.clone(),
            center: VertexSet::from_iter(6, [hub]),
            kind: ForcerKind::ProperWheel,
            hub,
            clone: None,
        };
        let cert = forcer_cutset(&g, &g.vertices(), &forcer).unwrap();
        assert!(cert.verify(&g, &g.vertices()));

        // pendant outside N[x]: the rim witness branch
        let mut edges = g.edges();
        edges.push((0, 6));
        let g2 = Graph::new(7, &edges).unwrap();
        let forcer2 = ForcerRecord {
            hole,
            center: VertexSet::from_iter(7, [hub]),
            kind: ForcerKind::ProperWheel,
            hub,
            clone: None,
        };
        let cert2 = forcer_cutset(&g2, &g2.vertices(), &forcer2).unwrap();
        assert!(cert2.verify(&g2, &g2.vertices()));
        assert_eq!(cert2.side_b.to_vec(), vec![6]);
    }

    #[test]
    fn proper_wheel_forcer_cutset() {
        let (g, hole, hub) = wheel_graph(9, &[0, 3, 6]);
        assert!(
            is_c4free_odd_signable(&g, &g.vertices(), &mut SearchBudget::default_budget())
                .is_member()
        );
        let forcer = ForcerRecord {
            hole,
            center: VertexSet::from_iter(10, [hub]),
            kind: ForcerKind::ProperWheel,
            hub,
            clone: None,
        };
        let cert = forcer_cutset(&g, &g.vertices(), &forcer).unwrap();
        assert!(cert.verify(&g, &g.vertices()));
    }

    #[test]
    fn short_pyramid_forcer_cutset() {
        let (g, hole, hub) = wheel_graph(7, &[0, 1, 4]);
        assert!(
            is_c4free_odd_signable(&g, &g.vertices(), &mut SearchBudget::default_budget())
                .is_member()
        );
        let forcer = ForcerRecord {
            hole,
            center: VertexSet::from_iter(8, [hub, 4]),
            kind: ForcerKind::ShortPyramid,
            hub,
            clone: None,
        };
        let cert = forcer_cutset(&g, &g.vertices(), &forcer).unwrap();
        assert!(cert.verify(&g, &g.vertices()));
        // the two long sectors minus the cutset survive on opposite sides
        assert_eq!(cert.side_a.to_vec(), vec![2]);
        assert_eq!(cert.side_b.to_vec(), vec![6]);
    }

    #[test]
    fn forcer_enumeration() {
        // K5 has no holes, hence no forcers
        let k5 = Graph::complete(5);
        let forcers = enumerate_forcers(
            &k5,
            &k5.vertices(),
            &[ForcerFamily::Strong, ForcerFamily::Twin],
            &mut SearchBudget::default_budget(),
        )
        .unwrap();
        assert!(forcers.is_empty());

        // proper wheel graph has a strong forcer
        let (g, _, hub) = wheel_graph(9, &[0, 3, 6]);
        let forcers = enumerate_forcers(
            &g,
            &g.vertices(),
            &[ForcerFamily::Strong],
            &mut SearchBudget::default_budget(),
        )
        .unwrap();
        assert!(forcers.iter().any(|f| f.hub == hub));
        assert!(forcers.iter().all(|f| f.validate(&g, &g.vertices())));

        // a long pyramid is clean: no strong forcers
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
        let forcers = enumerate_forcers(
            &lp,
            &lp.vertices(),
            &[ForcerFamily::Strong],
            &mut SearchBudget::default_budget(),
        )
        .unwrap();
        assert!(forcers.is_empty());
    }

    #[test]
    fn swapped_twin_forcer_is_enumerated() {
        // hub-poor but clone-rich: the forcer surfaces on the swapped hole
        let (g0, _, hub) = wheel_graph(5, &[0, 1, 2]);
        let mut edges = g0.edges();
        edges.push((1, 6));
        edges.push((6, 7));
        edges.push((7, 3));
        let g = Graph::new(8, &edges).unwrap();

        let hole = HoleRecord::new(vec![0, 1, 2, 3, 4]);
        let r = twin_richness(&g, &g.vertices(), &hole, hub, 1);
        assert!(!r.x_rich && r.x2_rich);

        let forcers = enumerate_forcers(
            &g,
            &g.vertices(),
            &[ForcerFamily::Twin],
            &mut SearchBudget::default_budget(),
        )
        .unwrap();
        // the original orientation must not be emitted
        assert!(!forcers.iter().any(|f| f.hub == hub && f.hole == hole));
        // the swapped wheel (hole through the hub, clone as hub) must be
        let swapped_hole = HoleRecord::new(vec![0, hub, 2, 3, 4]);
        assert!(forcers
            .iter()
            .any(|f| f.hub == 1 && f.hole == swapped_hole && f.clone == Some(hub)));
        for f in &forcers {
            let cert = forcer_cutset(&g, &g.vertices(), f).unwrap();
            assert!(cert.verify(&g, &g.vertices()));
        }
    }

    #[test]
    fn u_x_poor_predicate_instance() {
        // C6 twin wheel plus a vertex u attached exactly at {x, x1, x1'}
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let x = 6;
        let u = 7;
        edges.push((x, 0));
        edges.push((x, 1));
        edges.push((x, 2));
        edges.push((u, x));
        edges.push((u, 0));
        edges.push((u, 5));
        let g = Graph::new(8, &edges).unwrap();
        assert!(
            is_c4free_odd_signable(&g, &g.vertices(), &mut SearchBudget::default_budget())
                .is_member()
        );
        let hole = HoleRecord::new(vec![0, 1, 2, 3, 4, 5]);
        let check = check_u_x_poor_predicate(&g, &g.vertices(), &hole, x, u).unwrap();
        assert!(check.hypothesis_holds);
        assert!(check.conclusion_holds);
        assert!(check.implication_holds());

        // hypothesis false for an unrelated vertex pattern
        let check2 = check_u_x_poor_predicate(&g, &g.vertices(), &hole, x, 3);
        assert!(check2.is_err() || !check2.unwrap().hypothesis_holds);
    }

    #[test]
    fn paths_shapes_predicate_instance() {
        // C6 twin wheel with both escape paths present: P from the hub to
        // the hole edge (3,4), Q from the clone to the hole edge (4,5)
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let x = 6;
        edges.push((x, 0));
        edges.push((x, 1));
        edges.push((x, 2));
        // P = x-7-8 with 8 attached to hole edge (3,4)
        edges.push((x, 7));
        edges.push((7, 8));
        edges.push((8, 3));
        edges.push((8, 4));
        // Q = 1-9-10 with 10 attached to hole edge (4,5)
        edges.push((1, 9));
        edges.push((9, 10));
        edges.push((10, 4));
        edges.push((10, 5));
        let g = Graph::new(11, &edges).unwrap();
        let hole = HoleRecord::new(vec![0, 1, 2, 3, 4, 5]);
        let r = twin_richness(&g, &g.vertices(), &hole, x, 1);
        assert!(
            !r.terminal,
            "both escape routes should make it non-terminal"
        );
        let (p, q) = check_paths_shapes_predicate(
            &g,
            &g.vertices(),
            &hole,
            x,
            &mut SearchBudget::default_budget(),
        )
        .unwrap()
        .expect("promised escape paths");
        assert!(p.validate(&g));
        assert!(q.validate(&g));
        assert_eq!(p.vertices()[0], 7);
        assert_eq!(q.vertices()[0], 9);
    }
}
