//! Separations `(A, C, B)`, clique stars, skewedness, the crossing relation,
//! canonical star separations, minimal clique separations, and the
//! anticomplete partition of clique-star centers.

use crate::graph::{Graph, Rational, VertexSet, WeightAssignment};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparationError {
    #[error("A, C, B must be pairwise disjoint")]
    NotDisjoint,
    #[error("A ∪ C ∪ B must equal the mask")]
    NotCovering,
    #[error("A must be anticomplete to B (edge {0}-{1})")]
    NotAnticomplete(usize, usize),
    #[error("{0:?} is not a minimal clique cutset of the mask")]
    NotMinimalCliqueCutset(Vec<usize>),
    #[error("graph degree {actual} exceeds the stated bound {bound}")]
    DegreeBoundViolated { actual: usize, bound: usize },
    #[error("center {0:?} is not a nonempty clique inside the mask")]
    BadCenter(Vec<usize>),
}

/// Triple of disjoint vertex sets `(A, C, B)` covering the mask, with `A`
/// anticomplete to `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    a: VertexSet,
    c: VertexSet,
    b: VertexSet,
}

impl Separation {
    pub fn new(
        g: &Graph,
        mask: &VertexSet,
        a: VertexSet,
        c: VertexSet,
        b: VertexSet,
    ) -> Result<Self, SeparationError> {
        if !a.is_disjoint(&c) || !a.is_disjoint(&b) || !c.is_disjoint(&b) {
            return Err(SeparationError::NotDisjoint);
        }
        if &a.union(&c).union(&b) != mask {
            return Err(SeparationError::NotCovering);
        }
        for u in a.iter() {
            if let Some(v) = g.adjacency(u).intersection(&b).min() {
                return Err(SeparationError::NotAnticomplete(u, v));
            }
        }
        Ok(Separation { a, c, b })
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn c(&self) -> &VertexSet {
        &self.c
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn mask(&self) -> VertexSet {
        self.a.union(&self.c).union(&self.b)
    }

    pub fn is_proper(&self) -> bool {
        !self.a.is_empty() && !self.b.is_empty()
    }

    pub fn swapped(&self) -> Separation {
        Separation {
            a: self.b.clone(),
            c: self.c.clone(),
            b: self.a.clone(),
        }
    }

    /// `A ∪ C`.
    pub fn x_side(&self) -> VertexSet {
        self.a.union(&self.c)
    }

    /// `C ∪ B`.
    pub fn y_side(&self) -> VertexSet {
        self.c.union(&self.b)
    }
}

/// Separation whose cut is a clique star, together with its center clique.
/// `tie_broken` records whether the heaviest-component choice needed the
/// deterministic tie rule (in which case uniqueness is not asserted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSeparation {
    pub sep: Separation,
    pub center: VertexSet,
    pub tie_broken: bool,
}

/// Set `X` with a center clique `K` satisfying `K ⊆ X ⊆ N[K]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueStar {
    pub set: VertexSet,
    pub center: VertexSet,
}

impl CliqueStar {
    pub fn validate(&self, g: &Graph, mask: &VertexSet) -> bool {
        !self.center.is_empty()
            && g.is_clique(&self.center)
            && self.center.is_subset(&self.set)
            && self
                .set
                .is_subset(&g.closed_neighborhood(mask, &self.center))
    }
}

/// Non-crossing test. Two separations are non-crossing when, writing
/// `X_i = A_i ∪ C_i` and `Y_i = C_i ∪ B_i`, one of the containment patterns
/// `X_i ⊆ X_{3-i} ∧ Y_{3-i} ⊆ Y_i` or `X_i ⊆ Y_{3-i} ∧ X_{3-i} ⊆ Y_i`
/// holds for some `i`.
pub fn crosses(s1: &Separation, s2: &Separation) -> bool {
    let x1 = s1.x_side();
    let y1 = s1.y_side();
    let x2 = s2.x_side();
    let y2 = s2.y_side();
    let noncrossing = (x1.is_subset(&x2) && y2.is_subset(&y1))
        || (x2.is_subset(&x1) && y1.is_subset(&y2))
        || (x1.is_subset(&y2) && x2.is_subset(&y1));
    !noncrossing
}

/// Skewedness under `w`: true iff some shore weighs less than `eps`.
/// The returned separation is normalized so that `A` is the light side;
/// when both shores are light the lighter one becomes `A`, ties broken
/// toward the side with the smaller minimum vertex.
pub fn is_skewed(sep: &Separation, w: &WeightAssignment, eps: &Rational) -> (bool, Separation) {
    let wa = w.weight_of(sep.a());
    let wb = w.weight_of(sep.b());
    let a_light = &wa < eps;
    let b_light = &wb < eps;
    if !a_light && !b_light {
        return (false, sep.clone());
    }
    let keep = if a_light && b_light {
        match wa.cmp(&wb) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => sep.a().min() < sep.b().min(),
        }
    } else {
        a_light
    };
    (true, if keep { sep.clone() } else { sep.swapped() })
}

/// Deterministic "largest weight component" choice: maximum weight, then
/// fewest vertices, then least minimum vertex. Returns the winning index and
/// whether the weight comparison alone was ambiguous.
pub fn heaviest_component(comps: &[VertexSet], w: &WeightAssignment) -> Option<(usize, bool)> {
    if comps.is_empty() {
        return None;
    }
    let weights: Vec<Rational> = comps.iter().map(|c| w.weight_of(c)).collect();
    let mut best = 0;
    for i in 1..comps.len() {
        let better = match weights[i].cmp(&weights[best]) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => match comps[i].len().cmp(&comps[best].len()) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => comps[i].min() < comps[best].min(),
            },
        };
        if better {
            best = i;
        }
    }
    let tie = comps
        .iter()
        .enumerate()
        .any(|(i, _)| i != best && weights[i] == weights[best]);
    Some((best, tie))
}

/// Canonical star separation `S_K = (A_K, C_K, B_K)` for a clique `K`:
/// `B_K` is the largest weight component of `mask \ N[K]` (empty when
/// `N[K]` covers the mask), `C_K` is `K` plus the `N[K]` vertices with a
/// neighbor in `B_K`, and `A_K` is everything else.
pub fn canonical_star_separation(
    g: &Graph,
    mask: &VertexSet,
    w: &WeightAssignment,
    center: &VertexSet,
) -> Result<StarSeparation, SeparationError> {
    if center.is_empty() || !center.is_subset(mask) || !g.is_clique(center) {
        return Err(SeparationError::BadCenter(center.to_vec()));
    }
    let closed = g.closed_neighborhood(mask, center);
    let outside = mask.difference(&closed);
    let comps = g.components(&outside);
    let (b, tie_broken) = match heaviest_component(&comps, w) {
        Some((i, tie)) => (comps[i].clone(), tie),
        None => (VertexSet::new(g.n()), false),
    };
    let mut c = center.clone();
    for v in closed.iter() {
        if g.adjacency(v).intersects(&b) {
            c.insert(v);
        }
    }
    let a = mask.difference(&b).difference(&c);
    let sep = Separation::new(g, mask, a, c, b)?;
    Ok(StarSeparation {
        sep,
        center: center.clone(),
        tie_broken,
    })
}

fn extend_cliques(
    g: &Graph,
    mask: &VertexSet,
    prefix: &mut Vec<usize>,
    size: usize,
    out: &mut Vec<VertexSet>,
) {
    if prefix.len() == size {
        out.push(VertexSet::from_iter(g.n(), prefix.iter().copied()));
        return;
    }
    let start = prefix.last().map_or(0, |&v| v + 1);
    for u in mask.iter() {
        if u < start {
            continue;
        }
        if prefix.iter().all(|&p| g.has_edge(p, u)) {
            prefix.push(u);
            extend_cliques(g, mask, prefix, size, out);
            prefix.pop();
        }
    }
}

/// All cliques of exactly `size` vertices within the mask, in lex order.
pub fn enumerate_cliques(g: &Graph, mask: &VertexSet, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_cliques(g, mask, &mut prefix, size, &mut out);
    out
}

/// Is `c` a clique cutset of the mask with every cut vertex attached to
/// every component (minimality)?
pub fn is_minimal_clique_cutset(g: &Graph, mask: &VertexSet, c: &VertexSet) -> bool {
    if c.is_empty() || !g.is_clique(c) || !c.is_subset(mask) {
        return false;
    }
    let rest = mask.difference(c);
    let comps = g.components(&rest);
    if comps.len() < 2 {
        return false;
    }
    c.iter()
        .all(|v| comps.iter().all(|comp| g.adjacency(v).intersects(comp)))
}

/// All minimal clique cutsets of exactly `size_k` vertices, lex order.
pub fn minimal_clique_cutsets(g: &Graph, mask: &VertexSet, size_k: usize) -> Vec<VertexSet> {
    enumerate_cliques(g, mask, size_k)
        .into_iter()
        .filter(|c| is_minimal_clique_cutset(g, mask, c))
        .collect()
}

/// The minimal clique separation for a minimal clique cutset `C`: shore `B`
/// is the largest weight component of `mask \ C` (deterministic tie rule),
/// `A` is everything else.
pub fn minimal_clique_separation(
    g: &Graph,
    mask: &VertexSet,
    w: &WeightAssignment,
    c: &VertexSet,
) -> Result<StarSeparation, SeparationError> {
    if !is_minimal_clique_cutset(g, mask, c) {
        return Err(SeparationError::NotMinimalCliqueCutset(c.to_vec()));
    }
    let rest = mask.difference(c);
    let comps = g.components(&rest);
    let (bi, tie_broken) = heaviest_component(&comps, w).expect("cutset leaves components");
    let b = comps[bi].clone();
    let a = rest.difference(&b);
    let sep = Separation::new(g, mask, a, c.clone(), b)?;
    Ok(StarSeparation {
        sep,
        center: c.clone(),
        tie_broken,
    })
}

/// `f(k, δ) = (k + δk) · Σ_{j=0}^{k-1} C(δ, j) + 1`, the guaranteed class
/// count for partitioning size-≤k clique centers into anticomplete families.
pub fn center_partition_bound(k: u64, delta: u64) -> u64 {
    let binom = |n: u64, r: u64| -> u64 {
        if r > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..r {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let sum: u64 = (0..k).map(|j| binom(delta, j)).sum();
    (k + delta * k) * sum + 1
}

/// Greedy partition of clique centers into classes whose members are
/// pairwise anticomplete. Duplicates are collapsed first. The class count is
/// guaranteed (and checked) to stay within `f(k, δ)`.
pub fn partition_centers(
    g: &Graph,
    centers: &[VertexSet],
    k: usize,
    delta: usize,
) -> Result<Vec<Vec<VertexSet>>, SeparationError> {
    let actual = g.max_degree();
    if actual > delta {
        return Err(SeparationError::DegreeBoundViolated {
            actual,
            bound: delta,
        });
    }
    let mut unique: Vec<VertexSet> = Vec::new();
    for c in centers {
        assert!(c.len() <= k, "center larger than the stated bound k");
        if !unique.contains(c) {
            unique.push(c.clone());
        }
    }
    let conflict = |x: &VertexSet, y: &VertexSet| -> bool {
        !x.is_disjoint(y) || x.iter().any(|u| g.adjacency(u).intersects(y))
    };
    let mut classes: Vec<Vec<VertexSet>> = Vec::new();
    for c in unique {
        let slot = classes
            .iter()
            .position(|class| class.iter().all(|other| !conflict(&c, other)));
        match slot {
            Some(i) => classes[i].push(c),
            None => classes.push(vec![c]),
        }
    }
    let bound = center_partition_bound(k as u64, delta as u64);
    assert!(
        (classes.len() as u64) <= bound,
        "greedy coloring exceeded f(k, δ) = {bound}"
    );
    Ok(classes)
}

/// A star cutset: a cutset contained in the closed neighborhood of its
/// center, which it contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCutset {
    pub center: usize,
    pub cutset: VertexSet,
}

/// Exhaustive star-cutset scan over centers, smallest center first. For a
/// center `x` a star cutset exists iff removing `N[x]` leaves two or more
/// components, or some component of `mask \ N[x]` fails to dominate
/// `N(x)` (then `{x}` plus the component's attachment separates it from an
/// undominated neighbor), or `mask = N[x]` and `mask \ {x}` is not a clique.
pub fn find_star_cutset(g: &Graph, mask: &VertexSet) -> Option<StarCutset> {
    for x in mask.iter() {
        let closed = g.closed_neighborhood(mask, &VertexSet::from_iter(g.n(), [x]));
        let rest = mask.difference(&closed);
        if rest.is_empty() {
            // mask = N[x]: any two nonadjacent neighbors can be isolated
            let nbrs: Vec<usize> = closed.iter().filter(|&v| v != x).collect();
            for (i, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[i + 1..] {
                    if !g.has_edge(u, v) {
                        let mut cutset = closed.clone();
                        cutset.remove(u);
                        cutset.remove(v);
                        debug_assert!(g.components(&mask.difference(&cutset)).len() >= 2);
                        return Some(StarCutset { center: x, cutset });
                    }
                }
            }
            continue;
        }
        let comps = g.components(&rest);
        if comps.len() >= 2 {
            return Some(StarCutset {
                center: x,
                cutset: closed,
            });
        }
        for comp in &comps {
            let attachment = g.open_neighborhood(mask, comp);
            for y in closed.iter() {
                if y != x && !attachment.contains(y) {
                    let mut cutset = attachment.clone();
                    cutset.insert(x);
                    debug_assert!(g.components(&mask.difference(&cutset)).len() >= 2);
                    return Some(StarCutset { center: x, cutset });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;

    fn sep(g: &Graph, a: &[usize], c: &[usize], b: &[usize]) -> Separation {
        let n = g.n();
        let a = VertexSet::from_iter(n, a.iter().copied());
        let c = VertexSet::from_iter(n, c.iter().copied());
        let b = VertexSet::from_iter(n, b.iter().copied());
        let mask = a.union(&c).union(&b);
        Separation::new(g, &mask, a, c, b).unwrap()
    }

    #[test]
    fn crossing_examples() {
        let p5 = Graph::path(5);
        let s1 = sep(&p5, &[0], &[1], &[2, 3, 4]);
        let s2 = sep(&p5, &[4], &[3], &[0, 1, 2]);
        assert!(!crosses(&s1, &s1));
        assert!(!crosses(&s1, &s2));

        // genuinely crossing pair on C6: all containment patterns fail
        let c6 = Graph::cycle(6);
        let t1 = sep(&c6, &[0, 1], &[2, 5], &[3, 4]);
        let t2 = sep(&c6, &[1, 2], &[0, 3], &[4, 5]);
        assert!(crosses(&t1, &t2));

        // the C6 pair with A-shores {v1} and {v4} nests via the second
        // containment pattern, so it is non-crossing
        let u1 = sep(&c6, &[0], &[1, 5], &[2, 3, 4]);
        let u2 = sep(&c6, &[3], &[2, 4], &[5, 0, 1]);
        assert!(!crosses(&u1, &u2));
    }

    #[test]
    fn skewedness() {
        let p5 = Graph::path(5);
        let w = WeightAssignment::uniform(5, &p5.vertices());
        let s = sep(&p5, &[0], &[1], &[2, 3, 4]);
        let (sk, norm) = is_skewed(&s, &w, &rat(1, 2));
        assert!(sk);
        assert_eq!(norm.a().to_vec(), vec![0]);
        let (sk, _) = is_skewed(&s, &w, &rat(1, 10));
        assert!(!sk);
        // both sides light: lighter becomes A
        let (sk, norm) = is_skewed(&s.swapped(), &w, &rat(1, 1));
        assert!(sk);
        assert_eq!(norm.a().to_vec(), vec![0]);
    }

    #[test]
    fn canonical_star_separation_examples() {
        let p5 = Graph::path(5);
        let w = WeightAssignment::uniform(5, &p5.vertices());
        // K = {v3} (index 2): components {v1} and {v5} tie at 1/5,
        // tie-break picks {v1}
        let k = VertexSet::from_iter(5, [2]);
        let s = canonical_star_separation(&p5, &p5.vertices(), &w, &k).unwrap();
        assert!(s.tie_broken);
        assert_eq!(s.sep.b().to_vec(), vec![0]);
        assert_eq!(s.sep.c().to_vec(), vec![1, 2]);
        assert_eq!(s.sep.a().to_vec(), vec![3, 4]);

        // star K_{1,3}: N[center] covers everything
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let w = WeightAssignment::uniform(4, &star.vertices());
        let s =
            canonical_star_separation(&star, &star.vertices(), &w, &VertexSet::from_iter(4, [0]))
                .unwrap();
        assert!(s.sep.b().is_empty());
        assert_eq!(s.sep.c().to_vec(), vec![0]);
        assert_eq!(s.sep.a().to_vec(), vec![1, 2, 3]);

        // C6, K = {v1}: one component remains
        let c6 = Graph::cycle(6);
        let w = WeightAssignment::uniform(6, &c6.vertices());
        let s = canonical_star_separation(&c6, &c6.vertices(), &w, &VertexSet::from_iter(6, [0]))
            .unwrap();
        assert_eq!(s.sep.b().to_vec(), vec![2, 3, 4]);
        assert_eq!(s.sep.c().to_vec(), vec![0, 1, 5]);
        assert!(s.sep.a().is_empty());
    }

    #[test]
    fn minimal_clique_cutsets_examples() {
        let p5 = Graph::path(5);
        let cuts = minimal_clique_cutsets(&p5, &p5.vertices(), 1);
        let lists: Vec<Vec<usize>> = cuts.iter().map(|c| c.to_vec()).collect();
        assert_eq!(lists, vec![vec![1], vec![2], vec![3]]);

        // two triangles sharing an edge
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let cuts = minimal_clique_cutsets(&g, &g.vertices(), 2);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].to_vec(), vec![0, 1]);

        let c6 = Graph::cycle(6);
        for k in 1..=2 {
            assert!(minimal_clique_cutsets(&c6, &c6.vertices(), k).is_empty());
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(center_partition_bound(2, 3), 33);
        // f(2, δ) = 2(δ+1)^2 + 1
        for delta in 1..7u64 {
            assert_eq!(
                center_partition_bound(2, delta),
                2 * (delta + 1) * (delta + 1) + 1
            );
        }

        let p5 = Graph::path(5);
        let centers: Vec<VertexSet> = [0, 2, 4]
            .iter()
            .map(|&v| VertexSet::from_iter(5, [v]))
            .collect();
        let classes = partition_centers(&p5, &centers, 1, 2).unwrap();
        assert_eq!(classes.len(), 1, "pairwise anticomplete centers: one class");

        let tri = Graph::complete(3);
        let centers: Vec<VertexSet> = (0..3).map(|v| VertexSet::from_iter(3, [v])).collect();
        let classes = partition_centers(&tri, &centers, 1, 2).unwrap();
        assert_eq!(classes.len(), 3);
    }

    #[test]
    fn star_cutset_examples() {
        let p5 = Graph::path(5);
        let sc = find_star_cutset(&p5, &p5.vertices()).expect("P5 has a star cutset");
        let rest = p5.vertices().difference(&sc.cutset);
        assert!(p5.components(&rest).len() >= 2);

        let c6 = Graph::cycle(6);
        assert!(find_star_cutset(&c6, &c6.vertices()).is_none());

        // long pyramid: apex 0, triangle {1,2,3}, all paths of length 2
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
        assert!(find_star_cutset(&lp, &lp.vertices()).is_none());
    }

    #[test]
    fn error_paths() {
        let p5 = Graph::path(5);
        let mask = p5.vertices();
        let w = WeightAssignment::uniform(5, &mask);
        // not a minimal clique cutset
        let err = minimal_clique_separation(&p5, &mask, &w, &VertexSet::from_iter(5, [0]));
        assert!(matches!(
            err,
            Err(SeparationError::NotMinimalCliqueCutset(_))
        ));
        // empty or non-clique centers are rejected
        assert!(matches!(
            canonical_star_separation(&p5, &mask, &w, &VertexSet::new(5)),
            Err(SeparationError::BadCenter(_))
        ));
        assert!(matches!(
            canonical_star_separation(&p5, &mask, &w, &VertexSet::from_iter(5, [0, 2])),
            Err(SeparationError::BadCenter(_))
        ));
        // claimed degree bound below the actual degree
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let centers = vec![VertexSet::from_iter(4, [1])];
        assert!(matches!(
            partition_centers(&star, &centers, 1, 2),
            Err(SeparationError::DegreeBoundViolated {
                actual: 3,
                bound: 2
            })
        ));
    }

    #[test]
    fn clique_star_validation() {
        let p5 = Graph::path(5);
        let cs = CliqueStar {
            set: VertexSet::from_iter(5, [1, 2]),
            center: VertexSet::from_iter(5, [2]),
        };
        assert!(cs.validate(&p5, &p5.vertices()));
        let bad = CliqueStar {
            set: VertexSet::from_iter(5, [0, 4]),
            center: VertexSet::from_iter(5, [0]),
        };
        assert!(!bad.validate(&p5, &p5.vertices()));
    }
}
