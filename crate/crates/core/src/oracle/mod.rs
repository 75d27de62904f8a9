//! Brute-force ground truth: exact treewidth by elimination-order dynamic
//! programming, exhaustive separation-number and balanced-separator search,
//! subset-census structure oracles, small-graph enumeration, and
//! class-member generation.

pub mod census;
pub mod smallgraphs;

use crate::detect::{is_c4free_odd_signable, CapExceeded, SearchBudget};
use crate::graph::{Graph, Rational, VertexSet, WeightAssignment};
use crate::laminar::TreeDecomposition;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance with {n} vertices exceeds the {task} cap of {cap}")]
    CapExceeded {
        task: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("oracle step budget exhausted")]
    StepsExhausted,
    #[error("rejection sampling timed out after {attempts} attempts")]
    RejectionTimeout { attempts: u32 },
    #[error("constructive generation failed after {attempts} attempts")]
    ConstructionFailed { attempts: u32 },
}

impl From<CapExceeded> for OracleError {
    fn from(_: CapExceeded) -> Self {
        OracleError::StepsExhausted
    }
}

/// Per-task instance caps plus a shared step counter. Exceeding any cap is
/// a distinct outcome, never a wrong answer.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub treewidth_max_n: usize,
    pub sep_star_max_n: usize,
    pub balanced_sep_max_n: usize,
    pub steps: SearchBudget,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            treewidth_max_n: 13,
            sep_star_max_n: 10,
            balanced_sep_max_n: 20,
            steps: SearchBudget::default_budget(),
            seed: 0,
        }
    }
}

fn relabel(g: &Graph, mask: &VertexSet) -> (Vec<usize>, Vec<u32>) {
    let ids = mask.to_vec();
    let index: std::collections::HashMap<usize, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rows = ids
        .iter()
        .map(|&v| {
            let mut row = 0u32;
            for &u in g.neighbors(v) {
                if let Some(&i) = index.get(&u) {
                    row |= 1 << i;
                }
            }
            row
        })
        .collect();
    (ids, rows)
}

/// Size of the q-set when `v` is eliminated right after the prefix `prev`:
/// vertices outside `prev ∪ {v}` adjacent to `v` or reachable from it
/// through `prev`.
fn elimination_degree(rows: &[u32], prev: u32, v: usize) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    let mut reach = 0u32;
    while frontier != 0 {
        let mut nb = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            nb |= rows[u];
        }
        reach |= nb;
        frontier = nb & prev & !comp;
        comp |= frontier;
    }
    (reach & !prev & !(1u32 << v)).count_ones()
}

/// Exact treewidth of the mask by subset dynamic programming over
/// elimination prefixes, together with an optimal tree decomposition
/// (verified against the axioms before returning).
pub fn treewidth_exact(
    g: &Graph,
    mask: &VertexSet,
    budget: &OracleBudget,
) -> Result<(usize, TreeDecomposition), OracleError> {
    let k = mask.len();
    if k > budget.treewidth_max_n {
        return Err(OracleError::CapExceeded {
            task: "treewidth",
            n: k,
            cap: budget.treewidth_max_n,
        });
    }
    if k == 0 {
        return Ok((0, TreeDecomposition::single(VertexSet::new(g.n()))));
    }
    let (ids, rows) = relabel(g, mask);
    let full: u32 = if k == 32 { !0 } else { (1u32 << k) - 1 };
    let mut dp = vec![u8::MAX; (full as usize) + 1];
    let mut choice = vec![0u8; (full as usize) + 1];
    dp[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut who = 0u8;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = s & !(1u32 << v);
            let q = elimination_degree(&rows, prev, v) as u8;
            let val = q.max(dp[prev as usize]);
            if val < best {
                best = val;
                who = v as u8;
            }
        }
        dp[s as usize] = best;
        choice[s as usize] = who;
    }
    let width = dp[full as usize] as usize;

    let mut order = Vec::with_capacity(k);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1u32 << v);
    }
    order.reverse();

    // bags from the elimination order over the fill graph
    let mut fill = rows.clone();
    let mut bags: Vec<u32> = Vec::with_capacity(k);
    let mut alive = full;
    for &v in &order {
        let hi = fill[v] & alive & !(1u32 << v);
        bags.push(hi | (1u32 << v));
        let mut xs = hi;
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            fill[x] |= hi & !(1u32 << x);
        }
        alive &= !(1u32 << v);
    }
    let position: Vec<usize> = {
        let mut p = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let rest = bags[i] & !(1u32 << v);
        if rest == 0 {
            roots.push(i);
            continue;
        }
        let mut parent = usize::MAX;
        let mut bits = rest;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            parent = parent.min(position[u]);
        }
        edges.push((i, parent));
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    let real_bags: Vec<VertexSet> = bags
        .iter()
        .map(|&b| {
            let mut s = VertexSet::new(g.n());
            let mut bits = b;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                s.insert(ids[v]);
            }
            s
        })
        .collect();
    let td = TreeDecomposition::new(real_bags, edges);
    td.verify_axioms(g, mask)
        .expect("optimal decomposition must satisfy the axioms");
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Exact separation number: the least `k` such that every `S` admits a set
/// `X` of at most `k` vertices leaving every component with at most `c·|S|`
/// vertices of `S`.
pub fn sep_star_exact(
    g: &Graph,
    mask: &VertexSet,
    c: &Rational,
    budget: &OracleBudget,
) -> Result<usize, OracleError> {
    let k = mask.len();
    if k > budget.sep_star_max_n {
        return Err(OracleError::CapExceeded {
            task: "sep-star",
            n: k,
            cap: budget.sep_star_max_n,
        });
    }
    let (_, rows) = relabel(g, mask);
    let full: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let cn = c.numer();
    let cd = c.denom();

    let components_ok = |x: u32, s_set: u32, s_size: u64| -> bool {
        // every component of (full \ x) holds at most c·|S| vertices of S
        let mut rest = full & !x;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            loop {
                let mut grow = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grow |= rows[v] & rest;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            let hits = (comp & s_set).count_ones() as u64;
            // hits ≤ (cn/cd)·s_size  ⇔  hits·cd ≤ cn·s_size, exactly
            if Rational::from_integer(hits.into()) * cd.clone()
                > Rational::from_integer(s_size.into()) * cn.clone()
            {
                return false;
            }
            rest &= !comp;
        }
        true
    };

    let mut best = 0usize;
    for s_set in 0..=full {
        let s_size = s_set.count_ones() as u64;
        // does some X with |X| ≤ best work?
        let mut ok = false;
        for x in 0..=full {
            if x.count_ones() as usize <= best && components_ok(x, s_set, s_size) {
                ok = true;
                break;
            }
        }
        if ok {
            continue;
        }
        // grow best to the true minimum for this S
        'grow: for size in best + 1..=k {
            for x in 0..=full {
                if x.count_ones() as usize == size && components_ok(x, s_set, s_size) {
                    best = size;
                    break 'grow;
                }
            }
        }
    }
    Ok(best)
}

/// Independent d-boundedness check: exact search for at most `d` centers
/// whose radius-`d` balls cover `y`.
pub fn d_bounded_cover(g: &Graph, mask: &VertexSet, y: &VertexSet, d: usize) -> Option<Vec<usize>> {
    if y.is_empty() {
        return Some(Vec::new());
    }
    let candidates: Vec<(usize, VertexSet)> = mask
        .iter()
        .map(|v| {
            (
                v,
                g.ball(mask, &VertexSet::from_iter(g.n(), [v]), d)
                    .intersection(y),
            )
        })
        .filter(|(_, covers)| !covers.is_empty())
        .collect();
    fn rec(
        candidates: &[(usize, VertexSet)],
        uncovered: &VertexSet,
        picked: &mut Vec<usize>,
        limit: usize,
    ) -> bool {
        let pivot = match uncovered.min() {
            Some(p) => p,
            None => return true,
        };
        if picked.len() == limit {
            return false;
        }
        for (v, covers) in candidates {
            if covers.contains(pivot) {
                picked.push(*v);
                let rest = uncovered.difference(covers);
                if rec(candidates, &rest, picked, limit) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::new();
    if rec(&candidates, y, &mut picked, d) {
        Some(picked)
    } else {
        None
    }
}

/// Is `y` a (w, c, d)-balanced separator of the mask? Oracle-side check,
/// implemented independently of the pipeline verifier.
pub fn is_balanced_separator_oracle(
    g: &Graph,
    mask: &VertexSet,
    w: &WeightAssignment,
    y: &VertexSet,
    c: &Rational,
    d: usize,
) -> bool {
    let rest = mask.difference(y);
    for comp in g.components(&rest) {
        if &w.weight_of(&comp) > c {
            return false;
        }
    }
    d_bounded_cover(g, mask, y, d).is_some()
}

/// Smallest (by size, then lexicographic) (w, c, d)-balanced separator, or
/// a proof of absence by exhaustion.
pub fn balanced_separator_exact(
    g: &Graph,
    mask: &VertexSet,
    w: &WeightAssignment,
    c: &Rational,
    d: usize,
    budget: &mut OracleBudget,
) -> Result<Option<VertexSet>, OracleError> {
    let k = mask.len();
    if k > budget.balanced_sep_max_n {
        return Err(OracleError::CapExceeded {
            task: "balanced-separator",
            n: k,
            cap: budget.balanced_sep_max_n,
        });
    }
    let ids = mask.to_vec();
    for size in 0..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            budget.steps.spend(1)?;
            let y = VertexSet::from_iter(g.n(), combo.iter().map(|&i| ids[i]));
            if is_balanced_separator_oracle(g, mask, w, &y, c, d) {
                return Ok(Some(y));
            }
            if !next_combination(&mut combo, k) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advance a sorted index combination over `[0, k)` to its lex successor.
pub fn next_combination(combo: &mut [usize], k: usize) -> bool {
    let size = combo.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if combo[i] != i + k - size {
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenStrategy {
    /// Sample bounded-degree connected graphs, keep class members.
    Rejection,
    /// Emit verified gadgets: holes, cliques, long pyramids, wheel templates
    /// with pendant trees, and 2-join compositions.
    Constructive,
}

/// Deterministic class-member generator. Every returned graph is connected,
/// has maximum degree at most `delta`, and passes the class detector.
pub fn generate_class_member(
    delta: usize,
    n: usize,
    seed: u64,
    strategy: GenStrategy,
) -> Result<Graph, OracleError> {
    assert!(delta >= 2, "degree bound below 2 leaves only paths");
    let mut rng = StdRng::seed_from_u64(seed ^ 0x6f64_6473_6967);
    match strategy {
        GenStrategy::Rejection => rejection_sample(delta, n, &mut rng),
        GenStrategy::Constructive => constructive_sample(delta, n, &mut rng),
    }
}

fn verify_member(g: &Graph) -> bool {
    let mut budget = SearchBudget::new(10 * crate::detect::DEFAULT_BUDGET);
    is_c4free_odd_signable(g, &g.vertices(), &mut budget).is_member()
}

fn rejection_sample(delta: usize, n: usize, rng: &mut StdRng) -> Result<Graph, OracleError> {
    const MAX_ATTEMPTS: u32 = 4000;
    for _ in 0..MAX_ATTEMPTS {
        // random spanning tree, then a few extra edges under the degree cap
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut deg = vec![0usize; n];
        let mut ok = true;
        for v in 1..n {
            let mut tries = 0;
            loop {
                let u = rng.random_range(0..v);
                if deg[u] < delta {
                    edges.push((u, v));
                    deg[u] += 1;
                    deg[v] += 1;
                    break;
                }
                tries += 1;
                if tries > 50 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let extra = rng.random_range(0..=n.div_ceil(3));
        for _ in 0..extra {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && deg[u] < delta && deg[v] < delta && !edges.contains(&(u.min(v), u.max(v)))
            {
                edges.push((u.min(v), u.max(v)));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let g = Graph::new(n, &edges).expect("generator emits simple graphs");
        if verify_member(&g) {
            return Ok(g);
        }
    }
    Err(OracleError::RejectionTimeout {
        attempts: MAX_ATTEMPTS,
    })
}

/// Grow pendant trees at vertices with spare degree until the target size.
/// Pendant growth adds no cycles, so it can never create a hole, a wheel,
/// or a three-path configuration: class membership is preserved.
fn pad_with_trees(
    edges: &mut Vec<(usize, usize)>,
    n0: usize,
    target: usize,
    delta: usize,
    rng: &mut StdRng,
) -> usize {
    let mut n = n0;
    let mut deg = vec![0usize; target.max(n0)];
    for &(u, v) in edges.iter() {
        deg[u] += 1;
        deg[v] += 1;
    }
    while n < target {
        let candidates: Vec<usize> = (0..n).filter(|&v| deg[v] < delta).collect();
        if candidates.is_empty() {
            break;
        }
        let v = candidates[rng.random_range(0..candidates.len())];
        edges.push((v, n));
        deg[v] += 1;
        deg[n] += 1;
        n += 1;
    }
    n
}

fn cycle_edges(m: usize) -> Vec<(usize, usize)> {
    (0..m).map(|i| (i, (i + 1) % m)).collect()
}

fn constructive_sample(delta: usize, n: usize, rng: &mut StdRng) -> Result<Graph, OracleError> {
    const MAX_ATTEMPTS: u32 = 200;
    for _ in 0..MAX_ATTEMPTS {
        let shape = rng.random_range(0..9u32);
        let candidate = match (shape, delta) {
            (_, 2) => {
                // only paths and long holes fit under degree 2
                if n >= 5 && rng.random_bool(0.7) {
                    Some((cycle_edges(n), n))
                } else {
                    Some(((1..n).map(|i| (i - 1, i)).collect(), n))
                }
            }
            (0, _) if n >= 5 => {
                let m = rng.random_range(5..=n);
                Some((cycle_edges(m), m))
            }
            (1, _) => {
                let top = delta.min(n.saturating_sub(1)).max(2);
                let k = rng.random_range(2..=top.max(2)).min(n);
                let mut edges = Vec::new();
                for u in 0..k {
                    for v in u + 1..k {
                        edges.push((u, v));
                    }
                }
                Some((edges, k))
            }
            (2, d) if d >= 3 && n >= 8 => Some(long_pyramid_edges(n, rng)),
            (3, d) if d >= 3 && n >= 10 => Some(wheel_gadget(n, rng, WheelShape::Proper)),
            (4, d) if d >= 3 && n >= 6 => Some(wheel_gadget(n, rng, WheelShape::Twin)),
            (5, d) if d >= 3 && n >= 8 => Some(wheel_gadget(n, rng, WheelShape::ShortPyramid)),
            (6, d) if d >= 3 && n >= 22 => Some(heavy_lobe_wheel(n)),
            (7, d) if d >= 3 && n >= 12 => two_join_composition(rng),
            (8, d) if d >= 3 && n >= 20 => Some(three_pyramid_chain()),
            _ => None,
        };
        let Some((mut edges, base_n)) = candidate else {
            continue;
        };
        // pendant growth would hand the compositions a star cutset; keep
        // them as built
        let total = if shape >= 7 && delta >= 3 {
            base_n
        } else {
            pad_with_trees(&mut edges, base_n, n, delta, rng)
        };
        let g = Graph::new(total, &edges).expect("gadgets are simple");
        if g.max_degree() <= delta && g.is_connected_within(&g.vertices()) && verify_member(&g) {
            return Ok(g);
        }
    }
    Err(OracleError::ConstructionFailed {
        attempts: MAX_ATTEMPTS,
    })
}

fn long_pyramid_edges(n: usize, rng: &mut StdRng) -> (Vec<(usize, usize)>, usize) {
    // apex 0, triangle 1,2,3; three paths of length ≥ 2
    let spare = (n.saturating_sub(7)) / 3;
    let mut lens = [0usize; 3];
    for l in lens.iter_mut() {
        *l = 1 + rng.random_range(0..=spare.min(3));
    }
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    let mut next = 4;
    for (i, &len) in lens.iter().enumerate() {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, i + 1));
    }
    (edges, next)
}

enum WheelShape {
    Proper,
    Twin,
    ShortPyramid,
}

fn wheel_gadget(n: usize, rng: &mut StdRng, shape: WheelShape) -> (Vec<(usize, usize)>, usize) {
    match shape {
        WheelShape::Proper => {
            let m = 9 + rng.random_range(0..=(n.saturating_sub(10)).min(4));
            let hub = m;
            let mut edges = cycle_edges(m);
            let g1 = 3 + rng.random_range(0..=(m.saturating_sub(9)).min(2));
            let g2 = 3;
            edges.push((hub, 0));
            edges.push((hub, g1));
            edges.push((hub, g1 + g2));
            (edges, m + 1)
        }
        WheelShape::Twin => {
            let m = 5 + rng.random_range(0..=(n.saturating_sub(6)).min(5));
            let hub = m;
            let mut edges = cycle_edges(m);
            edges.push((hub, 0));
            edges.push((hub, 1));
            edges.push((hub, 2));
            (edges, m + 1)
        }
        WheelShape::ShortPyramid => {
            let m = 7 + rng.random_range(0..=(n.saturating_sub(8)).min(4));
            let hub = m;
            let mut edges = cycle_edges(m);
            edges.push((hub, 0));
            edges.push((hub, 1));
            edges.push((hub, 4));
            (edges, m + 1)
        }
    }
}

/// Proper wheel with all padding forced onto one rim arc vertex, so the
/// folded weight keeps the wheel-side star separation properly skewed and
/// the star stage of the pipeline actually runs.
fn heavy_lobe_wheel(n: usize) -> (Vec<(usize, usize)>, usize) {
    let hub = 9;
    let mut edges = cycle_edges(9);
    edges.push((hub, 0));
    edges.push((hub, 3));
    edges.push((hub, 6));
    // long path hanging off rim vertex 1
    let mut prev = 1;
    let mut next = 10;
    while next < n {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    (edges, next.max(10))
}

/// Two long pyramids, each with a flat length-3 path collapsed to its ends,
/// joined by the 2-join edges between the stubs.
fn two_join_composition(rng: &mut StdRng) -> Option<(Vec<(usize, usize)>, usize)> {
    // pyramid with paths (2,2,3): apex 0, triangle 1,2,3,
    // paths: 0-4-1, 0-5-2, 0-6-7-3  (11 vertices couldn't be: count = 8)
    let pyramid = |offset: usize| -> (Vec<(usize, usize)>, usize, usize, usize) {
        let e = |u: usize, v: usize| (u + offset, v + offset);
        let edges = vec![
            e(1, 2),
            e(1, 3),
            e(2, 3),
            e(0, 4),
            e(4, 1),
            e(0, 5),
            e(5, 2),
            e(0, 6),
            e(6, 7),
            e(7, 3),
        ];
        // the flat path 0-6-7-3 yields attachment stubs 0 and 3
        (edges, 8, offset, 3 + offset)
    };
    let (mut edges, sz, a1, b1) = pyramid(0);
    let (edges2, _, a2, b2) = pyramid(sz);
    edges.extend(edges2);
    // remove the two interior stubs of each flat path and wire the 2-join
    let drop: Vec<(usize, usize)> = vec![(0, 6), (6, 7), (7, 3), (8, 14), (14, 15), (15, 11)];
    edges.retain(|&(u, v)| !drop.contains(&(u, v)));
    edges.push((a1, a2));
    edges.push((b1, b2));
    // compact: vertices 6,7,14,15 became isolated; relabel densely
    let keep: Vec<usize> = (0..16).filter(|v| ![6, 7, 14, 15].contains(v)).collect();
    let index: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let relabeled: Vec<(usize, usize)> =
        edges.iter().map(|&(u, v)| (index[&u], index[&v])).collect();
    let _ = rng;
    Some((relabeled, keep.len()))
}

/// Three long pyramids chained by two 2-join substitutions: the middle
/// apex keeps three pairwise non-adjacent neighbors, so the result is
/// star-cutset-free but not basic, and its decomposition tree has real
/// depth.
fn three_pyramid_chain() -> (Vec<(usize, usize)>, usize) {
    let lp = |o: usize| -> Vec<(usize, usize)> {
        vec![
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (4, 1),
            (0, 5),
            (5, 6),
            (6, 2),
            (0, 7),
            (7, 8),
            (8, 3),
        ]
        .into_iter()
        .map(|(u, v)| (u + o, v + o))
        .collect()
    };
    let lpb: Vec<(usize, usize)> = vec![
        (19, 20),
        (19, 21),
        (20, 21),
        (18, 22),
        (22, 23),
        (23, 19),
        (18, 24),
        (24, 25),
        (25, 20),
        (18, 26),
        (26, 27),
        (27, 21),
    ];
    let mut edges = lp(0);
    edges.extend(lp(9));
    edges.extend(lpb);
    let drop: Vec<(usize, usize)> = vec![
        (0, 5),
        (5, 6),
        (6, 2),
        (9, 14),
        (14, 15),
        (15, 11),
        (18, 22),
        (22, 23),
        (23, 19),
        (18, 24),
        (24, 25),
        (25, 20),
    ];
    edges.retain(|e| !drop.contains(e));
    edges.push((0, 18));
    edges.push((2, 19));
    edges.push((9, 18));
    edges.push((11, 20));
    let gone = [5, 6, 14, 15, 22, 23, 24, 25];
    let keep: Vec<usize> = (0..28).filter(|v| !gone.contains(v)).collect();
    let index: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (index[&u], index[&v])).collect();
    (edges, keep.len())
}
