//! Property and campaign tests: oracle-backed invariants for the graph
//! primitives, laminar machinery on random families, crossing lemmas, and
//! the structure-theory predicates on clean generated graphs.

use oddsig_core::detect::{
    enumerate_holes, enumerate_wheels, is_c4free_odd_signable, SearchBudget,
};
use oddsig_core::graph::{rat, Graph, HoleRecord, VertexSet, WeightAssignment};
use oddsig_core::laminar::{build_tree_decomposition, central_bag, is_laminar};
use oddsig_core::oracle::census::hole_count;
use oddsig_core::oracle::{generate_class_member, GenStrategy};
use oddsig_core::pipeline::{compute_balanced_separator, DriverOptions};
use oddsig_core::separation::{
    canonical_star_separation, crosses, is_skewed, minimal_clique_cutsets,
    minimal_clique_separation, partition_centers, Separation, StarSeparation,
};
use oddsig_core::wheels::{
    check_paths_shapes_predicate, check_u_x_poor_predicate, classify_wheel, enumerate_forcers,
    twin_richness, ForcerFamily, WheelKind,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::ops::ControlFlow;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let count = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.35), count).prop_map(move |flags| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if flags[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    // radius-d balls agree with an all-pairs Floyd–Warshall oracle
    #[test]
    fn ball_matches_floyd_warshall(g in arb_graph(32), seed in 0usize..32, radius in 0usize..6) {
        let n = g.n();
        let seed = seed % n;
        const INF: usize = usize::MAX / 4;
        let mut dist = vec![vec![INF; n]; n];
        for v in 0..n {
            dist[v][v] = 0;
        }
        for (u, v) in g.edges() {
            dist[u][v] = 1;
            dist[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                    }
                }
            }
        }
        let expected: Vec<usize> = (0..n).filter(|&v| dist[seed][v] <= radius).collect();
        let ball = g.ball(&g.vertices(), &VertexSet::from_iter(n, [seed]), radius);
        prop_assert_eq!(ball.to_vec(), expected);
    }

    // components partition the mask, and any two are anticomplete
    #[test]
    fn components_partition_and_separate(g in arb_graph(12)) {
        let mask = g.vertices();
        let comps = g.components(&mask);
        let mut union = VertexSet::new(g.n());
        for c in &comps {
            prop_assert!(union.is_disjoint(c));
            union.union_with(c);
        }
        prop_assert_eq!(&union, &mask);
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                prop_assert_eq!(g.is_anticomplete(&comps[i], &comps[j]), Ok(true));
            }
        }
    }

    // any path returned by the avoiding search satisfies the path invariants
    #[test]
    fn path_avoiding_returns_induced_paths(g in arb_graph(12), a in 0usize..12, b in 0usize..12) {
        let n = g.n();
        let (a, b) = (a % n, b % n);
        if a != b {
            let to = VertexSet::from_iter(n, [b]);
            if let Some(p) = g.path_avoiding(&g.vertices(), a, &to, &VertexSet::new(n)) {
                prop_assert!(p.validate(&g));
                prop_assert_eq!(p.ends(), (a, b));
            }
        }
    }

    // canonical hole enumeration emits each hole once and matches the
    // subset-census count
    #[test]
    fn hole_enumeration_matches_census(g in arb_graph(9)) {
        let mask = g.vertices();
        let mut seen: std::collections::HashSet<HoleRecord> = std::collections::HashSet::new();
        let mut count = 0usize;
        enumerate_holes(&g, &mask, g.n().max(4), &mut SearchBudget::default_budget(), &mut |h| {
            assert!(h.validate(&g), "enumerated hole fails its invariants");
            assert!(seen.insert(h.clone()), "duplicate hole emitted");
            count += 1;
            ControlFlow::Continue(())
        });
        prop_assert_eq!(count, hole_count(&g, &mask, g.n().max(4)));
    }

    // skewedness normalization always reports the light shore as A
    #[test]
    fn skew_normalization(g in arb_graph(10)) {
        let mask = g.vertices();
        let comps = g.components(&mask);
        if comps.len() >= 2 {
            let a = comps[0].clone();
            let b = comps[1].clone();
            let c = mask.difference(&a).difference(&b);
            if let Ok(sep) = Separation::new(&g, &mask, a, c, b) {
                let w = WeightAssignment::uniform(g.n(), &mask);
                let (skewed, norm) = is_skewed(&sep, &w, &rat(1, 1));
                prop_assert!(skewed);
                prop_assert!(w.weight_of(norm.a()) <= w.weight_of(norm.b()));
            }
        }
    }
}

fn random_connected(n: usize, extra: usize, rng: &mut StdRng) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !edges.contains(&(u.min(v), u.max(v))) {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Minimal clique separations at a fixed size are pairwise non-crossing,
/// and the corresponding tree decomposition passes the axioms plus the
/// edge bijection, across 200 random connected graphs.
#[test]
fn laminar_families_build_verified_tree_decompositions() {
    let mut rng = StdRng::seed_from_u64(31415);
    let mut built = 0usize;
    for _ in 0..400 {
        let n = rng.random_range(5..=14);
        let g = random_connected(n, rng.random_range(0..=n / 3), &mut rng);
        let mask = g.vertices();
        let w = WeightAssignment::uniform(n, &mask);
        let mut seps: Vec<Separation> = Vec::new();
        for k in 1..=3 {
            let cuts = minimal_clique_cutsets(&g, &mask, k);
            if cuts.is_empty() {
                continue;
            }
            for cut in cuts {
                let s = minimal_clique_separation(&g, &mask, &w, &cut).unwrap();
                seps.push(s.sep);
            }
            break;
        }
        if seps.is_empty() {
            continue;
        }
        assert!(
            is_laminar(&seps).is_ok(),
            "clique separations must be laminar"
        );
        // the builder verifies axioms and the bijection internally; check
        // the edge count explicitly here as an external witness
        let td = build_tree_decomposition(&g, &mask, &seps).unwrap();
        assert_eq!(td.edges().len(), seps.len());
        td.verify_axioms(&g, &mask).unwrap();
        built += 1;
    }
    assert!(built >= 200, "too few laminar families exercised: {built}");
}

/// Proper canonical star separations whose centers are anticomplete never
/// cross, on theta-free graphs with no clique cutset (seeded random scan).
#[test]
fn anticomplete_star_separations_do_not_cross() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut pairs = 0usize;
    for _ in 0..4000 {
        let n = rng.random_range(7..=11);
        let p = rng.random_range(250..550);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_range(0..1000) < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        let mask = g.vertices();
        if !g.is_connected_within(&mask)
            || oddsig_core::oracle::census::census_all(&g, &mask).theta
            || (1..n).any(|k| !minimal_clique_cutsets(&g, &mask, k).is_empty())
        {
            continue;
        }
        let w = WeightAssignment::uniform(n, &mask);
        let proper: Vec<(usize, Separation)> = (0..n)
            .filter_map(|v| {
                let k = VertexSet::from_iter(n, [v]);
                let s = canonical_star_separation(&g, &mask, &w, &k).unwrap();
                s.sep.is_proper().then_some((v, s.sep))
            })
            .collect();
        for i in 0..proper.len() {
            for j in i + 1..proper.len() {
                let (u, su) = &proper[i];
                let (v, sv) = &proper[j];
                if !g.has_edge(*u, *v) {
                    assert!(
                        !crosses(su, sv),
                        "anticomplete-centered proper star separations crossed"
                    );
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs >= 20, "too few separation pairs exercised: {pairs}");
}

/// For every forcer of a clique-cutset-free class member, the canonical
/// star separation of its center removes part of the forcer's hole.
/// Exercised on bare wheel gadgets (which carry no clique cutsets) of all
/// three forcer kinds.
#[test]
fn forcer_shore_meets_hole() {
    let wheel = |m: usize, spokes: &[usize]| -> Graph {
        let hub = m;
        let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        for &s in spokes {
            edges.push((hub, s));
        }
        Graph::new(m + 1, &edges).unwrap()
    };
    let gadgets = vec![
        wheel(9, &[0, 3, 6]),
        wheel(11, &[0, 3, 7]),
        wheel(5, &[0, 1, 2]),
        wheel(7, &[0, 1, 4]),
        wheel(9, &[0, 1, 5]),
    ];
    let mut checked = 0usize;
    for (i, g) in gadgets.iter().enumerate() {
        let mask = g.vertices();
        assert!(
            is_c4free_odd_signable(&g.clone(), &mask, &mut SearchBudget::default_budget())
                .is_member()
        );
        assert!((1..=3).all(|k| minimal_clique_cutsets(g, &mask, k).is_empty()));
        let w = WeightAssignment::uniform(g.n(), &mask);
        let forcers = enumerate_forcers(
            g,
            &mask,
            &[ForcerFamily::Strong, ForcerFamily::Twin],
            &mut SearchBudget::default_budget(),
        )
        .unwrap();
        for f in forcers {
            let s = canonical_star_separation(g, &mask, &w, &f.center).unwrap();
            let hole = f.hole.vertex_set(g.n());
            assert!(
                s.sep.a().intersects(&hole),
                "A shore misses the forcer hole (gadget {i})"
            );
            checked += 1;
        }
    }
    assert!(checked >= 3, "too few forcers exercised: {checked}");
}

/// The twin-wheel implication predicates never falsify on clean graphs:
/// a wheel attachment matching the poorness hypothesis forces clone-poor,
/// and non-terminal twin wheels always expose both escape paths.
#[test]
fn twin_wheel_predicates_on_clean_graphs() {
    let mut implications = 0usize;
    let mut shape_checks = 0usize;
    for seed in 0..40u64 {
        let Ok(g) = generate_class_member(4, 14, 900 + seed, GenStrategy::Constructive) else {
            continue;
        };
        let mask = g.vertices();
        let mut budget = SearchBudget::default_budget();
        let strong = enumerate_forcers(&g, &mask, &[ForcerFamily::Strong], &mut budget).unwrap();
        if !strong.is_empty() {
            continue; // predicates are guaranteed only on clean graphs
        }
        for wheel in enumerate_wheels(&g, &mask, &mut budget).unwrap() {
            let class = classify_wheel(&g, &wheel);
            let WheelKind::Twin { clone } = class.kind else {
                continue;
            };
            for u in mask.iter() {
                if let Ok(check) = check_u_x_poor_predicate(&g, &mask, &wheel.hole, wheel.hub, u) {
                    assert!(
                        check.implication_holds(),
                        "poorness implication falsified (seed {seed}, hub {}, u {u})",
                        wheel.hub
                    );
                    implications += 1;
                }
            }
            let richness = twin_richness(&g, &mask, &wheel.hole, wheel.hub, clone);
            if !richness.terminal {
                let found = check_paths_shapes_predicate(
                    &g,
                    &mask,
                    &wheel.hole,
                    wheel.hub,
                    &mut SearchBudget::default_budget(),
                )
                .unwrap();
                assert!(
                    found.is_some(),
                    "non-terminal twin wheel lacks its escape paths (seed {seed})"
                );
                shape_checks += 1;
            }
        }
    }
    assert!(implications > 0, "no implication instances exercised");
    let _ = shape_checks;
}

/// Stage monotonicity across full pipeline runs: bags strictly shrink and
/// forcers decomposed away never reappear in descendants.
#[test]
fn stage_monotonicity_and_forcer_death() {
    let options = DriverOptions {
        probe_small_separators: false,
        ..DriverOptions::default()
    };
    let mut stages_seen = 0usize;
    for seed in 0..25u64 {
        let Ok(g) = generate_class_member(3, 18, 1300 + seed, GenStrategy::Constructive) else {
            continue;
        };
        let w = WeightAssignment::uniform(g.n(), &g.vertices());
        let Ok((_, trace)) = compute_balanced_separator(&g, &w, &rat(1, 2), 3 * g.n(), &options)
        else {
            continue;
        };
        let mut prev = g.vertices();
        for stage in &trace.stages {
            assert!(stage.bag.is_subset(&prev) && stage.bag.len() < prev.len());
            prev = stage.bag.clone();
            stages_seen += 1;
        }
        if let Some(term) = &trace.terminal_mask {
            // every stage's separations removed their A shore for good
            for stage in &trace.stages {
                for sep in &stage.separations {
                    assert!(!term.intersects(sep.sep.a()));
                }
            }
        }
    }
    assert!(stages_seen > 0);
}

/// Reweighting bookkeeping: the central bag's assignment totals exactly 1
/// and the maximum stays within the folded bound when centers are unique.
#[test]
fn central_bag_weight_bounds() {
    let mut rng = StdRng::seed_from_u64(999);
    let mut exercised = 0usize;
    for _ in 0..100 {
        let n = rng.random_range(6..=14);
        let g = random_connected(n, rng.random_range(0..=2), &mut rng);
        let mask = g.vertices();
        let w = WeightAssignment::uniform(n, &mask);
        let cuts = minimal_clique_cutsets(&g, &mask, 1);
        if cuts.is_empty() {
            continue;
        }
        let mut seps: Vec<StarSeparation> = Vec::new();
        let mut ok = true;
        for cut in &cuts {
            let s = minimal_clique_separation(&g, &mask, &w, cut).unwrap();
            if &w.weight_of(s.sep.a()) >= &rat(1, 2) {
                ok = false;
                break;
            }
            if s.sep.is_proper() {
                seps.push(s);
            }
        }
        if !ok || seps.is_empty() {
            continue;
        }
        let cb = central_bag(&g, &mask, &w, &seps, &rat(1, 2)).unwrap();
        assert_eq!(*cb.weights.total(), rat(1, 1));
        if cb.centers_unique {
            // w_X^max ≤ w^max + 2^δ · ε with ε = 1/2
            let delta = g.max_degree() as i64;
            let bound = w.max_weight().clone() + rat(1 << delta.min(20), 2);
            assert!(cb.weights.max_weight() <= &bound);
        }
        for s in &seps {
            assert!(
                !cb.beta.intersects(s.sep.a()),
                "central bag not perpendicular"
            );
        }
        exercised += 1;
    }
    assert!(
        exercised >= 20,
        "too few central bags exercised: {exercised}"
    );
}

/// Generated members always re-verify as class members at full budget.
#[test]
fn generator_members_reverify() {
    for seed in 0..12u64 {
        for (delta, strategy) in [
            (2, GenStrategy::Rejection),
            (3, GenStrategy::Rejection),
            (4, GenStrategy::Constructive),
        ] {
            let g = generate_class_member(delta, 12, 4321 + seed, strategy).unwrap();
            let mut budget = SearchBudget::new(1_000_000_000);
            assert!(is_c4free_odd_signable(&g, &g.vertices(), &mut budget).is_member());
        }
    }
}

/// Star-cutset-free class members at oracle scale respect the cited
/// treewidth bound for the class (45δ − 1), with lots of room to spare.
#[test]
fn star_cutset_free_members_within_width_bound() {
    use oddsig_core::oracle::{treewidth_exact, OracleBudget};
    let budget = OracleBudget::default();
    let mut checked = 0usize;
    for seed in 0..30u64 {
        let Ok(g) = generate_class_member(4, 12, 2200 + seed, GenStrategy::Constructive) else {
            continue;
        };
        if g.n() > budget.treewidth_max_n
            || oddsig_core::separation::find_star_cutset(&g, &g.vertices()).is_some()
        {
            continue;
        }
        let (tw, _) = treewidth_exact(&g, &g.vertices(), &budget).unwrap();
        let bound = oddsig_core::twojoin::width_bounds(g.max_degree().max(1) as u64, 2, 3)
            .star_cutset_free_tw as usize;
        assert!(tw <= bound, "width {tw} above the class bound {bound}");
        checked += 1;
    }
    assert!(checked > 0);
}

/// The public clique-free-bag entry point contracts two glued triangles to
/// one and folds the far weight onto the anchor.
#[test]
fn public_clique_free_bag() {
    use oddsig_core::pipeline::{clique_free_bag, PhaseOutcome};
    let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
    let mask = g.vertices();
    let w = WeightAssignment::uniform(4, &mask);
    let (out, stages) = clique_free_bag(&g, &mask, &w, &rat(1, 2), 10).unwrap();
    match out {
        PhaseOutcome::Advanced { mask, weights, d } => {
            assert_eq!(mask.to_vec(), vec![0, 1, 2]);
            assert_eq!(*weights.weight(0), rat(1, 2));
            assert_eq!(d, 8);
        }
        _ => panic!("no short circuit expected"),
    }
    assert_eq!(stages.len(), 1);
}

/// The public forcer-decomposition entry point kills the proper-wheel
/// forcer of a padded wheel gadget.
#[test]
fn public_forcer_decomposition() {
    use oddsig_core::pipeline::{forcer_decomposition, PhaseOutcome};
    use oddsig_core::wheels::ForcerFamily;
    let g = generate_class_member(3, 24, 31, GenStrategy::Constructive).unwrap();
    let mask = g.vertices();
    let w = WeightAssignment::uniform(g.n(), &mask);
    let mut budget = SearchBudget::default_budget();
    let (out, _) = forcer_decomposition(
        &g,
        &mask,
        &w,
        &rat(1, 2),
        3 * g.n(),
        ForcerFamily::Strong,
        &mut budget,
    )
    .unwrap();
    if let PhaseOutcome::Advanced { mask: bag, .. } = out {
        let left = enumerate_forcers(&g, &bag, &[ForcerFamily::Strong], &mut budget).unwrap();
        assert!(left.is_empty(), "strong forcers must be gone from the bag");
    }
}
