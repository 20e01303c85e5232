//! Deterministic and statistical checks of stability, dynamics, motif
//! statistics and topology metrics.

use std::collections::{BTreeMap, BTreeSet};

use netform_core::cost::{node_cost, social_cost};
use netform_core::dynamics::{choose_link, simulate, DynamicRule, OrderPolicy, Schedule};
use netform_core::motifs::{
    chebyshev_p_bound, configuration_model_draw, configuration_model_sample, double_star_count,
    null_model_stats, MotifKind,
};
use netform_core::stability::{
    clique_core_network, clique_core_social_cost, enumerate_stable, is_pairwise_stable,
    ViolationKind,
};
use netform_core::topology::{core_disjoint_ratio, mean_major_minor_cycle};
use netform_core::{
    DisjointnessMode, EdgeChange, ExtCost, GameParams, Network, NodeId, PlayerType, Rational,
};

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn params(a: Rational, ca: Rational, cb: Rational, delta: Rational) -> GameParams {
    GameParams::new(a, ca, cb, delta).unwrap()
}

#[test]
fn enumerated_stable_networks_pass_the_stability_check() {
    for transfers in [false, true] {
        let p = params(r(4, 1), r(3, 2), r(2, 1), r(1, 1)).with_transfers(transfers);
        let stable = enumerate_stable(&p, 2, 3, false).unwrap();
        assert!(!stable.is_empty());
        for s in &stable {
            assert!(is_pairwise_stable(&s.network, &p).unwrap().stable);
            assert_eq!(s.social, social_cost(&s.network, &p, false).unwrap());
        }
    }
}

#[test]
fn closed_form_matches_the_computed_social_cost() {
    let grid = [
        (r(4, 1), r(3, 2), r(2, 1), r(1, 1)),
        (r(5, 1), r(2, 1), r(3, 1), r(0, 1)),
        (r(3, 1), r(1, 2), r(7, 4), r(1, 3)),
    ];
    for (a, ca, cb, delta) in grid {
        let p = params(a, ca, cb, delta);
        for (n_a, n_b) in [(2, 1), (2, 3), (3, 0), (3, 5), (4, 7)] {
            let g = clique_core_network(n_a, n_b);
            let computed = social_cost(&g, &p, false).unwrap();
            let closed = clique_core_social_cost(&p, n_a, n_b).unwrap();
            assert_eq!(computed, ExtCost::finite(closed), "{n_a}+{n_b}");
        }
    }
    let p = params(r(4, 1), r(3, 2), r(2, 1), r(1, 1));
    assert!(clique_core_social_cost(&p, 1, 3).is_err());
    assert!(clique_core_social_cost(&p.clone().with_full_reliability(false), 2, 3).is_err());
}

#[test]
fn fully_tied_links_are_chosen_uniformly() {
    let tied = (ExtCost::finite(r(-2, 1)), ExtCost::finite(r(1, 1)));
    let candidates: BTreeMap<NodeId, (ExtCost, ExtCost)> = [NodeId(3), NodeId(5), NodeId(8)]
        .into_iter()
        .map(|j| (j, tied.clone()))
        .collect();
    let draws = 10_000;
    let mut counts: BTreeMap<NodeId, usize> = BTreeMap::new();
    for seed in 0..draws {
        *counts
            .entry(choose_link(&candidates, seed).unwrap())
            .or_default() += 1;
    }
    for (&j, &c) in &counts {
        let freq = c as f64 / draws as f64;
        assert!((freq - 1.0 / 3.0).abs() <= 0.05, "node {j}: {freq}");
    }
    assert_eq!(counts.len(), 3);
}

/// Exact outcome distribution of the erased configuration model by
/// enumerating every perfect matching of the stubs.
fn exact_outcomes(degrees: &[usize]) -> BTreeMap<Vec<(usize, usize)>, (u64, u64)> {
    fn matchings(
        stubs: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut BTreeMap<Vec<(usize, usize)>, (u64, u64)>,
    ) {
        if stubs.is_empty() {
            let mut edges = BTreeSet::new();
            let mut erased = 0;
            for &(u, v) in pairs.iter() {
                if u == v || !edges.insert((u.min(v), u.max(v))) {
                    erased += 1;
                }
            }
            let e = out.entry(edges.into_iter().collect()).or_default();
            e.0 += 1;
            e.1 += erased;
            return;
        }
        let first = stubs.remove(0);
        for k in 0..stubs.len() {
            let partner = stubs.remove(k);
            pairs.push((first, partner));
            matchings(stubs, pairs, out);
            pairs.pop();
            stubs.insert(k, partner);
        }
        stubs.insert(0, first);
    }
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    let mut out = BTreeMap::new();
    matchings(&mut stubs, &mut Vec::new(), &mut out);
    out
}

fn edge_list(g: &Network) -> Vec<(usize, usize)> {
    g.edges().map(|(u, v)| (u.index(), v.index())).collect()
}

#[test]
fn configuration_draws_are_reproducible_and_follow_the_stub_matching_law() {
    let degrees = [3, 3, 2, 2, 1, 1];
    assert_eq!(
        configuration_model_sample(&degrees, 17).unwrap(),
        configuration_model_sample(&degrees, 17).unwrap()
    );
    let exact = exact_outcomes(&degrees);
    let total: u64 = exact.values().map(|v| v.0).sum();
    let draws = 10_000u64;
    let mut observed: BTreeMap<Vec<(usize, usize)>, u64> = BTreeMap::new();
    for seed in 0..draws {
        let s = configuration_model_sample(&degrees, seed).unwrap();
        *observed.entry(edge_list(&s.network)).or_default() += 1;
    }
    // Pearson chi-square over outcome graphs, pooling cells expected below 5.
    let (mut chi2, mut cells) = (0.0, 0usize);
    let (mut pooled_expected, mut pooled_observed) = (0.0, 0.0);
    for (edges, &(count, _)) in &exact {
        let expected = draws as f64 * count as f64 / total as f64;
        let seen = *observed.get(edges).unwrap_or(&0) as f64;
        if expected < 5.0 {
            pooled_expected += expected;
            pooled_observed += seen;
        } else {
            chi2 += (seen - expected).powi(2) / expected;
            cells += 1;
        }
    }
    if pooled_expected > 0.0 {
        chi2 += (pooled_observed - pooled_expected).powi(2) / pooled_expected;
        cells += 1;
    }
    assert!(
        observed.keys().all(|k| exact.contains_key(k)),
        "impossible outcome drawn"
    );
    // Upper 0.1% point of chi-square, Wilson-Hilferty approximation.
    let df = (cells - 1) as f64;
    let z = 3.090;
    let critical = df * (1.0 - 2.0 / (9.0 * df) + z * (2.0 / (9.0 * df)).sqrt()).powi(3);
    assert!(
        chi2 < critical,
        "chi2 {chi2:.1} over {cells} cells, critical {critical:.1}"
    );
}

#[test]
fn erased_fraction_is_stable_across_reruns() {
    let degrees = [2, 2, 2];
    let exact = exact_outcomes(&degrees);
    let matchings: u64 = exact.values().map(|v| v.0).sum();
    let erased: u64 = exact.values().map(|v| v.1).sum();
    let expected = erased as f64 / (3.0 * matchings as f64);
    let mean = |seeds: std::ops::Range<u64>| {
        let n = seeds.end - seeds.start;
        let lost: usize = seeds
            .map(|s| {
                let d = configuration_model_sample(&degrees, s).unwrap();
                d.self_loops_erased + d.multi_edges_erased
            })
            .sum();
        lost as f64 / (3.0 * n as f64)
    };
    let (a, b) = (mean(0..10_000), mean(10_000..20_000));
    assert!((a - b).abs() <= 0.1 * a, "{a} vs {b}");
    assert!(
        (a - expected).abs() <= 0.1 * expected,
        "{a} vs exact {expected}"
    );
    let triangle = exact.get(&vec![(0, 1), (0, 2), (1, 2)]).unwrap().0;
    assert_eq!((triangle, matchings), (8, 15));
}

#[test]
fn draws_differ_by_index_and_agree_with_the_single_sample() {
    let degrees = [4, 3, 3, 2, 2, 2, 1, 1];
    assert_eq!(
        configuration_model_draw(&degrees, 9, 0).unwrap(),
        configuration_model_sample(&degrees, 9).unwrap()
    );
    let distinct: BTreeSet<Vec<(usize, usize)>> = (0..50)
        .map(|k| edge_list(&configuration_model_draw(&degrees, 9, k).unwrap().network))
        .collect();
    assert!(distinct.len() > 10);
}

#[test]
fn p_bound_scales_with_the_square_of_the_spread() {
    let (obs, mean, var) = (r(120, 1), r(20, 1), r(9, 1));
    let base = chebyshev_p_bound(obs, mean, var).unwrap();
    for k in 1..=5i128 {
        let scaled = chebyshev_p_bound(obs, mean, var * r(k * k, 1)).unwrap();
        assert_eq!(scaled, base * r(k * k, 1));
    }
    assert_eq!(chebyshev_p_bound(mean, obs, var), None);
}

#[test]
fn shared_leaves_only_grow_the_double_star_count() {
    let mut g = Network::with_players(0, 2);
    g.add_edge(NodeId(0), NodeId(1)).unwrap();
    let mut last = vec![0; 4];
    for k in 0..8 {
        let leaf = g.add_node(PlayerType::Minor);
        g.add_edge(NodeId(0), leaf).unwrap();
        g.add_edge(NodeId(1), leaf).unwrap();
        // Leaves have degree 2, so from m = 2 on only the center pair counts.
        for m in 2..5 {
            let now = double_star_count(&g, m).unwrap();
            assert_eq!(now, u64::from(k + 1 >= m), "m={m} after {} leaves", k + 1);
        }
        let now: Vec<u64> = (1..5).map(|m| double_star_count(&g, m).unwrap()).collect();
        assert!(now.iter().zip(&last).all(|(a, b)| a >= b));
        last = now;
    }
}

fn planted_double_star() -> Network {
    let mut g = Network::with_players(0, 22);
    g.add_edge(NodeId(0), NodeId(1)).unwrap();
    for leaf in 2..22 {
        g.add_edge(NodeId(0), NodeId(leaf)).unwrap();
        g.add_edge(NodeId(1), NodeId(leaf)).unwrap();
    }
    g
}

#[test]
fn planted_double_star_is_significant() {
    let g = planted_double_star();
    let report = null_model_stats(&g, MotifKind::DoubleStar(10), 200, 7).unwrap();
    assert_eq!(report.observed, 1);
    let p = report
        .p_bound
        .expect("observed count exceeds the null mean");
    assert!(p < r(1, 20), "p_bound {p}");
}

/// Five majors in a clique; each minor hangs off two majors and some
/// minors also link to a ring neighbor.
fn fifty_node_fixture() -> (Network, Vec<NodeId>, Vec<NodeId>) {
    let mut g = Network::with_players(5, 45);
    for u in 0..5 {
        for v in u + 1..5 {
            g.add_edge(NodeId(u), NodeId(v)).unwrap();
        }
    }
    for k in 0..45u32 {
        let m = NodeId(5 + k);
        g.add_edge(m, NodeId(k % 5)).unwrap();
        if k % 3 != 0 {
            g.add_edge(m, NodeId((k * 7 + 1) % 5)).unwrap_or(());
        }
        if k % 4 == 0 && k + 1 < 45 {
            g.add_edge(m, NodeId(6 + k)).unwrap();
        }
    }
    let majors = g.majors().collect();
    let minors = g.minors().collect();
    (g, majors, minors)
}

#[test]
fn sampled_cycle_lengths_track_the_full_mean() {
    let (g, majors, minors) = fifty_node_fixture();
    let full = mean_major_minor_cycle(&g, &majors, &minors, None, 0).unwrap();
    let sampled = mean_major_minor_cycle(&g, &majors, &minors, Some(500), 3).unwrap();
    let (f, s) = (full.mean.unwrap(), sampled.mean.unwrap());
    let gap = if f > s { (f - s) / f } else { (s - f) / f };
    assert!(gap <= r(1, 20), "full {f} sampled {s}");
    assert_eq!(full.pairs_evaluated, 5 * 45);
}

#[test]
fn core_ratio_examples() {
    // Every minor on two distinct majors.
    let mut g = Network::with_players(3, 4);
    for k in 0..4u32 {
        g.add_edge(NodeId(3 + k), NodeId(k % 3)).unwrap();
        g.add_edge(NodeId(3 + k), NodeId((k + 1) % 3)).unwrap();
    }
    let majors: Vec<NodeId> = g.majors().collect();
    for mode in [
        DisjointnessMode::NodeDisjoint,
        DisjointnessMode::LinkDisjoint,
    ] {
        assert_eq!(core_disjoint_ratio(&g, &majors, mode).unwrap(), r(1, 1));
    }
    // A chain of minors below one major.
    let chain = Network::from_edges(
        vec![
            PlayerType::Major,
            PlayerType::Minor,
            PlayerType::Minor,
            PlayerType::Minor,
        ],
        [(0, 1), (1, 2), (2, 3)],
    )
    .unwrap();
    let ratio = core_disjoint_ratio(&chain, &[NodeId(0)], DisjointnessMode::NodeDisjoint).unwrap();
    assert!(ratio < r(1, 1));
    assert_eq!(ratio, r(3, 5));
}

fn replay_checks(p: &GameParams, n_a: usize, n_b: usize, order: OrderPolicy, seed: u64) {
    let schedule = Schedule::majors_then_minors(n_a, n_b, order);
    let run = simulate(p, &schedule, DynamicRule::Rule2b, Some(200), seed).unwrap();
    let mut g = Network::new();
    let mut present: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for log in &run.logs {
        if let Some(kind) = log.arrival {
            present.insert(log.actor, g.add_node(kind));
        }
        let actor = present[&log.actor];
        let mut cost = node_cost(&g, p, actor).unwrap();
        for m in &log.moves {
            let j = present[&m.edge.1];
            let before_j = node_cost(&g, p, j).unwrap();
            g.apply(actor, j, m.change).unwrap();
            let after = node_cost(&g, p, actor).unwrap();
            // Every move strictly lowers the actor's cost.
            assert!(after < cost, "seed {seed} turn {}", log.turn);
            assert_eq!(&after - &cost, m.actor_delta);
            if m.change == EdgeChange::Add {
                assert!(
                    node_cost(&g, p, j).unwrap() < before_j,
                    "accepted link hurt its counterparty"
                );
            }
            cost = after;
        }
    }
    if run.converged {
        // Only removals that leave the remover exactly indifferent can
        // remain: the check treats those as destabilizing, the engine
        // never plays them.
        for v in is_pairwise_stable(&run.network, p).unwrap().violations {
            assert_eq!(
                v.kind,
                ViolationKind::BeneficialRemoval,
                "seed {seed}: {v:?}"
            );
            assert!(
                v.delta_i == ExtCost::zero() || v.delta_j == ExtCost::zero(),
                "seed {seed}: {v:?}"
            );
        }
    }
}

#[test]
fn rule2b_moves_pay_off_and_fixpoints_are_stable() {
    let grid = [
        params(r(5, 1), r(2, 1), r(3, 1), r(0, 1)),
        params(r(4, 1), r(3, 2), r(2, 1), r(1, 1)),
        params(r(3, 1), r(1, 2), r(1, 1), r(1, 2)).with_full_reliability(false),
    ];
    for p in &grid {
        for seed in 0..6u64 {
            let order = if seed % 2 == 0 {
                OrderPolicy::RoundRobin
            } else {
                OrderPolicy::UniformRandom(seed)
            };
            replay_checks(p, 2 + (seed as usize % 2), 4, order, seed);
        }
    }
}
