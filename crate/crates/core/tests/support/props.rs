//! Strategies and the long-running properties the acceptance run repeats.

use netform_core::cost::{social_cost, transfer_adjusted_cost};
use netform_core::dynamics::{
    replay_hashes, simulate, DynamicRule, OrderPolicy, Schedule, SimulationResult,
};
use netform_core::{
    DisjointnessMode, ExtCost, GameParams, Network, NodeId, PaymentMatrix, PlayerType, Rational,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const MODES: [DisjointnessMode; 2] = [
    DisjointnessMode::NodeDisjoint,
    DisjointnessMode::LinkDisjoint,
];

pub fn arb_network(max_n: usize) -> impl Strategy<Value = Network> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::bool::weighted(0.45), pairs),
        )
            .prop_map(move |(majors, present)| {
                let kinds = majors
                    .into_iter()
                    .map(|m| {
                        if m {
                            PlayerType::Major
                        } else {
                            PlayerType::Minor
                        }
                    })
                    .collect();
                let mut g = Network::from_kinds(kinds);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if present[k] {
                            g.add_edge(NodeId::from(u), NodeId::from(v)).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
    })
}

fn arb_rational(lo: i128, hi: i128) -> impl Strategy<Value = Rational> {
    (lo * 4..=hi * 4).prop_map(|k| Rational::new(k, 4))
}

pub fn arb_params() -> impl Strategy<Value = GameParams> {
    (
        arb_rational(1, 6).prop_filter("A > 1", |a| *a > Rational::from_integer(1)),
        arb_rational(0, 4).prop_filter("c_A > 0", |c| *c > Rational::from_integer(0)),
        arb_rational(0, 3),
        (0i128..=4).prop_map(|k| Rational::new(k, 4)),
        any::<bool>(),
        prop::sample::select(MODES.to_vec()),
    )
        .prop_map(|(a, ca, extra, delta, tau, mode)| {
            GameParams::new(a, ca, ca + extra, delta)
                .unwrap()
                .with_full_reliability(tau)
                .with_mode(mode)
        })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Payments between linked players only move cost around.
pub fn transfers_never_change_social_cost(cases: u32) -> Result<(), String> {
    let strategy = (
        arb_network(7),
        arb_params(),
        prop::collection::vec((any::<bool>(), 0i128..40), 21),
    );
    runner(cases)
        .run(&strategy, |(g, p, amounts)| {
            let mut pay = PaymentMatrix::new();
            for ((u, v), &(forward, k)) in g.edges().zip(&amounts) {
                let (payer, payee) = if forward { (u, v) } else { (v, u) };
                pay.set(payer, payee, Rational::new(k, 4)).unwrap();
            }
            let mut adjusted = ExtCost::zero();
            for i in g.nodes() {
                adjusted += transfer_adjusted_cost(&g, &p, &pay, i).unwrap();
            }
            prop_assert_eq!(adjusted, social_cost(&g, &p, false).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn run(p: &GameParams, schedule: &Schedule, rule: DynamicRule, seed: u64) -> SimulationResult {
    simulate(p, schedule, rule, Some(60), seed).unwrap()
}

/// Same seed, same trace, and the logged moves replay to the logged hashes.
pub fn simulations_are_deterministic_per_seed(cases: u32) -> Result<(), String> {
    let strategy = (
        arb_params(),
        any::<bool>(),
        1usize..3,
        1usize..4,
        any::<bool>(),
        prop::bool::weighted(0.2),
        any::<u64>(),
    );
    runner(cases)
        .run(
            &strategy,
            |(p, transfers, n_a, n_b, random_order, rule2a, seed)| {
                let p = p.with_transfers(transfers);
                let order = if random_order {
                    OrderPolicy::UniformRandom(seed ^ 0x5eed)
                } else {
                    OrderPolicy::RoundRobin
                };
                let schedule = Schedule::majors_then_minors(n_a, n_b, order);
                let rule = if rule2a {
                    DynamicRule::rule2a()
                } else {
                    DynamicRule::Rule2b
                };
                let a = run(&p, &schedule, rule, seed);
                let b = run(&p, &schedule, rule, seed);
                prop_assert_eq!(&a.logs, &b.logs);
                prop_assert_eq!(&a.network, &b.network);
                prop_assert_eq!(&a.payments, &b.payments);
                prop_assert_eq!(
                    (a.converged, a.rounds, a.settle_rounds),
                    (b.converged, b.rounds, b.settle_rounds)
                );
                let replayed = replay_hashes(std::iter::empty(), &a.logs).unwrap();
                let logged: Vec<[u8; 32]> = a.logs.iter().map(|l| l.network_hash).collect();
                prop_assert_eq!(replayed, logged);
                Ok::<(), TestCaseError>(())
            },
        )
        .map_err(|e| e.to_string())
}
