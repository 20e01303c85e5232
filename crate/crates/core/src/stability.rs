//! Pairwise stability, exhaustive enumeration and price metrics.
//!
//! Enumeration scans every labeled graph on a fixed player set. Graph
//! index bit `k` stands for the `k`-th node pair in lexicographic order;
//! majors take ids `0..n_A`. Ranges of the index space can be scanned
//! independently and merged with [`Scan::merge`].

use alloc::vec::Vec;
use core::ops::Range;

use crate::cost::{endpoint_deltas, social_cost_model, CostModel, GameParams};
use crate::error::{Error, Result};
use crate::ext::{ExtCost, ExtRatio, Rational};
use crate::graph::{EdgeChange, Network, NodeId};

/// Largest player count scanned by default.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    BeneficialRemoval,
    BeneficialAddition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edge: (NodeId, NodeId),
    pub delta_i: ExtCost,
    pub delta_j: ExtCost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub violations: Vec<Violation>,
}

/// Does removing a link with these endpoint deltas happen?
///
/// A link survives only if dropping it strictly hurts: without transfers
/// both endpoints must lose, with transfers the pair must lose jointly.
pub fn removal_happens(delta_i: &ExtCost, delta_j: &ExtCost, transfers: bool) -> bool {
    if transfers {
        !(delta_i + delta_j).is_positive()
    } else {
        !delta_i.is_positive() || !delta_j.is_positive()
    }
}

/// Does adding a link with these endpoint deltas happen? Both endpoints
/// must strictly gain, or the pair jointly with transfers.
pub fn addition_happens(delta_i: &ExtCost, delta_j: &ExtCost, transfers: bool) -> bool {
    if transfers {
        (delta_i + delta_j).is_negative()
    } else {
        delta_i.is_negative() && delta_j.is_negative()
    }
}

fn scan_pairs(
    g: &Network,
    p: &GameParams,
    model: CostModel,
    stop_at_first: bool,
) -> Result<Vec<Violation>> {
    let mut violations = Vec::new();
    let n = g.node_count();
    for a in 0..n {
        for b in a + 1..n {
            let (u, v) = (NodeId::from(a), NodeId::from(b));
            let present = g.has_edge(u, v);
            let change = if present {
                EdgeChange::Remove
            } else {
                EdgeChange::Add
            };
            let (du, dv) = endpoint_deltas(g, p, (u, v), change, model)?;
            let violated = if present {
                removal_happens(&du, &dv, p.transfers)
            } else {
                addition_happens(&du, &dv, p.transfers)
            };
            if violated {
                violations.push(Violation {
                    kind: if present {
                        ViolationKind::BeneficialRemoval
                    } else {
                        ViolationKind::BeneficialAddition
                    },
                    edge: (u, v),
                    delta_i: du,
                    delta_j: dv,
                });
                if stop_at_first {
                    return Ok(violations);
                }
            }
        }
    }
    Ok(violations)
}

/// Full stability report under the reliability-aware cost.
pub fn is_pairwise_stable(g: &Network, p: &GameParams) -> Result<StabilityReport> {
    stability_report(g, p, CostModel::Full)
}

pub fn stability_report(g: &Network, p: &GameParams, model: CostModel) -> Result<StabilityReport> {
    let violations = scan_pairs(g, p, model, false)?;
    Ok(StabilityReport {
        stable: violations.is_empty(),
        violations,
    })
}

/// Stability only, stopping at the first violation.
pub fn is_stable(g: &Network, p: &GameParams, model: CostModel) -> Result<bool> {
    Ok(scan_pairs(g, p, model, true)?.is_empty())
}

/// Number of labeled graphs on `n_A + n_B` players, refusing player
/// counts above `budget`.
pub fn graph_count(n_a: usize, n_b: usize, budget: usize) -> Result<u64> {
    let n = n_a + n_b;
    if n > budget {
        return Err(Error::BudgetExceeded {
            what: "exhaustive enumeration (players)",
            requested: n,
            limit: budget,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs >= 63 {
        return Err(Error::BudgetExceeded {
            what: "exhaustive enumeration (node pairs)",
            requested: pairs,
            limit: 62,
        });
    }
    Ok(1u64 << pairs)
}

/// The graph with the given enumeration index.
pub fn network_from_index(n_a: usize, n_b: usize, index: u64) -> Network {
    let n = n_a + n_b;
    let mut g = Network::with_players(n_a, n_b);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if index >> k & 1 == 1 {
                g.add_edge(NodeId::from(a), NodeId::from(b))
                    .expect("each pair appears once");
            }
            k += 1;
        }
    }
    g
}

/// Enumeration index of a network on `0..n` (inverse of
/// [`network_from_index`]).
pub fn index_of(g: &Network) -> u64 {
    let n = g.node_count();
    let mut index = 0u64;
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(NodeId::from(a), NodeId::from(b)) {
                index |= 1 << k;
            }
            k += 1;
        }
    }
    index
}

/// Result of scanning part of the index space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scan {
    /// Cheapest graph seen, smallest index on ties.
    pub optimal: Option<(u64, ExtCost)>,
    /// Stable graphs with their social cost, in index order.
    pub stable: Vec<(u64, ExtCost)>,
}

impl Scan {
    /// Combines scans of disjoint ranges. The result does not depend on
    /// merge order.
    pub fn merge(mut self, other: Scan) -> Scan {
        self.optimal = match (self.optimal, other.optimal) {
            (Some(a), Some(b)) => Some(if (&b.1, b.0) < (&a.1, a.0) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.stable.extend(other.stable);
        self.stable.sort_by_key(|s| s.0);
        self
    }
}

/// Scans `range` of the index space.
pub fn scan_range(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    model: CostModel,
    range: Range<u64>,
) -> Result<Scan> {
    let mut scan = Scan::default();
    for index in range {
        let g = network_from_index(n_a, n_b, index);
        let social = social_cost_model(&g, p, model)?;
        let better = match &scan.optimal {
            None => true,
            Some((_, best)) => social < *best,
        };
        if better {
            scan.optimal = Some((index, social.clone()));
        }
        if is_stable(&g, p, model)? {
            scan.stable.push((index, social));
        }
    }
    Ok(scan)
}

/// Scans the whole index space after checking the budget.
pub fn scan_all(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    model: CostModel,
    budget: usize,
) -> Result<Scan> {
    let count = graph_count(n_a, n_b, budget)?;
    scan_range(p, n_a, n_b, model, 0..count)
}

/// A stable network found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableNetwork {
    pub index: u64,
    pub network: Network,
    pub social: ExtCost,
}

/// Every pairwise-stable labeled network on `n_A` majors and `n_B`
/// minors, under the bare model when `bare` is set.
pub fn enumerate_stable(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    bare: bool,
) -> Result<Vec<StableNetwork>> {
    let scan = scan_all(p, n_a, n_b, model_of(bare), DEFAULT_ENUMERATION_BUDGET)?;
    Ok(stable_networks(&scan, n_a, n_b))
}

pub fn stable_networks(scan: &Scan, n_a: usize, n_b: usize) -> Vec<StableNetwork> {
    scan.stable
        .iter()
        .map(|(index, social)| StableNetwork {
            index: *index,
            network: network_from_index(n_a, n_b, *index),
            social: social.clone(),
        })
        .collect()
}

fn model_of(bare: bool) -> CostModel {
    if bare {
        CostModel::Bare
    } else {
        CostModel::Full
    }
}

/// A social-cost minimizing network over all graphs on the players.
pub fn optimal_network(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    bare: bool,
) -> Result<(Network, ExtCost)> {
    let count = graph_count(n_a, n_b, DEFAULT_ENUMERATION_BUDGET)?;
    let mut best: Option<(u64, ExtCost)> = None;
    let model = model_of(bare);
    for index in 0..count {
        let g = network_from_index(n_a, n_b, index);
        let social = social_cost_model(&g, p, model)?;
        if best.as_ref().is_none_or(|(_, b)| social < *b) {
            best = Some((index, social));
        }
    }
    let (index, social) = best.expect("at least the empty graph is scanned");
    Ok((network_from_index(n_a, n_b, index), social))
}

/// Majors in a clique, every minor linked to every major, no minor-minor
/// links. Under full reliability and cheap enough links this is the
/// socially optimal network.
pub fn clique_core_network(n_a: usize, n_b: usize) -> Network {
    let mut g = Network::with_players(n_a, n_b);
    for u in 0..n_a {
        for v in u + 1..n_a + n_b {
            g.add_edge(NodeId::from(u), NodeId::from(v))
                .expect("fresh edge");
        }
    }
    g
}

/// Social cost of [`clique_core_network`] in closed form, without any
/// path computation. Every pair sits at distance 1 (2 between minors)
/// with a backup of length 2.
pub fn clique_core_social_cost(p: &GameParams, n_a: usize, n_b: usize) -> Result<Rational> {
    if !p.full_reliability {
        return Err(Error::Precondition(
            "the closed form assumes backups to every player".into(),
        ));
    }
    if n_a < 2 || n_a + n_b < 3 {
        return Err(Error::Precondition(alloc::format!(
            "{n_a} majors and {n_b} minors leave some pair without a backup"
        )));
    }
    let int = |k: usize| Rational::from_integer(k as i128);
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    let a = int(n_a);
    let b = int(n_b);
    // Distance terms are (d + δ·d') / (1 + δ).
    let near = (one + two * p.backup_weight) / (one + p.backup_weight);
    let far = two;
    let major = (a - one + b) * p.major_link_cost + (p.major_weight * (a - one) + b) * near;
    let minor = a * p.minor_link_cost + p.major_weight * a * near + (b - one) * far;
    Ok(a * major + b * minor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceMetrics {
    pub optimal_social: ExtCost,
    pub best_stable_social: Option<ExtCost>,
    pub worst_stable_social: Option<ExtCost>,
    /// Best stable social cost of the bare model.
    pub bare_best_stable_social: Option<ExtCost>,
    pub pos: Option<ExtRatio>,
    pub poa: Option<ExtRatio>,
    pub por: Option<ExtRatio>,
    pub optimal_network: Network,
    pub best_stable_network: Option<Network>,
    pub worst_stable_network: Option<Network>,
    pub stable_count: usize,
    pub bare_stable_count: usize,
    /// No stable network exists under the reliability-aware model.
    pub empty_stable_set: bool,
    /// Fewer than three players.
    pub precondition_warning: bool,
}

/// PoS, PoA and PoR by exhaustive enumeration.
pub fn price_metrics(p: &GameParams, n_a: usize, n_b: usize) -> Result<PriceMetrics> {
    let full = scan_all(p, n_a, n_b, CostModel::Full, DEFAULT_ENUMERATION_BUDGET)?;
    let bare = scan_all(p, n_a, n_b, CostModel::Bare, DEFAULT_ENUMERATION_BUDGET)?;
    Ok(price_metrics_from_scans(&full, &bare, n_a, n_b))
}

/// Assembles price metrics from a full-model scan and a bare-model scan
/// of the same player set.
pub fn price_metrics_from_scans(full: &Scan, bare: &Scan, n_a: usize, n_b: usize) -> PriceMetrics {
    let (opt_index, optimal_social) = full.optimal.clone().expect("scan covers the empty graph");
    // Ties resolve to the smallest index on both ends.
    let mut best: Option<&(u64, ExtCost)> = None;
    let mut worst: Option<&(u64, ExtCost)> = None;
    for s in &full.stable {
        if best.is_none_or(|b| s.1 < b.1) {
            best = Some(s);
        }
        if worst.is_none_or(|w| s.1 > w.1) {
            worst = Some(s);
        }
    }
    let bare_best = bare
        .stable
        .iter()
        .fold(None::<&(u64, ExtCost)>, |acc, s| match acc {
            Some(b) if b.1 <= s.1 => Some(b),
            _ => Some(s),
        })
        .map(|s| s.1.clone());
    let best_social = best.map(|b| b.1.clone());
    let worst_social = worst.map(|w| w.1.clone());
    let ratio = |num: &Option<ExtCost>, den: &ExtCost| num.as_ref().map(|n| ExtRatio::of(n, den));
    let por = match (&best_social, &bare_best) {
        (Some(b), Some(d)) => Some(ExtRatio::of(b, d)),
        _ => None,
    };
    PriceMetrics {
        pos: ratio(&best_social, &optimal_social),
        poa: ratio(&worst_social, &optimal_social),
        por,
        optimal_network: network_from_index(n_a, n_b, opt_index),
        best_stable_network: best.map(|b| network_from_index(n_a, n_b, b.0)),
        worst_stable_network: worst.map(|w| network_from_index(n_a, n_b, w.0)),
        optimal_social,
        best_stable_social: best_social,
        worst_stable_social: worst_social,
        bare_best_stable_social: bare_best,
        stable_count: full.stable.len(),
        bare_stable_count: bare.stable.len(),
        empty_stable_set: full.stable.is_empty(),
        precondition_warning: n_a + n_b < 3,
    }
}
