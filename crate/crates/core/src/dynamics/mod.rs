//! Turn-based network formation.
//!
//! Players join over time and take turns. In its turn the active player
//! adds or removes its own links until nothing improves its cost; other
//! players accept a proposed link myopically. [`DynamicRule::Rule2b`]
//! requires every single move to pay off, [`DynamicRule::Rule2a`] lets the
//! player disconnect first and rebuild, judging only the finished plan.

mod classify;
mod entangled;
mod moves;
mod pricing;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::cost::{GameParams, PaymentMatrix};
use crate::error::{Error, Result};
use crate::ext::{ExtCost, Rational};
use crate::graph::{EdgeChange, Network, NodeId, PlayerType};

pub use classify::{classify_structure, Role, StructureClass, StructureKind};
pub use entangled::{distance_cost, entangled_bound_holds, entangled_growth, EntangledGrowth};
pub use moves::Move;
pub use pricing::{choose_link, choose_link_with, prices_from_deltas, strategic_prices, LinkQuote};

/// Default plan depth of [`DynamicRule::Rule2a`].
pub const DEFAULT_PLAN_DEPTH: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynamicRule {
    /// Multi-move plans: remove any subset of own links, then add up to
    /// `plan_depth` links; only the final cost matters.
    Rule2a { plan_depth: usize },
    /// Every move must strictly lower the actor's cost.
    Rule2b,
}

impl DynamicRule {
    pub fn rule2a() -> Self {
        DynamicRule::Rule2a {
            plan_depth: DEFAULT_PLAN_DEPTH,
        }
    }
}

/// A player joining at a given turn. `node` is an external label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrival {
    pub turn: usize,
    pub node: NodeId,
    pub kind: PlayerType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderPolicy {
    /// A fresh uniformly random permutation of the present players every
    /// round.
    UniformRandom(u64),
    /// Present players in arrival order.
    RoundRobin,
    /// The listed labels in order, skipping players not yet present.
    Explicit(Vec<NodeId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub arrivals: Vec<Arrival>,
    pub order: OrderPolicy,
}

impl Schedule {
    /// Player `k` (label `k`) joins at turn `k`, so each newcomer meets
    /// the network left by the previous arrivals.
    pub fn sequential(kinds: &[PlayerType], order: OrderPolicy) -> Self {
        Schedule {
            arrivals: kinds
                .iter()
                .enumerate()
                .map(|(k, &kind)| Arrival {
                    turn: k,
                    node: NodeId::from(k),
                    kind,
                })
                .collect(),
            order,
        }
    }

    /// Majors first, then minors, joining one per turn.
    pub fn majors_then_minors(n_a: usize, n_b: usize, order: OrderPolicy) -> Self {
        let mut kinds = alloc::vec![PlayerType::Major; n_a];
        kinds.extend(core::iter::repeat_n(PlayerType::Minor, n_b));
        Schedule::sequential(&kinds, order)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for a in &self.arrivals {
            if !seen.insert(a.node) {
                return Err(Error::input(alloc::format!(
                    "node {} arrives twice",
                    a.node
                )));
            }
        }
        if self.arrivals.windows(2).any(|w| w[1].turn < w[0].turn) {
            return Err(Error::input("arrivals must be ordered by turn"));
        }
        if let OrderPolicy::Explicit(list) = &self.order {
            if let Some(v) = list.iter().find(|v| !seen.contains(v)) {
                return Err(Error::input(alloc::format!("order lists unknown node {v}")));
            }
        }
        Ok(())
    }
}

/// One executed move, in external labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub change: EdgeChange,
    pub edge: (NodeId, NodeId),
    pub payment: Option<Rational>,
    pub actor_delta: ExtCost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnLog {
    pub turn: usize,
    pub round: usize,
    pub actor: NodeId,
    /// The actor joined the game on this turn.
    pub arrival: Option<PlayerType>,
    pub moves: Vec<MoveRecord>,
    /// SHA-256 of the post-turn edge set.
    pub network_hash: [u8; 32],
}

/// Digest of an edge set given in external labels.
pub fn edge_set_hash(edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> [u8; 32] {
    let sorted: BTreeSet<(u32, u32)> = edges
        .into_iter()
        .map(|(a, b)| (a.0.min(b.0), a.0.max(b.0)))
        .collect();
    let mut hasher = Sha256::new();
    for (a, b) in sorted {
        hasher.update(a.to_le_bytes());
        hasher.update(b.to_le_bytes());
    }
    hasher.finalize().into()
}

/// Replays logged moves on top of `initial_edges` (external labels) and
/// returns the hash after every turn.
pub fn replay_hashes(
    initial_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    logs: &[TurnLog],
) -> Result<Vec<[u8; 32]>> {
    let key = |(a, b): (NodeId, NodeId)| (a.min(b), a.max(b));
    let mut edges: BTreeSet<(NodeId, NodeId)> = initial_edges.into_iter().map(key).collect();
    let mut out = Vec::with_capacity(logs.len());
    for log in logs {
        for m in &log.moves {
            let e = key(m.edge);
            let ok = match m.change {
                EdgeChange::Add => edges.insert(e),
                EdgeChange::Remove => edges.remove(&e),
            };
            if !ok {
                return Err(Error::input(alloc::format!(
                    "turn {}: move on edge ({}, {}) does not apply",
                    log.turn,
                    e.0,
                    e.1
                )));
            }
        }
        out.push(edge_set_hash(edges.iter().copied()));
    }
    Ok(out)
}

/// Upper bound on moves in a single turn.
fn move_cap(n: usize) -> usize {
    4 * n * n + 16
}

/// Mutable game state driven turn by turn.
#[derive(Debug, Clone)]
pub struct Simulation {
    params: GameParams,
    rule: DynamicRule,
    network: Network,
    labels: Vec<NodeId>,
    payments: PaymentMatrix,
    rng: ChaCha8Rng,
    turn: usize,
    round: usize,
    logs: Vec<TurnLog>,
}

impl Simulation {
    /// Starts from `initial`, whose node `i` carries label `i`.
    pub fn new(params: GameParams, rule: DynamicRule, initial: Network, seed: u64) -> Result<Self> {
        params.validate()?;
        if let DynamicRule::Rule2a { plan_depth: 0 } = rule {
            return Err(Error::params("plan depth must be positive"));
        }
        let labels = initial.nodes().collect();
        Ok(Simulation {
            params,
            rule,
            network: initial,
            labels,
            payments: PaymentMatrix::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            turn: 0,
            round: 0,
            logs: Vec::new(),
        })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    /// External label of every internal node.
    pub fn labels(&self) -> &[NodeId] {
        &self.labels
    }

    pub fn payments(&self) -> &PaymentMatrix {
        &self.payments
    }

    pub fn logs(&self) -> &[TurnLog] {
        &self.logs
    }

    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn internal_id(&self, label: NodeId) -> Option<NodeId> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(NodeId::from)
    }

    /// Edges in external labels.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.network
            .edges()
            .map(|(u, v)| (self.labels[u.index()], self.labels[v.index()]))
    }

    /// Adds an unlinked player and returns its internal id.
    pub fn add_player(&mut self, kind: PlayerType, label: NodeId) -> Result<NodeId> {
        if self.labels.contains(&label) {
            return Err(Error::input(alloc::format!(
                "label {label} already present"
            )));
        }
        self.labels.push(label);
        Ok(self.network.add_node(kind))
    }

    /// Adds a link outside the turn structure.
    pub fn inject_link(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.network.add_edge(u, v)
    }

    /// Plays one full turn of `actor` (internal id) and logs it.
    pub fn play_turn(&mut self, actor: NodeId) -> Result<&TurnLog> {
        self.play(actor, None)
    }

    fn play(&mut self, actor: NodeId, arrival: Option<PlayerType>) -> Result<&TurnLog> {
        self.network.check(actor)?;
        let mut records = Vec::new();
        let cap = move_cap(self.network.node_count());
        loop {
            let batch =
                moves::next_moves(&self.network, &self.params, actor, self.rule, &mut self.rng)?;
            if batch.is_empty() {
                break;
            }
            for m in batch {
                let j = m.counterparty;
                self.network.apply(actor, j, m.change)?;
                match m.change {
                    EdgeChange::Add => {
                        if let Some(pay) = m.payment {
                            self.payments.set(actor, j, pay)?;
                        }
                    }
                    EdgeChange::Remove => self.payments.clear_link(actor, j),
                }
                records.push(MoveRecord {
                    change: m.change,
                    edge: (self.labels[actor.index()], self.labels[j.index()]),
                    payment: m.payment,
                    actor_delta: m.actor_delta,
                });
            }
            if records.len() > cap {
                return Err(Error::Precondition(alloc::format!(
                    "turn of node {} exceeded {cap} moves",
                    self.labels[actor.index()]
                )));
            }
        }
        let log = TurnLog {
            turn: self.turn,
            round: self.round,
            actor: self.labels[actor.index()],
            arrival,
            moves: records,
            network_hash: edge_set_hash(self.labeled_edges()),
        };
        self.turn += 1;
        self.logs.push(log);
        Ok(self.logs.last().unwrap())
    }
}

/// Moves the actor would make in its turn from `g`, without side effects.
pub fn best_turn(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    rule: DynamicRule,
) -> Result<Vec<Move>> {
    best_turn_seeded(g, p, actor, rule, 0)
}

pub fn best_turn_seeded(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    rule: DynamicRule,
    seed: u64,
) -> Result<Vec<Move>> {
    let mut sim = Simulation::new(p.clone(), rule, g.clone(), seed)?;
    sim.play_turn(actor)?;
    let log = sim.logs.pop().unwrap();
    let mut moves = Vec::with_capacity(log.moves.len());
    for r in log.moves {
        moves.push(Move {
            change: r.change,
            counterparty: r.edge.1,
            payment: r.payment,
            actor_delta: r.actor_delta,
        });
    }
    Ok(moves)
}

#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub network: Network,
    /// External label of each internal node.
    pub labels: Vec<NodeId>,
    pub payments: PaymentMatrix,
    pub logs: Vec<TurnLog>,
    pub converged: bool,
    pub rounds: usize,
    /// Round in which the last player joined.
    pub last_arrival_round: Option<usize>,
    /// Rounds after the last arrival's round that still changed the
    /// network.
    pub settle_rounds: usize,
}

/// Runs the schedule until a full round passes with no move and no
/// arrival, or until `max_rounds` (default `50·N`) rounds have run.
pub fn simulate(
    p: &GameParams,
    schedule: &Schedule,
    rule: DynamicRule,
    max_rounds: Option<usize>,
    seed: u64,
) -> Result<SimulationResult> {
    schedule.validate()?;
    let n = schedule.arrivals.len();
    let max_rounds = max_rounds.unwrap_or(50 * n.max(1));
    let mut sim = Simulation::new(p.clone(), rule, Network::new(), seed)?;
    let mut order_rng = match schedule.order {
        OrderPolicy::UniformRandom(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };
    let mut pending = schedule.arrivals.iter().peekable();
    let mut last_arrival_round = None;
    let mut last_move_round: Option<usize> = None;
    let mut converged = false;
    let mut round = 0;
    while round < max_rounds {
        sim.round = round;
        let mut active = false;
        let mut order: Vec<NodeId> = match &schedule.order {
            OrderPolicy::Explicit(list) => {
                list.iter().filter_map(|&l| sim.internal_id(l)).collect()
            }
            _ => sim.network.nodes().collect(),
        };
        if let Some(rng) = order_rng.as_mut() {
            order.shuffle(rng);
        }
        if order.is_empty() {
            if let Some(a) = pending.peek() {
                sim.turn = sim.turn.max(a.turn);
            }
        }
        let mut queue = order.into_iter();
        loop {
            while let Some(a) = pending.next_if(|a| a.turn <= sim.turn) {
                let id = sim.add_player(a.kind, a.node)?;
                let moved = !sim.play(id, Some(a.kind))?.moves.is_empty();
                active = true;
                last_arrival_round = Some(round);
                if moved {
                    last_move_round = Some(round);
                }
            }
            let Some(actor) = queue.next() else { break };
            if !sim.play(actor, None)?.moves.is_empty() {
                active = true;
                last_move_round = Some(round);
            }
        }
        round += 1;
        if !active && pending.peek().is_none() {
            converged = true;
            break;
        }
    }
    let settle_rounds = match (last_move_round, last_arrival_round) {
        (Some(m), Some(a)) if m > a => m - a,
        _ => 0,
    };
    Ok(SimulationResult {
        network: sim.network,
        labels: sim.labels,
        payments: sim.payments,
        logs: sim.logs,
        converged,
        rounds: round,
        last_arrival_round,
        settle_rounds,
    })
}
