//! Player costs, social cost, cost deltas and monetary transfers.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ext::{ExtCost, Rational};
use crate::graph::{EdgeChange, Network, NodeId, PlayerType};
use crate::paths::{
    bfs_distances, canonical, exact_pair, heuristic_pair, min_sum_pair, validate_weight, Blocker,
    DisjointnessMode, DistancePair, PairObjective, DEFAULT_EXACT_NODE_BUDGET, UNREACHABLE,
};

/// Model constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameParams {
    /// Weight `A > 1` of distances to major players.
    pub major_weight: Rational,
    /// Link price `c_A` paid by a major player per incident link.
    pub major_link_cost: Rational,
    /// Link price `c_B` paid by a minor player per incident link.
    pub minor_link_cost: Rational,
    /// Weight `δ ∈ [0, 1]` of the backup path length.
    pub backup_weight: Rational,
    /// `τ = 1`: backup paths are required to every player. `τ = 0`: only to
    /// majors; minors need a single path.
    pub full_reliability: bool,
    pub mode: DisjointnessMode,
    pub objective: PairObjective,
    pub transfers: bool,
    /// Node limit for [`PairObjective::MinCostExact`].
    pub exact_node_budget: usize,
}

impl GameParams {
    /// Parameters with `τ = 1`, node-disjoint min-sum pairs and no
    /// transfers. Fails when the constants are out of range.
    pub fn new(
        major_weight: Rational,
        major_link_cost: Rational,
        minor_link_cost: Rational,
        backup_weight: Rational,
    ) -> Result<Self> {
        let p = GameParams {
            major_weight,
            major_link_cost,
            minor_link_cost,
            backup_weight,
            full_reliability: true,
            mode: DisjointnessMode::NodeDisjoint,
            objective: PairObjective::MinSum,
            transfers: false,
            exact_node_budget: DEFAULT_EXACT_NODE_BUDGET,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_full_reliability(mut self, tau: bool) -> Self {
        self.full_reliability = tau;
        self
    }

    pub fn with_mode(mut self, mode: DisjointnessMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_objective(mut self, objective: PairObjective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_transfers(mut self, transfers: bool) -> Self {
        self.transfers = transfers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Rational::zero();
        if self.major_weight <= Rational::one() {
            return Err(Error::params("major weight A must exceed 1"));
        }
        if self.major_link_cost <= zero {
            return Err(Error::params("c_A must be positive"));
        }
        if self.major_link_cost > self.minor_link_cost {
            return Err(Error::params("c_A must not exceed c_B"));
        }
        if self.backup_weight < zero || self.backup_weight > Rational::one() {
            return Err(Error::params("backup weight must lie in [0, 1]"));
        }
        if let PairObjective::MinCostExact(w) = self.objective {
            validate_weight(w)?;
        }
        Ok(())
    }

    /// `c = (c_A + c_B) / 2`.
    pub fn mean_link_cost(&self) -> Rational {
        (self.major_link_cost + self.minor_link_cost) / Rational::from_integer(2)
    }

    pub fn link_cost(&self, kind: PlayerType) -> Rational {
        match kind {
            PlayerType::Major => self.major_link_cost,
            PlayerType::Minor => self.minor_link_cost,
        }
    }
}

/// Which cost function is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Disjoint path pairs, the reliability-aware cost.
    Full,
    /// A single shortest path per pair.
    Bare,
}

/// Integer distance sums behind one player's cost.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceTally {
    pub major_primary: u64,
    pub major_backup: u64,
    pub minor_primary: u64,
    pub minor_backup: u64,
    /// Shortest-path sum to minors, used when backups to minors are not
    /// required.
    pub minor_shortest: u64,
    pub infinite_terms: i64,
}

/// One player's cost split into its terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    pub degree: usize,
    pub link_cost: Rational,
    pub major_distance: Rational,
    pub minor_distance: Rational,
    pub tally: DistanceTally,
    pub total: ExtCost,
}

/// Pair lengths from one source to every other node, reusing the
/// source's BFS tree.
struct PairSource<'a> {
    g: &'a Network,
    p: &'a GameParams,
    i: NodeId,
    dist_from_i: Vec<u32>,
    blocker: Blocker,
}

impl<'a> PairSource<'a> {
    fn new(g: &'a Network, p: &'a GameParams, i: NodeId) -> Self {
        PairSource {
            g,
            p,
            i,
            dist_from_i: bfs_distances(g, i),
            blocker: Blocker::new(g.node_count(), p.mode),
        }
    }

    fn shortest(&self, j: NodeId) -> u32 {
        self.dist_from_i[j.index()]
    }

    fn pair(&mut self, j: NodeId) -> DistancePair {
        if self.shortest(j) == UNREACHABLE {
            return DistancePair::unreachable();
        }
        let (g, i) = (self.g, self.i);
        match self.p.objective {
            PairObjective::MinSum => min_sum_pair(g, i, j, self.p.mode, false),
            PairObjective::MinPrimaryHeuristic => {
                let (a, b) = canonical(i, j);
                if b == i {
                    heuristic_pair(g, a, b, &self.dist_from_i, &mut self.blocker, false)
                } else {
                    let dist_to_b = bfs_distances(g, b);
                    heuristic_pair(g, a, b, &dist_to_b, &mut self.blocker, false)
                }
            }
            PairObjective::MinCostExact(w) => exact_pair(g, i, j, self.p.mode, w, false),
        }
    }
}

fn check_budget(g: &Network, p: &GameParams) -> Result<()> {
    if matches!(p.objective, PairObjective::MinCostExact(_)) && g.node_count() > p.exact_node_budget
    {
        return Err(Error::BudgetExceeded {
            what: "exact disjoint-pair search (nodes)",
            requested: g.node_count(),
            limit: p.exact_node_budget,
        });
    }
    Ok(())
}

fn tally(g: &Network, p: &GameParams, i: NodeId) -> DistanceTally {
    let mut source = PairSource::new(g, p, i);
    let mut t = DistanceTally::default();
    for j in g.nodes() {
        if j == i {
            continue;
        }
        let major = g.kind(j).is_major();
        if !major && !p.full_reliability {
            match source.shortest(j) {
                UNREACHABLE => t.infinite_terms += 1,
                d => t.minor_shortest += d as u64,
            }
            continue;
        }
        let pair = source.pair(j);
        let (primary, backup) = if major {
            (&mut t.major_primary, &mut t.major_backup)
        } else {
            (&mut t.minor_primary, &mut t.minor_backup)
        };
        match pair.primary.finite() {
            Some(d) => *primary += d as u64,
            None => t.infinite_terms += 1,
        }
        match pair.backup.finite() {
            Some(d) => *backup += d as u64,
            None => t.infinite_terms += 1,
        }
    }
    t
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Cost of `i` with every term itemized.
pub fn node_cost_breakdown(g: &Network, p: &GameParams, i: NodeId) -> Result<CostBreakdown> {
    g.check(i)?;
    check_budget(g, p)?;
    let t = tally(g, p, i);
    let delta = p.backup_weight;
    let scale = Rational::one() / (Rational::one() + delta);
    let degree = g.degree(i);
    let link_cost = int(degree as u64) * p.link_cost(g.kind(i));
    let major_distance =
        p.major_weight * scale * (int(t.major_primary) + delta * int(t.major_backup));
    let minor_distance = if p.full_reliability {
        scale * (int(t.minor_primary) + delta * int(t.minor_backup))
    } else {
        int(t.minor_shortest)
    };
    let total = ExtCost::new(
        t.infinite_terms,
        link_cost + major_distance + minor_distance,
    );
    Ok(CostBreakdown {
        degree,
        link_cost,
        major_distance,
        minor_distance,
        tally: t,
        total,
    })
}

/// Reliability-aware cost of player `i`.
pub fn node_cost(g: &Network, p: &GameParams, i: NodeId) -> Result<ExtCost> {
    Ok(node_cost_breakdown(g, p, i)?.total)
}

/// Cost of `i` when a single path to every player suffices.
pub fn bare_node_cost(g: &Network, p: &GameParams, i: NodeId) -> Result<ExtCost> {
    g.check(i)?;
    let dist = bfs_distances(g, i);
    let mut q = 0i64;
    let (mut to_major, mut to_minor) = (0u64, 0u64);
    for j in g.nodes() {
        if j == i {
            continue;
        }
        match dist[j.index()] {
            UNREACHABLE => q += 1,
            d if g.kind(j).is_major() => to_major += d as u64,
            d => to_minor += d as u64,
        }
    }
    let finite = int(g.degree(i) as u64) * p.link_cost(g.kind(i))
        + p.major_weight * int(to_major)
        + int(to_minor);
    Ok(ExtCost::new(q, finite))
}

pub fn model_cost(g: &Network, p: &GameParams, i: NodeId, model: CostModel) -> Result<ExtCost> {
    match model {
        CostModel::Full => node_cost(g, p, i),
        CostModel::Bare => bare_node_cost(g, p, i),
    }
}

/// Sum of all player costs.
pub fn social_cost(g: &Network, p: &GameParams, bare: bool) -> Result<ExtCost> {
    let model = if bare {
        CostModel::Bare
    } else {
        CostModel::Full
    };
    social_cost_model(g, p, model)
}

pub fn social_cost_model(g: &Network, p: &GameParams, model: CostModel) -> Result<ExtCost> {
    let mut total = ExtCost::zero();
    for i in g.nodes() {
        total += model_cost(g, p, i, model)?;
    }
    Ok(total)
}

fn expect_state(g: &Network, u: NodeId, v: NodeId, change: EdgeChange) -> Result<()> {
    g.check(u)?;
    g.check(v)?;
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    match (change, g.has_edge(u, v)) {
        (EdgeChange::Add, true) => Err(Error::DuplicateEdge(u, v)),
        (EdgeChange::Remove, false) => Err(Error::MissingEdge(u, v)),
        _ => Ok(()),
    }
}

/// `C(i)` after toggling `edge` minus `C(i)` before. Negative means the
/// change benefits `i`.
pub fn delta_cost(
    g: &Network,
    p: &GameParams,
    i: NodeId,
    edge: (NodeId, NodeId),
    change: EdgeChange,
) -> Result<ExtCost> {
    delta_cost_model(g, p, i, edge, change, CostModel::Full)
}

pub fn delta_cost_model(
    g: &Network,
    p: &GameParams,
    i: NodeId,
    (u, v): (NodeId, NodeId),
    change: EdgeChange,
    model: CostModel,
) -> Result<ExtCost> {
    g.check(i)?;
    expect_state(g, u, v, change)?;
    let after = g.with_change(u, v, change)?;
    Ok(model_cost(&after, p, i, model)? - model_cost(g, p, i, model)?)
}

/// Deltas of both endpoints of `(u, v)`, sharing the toggled copy.
pub fn endpoint_deltas(
    g: &Network,
    p: &GameParams,
    (u, v): (NodeId, NodeId),
    change: EdgeChange,
    model: CostModel,
) -> Result<(ExtCost, ExtCost)> {
    expect_state(g, u, v, change)?;
    let after = g.with_change(u, v, change)?;
    let du = model_cost(&after, p, u, model)? - model_cost(g, p, u, model)?;
    let dv = model_cost(&after, p, v, model)? - model_cost(g, p, v, model)?;
    Ok((du, dv))
}

/// Standing payments: `P_ij` is what `i` pays `j` for the link `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PaymentMatrix {
    entries: BTreeMap<(NodeId, NodeId), Rational>,
}

impl PaymentMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `P_payer,payee`. Zero removes the entry.
    pub fn set(&mut self, payer: NodeId, payee: NodeId, amount: Rational) -> Result<()> {
        if payer == payee {
            return Err(Error::SelfLoop(payer));
        }
        if amount < Rational::zero() {
            return Err(Error::input("payments must be non-negative"));
        }
        if amount.is_zero() {
            self.entries.remove(&(payer, payee));
        } else {
            self.entries.insert((payer, payee), amount);
        }
        Ok(())
    }

    pub fn get(&self, payer: NodeId, payee: NodeId) -> Rational {
        self.entries
            .get(&(payer, payee))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// Drops both directions of payment on a link.
    pub fn clear_link(&mut self, u: NodeId, v: NodeId) {
        self.entries.remove(&(u, v));
        self.entries.remove(&(v, u));
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId, Rational)> + '_ {
        self.entries.iter().map(|(&(a, b), &r)| (a, b, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry must sit on an existing edge.
    pub fn validate(&self, g: &Network) -> Result<()> {
        for &(a, b) in self.entries.keys() {
            if !g.has_edge(a, b) {
                return Err(Error::input(alloc::format!(
                    "payment on absent edge ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    /// `Σ_j (P_ij − P_ji)`.
    pub fn net_outflow(&self, i: NodeId) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (&(a, b), &r)| {
                if a == i {
                    acc + r
                } else if b == i {
                    acc - r
                } else {
                    acc
                }
            })
    }
}

/// `C̃(i) = C(i) + Σ_{j: ij ∈ E} (P_ij − P_ji)`.
pub fn transfer_adjusted_cost(
    g: &Network,
    p: &GameParams,
    pay: &PaymentMatrix,
    i: NodeId,
) -> Result<ExtCost> {
    pay.validate(g)?;
    Ok(node_cost(g, p, i)? + ExtCost::finite(pay.net_outflow(i)))
}
