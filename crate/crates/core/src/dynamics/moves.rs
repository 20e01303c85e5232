//! Move selection within one player's turn.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::RngCore;

use crate::cost::{node_cost, GameParams};
use crate::error::Result;
use crate::ext::{ExtCost, Rational};
use crate::graph::{EdgeChange, Network, NodeId};

use super::pricing::{choose_link_with, prices_from_deltas, LinkQuote};
use super::DynamicRule;

/// Removal subsets are exhaustive up to this degree.
const EXHAUSTIVE_REMOVAL_DEGREE: usize = 8;
/// Pairs of removals are tried up to this degree.
const PAIR_REMOVAL_DEGREE: usize = 16;

/// One link change made by the active player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub change: EdgeChange,
    pub counterparty: NodeId,
    /// Amount the actor pays the counterparty for an added link.
    pub payment: Option<Rational>,
    /// Change of the actor's cost, payments excluded.
    pub actor_delta: ExtCost,
}

/// Candidate moves evaluated against one network state.
struct Evaluator<'a> {
    p: &'a GameParams,
    actor: NodeId,
    g: &'a Network,
    actor_cost: ExtCost,
    costs: BTreeMap<NodeId, ExtCost>,
}

impl<'a> Evaluator<'a> {
    fn new(g: &'a Network, p: &'a GameParams, actor: NodeId) -> Result<Self> {
        Ok(Evaluator {
            p,
            actor,
            g,
            actor_cost: node_cost(g, p, actor)?,
            costs: BTreeMap::new(),
        })
    }

    fn cost_of(&mut self, j: NodeId) -> Result<ExtCost> {
        if let Some(c) = self.costs.get(&j) {
            return Ok(c.clone());
        }
        let c = node_cost(self.g, self.p, j)?;
        self.costs.insert(j, c.clone());
        Ok(c)
    }

    /// `(ΔC(actor), ΔC(j))` for toggling the link to `j`; the second is
    /// only computed when `both` is set.
    fn deltas(
        &mut self,
        j: NodeId,
        change: EdgeChange,
        both: bool,
    ) -> Result<(ExtCost, Option<ExtCost>)> {
        let after = self.g.with_change(self.actor, j, change)?;
        let da = node_cost(&after, self.p, self.actor)? - self.actor_cost.clone();
        let dj = if both {
            Some(node_cost(&after, self.p, j)? - self.cost_of(j)?)
        } else {
            None
        };
        Ok((da, dj))
    }

    fn addition_targets(&self, excluded: &[NodeId]) -> Vec<NodeId> {
        self.g
            .nodes()
            .filter(|&j| {
                j != self.actor && !self.g.has_edge(self.actor, j) && !excluded.contains(&j)
            })
            .collect()
    }

    /// The addition the actor would make here, with its ranking value.
    /// `require_gain` limits the choice to links that lower the actor's
    /// (payment-adjusted) cost.
    fn best_addition<R: RngCore>(
        &mut self,
        excluded: &[NodeId],
        require_gain: bool,
        rng: &mut R,
    ) -> Result<Option<(ExtCost, Move)>> {
        let targets = self.addition_targets(excluded);
        if self.p.transfers {
            let mut deltas = BTreeMap::new();
            for &j in &targets {
                let (da, dj) = self.deltas(j, EdgeChange::Add, true)?;
                deltas.insert(j, (da, dj.unwrap()));
            }
            let quotes = prices_from_deltas(&deltas);
            let finite: BTreeMap<NodeId, &LinkQuote> = quotes
                .iter()
                .filter(|(_, q)| q.price.infinite_terms == 0)
                .map(|(&j, q)| (j, q))
                .collect();
            let pick = if require_gain {
                let cands = finite
                    .iter()
                    .map(|(&j, q)| (j, (q.actor_delta.clone(), q.price.clone())))
                    .collect();
                choose_link_with(&cands, rng)
            } else {
                // Inside a plan any accepted link may be taken: the cheapest
                // adjusted change, then the cheapest price, then smallest id.
                finite
                    .iter()
                    .min_by(|a, b| (a.1.adjusted(), &a.1.price).cmp(&(b.1.adjusted(), &b.1.price)))
                    .map(|(&j, _)| j)
            };
            return Ok(pick.map(|j| {
                let q = finite[&j];
                (
                    q.adjusted(),
                    Move {
                        change: EdgeChange::Add,
                        counterparty: j,
                        payment: Some(q.price.finite),
                        actor_delta: q.actor_delta.clone(),
                    },
                )
            }));
        }
        let mut ranked = Vec::new();
        for &j in &targets {
            let (da, _) = self.deltas(j, EdgeChange::Add, false)?;
            if !require_gain || da.is_negative() {
                ranked.push((da, j));
            }
        }
        ranked.sort();
        for (da, j) in ranked {
            let (_, dj) = self.deltas(j, EdgeChange::Add, true)?;
            if dj.unwrap().is_negative() {
                let mv = Move {
                    change: EdgeChange::Add,
                    counterparty: j,
                    payment: None,
                    actor_delta: da.clone(),
                };
                return Ok(Some((da, mv)));
            }
        }
        Ok(None)
    }

    /// The most valuable strictly improving removal.
    fn best_removal(&mut self) -> Result<Option<(ExtCost, Move)>> {
        let mut best: Option<(ExtCost, Move)> = None;
        for &j in self.g.neighbors(self.actor) {
            let (da, dj) = self.deltas(j, EdgeChange::Remove, self.p.transfers)?;
            let value = match dj {
                Some(dj) => &da + &dj,
                None => da.clone(),
            };
            if value.is_negative() && best.as_ref().is_none_or(|b| value < b.0) {
                best = Some((
                    value,
                    Move {
                        change: EdgeChange::Remove,
                        counterparty: j,
                        payment: None,
                        actor_delta: da,
                    },
                ));
            }
        }
        Ok(best)
    }
}

/// Single greedy move: the improving move with the most negative value.
/// Ties prefer the smaller counterparty id.
pub(crate) fn greedy_move<R: RngCore>(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    rng: &mut R,
) -> Result<Option<Move>> {
    let mut ev = Evaluator::new(g, p, actor)?;
    let removal = ev.best_removal()?;
    let addition = ev.best_addition(&[], true, rng)?;
    Ok(match (removal, addition) {
        (Some(r), Some(a)) => {
            let remove_first = (&r.0, r.1.counterparty) <= (&a.0, a.1.counterparty);
            Some(if remove_first { r.1 } else { a.1 })
        }
        (r, a) => r.or(a).map(|x| x.1),
    })
}

fn removal_subsets(links: &[NodeId]) -> Vec<Vec<NodeId>> {
    let k = links.len();
    if k <= EXHAUSTIVE_REMOVAL_DEGREE {
        return (0u32..1 << k)
            .map(|mask| {
                links
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
    }
    let mut out = alloc::vec![Vec::new()];
    out.extend(links.iter().map(|&v| alloc::vec![v]));
    if k <= PAIR_REMOVAL_DEGREE {
        for a in 0..k {
            for b in a + 1..k {
                out.push(alloc::vec![links[a], links[b]]);
            }
        }
    }
    out.push(links.to_vec());
    out
}

/// A strategic plan: remove a subset of own links, then add up to
/// `depth` links greedily. Returns the cheapest plan when it strictly
/// lowers the actor's cost (payments included).
pub(crate) fn best_plan<R: RngCore>(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    depth: usize,
    rng: &mut R,
) -> Result<Vec<Move>> {
    let current = node_cost(g, p, actor)?;
    let mut best: Option<(ExtCost, Vec<Move>)> = None;
    let links: Vec<NodeId> = g.neighbors(actor).to_vec();
    for removed in removal_subsets(&links) {
        let mut h = g.clone();
        let mut moves = Vec::new();
        let mut cost = current.clone();
        for &j in &removed {
            h.remove_edge(actor, j)?;
            let after = node_cost(&h, p, actor)?;
            moves.push(Move {
                change: EdgeChange::Remove,
                counterparty: j,
                payment: None,
                actor_delta: &after - &cost,
            });
            cost = after;
        }
        let mut paid = Rational::from_integer(0);
        let mut consider = |total: ExtCost, moves: &Vec<Move>| {
            if !moves.is_empty() && best.as_ref().is_none_or(|b| total < b.0) {
                best = Some((total, moves.clone()));
            }
        };
        consider(cost.clone(), &moves);
        for _ in 0..depth {
            let mut ev = Evaluator::new(&h, p, actor)?;
            let Some((_, mv)) = ev.best_addition(&removed, false, rng)? else {
                break;
            };
            h.add_edge(actor, mv.counterparty)?;
            if let Some(pay) = mv.payment {
                paid += pay;
            }
            cost = &cost + &mv.actor_delta;
            moves.push(mv);
            consider(&cost + &ExtCost::finite(paid), &moves);
        }
    }
    Ok(match best {
        Some((total, moves)) if total < current => moves,
        _ => Vec::new(),
    })
}

/// Next batch of moves under `rule`: one greedy move, or one full plan.
pub(crate) fn next_moves<R: RngCore>(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    rule: DynamicRule,
    rng: &mut R,
) -> Result<Vec<Move>> {
    match rule {
        DynamicRule::Rule2b => Ok(greedy_move(g, p, actor, rng)?.into_iter().collect()),
        DynamicRule::Rule2a { plan_depth } => best_plan(g, p, actor, plan_depth, rng),
    }
}
