//! Strategic link pricing and the link preference order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{model_cost, CostModel, GameParams};
use crate::error::{Error, Result};
use crate::ext::ExtCost;
use crate::graph::{EdgeChange, Network, NodeId};

/// Cost changes of a prospective link `(actor, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkQuote {
    /// `ΔC(actor, E + actor·j)`.
    pub actor_delta: ExtCost,
    /// `ΔC(j, E + actor·j)`.
    pub counterparty_delta: ExtCost,
    /// What `j` demands from the actor.
    pub price: ExtCost,
}

impl LinkQuote {
    /// `ΔC̃ = ΔC + P`, the actor's change including the payment.
    pub fn adjusted(&self) -> ExtCost {
        &self.actor_delta + &self.price
    }
}

pub(crate) fn addition_deltas(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
    model: CostModel,
) -> Result<BTreeMap<NodeId, (ExtCost, ExtCost)>> {
    let base_actor = model_cost(g, p, actor, model)?;
    let mut out = BTreeMap::new();
    for j in g.nodes() {
        if j == actor || g.has_edge(actor, j) {
            continue;
        }
        let after = g.with_change(actor, j, EdgeChange::Add)?;
        let da = model_cost(&after, p, actor, model)? - base_actor.clone();
        let dj = model_cost(&after, p, j, model)? - model_cost(g, p, j, model)?;
        out.insert(j, (da, dj));
    }
    Ok(out)
}

fn max0(c: ExtCost) -> ExtCost {
    if c.is_negative() {
        ExtCost::zero()
    } else {
        c
    }
}

/// Prices from the deltas of every candidate link.
///
/// `j*` is the candidate whose link helps the actor least (largest
/// `ΔC(actor)`); it asks only for compensation `P* = max{ΔC(j*), 0}`.
/// Every other candidate asks for its advantage over `j*`,
/// `α_j = ΔC(actor, j*) + P* − ΔC(actor, j)`, and never less than its own
/// cost increase: `P_j = max{0, α_j, ΔC(j)}`. Ties for `j*` go to the
/// smallest id.
pub fn prices_from_deltas(
    deltas: &BTreeMap<NodeId, (ExtCost, ExtCost)>,
) -> BTreeMap<NodeId, LinkQuote> {
    let mut worst: Option<(&NodeId, &(ExtCost, ExtCost))> = None;
    for entry in deltas {
        if worst.is_none_or(|w| entry.1 .0 > w.1 .0) {
            worst = Some(entry);
        }
    }
    let Some((_, (star_actor, star_counterparty))) = worst else {
        return BTreeMap::new();
    };
    let p_star = max0(star_counterparty.clone());
    let reference = star_actor + &p_star;
    deltas
        .iter()
        .map(|(&j, (da, dj))| {
            let alpha = &reference - da;
            let mut price = max0(alpha);
            if *dj > price {
                price = dj.clone();
            }
            (
                j,
                LinkQuote {
                    actor_delta: da.clone(),
                    counterparty_delta: dj.clone(),
                    price,
                },
            )
        })
        .collect()
}

/// Strategic prices for every present non-neighbor of `actor`.
pub fn strategic_prices(
    g: &Network,
    p: &GameParams,
    actor: NodeId,
) -> Result<BTreeMap<NodeId, LinkQuote>> {
    if !p.transfers {
        return Err(Error::TransfersDisabled);
    }
    g.check(actor)?;
    let deltas = addition_deltas(g, p, actor, CostModel::Full)?;
    Ok(prices_from_deltas(&deltas))
}

/// Preference order: minimize `ΔC̃ = delta + price` subject to `ΔC̃ < 0`,
/// then minimize the price, then pick uniformly at random.
pub fn choose_link(candidates: &BTreeMap<NodeId, (ExtCost, ExtCost)>, seed: u64) -> Option<NodeId> {
    choose_link_with(candidates, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn choose_link_with<R: RngCore>(
    candidates: &BTreeMap<NodeId, (ExtCost, ExtCost)>,
    rng: &mut R,
) -> Option<NodeId> {
    let mut best: Vec<NodeId> = Vec::new();
    let mut best_key: Option<(ExtCost, ExtCost)> = None;
    for (&j, (delta, price)) in candidates {
        let adjusted = delta + price;
        if !adjusted.is_negative() {
            continue;
        }
        let key = (adjusted, price.clone());
        match &best_key {
            Some(k) if key > *k => {}
            Some(k) if key == *k => best.push(j),
            _ => {
                best_key = Some(key);
                best.clear();
                best.push(j);
            }
        }
    }
    match best.len() {
        0 => None,
        1 => Some(best[0]),
        _ => best.choose(rng).copied(),
    }
}
