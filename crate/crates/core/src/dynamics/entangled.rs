//! Growth of entangled cycles under strategic pricing.

use alloc::vec::Vec;

use crate::cost::{node_cost, GameParams};
use crate::error::{Error, Result};
use crate::ext::{ExtCost, Rational};
use crate::graph::{EdgeChange, Network, NodeId, PlayerType};

use super::{DynamicRule, Simulation};

/// Minimum number of majors for the growth process.
pub const MIN_MAJORS: usize = 10;

/// `C(i)` without the link payments `c_β·deg(i)`.
pub fn distance_cost(g: &Network, p: &GameParams, i: NodeId) -> Result<ExtCost> {
    let links = Rational::from_integer(g.degree(i) as i128) * p.link_cost(g.kind(i));
    Ok(node_cost(g, p, i)? - ExtCost::finite(links))
}

/// `l ≤ 2·√((A·|T_A|)² + 5A) − 2A·|T_A|`, decided exactly by squaring
/// `(l + 2a)/2 ≤ √(a² + 5A)` with `a = A·|T_A|`.
pub fn entangled_bound_holds(l: usize, major_weight: Rational, majors: usize) -> bool {
    let a = major_weight * Rational::from_integer(majors as i128);
    let half = (Rational::from_integer(l as i128) + a * Rational::from_integer(2))
        / Rational::from_integer(2);
    half * half <= a * a + Rational::from_integer(5) * major_weight
}

#[derive(Debug, Clone)]
pub struct EntangledGrowth {
    /// Game state after the arrivals; keep playing it to watch the chain
    /// thin out.
    pub simulation: Simulation,
    /// `x₋₁, x₀, x₁, …`: the two costliest players, then the arrivals.
    pub chain: Vec<NodeId>,
    /// The first two links each arrival formed.
    pub first_links: Vec<Vec<NodeId>>,
    /// Leading arrivals whose first two links went to their two
    /// predecessors in the chain.
    pub pattern_length: usize,
    pub pattern_holds: bool,
    /// Whether `pattern_length` satisfies the length bound.
    pub bound_holds: bool,
}

impl EntangledGrowth {
    /// Links between consecutive and next-to-consecutive chain members.
    pub fn chain_links(&self) -> Vec<(NodeId, NodeId)> {
        let g = self.simulation.network();
        let mut out = Vec::new();
        for (k, &v) in self.chain.iter().enumerate() {
            for &u in self.chain[k + 1..].iter().take(2) {
                if g.has_edge(u, v) {
                    out.push((v.min(u), v.max(u)));
                }
            }
        }
        out
    }
}

/// The two players with the highest distance cost, highest first; ties
/// go to the smaller id.
fn costliest_pair(g: &Network, p: &GameParams) -> Result<(NodeId, NodeId)> {
    let mut ranked = Vec::with_capacity(g.node_count());
    for i in g.nodes() {
        ranked.push((distance_cost(g, p, i)?, i));
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    match ranked.as_slice() {
        [first, second, ..] => Ok((first.1, second.1)),
        _ => Err(Error::Precondition("need at least two players".into())),
    }
}

/// Minor players join one after another, each playing its turn on
/// arrival under strategic pricing.
pub fn entangled_growth(
    p: &GameParams,
    existing: &Network,
    arrivals: usize,
    seed: u64,
) -> Result<EntangledGrowth> {
    if !p.transfers {
        return Err(Error::TransfersDisabled);
    }
    let majors = existing.major_count();
    if majors < MIN_MAJORS {
        return Err(Error::Precondition(alloc::format!(
            "{majors} major players present, at least {MIN_MAJORS} required"
        )));
    }
    let (x0, x_prev) = costliest_pair(existing, p)?;
    if !existing.has_edge(x0, x_prev) {
        return Err(Error::Precondition(alloc::format!(
            "the two costliest players {x0} and {x_prev} are not adjacent"
        )));
    }
    let mut sim = Simulation::new(p.clone(), DynamicRule::Rule2b, existing.clone(), seed)?;
    let mut chain = alloc::vec![x_prev, x0];
    let mut first_links = Vec::with_capacity(arrivals);
    let mut pattern_length = 0;
    let mut intact = true;
    let base = existing.node_count();
    for k in 0..arrivals {
        let id = sim.add_player(PlayerType::Minor, NodeId::from(base + k))?;
        let log = sim.play_turn(id)?;
        let mut firsts: Vec<NodeId> = log
            .moves
            .iter()
            .filter(|m| m.change == EdgeChange::Add)
            .map(|m| m.edge.1)
            .take(2)
            .collect();
        firsts.sort();
        let n = chain.len();
        let mut expected = alloc::vec![chain[n - 1], chain[n - 2]];
        expected.sort();
        if intact && firsts == expected {
            pattern_length += 1;
        } else {
            intact = false;
        }
        first_links.push(firsts);
        chain.push(id);
    }
    Ok(EntangledGrowth {
        bound_holds: entangled_bound_holds(pattern_length, p.major_weight, majors),
        simulation: sim,
        chain,
        first_links,
        pattern_length,
        pattern_holds: intact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_below_one_for_ten_majors() {
        let a = Rational::from_integer(2);
        assert!(entangled_bound_holds(0, a, 10));
        assert!(!entangled_bound_holds(1, a, 10));
        // With a single major of weight 2 the bound is 2·√14 − 4 ≈ 3.48.
        assert!(entangled_bound_holds(3, a, 1));
        assert!(!entangled_bound_holds(4, a, 1));
    }
}
