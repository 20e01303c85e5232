//! Topology metrics for measured snapshots.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::Rational;
use crate::flow::count_disjoint_paths_to_set;
use crate::graph::{Network, NodeId};
use crate::paths::{min_sum_pair, DisjointnessMode};

/// Mean number of disjoint paths from a non-core node to the core, over
/// the mean degree of non-core nodes.
pub fn core_disjoint_ratio(
    g: &Network,
    core: &[NodeId],
    mode: DisjointnessMode,
) -> Result<Rational> {
    if core.is_empty() {
        return Err(Error::input("core set is empty"));
    }
    for &c in core {
        g.check(c)?;
    }
    let mut in_core = alloc::vec![false; g.node_count()];
    for &c in core {
        in_core[c.index()] = true;
    }
    let (mut paths, mut degrees, mut count) = (0u64, 0u64, 0usize);
    for i in g.nodes().filter(|i| !in_core[i.index()]) {
        paths += count_disjoint_paths_to_set(g, i, core, mode)? as u64;
        degrees += g.degree(i) as u64;
        count += 1;
    }
    if count == 0 {
        return Err(Error::input("every node is in the core"));
    }
    if degrees == 0 {
        return Err(Error::input("non-core nodes have no links"));
    }
    // The common factor 1/count cancels.
    Ok(Rational::new(paths as i128, degrees as i128))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStats {
    /// Mean shortest-cycle length over pairs that lie on a cycle.
    pub mean: Option<Rational>,
    pub pairs_evaluated: usize,
    pub pairs_without_cycle: usize,
}

impl CycleStats {
    pub fn excluded_fraction(&self) -> Rational {
        if self.pairs_evaluated == 0 {
            return Rational::zero();
        }
        Rational::new(
            self.pairs_without_cycle as i128,
            self.pairs_evaluated as i128,
        )
    }
}

/// Mean length of the shortest cycle through a major and a minor player:
/// the min-sum node-disjoint pair total `d + d'`. With `sample`, that many
/// pairs are drawn uniformly with replacement; otherwise all pairs are used.
pub fn mean_major_minor_cycle(
    g: &Network,
    majors: &[NodeId],
    minors: &[NodeId],
    sample: Option<usize>,
    seed: u64,
) -> Result<CycleStats> {
    if majors.is_empty() || minors.is_empty() {
        return Err(Error::input("major and minor sets must be non-empty"));
    }
    for &v in majors.iter().chain(minors) {
        g.check(v)?;
    }
    let pairs: Vec<(NodeId, NodeId)> = match sample {
        None => majors
            .iter()
            .flat_map(|&a| minors.iter().map(move |&b| (a, b)))
            .collect(),
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k)
                .map(|_| {
                    (
                        majors[rng.gen_range(0..majors.len())],
                        minors[rng.gen_range(0..minors.len())],
                    )
                })
                .collect()
        }
    };
    let (mut total, mut found, mut missing) = (0u64, 0u64, 0usize);
    for &(a, b) in &pairs {
        if a == b {
            return Err(Error::SameEndpoints(a));
        }
        match min_sum_pair(g, a, b, DisjointnessMode::NodeDisjoint, false)
            .total()
            .finite()
        {
            Some(len) => {
                total += len as u64;
                found += 1;
            }
            None => missing += 1,
        }
    }
    Ok(CycleStats {
        mean: (found > 0).then(|| Rational::new(total as i128, found as i128)),
        pairs_evaluated: pairs.len(),
        pairs_without_cycle: missing,
    })
}
