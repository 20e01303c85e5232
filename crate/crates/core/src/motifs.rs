//! Motif counters, configuration-model nulls and Chebyshev significance.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::{rational_to_f64, Rational};
use crate::graph::{Network, NodeId, PlayerType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotifKind {
    /// Adjacent centers of degree above `m` sharing at least `m` neighbors.
    DoubleStar(usize),
    /// Chain of `l` nodes with every next-nearest cross-link.
    EntangledCycle(usize),
}

/// Sorted-list intersection size.
fn common_neighbors(g: &Network, u: NodeId, v: NodeId) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => x += 1,
            core::cmp::Ordering::Greater => y += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Adjacent pairs `(u, v)` with `deg > m` at both ends and at least `m`
/// common neighbors. Each unordered pair counts once.
pub fn double_star_count(g: &Network, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::input("double-star threshold m must be at least 1"));
    }
    Ok(g.edges()
        .filter(|&(u, v)| g.degree(u) > m && g.degree(v) > m && common_neighbors(g, u, v) >= m)
        .count() as u64)
}

/// Copies of the squared path on `l` nodes, counted as distinct edge sets
/// and not required to be induced. Supported lengths are 3 (triangles)
/// and 4.
///
/// For `l = 4` a copy is determined by its middle link `x₂x₃` together
/// with the unordered pair `{x₁, x₄}` of common neighbors of that link.
pub fn entangled_cycle_count(g: &Network, l: usize) -> Result<u64> {
    match l {
        3 => Ok(g
            .edges()
            .map(|(u, v)| common_neighbors(g, u, v) as u64)
            .sum::<u64>()
            / 3),
        4 => Ok(g
            .edges()
            .map(|(u, v)| {
                let c = common_neighbors(g, u, v) as u64;
                c * c.saturating_sub(1) / 2
            })
            .sum()),
        _ => Err(Error::BudgetExceeded {
            what: "entangled-cycle length (supported: 3, 4)",
            requested: l,
            limit: 4,
        }),
    }
}

pub fn count_motif(g: &Network, kind: MotifKind) -> Result<u64> {
    match kind {
        MotifKind::DoubleStar(m) => double_star_count(g, m),
        MotifKind::EntangledCycle(l) => entangled_cycle_count(g, l),
    }
}

/// One draw of the erased configuration model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationSample {
    pub network: Network,
    pub self_loops_erased: usize,
    pub multi_edges_erased: usize,
    /// Degrees after erasure; never above the requested ones.
    pub realized_degrees: Vec<usize>,
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform stub matching followed by erasure of self-loops and parallel
/// edges. All nodes are minors.
pub fn configuration_model_sample(degrees: &[usize], seed: u64) -> Result<ConfigurationSample> {
    configuration_model_draw(degrees, seed, 0)
}

/// The `index`-th draw for `seed`; draws are independent per index.
pub fn configuration_model_draw(
    degrees: &[usize],
    seed: u64,
    index: u64,
) -> Result<ConfigurationSample> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::input("degree sum must be even"));
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(core::iter::repeat_n(v as u32, d));
    }
    stubs.shuffle(&mut sample_rng(seed, index));
    let mut g = Network::from_kinds(alloc::vec![PlayerType::Minor; degrees.len()]);
    let (mut loops, mut multi) = (0, 0);
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (NodeId(pair[0]), NodeId(pair[1]));
        if u == v {
            loops += 1;
        } else if g.has_edge(u, v) {
            multi += 1;
        } else {
            g.add_edge(u, v)?;
        }
    }
    let realized_degrees = g.nodes().map(|v| g.degree(v)).collect();
    Ok(ConfigurationSample {
        network: g,
        self_loops_erased: loops,
        multi_edges_erased: multi,
        realized_degrees,
    })
}

/// Observed count against a configuration-model null.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifReport {
    pub kind: MotifKind,
    pub observed: u64,
    pub null_mean: Rational,
    /// Unbiased sample variance.
    pub null_variance: Rational,
    pub null_std: f64,
    pub samples: usize,
    /// Chebyshev bound on the p-value; absent unless observed > mean.
    pub p_bound: Option<Rational>,
    /// Mean fraction of requested edges lost to erasure.
    pub erased_fraction: f64,
}

/// `variance / (observed − mean)²`, at most 1; `None` unless
/// `observed > mean`.
pub fn chebyshev_p_bound(
    observed: Rational,
    mean: Rational,
    variance: Rational,
) -> Option<Rational> {
    if observed <= mean {
        return None;
    }
    let gap = observed - mean;
    let bound = variance / (gap * gap);
    Some(bound.min(Rational::from_integer(1)))
}

/// Motif counts of draws `indices` of the null for `g`. Also returns the
/// number of erased edges per draw.
pub fn null_counts(
    g: &Network,
    kind: MotifKind,
    seed: u64,
    indices: core::ops::Range<u64>,
) -> Result<Vec<(u64, usize)>> {
    let degrees: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    indices
        .map(|index| {
            let s = configuration_model_draw(&degrees, seed, index)?;
            Ok((
                count_motif(&s.network, kind)?,
                s.self_loops_erased + s.multi_edges_erased,
            ))
        })
        .collect()
}

/// Builds the report from an observed count and null draws.
pub fn report_from_counts(
    g: &Network,
    kind: MotifKind,
    observed: u64,
    draws: &[(u64, usize)],
) -> Result<MotifReport> {
    let samples = draws.len();
    if samples < 2 {
        return Err(Error::input("at least two null samples are required"));
    }
    let n = Rational::from_integer(samples as i128);
    let sum: i128 = draws.iter().map(|d| d.0 as i128).sum();
    let mean = Rational::from_integer(sum) / n;
    let mut squares = Rational::zero();
    for d in draws {
        let dev = Rational::from_integer(d.0 as i128) - mean;
        squares += dev * dev;
    }
    let variance = squares / Rational::from_integer(samples as i128 - 1);
    let edges = g.edge_count();
    let erased_fraction = if edges == 0 {
        0.0
    } else {
        let erased: usize = draws.iter().map(|d| d.1).sum();
        erased as f64 / (edges as f64 * samples as f64)
    };
    Ok(MotifReport {
        kind,
        observed,
        null_mean: mean,
        null_std: libm::sqrt(rational_to_f64(&variance)),
        null_variance: variance,
        samples,
        p_bound: chebyshev_p_bound(Rational::from_integer(observed as i128), mean, variance),
        erased_fraction,
    })
}

/// Observed motif count of `g` against `samples` configuration-model
/// draws with the same degree sequence.
pub fn null_model_stats(
    g: &Network,
    kind: MotifKind,
    samples: usize,
    seed: u64,
) -> Result<MotifReport> {
    if samples < 2 {
        return Err(Error::input("at least two null samples are required"));
    }
    let observed = count_motif(g, kind)?;
    let draws = null_counts(g, kind, seed, 0..samples as u64)?;
    report_from_counts(g, kind, observed, &draws)
}
