//! Parallel drivers over the core's independent work units.
//!
//! Enumeration splits the graph index space into ranges and merges the
//! scans; null sampling splits draws by index. Both merges are
//! order-independent, so results match the sequential functions exactly.

use std::ops::Range;

use netform_core::cost::{CostModel, GameParams};
use netform_core::motifs::{count_motif, null_counts, report_from_counts, MotifKind, MotifReport};
use netform_core::stability::{
    graph_count, price_metrics_from_scans, scan_range, PriceMetrics, Scan,
};
use netform_core::Network;
use rayon::prelude::*;

use crate::error::{Error, Result};

const SCAN_CHUNK: u64 = 512;
const DRAW_CHUNK: u64 = 16;

fn chunks(total: u64, size: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(size))
        .map(|k| k * size..((k + 1) * size).min(total))
        .collect()
}

/// Scans every graph on the player set, refusing more than `budget`
/// players.
pub fn scan(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    model: CostModel,
    budget: usize,
) -> Result<Scan> {
    let count = graph_count(n_a, n_b, budget)?;
    let parts: Vec<Scan> = chunks(count, SCAN_CHUNK)
        .into_par_iter()
        .map(|range| scan_range(p, n_a, n_b, model, range))
        .collect::<std::result::Result<_, _>>()?;
    Ok(parts.into_iter().fold(Scan::default(), Scan::merge))
}

pub fn price_metrics(
    p: &GameParams,
    n_a: usize,
    n_b: usize,
    budget: usize,
) -> Result<PriceMetrics> {
    let full = scan(p, n_a, n_b, CostModel::Full, budget)?;
    let bare = scan(p, n_a, n_b, CostModel::Bare, budget)?;
    Ok(price_metrics_from_scans(&full, &bare, n_a, n_b))
}

/// Same as the core's `null_model_stats`, with draws spread over threads.
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
    let parts: Vec<Vec<(u64, usize)>> = chunks(samples as u64, DRAW_CHUNK)
        .into_par_iter()
        .map(|range| null_counts(g, kind, seed, range))
        .collect::<std::result::Result<_, _>>()?;
    let draws: Vec<(u64, usize)> = parts.into_iter().flatten().collect();
    Ok(report_from_counts(g, kind, observed, &draws)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_the_range() {
        assert_eq!(chunks(5, 2), vec![0..2, 2..4, 4..5]);
        assert!(chunks(0, 2).is_empty());
    }
}
