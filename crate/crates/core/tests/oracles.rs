//! Fast algorithms against brute-force enumeration on 200 random graphs.

mod support;

use support::oracle;

const GRAPHS: u64 = 200;

#[test]
fn min_sum_and_exact_pairs_match_enumeration() {
    oracle::min_sum_and_exact_pairs(GRAPHS);
}

#[test]
fn heuristic_pair_matches_enumeration() {
    oracle::heuristic_pairs(GRAPHS);
}

#[test]
fn disjoint_pair_is_symmetric_in_its_endpoints() {
    oracle::pair_symmetry(GRAPHS);
}

#[test]
fn double_star_count_matches_pair_scan() {
    oracle::double_star_counts(GRAPHS);
}

#[test]
fn entangled_cycle_count_matches_sequence_enumeration() {
    oracle::entangled_cycle_counts(GRAPHS);
}

#[test]
fn disjoint_paths_to_set_match_minimum_cuts() {
    oracle::paths_to_set(GRAPHS);
}
