//! Slow, obviously correct enumerations that the fast algorithms are
//! checked against, on seeded random graphs. Every check panics on the
//! first mismatch.

use std::collections::BTreeSet;

use netform_core::flow::count_disjoint_paths_to_set;
use netform_core::motifs::{double_star_count, entangled_cycle_count};
use netform_core::paths::{disjoint_pair, shortest_path_len};
use netform_core::{DisjointnessMode, ExtLength, Network, NodeId, PairObjective, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [DisjointnessMode; 2] = [
    DisjointnessMode::NodeDisjoint,
    DisjointnessMode::LinkDisjoint,
];

fn random_graph(seed: u64, min_n: usize, max_n: usize) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(min_n..=max_n);
    let density = [0.2, 0.35, 0.5, 0.7][rng.gen_range(0..4)];
    let mut g = Network::with_players(n / 3, n - n / 3);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(NodeId::from(u), NodeId::from(v)).unwrap();
            }
        }
    }
    g
}

fn adjacency(g: &Network) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u.index()][v.index()] = true;
        adj[v.index()][u.index()] = true;
    }
    adj
}

/// A simple path as bitmasks: interior nodes and edges.
#[derive(Clone)]
struct Path {
    nodes: Vec<usize>,
    interior: u32,
    edges: u64,
}

impl Path {
    fn len(&self) -> u32 {
        self.nodes.len() as u32 - 1
    }
}

fn edge_bit(n: usize, u: usize, v: usize) -> u64 {
    let (a, b) = (u.min(v), u.max(v));
    1 << (a * n + b - (a + 1) * (a + 2) / 2)
}

fn all_simple_paths(adj: &[Vec<bool>], from: usize, to: usize) -> Vec<Path> {
    fn walk(adj: &[Vec<bool>], to: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        let u = *stack.last().unwrap();
        if u == to {
            let n = adj.len();
            let interior = stack[1..stack.len() - 1].iter().fold(0, |m, &v| m | 1 << v);
            let edges = stack.windows(2).fold(0, |m, w| m | edge_bit(n, w[0], w[1]));
            out.push(Path {
                nodes: stack.clone(),
                interior,
                edges,
            });
            return;
        }
        for v in 0..adj.len() {
            if adj[u][v] && !stack.contains(&v) {
                stack.push(v);
                walk(adj, to, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(adj, to, &mut vec![from], &mut out);
    out
}

fn disjoint(p: &Path, q: &Path, mode: DisjointnessMode) -> bool {
    if p.nodes == q.nodes {
        return false;
    }
    match mode {
        DisjointnessMode::NodeDisjoint => p.interior & q.interior == 0,
        DisjointnessMode::LinkDisjoint => p.edges & q.edges == 0,
    }
}

fn weighted(a: u32, b: u32, w: Rational) -> Rational {
    Rational::from_integer(a.min(b) as i128) + w * Rational::from_integer(a.max(b) as i128)
}

fn ext_weighted(d: ExtLength, d2: ExtLength, w: Rational) -> Option<Rational> {
    Some(weighted(d.finite()?, d2.finite()?, w))
}

fn assert_valid_witness(
    g: &Network,
    pair: &netform_core::DistancePair,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
) {
    let Some((p, q)) = &pair.witness else { return };
    let adj = adjacency(g);
    let n = g.node_count();
    let to_path = |nodes: &Vec<NodeId>| {
        assert_eq!(nodes.first(), Some(&i));
        assert_eq!(nodes.last(), Some(&j));
        let idx: Vec<usize> = nodes.iter().map(|v| v.index()).collect();
        assert!(
            idx.windows(2).all(|w| adj[w[0]][w[1]]),
            "witness uses a missing edge"
        );
        let distinct: BTreeSet<usize> = idx.iter().copied().collect();
        assert_eq!(distinct.len(), idx.len(), "witness repeats a node");
        Path {
            interior: idx[1..idx.len() - 1].iter().fold(0, |m, &v| m | 1 << v),
            edges: idx.windows(2).fold(0, |m, w| m | edge_bit(n, w[0], w[1])),
            nodes: idx,
        }
    };
    let (p, q) = (to_path(p), to_path(q));
    assert!(disjoint(&p, &q, mode));
    assert_eq!(pair.primary, ExtLength::Finite(p.len()));
    assert_eq!(pair.backup, ExtLength::Finite(q.len()));
}

fn endpoint_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Min-sum and exact pairs against every pair of simple paths.
pub fn min_sum_and_exact_pairs(graphs: u64) {
    let weights = [
        Rational::new(0, 1),
        Rational::new(1, 2),
        Rational::new(1, 1),
    ];
    for seed in 0..graphs {
        let g = random_graph(seed, 3, 9);
        let adj = adjacency(&g);
        for (u, v) in endpoint_pairs(g.node_count()) {
            let paths = all_simple_paths(&adj, u, v);
            let (i, j) = (NodeId::from(u), NodeId::from(v));
            let shortest = paths.iter().map(Path::len).min();
            for mode in MODES {
                let mut pairs = Vec::new();
                for (a, p) in paths.iter().enumerate() {
                    for q in &paths[a + 1..] {
                        if disjoint(p, q, mode) {
                            pairs.push((p.len(), q.len()));
                        }
                    }
                }
                let got = disjoint_pair(&g, i, j, mode, PairObjective::MinSum).unwrap();
                assert_valid_witness(&g, &got, i, j, mode);
                match pairs.iter().map(|&(a, b)| a + b).min() {
                    Some(best) => assert_eq!(
                        got.total(),
                        ExtLength::Finite(best),
                        "seed {seed} ({u},{v}) {mode:?}"
                    ),
                    None => {
                        assert_eq!(
                            got.primary,
                            ExtLength::from_option(shortest),
                            "seed {seed} ({u},{v})"
                        );
                        assert_eq!(got.backup, ExtLength::Infinite);
                    }
                }
                for w in weights {
                    let got =
                        disjoint_pair(&g, i, j, mode, PairObjective::MinCostExact(w)).unwrap();
                    assert_valid_witness(&g, &got, i, j, mode);
                    let best = pairs.iter().map(|&(a, b)| weighted(a, b, w)).min();
                    assert_eq!(
                        ext_weighted(got.primary, got.backup, w),
                        best,
                        "seed {seed} ({u},{v}) {mode:?} w={w}"
                    );
                    if best.is_none() {
                        assert_eq!(got.primary, ExtLength::from_option(shortest));
                    }
                }
            }
        }
    }
}

/// The heuristic pair against its anchor path and every partner.
pub fn heuristic_pairs(graphs: u64) {
    for seed in 0..graphs {
        let g = random_graph(1000 + seed, 3, 9);
        let adj = adjacency(&g);
        for (u, v) in endpoint_pairs(g.node_count()) {
            let paths = all_simple_paths(&adj, u, v);
            let (i, j) = (NodeId::from(u), NodeId::from(v));
            for mode in MODES {
                let got =
                    disjoint_pair(&g, i, j, mode, PairObjective::MinPrimaryHeuristic).unwrap();
                assert_valid_witness(&g, &got, i, j, mode);
                assert_eq!(got.primary, shortest_path_len(&g, i, j).unwrap());
                // The anchor is the lexicographically smallest shortest path.
                let Some(d) = paths.iter().map(Path::len).min() else {
                    assert_eq!(got.backup, ExtLength::Infinite);
                    continue;
                };
                let anchor = paths
                    .iter()
                    .filter(|p| p.len() == d)
                    .min_by(|a, b| a.nodes.cmp(&b.nodes))
                    .unwrap();
                let partner = paths
                    .iter()
                    .filter(|q| disjoint(anchor, q, mode))
                    .map(Path::len)
                    .min();
                assert_eq!(
                    got.backup,
                    ExtLength::from_option(partner),
                    "seed {seed} ({u},{v}) {mode:?}"
                );
                if let Some((p, _)) = &got.witness {
                    let nodes: Vec<usize> = p.iter().map(|x| x.index()).collect();
                    assert_eq!(nodes, anchor.nodes);
                }
            }
        }
    }
}

pub fn pair_symmetry(graphs: u64) {
    for seed in 0..graphs {
        let g = random_graph(2000 + seed, 3, 10);
        for (u, v) in endpoint_pairs(g.node_count()) {
            let (i, j) = (NodeId::from(u), NodeId::from(v));
            for mode in MODES {
                for objective in [PairObjective::MinSum, PairObjective::MinPrimaryHeuristic] {
                    let a = disjoint_pair(&g, i, j, mode, objective).unwrap();
                    let b = disjoint_pair(&g, j, i, mode, objective).unwrap();
                    assert_eq!((a.primary, a.backup), (b.primary, b.backup));
                }
            }
        }
    }
}

pub fn double_star_counts(graphs: u64) {
    for seed in 0..graphs {
        let g = random_graph(3000 + seed, 2, 12);
        let adj = adjacency(&g);
        let n = g.node_count();
        let degree: Vec<usize> = adj
            .iter()
            .map(|row| row.iter().filter(|&&b| b).count())
            .collect();
        for m in 1..5 {
            let mut expected = 0;
            for u in 0..n {
                for v in u + 1..n {
                    let common = (0..n).filter(|&w| adj[u][w] && adj[v][w]).count();
                    if adj[u][v] && degree[u] > m && degree[v] > m && common >= m {
                        expected += 1;
                    }
                }
            }
            assert_eq!(
                double_star_count(&g, m).unwrap(),
                expected,
                "seed {seed} m={m}"
            );
        }
    }
}

/// Distinct edge sets of `x₁…x_l` with every `x_k x_{k+1}` and
/// `x_k x_{k+2}` present.
fn squared_path_copies(adj: &[Vec<bool>], l: usize) -> usize {
    fn extend(
        adj: &[Vec<bool>],
        l: usize,
        seq: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        if seq.len() == l {
            let mut edges = Vec::new();
            for k in 0..l {
                for step in 1..=2 {
                    if k + step < l {
                        let (a, b) = (seq[k], seq[k + step]);
                        edges.push((a.min(b), a.max(b)));
                    }
                }
            }
            edges.sort_unstable();
            out.insert(edges);
            return;
        }
        for v in 0..adj.len() {
            let k = seq.len();
            let fits =
                !seq.contains(&v) && (k < 1 || adj[seq[k - 1]][v]) && (k < 2 || adj[seq[k - 2]][v]);
            if fits {
                seq.push(v);
                extend(adj, l, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    extend(adj, l, &mut Vec::new(), &mut out);
    out.len()
}

pub fn entangled_cycle_counts(graphs: u64) {
    for seed in 0..graphs {
        let g = random_graph(4000 + seed, 3, 11);
        let adj = adjacency(&g);
        for l in [3, 4] {
            assert_eq!(
                entangled_cycle_count(&g, l).unwrap(),
                squared_path_copies(&adj, l) as u64,
                "seed {seed} l={l}"
            );
        }
    }
}

fn reaches_core(
    adj: &[Vec<bool>],
    i: usize,
    core: &[usize],
    removed_nodes: u32,
    removed_edges: u64,
) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![i];
    seen[i] = true;
    while let Some(u) = stack.pop() {
        if core.contains(&u) {
            return true;
        }
        for v in 0..n {
            if adj[u][v]
                && !seen[v]
                && removed_nodes & (1 << v) == 0
                && removed_edges & edge_bit(n, u, v) == 0
            {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// Menger with the core merged into one sink: every direct link from `i`
/// into the core is a path of its own, and the rest is the fewest
/// non-core nodes whose removal cuts `i` off from the core.
fn min_node_cut(adj: &[Vec<bool>], i: usize, core: &[usize]) -> usize {
    let n = adj.len();
    let direct: Vec<usize> = core.iter().copied().filter(|&c| adj[i][c]).collect();
    let direct_edges = direct.iter().fold(0, |m, &c| m | edge_bit(n, i, c));
    let core_mask = core.iter().fold(0u32, |m, &c| m | 1 << c);
    let cut = (0u32..1 << n)
        .filter(|s| {
            s & (1 << i) == 0 && s & core_mask == 0 && !reaches_core(adj, i, core, *s, direct_edges)
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap();
    direct.len() + cut
}

/// Menger: the fewest edges leaving some node set that holds `i` and no
/// core node.
fn min_edge_cut(adj: &[Vec<bool>], i: usize, core: &[usize]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|s| s & (1 << i) != 0 && core.iter().all(|&c| s & (1 << c) == 0))
        .map(|s| {
            let inside = |v: usize| s & (1 << v) != 0;
            adj.iter()
                .enumerate()
                .filter(|&(u, _)| inside(u))
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(v, &e)| e && !inside(v))
                        .count()
                })
                .sum::<usize>()
        })
        .min()
        .unwrap()
}

pub fn paths_to_set(graphs: u64) {
    for seed in 0..graphs {
        let g = random_graph(5000 + seed, 2, 11);
        let adj = adjacency(&g);
        let n = g.node_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..n {
            let size = rng.gen_range(1..n);
            let mut core: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            while core.len() > size {
                core.remove(rng.gen_range(0..core.len()));
            }
            let ids: Vec<NodeId> = core.iter().map(|&c| NodeId::from(c)).collect();
            let node = count_disjoint_paths_to_set(
                &g,
                NodeId::from(i),
                &ids,
                DisjointnessMode::NodeDisjoint,
            )
            .unwrap();
            let link = count_disjoint_paths_to_set(
                &g,
                NodeId::from(i),
                &ids,
                DisjointnessMode::LinkDisjoint,
            )
            .unwrap();
            assert_eq!(
                node,
                min_node_cut(&adj, i, &core),
                "seed {seed} i={i} core {core:?}"
            );
            assert_eq!(
                link,
                min_edge_cut(&adj, i, &core),
                "seed {seed} i={i} core {core:?}"
            );
        }
    }
}
