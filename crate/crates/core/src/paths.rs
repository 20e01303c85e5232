//! Shortest paths and disjoint path pairs.
//!
//! Three objectives select the pair of disjoint paths between two players:
//!
//! * [`PairObjective::MinSum`]: minimum total length `d + d'`, i.e. the
//!   shortest cycle through both endpoints. Solved as a two-unit min-cost
//!   flow (Suurballe's construction) in polynomial time.
//! * [`PairObjective::MinPrimaryHeuristic`]: fix one shortest path, then take
//!   the shortest path disjoint from it. Fast, not always optimal.
//! * [`PairObjective::MinCostExact`]: minimize `d + w·d'` over all disjoint
//!   pairs by pruned exhaustive search. Exponential, guarded by a node budget.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ext::{ExtLength, Rational};
use crate::flow::Encoded;
use crate::graph::{Network, NodeId};

/// Graphs larger than this are refused by [`PairObjective::MinCostExact`]
/// unless a different budget is passed explicitly.
pub const DEFAULT_EXACT_NODE_BUDGET: usize = 12;

pub(crate) const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DisjointnessMode {
    /// Paths share no node except their endpoints.
    NodeDisjoint,
    /// Paths share no edge.
    LinkDisjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairObjective {
    MinSum,
    MinPrimaryHeuristic,
    /// Exact minimizer of `d + w·d'`, with `0 <= w <= 1`.
    MinCostExact(Rational),
}

/// Lengths of the selected disjoint path pair, `primary <= backup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePair {
    pub primary: ExtLength,
    pub backup: ExtLength,
    /// The two paths as node sequences from the first to the second
    /// endpoint, when both exist and were requested.
    pub witness: Option<(Vec<NodeId>, Vec<NodeId>)>,
}

impl DistancePair {
    pub fn lengths(primary: ExtLength, backup: ExtLength) -> Self {
        DistancePair {
            primary,
            backup,
            witness: None,
        }
    }

    pub fn unreachable() -> Self {
        DistancePair::lengths(ExtLength::Infinite, ExtLength::Infinite)
    }

    /// `d + d'`, infinite when either is.
    pub fn total(&self) -> ExtLength {
        self.primary + self.backup
    }
}

/// Hop distances from `src` to every node; [`UNREACHABLE`] when none.
pub fn bfs_distances(g: &Network, src: NodeId) -> Vec<u32> {
    let mut dist = alloc::vec![UNREACHABLE; g.node_count()];
    dist[src.index()] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.index()];
        for &v in g.neighbors(u) {
            if dist[v.index()] == UNREACHABLE {
                dist[v.index()] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub(crate) fn to_ext(d: u32) -> ExtLength {
    if d == UNREACHABLE {
        ExtLength::Infinite
    } else {
        ExtLength::Finite(d)
    }
}

/// Hop count of a shortest `i`–`j` path; `Q` when disconnected.
pub fn shortest_path_len(g: &Network, i: NodeId, j: NodeId) -> Result<ExtLength> {
    g.check(i)?;
    g.check(j)?;
    if i == j {
        return Ok(ExtLength::ZERO);
    }
    Ok(to_ext(bfs_distances(g, i)[j.index()]))
}

/// The shortest `from`–`to` path whose node-id sequence is
/// lexicographically smallest. `dist_to` are BFS distances from `to`.
pub(crate) fn lex_smallest_shortest_path(
    g: &Network,
    from: NodeId,
    dist_to: &[u32],
) -> Option<Vec<NodeId>> {
    let mut d = dist_to[from.index()];
    if d == UNREACHABLE {
        return None;
    }
    let mut path = alloc::vec![from];
    let mut u = from;
    while d > 0 {
        // Neighbor lists are sorted, so the first hit is the smallest id.
        u = *g
            .neighbors(u)
            .iter()
            .find(|v| dist_to[v.index()] == d - 1)
            .expect("BFS distances are consistent");
        path.push(u);
        d -= 1;
    }
    Some(path)
}

/// Marks what a path blocks for a disjoint partner.
pub(crate) struct Blocker {
    /// Position of a node on the blocking path, or `usize::MAX`.
    pos: Vec<usize>,
    len: usize,
    mode: DisjointnessMode,
}

impl Blocker {
    pub(crate) fn new(n: usize, mode: DisjointnessMode) -> Self {
        Blocker {
            pos: alloc::vec![usize::MAX; n],
            len: 0,
            mode,
        }
    }

    pub(crate) fn set(&mut self, path: &[NodeId]) {
        for p in self.pos.iter_mut() {
            *p = usize::MAX;
        }
        for (k, v) in path.iter().enumerate() {
            self.pos[v.index()] = k;
        }
        self.len = path.len();
    }

    fn node_blocked(&self, v: NodeId) -> bool {
        match self.mode {
            DisjointnessMode::NodeDisjoint => {
                let p = self.pos[v.index()];
                p != usize::MAX && p != 0 && p + 1 != self.len
            }
            DisjointnessMode::LinkDisjoint => false,
        }
    }

    fn edge_blocked(&self, u: NodeId, v: NodeId) -> bool {
        let (pu, pv) = (self.pos[u.index()], self.pos[v.index()]);
        pu != usize::MAX && pv != usize::MAX && (pu + 1 == pv || pv + 1 == pu)
    }

    /// Shortest path from the blocking path's first node to its last that
    /// avoids it. Returns the node sequence when `want_path` is set.
    pub(crate) fn partner(
        &self,
        g: &Network,
        from: NodeId,
        to: NodeId,
        want_path: bool,
    ) -> (u32, Option<Vec<NodeId>>) {
        let n = g.node_count();
        let mut dist = alloc::vec![UNREACHABLE; n];
        let mut parent = if want_path {
            alloc::vec![usize::MAX; n]
        } else {
            Vec::new()
        };
        dist[from.index()] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(from);
        'bfs: while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v.index()] != UNREACHABLE || self.node_blocked(v) || self.edge_blocked(u, v)
                {
                    continue;
                }
                dist[v.index()] = dist[u.index()] + 1;
                if want_path {
                    parent[v.index()] = u.index();
                }
                if v == to {
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        let d = dist[to.index()];
        if d == UNREACHABLE || !want_path {
            return (d, None);
        }
        let mut path = alloc::vec![to];
        let mut v = to.index();
        while v != from.index() {
            v = parent[v];
            path.push(NodeId::from(v));
        }
        path.reverse();
        (d, Some(path))
    }
}

fn check_pair(g: &Network, i: NodeId, j: NodeId) -> Result<()> {
    g.check(i)?;
    g.check(j)?;
    if i == j {
        return Err(Error::SameEndpoints(i));
    }
    Ok(())
}

/// Disjoint path pair between `i` and `j` selected by `objective`.
///
/// The exact objective refuses graphs with more than
/// [`DEFAULT_EXACT_NODE_BUDGET`] nodes; see [`disjoint_pair_with_budget`].
pub fn disjoint_pair(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
    objective: PairObjective,
) -> Result<DistancePair> {
    disjoint_pair_with_budget(g, i, j, mode, objective, DEFAULT_EXACT_NODE_BUDGET)
}

pub fn disjoint_pair_with_budget(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
    objective: PairObjective,
    exact_budget: usize,
) -> Result<DistancePair> {
    check_pair(g, i, j)?;
    match objective {
        PairObjective::MinSum => Ok(min_sum_pair(g, i, j, mode, true)),
        PairObjective::MinPrimaryHeuristic => {
            let (a, b) = canonical(i, j);
            let dist_to = bfs_distances(g, b);
            let mut blocker = Blocker::new(g.node_count(), mode);
            let mut pair = heuristic_pair(g, a, b, &dist_to, &mut blocker, true);
            if a != i {
                orient(&mut pair);
            }
            Ok(pair)
        }
        PairObjective::MinCostExact(w) => {
            if g.node_count() > exact_budget {
                return Err(Error::BudgetExceeded {
                    what: "exact disjoint-pair search (nodes)",
                    requested: g.node_count(),
                    limit: exact_budget,
                });
            }
            validate_weight(w)?;
            Ok(exact_pair(g, i, j, mode, w, true))
        }
    }
}

pub(crate) fn validate_weight(w: Rational) -> Result<()> {
    if w < Rational::from_integer(0) || w > Rational::from_integer(1) {
        return Err(Error::params("backup weight must lie in [0, 1]"));
    }
    Ok(())
}

/// The heuristic anchors on the path from the smaller id, so the selected
/// pair does not depend on which endpoint asks.
#[inline]
pub(crate) fn canonical(i: NodeId, j: NodeId) -> (NodeId, NodeId) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn orient(pair: &mut DistancePair) {
    if let Some((p, q)) = pair.witness.as_mut() {
        p.reverse();
        q.reverse();
    }
}

/// Heuristic pair from `a` to `b`; `dist_to_b` are BFS distances from `b`.
pub(crate) fn heuristic_pair(
    g: &Network,
    a: NodeId,
    b: NodeId,
    dist_to_b: &[u32],
    blocker: &mut Blocker,
    want_witness: bool,
) -> DistancePair {
    let Some(primary) = lex_smallest_shortest_path(g, a, dist_to_b) else {
        return DistancePair::unreachable();
    };
    let d = (primary.len() - 1) as u32;
    blocker.set(&primary);
    let (d2, backup) = blocker.partner(g, a, b, want_witness);
    DistancePair {
        primary: ExtLength::Finite(d),
        backup: to_ext(d2),
        witness: backup.map(|q| (primary, q)),
    }
}

/// Minimum-total pair via a two-unit min-cost flow. Several pairs can
/// share the minimum total with different splits, so the flow always runs
/// from the smaller id and both endpoints see the same `d` and `d'`.
pub(crate) fn min_sum_pair(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
    want_witness: bool,
) -> DistancePair {
    let (a, b) = canonical(i, j);
    let mut pair = min_sum_flow(g, a, b, mode, want_witness);
    if a != i {
        orient(&mut pair);
    }
    pair
}

fn min_sum_flow(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
    want_witness: bool,
) -> DistancePair {
    let mut enc = Encoded::build(g, mode, 0, 1);
    let (s, t) = (enc.exit(i), enc.entry(j));
    let units = enc.flow.min_cost_flow(s, t, 2);
    if units == 0 {
        return DistancePair::unreachable();
    }
    let limit = enc.extra_base(g);
    let mut paths: Vec<Vec<NodeId>> = enc
        .flow
        .decompose(s, t)
        .iter()
        .map(|p| enc.to_nodes(p, limit))
        .collect();
    paths.sort_by_key(|p| p.len());
    let len = |p: &Vec<NodeId>| ExtLength::Finite((p.len() - 1) as u32);
    match (units, paths.len()) {
        (2, 2) => {
            let pair = DistancePair {
                primary: len(&paths[0]),
                backup: len(&paths[1]),
                witness: None,
            };
            if want_witness {
                let q = paths.pop().unwrap();
                let p = paths.pop().unwrap();
                DistancePair {
                    witness: Some((p, q)),
                    ..pair
                }
            } else {
                pair
            }
        }
        (_, k) if k >= 1 => DistancePair::lengths(len(&paths[0]), ExtLength::Infinite),
        _ => unreachable!("routed flow always decomposes into paths"),
    }
}

fn weighted(a: u32, b: u32, w: Rational) -> Rational {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Rational::from_integer(lo as i128) + w * Rational::from_integer(hi as i128)
}

/// Exact minimizer of `d + w·d'`.
///
/// Every optimal pair contains some simple path `P`, and for a fixed `P`
/// the objective is nondecreasing in the partner's length, so the best
/// partner of `P` is the shortest path avoiding it. The search enumerates
/// simple paths depth-first and prunes with the bound
/// `f(len_so_far + dist_left, shortest)`.
pub(crate) fn exact_pair(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
    w: Rational,
    want_witness: bool,
) -> DistancePair {
    let dist_to_j = bfs_distances(g, j);
    let shortest = dist_to_j[i.index()];
    if shortest == UNREACHABLE {
        return DistancePair::unreachable();
    }
    // Seed with the min-sum pair: valid, and it settles existence.
    let seed = min_sum_pair(g, i, j, mode, true);
    let Some((p0, q0)) = seed.witness.clone() else {
        return DistancePair::lengths(ExtLength::Finite(shortest), ExtLength::Infinite);
    };
    let mut best = Best {
        value: weighted((p0.len() - 1) as u32, (q0.len() - 1) as u32, w),
        primary: p0,
        backup: q0,
    };
    normalize(&mut best);

    let n = g.node_count();
    let mut on_path = alloc::vec![false; n];
    let mut path = alloc::vec![i];
    on_path[i.index()] = true;
    let mut blocker = Blocker::new(n, mode);
    let mut ctx = ExactSearch {
        g,
        j,
        w,
        shortest,
        dist_to_j: &dist_to_j,
        blocker: &mut blocker,
        best: &mut best,
    };
    ctx.dfs(&mut path, &mut on_path);

    let primary = ExtLength::Finite((best.primary.len() - 1) as u32);
    let backup = ExtLength::Finite((best.backup.len() - 1) as u32);
    DistancePair {
        primary,
        backup,
        witness: want_witness.then_some((best.primary, best.backup)),
    }
}

struct Best {
    value: Rational,
    primary: Vec<NodeId>,
    backup: Vec<NodeId>,
}

fn normalize(best: &mut Best) {
    if best.primary.len() > best.backup.len() {
        core::mem::swap(&mut best.primary, &mut best.backup);
    }
}

struct ExactSearch<'a> {
    g: &'a Network,
    j: NodeId,
    w: Rational,
    shortest: u32,
    dist_to_j: &'a [u32],
    blocker: &'a mut Blocker,
    best: &'a mut Best,
}

impl ExactSearch<'_> {
    fn dfs(&mut self, path: &mut Vec<NodeId>, on_path: &mut [bool]) {
        let u = *path.last().unwrap();
        let so_far = (path.len() - 1) as u32;
        let left = self.dist_to_j[u.index()];
        if left == UNREACHABLE {
            return;
        }
        if weighted(so_far + left, self.shortest, self.w) > self.best.value {
            return;
        }
        if u == self.j {
            self.blocker.set(path);
            let (d2, partner) = self.blocker.partner(self.g, path[0], self.j, true);
            if d2 != UNREACHABLE {
                let value = weighted(so_far, d2, self.w);
                let better = value < self.best.value
                    || (value == self.best.value
                        && so_far.min(d2) < (self.best.primary.len() - 1) as u32);
                if better {
                    self.best.value = value;
                    self.best.primary = path.clone();
                    self.best.backup = partner.unwrap();
                    normalize(self.best);
                }
            }
            return;
        }
        for &v in self.g.neighbors(u) {
            if on_path[v.index()] {
                continue;
            }
            on_path[v.index()] = true;
            path.push(v);
            self.dfs(path, on_path);
            path.pop();
            on_path[v.index()] = false;
        }
    }
}
