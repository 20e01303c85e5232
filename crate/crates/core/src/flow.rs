//! Unit-capacity flow networks built over a [`Network`].
//!
//! Node-disjointness is modeled by splitting every node into an entry and
//! an exit copy joined by a capacity-one arc; link-disjointness uses one
//! capacity-one arc per direction of every edge.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Network, NodeId};
use crate::paths::DisjointnessMode;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i32,
    cost: i32,
    rev: usize,
    original: bool,
}

/// Residual graph with integer capacities and costs.
#[derive(Debug, Clone)]
pub(crate) struct FlowGraph {
    arcs: Vec<Vec<Arc>>,
}

impl FlowGraph {
    pub(crate) fn new(n: usize) -> Self {
        FlowGraph {
            arcs: alloc::vec![Vec::new(); n],
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: i32, cost: i32) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            cost,
            rev: rev_from,
            original: true,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
            rev: rev_to,
            original: false,
        });
    }

    fn push(&mut self, from: usize, idx: usize, amount: i32) {
        let (to, rev) = {
            let a = &mut self.arcs[from][idx];
            a.cap -= amount;
            (a.to, a.rev)
        };
        self.arcs[to][rev].cap += amount;
    }

    /// Maximum flow from `s` to `t`, stopping once `limit` units are routed.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: i32) -> i32 {
        let n = self.arcs.len();
        let mut total = 0;
        let mut parent: Vec<Option<(usize, usize)>> = alloc::vec![None; n];
        while total < limit {
            parent.iter_mut().for_each(|p| *p = None);
            let mut seen = alloc::vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::new();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (idx, a) in self.arcs[u].iter().enumerate() {
                    if a.cap > 0 && !seen[a.to] {
                        seen[a.to] = true;
                        parent[a.to] = Some((u, idx));
                        queue.push_back(a.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while let Some((u, idx)) = parent[v] {
                bottleneck = bottleneck.min(self.arcs[u][idx].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, idx)) = parent[v] {
                self.push(u, idx, bottleneck);
                v = u;
            }
            total += bottleneck;
        }
        total
    }

    /// Successive shortest augmenting paths (Bellman-Ford on the residual
    /// graph) for up to `units` unit augmentations. Returns units routed.
    pub(crate) fn min_cost_flow(&mut self, s: usize, t: usize, units: i32) -> i32 {
        let n = self.arcs.len();
        let mut routed = 0;
        while routed < units {
            let mut dist = alloc::vec![i64::MAX; n];
            let mut parent: Vec<Option<(usize, usize)>> = alloc::vec![None; n];
            let mut in_queue = alloc::vec![false; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            in_queue[s] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for (idx, a) in self.arcs[u].iter().enumerate() {
                    if a.cap <= 0 {
                        continue;
                    }
                    let nd = dist[u] + a.cost as i64;
                    // Strict improvement plus the stable arc order keeps the
                    // chosen augmenting path deterministic.
                    if nd < dist[a.to] {
                        dist[a.to] = nd;
                        parent[a.to] = Some((u, idx));
                        if !in_queue[a.to] {
                            in_queue[a.to] = true;
                            queue.push_back(a.to);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut v = t;
            while let Some((u, idx)) = parent[v] {
                self.push(u, idx, 1);
                v = u;
            }
            routed += 1;
        }
        routed
    }

    /// Units of flow on original arcs out of `u`, as `(to, units)`.
    fn flow_out(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs[u].iter().enumerate().filter_map(move |(idx, a)| {
            if !a.original {
                return None;
            }
            let used = self.arcs[a.to][a.rev].cap;
            (used > 0).then_some((idx, used as usize))
        })
    }

    /// Splits the current flow from `s` to `t` into unit paths of flow-graph
    /// vertices. Consumes the flow.
    pub(crate) fn decompose(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        loop {
            let mut path = alloc::vec![s];
            let mut u = s;
            let mut ok = true;
            while u != t {
                let next = self.flow_out(u).next();
                match next {
                    Some((idx, _)) => {
                        let (to, rev) = (self.arcs[u][idx].to, self.arcs[u][idx].rev);
                        // Undo one unit so the arc is not reused.
                        self.arcs[to][rev].cap -= 1;
                        self.arcs[u][idx].cap += 1;
                        path.push(to);
                        u = to;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
                if path.len() > self.arcs.len() + 1 {
                    ok = false;
                    break;
                }
            }
            if !ok || path.len() == 1 {
                break;
            }
            paths.push(path);
        }
        paths
    }
}

/// Flow-graph encoding of a network for one disjointness mode.
pub(crate) struct Encoded {
    pub(crate) flow: FlowGraph,
    node_split: bool,
}

impl Encoded {
    /// Builds the encoding. `extra` vertices are appended after the node
    /// vertices (for super sources and sinks); their indices start at
    /// [`Encoded::extra_base`].
    pub(crate) fn build(g: &Network, mode: DisjointnessMode, extra: usize, cost: i32) -> Self {
        let n = g.node_count();
        match mode {
            DisjointnessMode::NodeDisjoint => {
                let mut flow = FlowGraph::new(2 * n + extra);
                for v in 0..n {
                    flow.add_arc(2 * v, 2 * v + 1, 1, 0);
                }
                for (u, v) in g.edges() {
                    flow.add_arc(2 * u.index() + 1, 2 * v.index(), 1, cost);
                    flow.add_arc(2 * v.index() + 1, 2 * u.index(), 1, cost);
                }
                Encoded {
                    flow,
                    node_split: true,
                }
            }
            DisjointnessMode::LinkDisjoint => {
                let mut flow = FlowGraph::new(n + extra);
                for (u, v) in g.edges() {
                    flow.add_arc(u.index(), v.index(), 1, cost);
                    flow.add_arc(v.index(), u.index(), 1, cost);
                }
                Encoded {
                    flow,
                    node_split: false,
                }
            }
        }
    }

    pub(crate) fn extra_base(&self, g: &Network) -> usize {
        if self.node_split {
            2 * g.node_count()
        } else {
            g.node_count()
        }
    }

    /// Vertex where flow leaves `v` towards its neighbors.
    pub(crate) fn exit(&self, v: NodeId) -> usize {
        if self.node_split {
            2 * v.index() + 1
        } else {
            v.index()
        }
    }

    /// Vertex where flow enters `v` (before its unit node capacity).
    pub(crate) fn entry(&self, v: NodeId) -> usize {
        if self.node_split {
            2 * v.index()
        } else {
            v.index()
        }
    }

    /// Maps a decomposed flow path back to network nodes.
    pub(crate) fn to_nodes(&self, path: &[usize], limit: usize) -> Vec<NodeId> {
        let mut nodes: Vec<NodeId> = Vec::new();
        for &x in path {
            if x >= limit {
                continue;
            }
            let v = if self.node_split { x / 2 } else { x };
            let v = NodeId::from(v);
            if nodes.last() != Some(&v) {
                nodes.push(v);
            }
        }
        nodes
    }
}

/// Maximum number of pairwise disjoint paths from `i` to the set `core`.
///
/// Computed as a unit-capacity max-flow from `i` to a super-sink joined to
/// every core node. In node-disjoint mode the paths share no node besides
/// `i` and their core endpoints, so with `core = {j}` this is the number of
/// internally disjoint `i`–`j` paths; in link-disjoint mode they share no
/// edge.
pub fn count_disjoint_paths_to_set(
    g: &Network,
    i: NodeId,
    core: &[NodeId],
    mode: DisjointnessMode,
) -> Result<usize> {
    g.check(i)?;
    if core.is_empty() {
        return Err(Error::input("core set is empty"));
    }
    for &c in core {
        g.check(c)?;
        if c == i {
            return Err(Error::input(alloc::format!("node {i} belongs to the core")));
        }
    }
    let mut enc = Encoded::build(g, mode, 1, 0);
    let sink = enc.extra_base(g);
    let mut marked = alloc::vec![false; g.node_count()];
    for &c in core {
        if core_mark(&mut marked, c) {
            // Endpoints carry no node capacity: drain from the entry copy.
            enc.flow.add_arc(enc.entry(c), sink, g.degree(c) as i32, 0);
        }
    }
    let source = enc.exit(i);
    Ok(enc.flow.max_flow(source, sink, g.degree(i) as i32) as usize)
}

fn core_mark(marked: &mut [bool], c: NodeId) -> bool {
    let fresh = !marked[c.index()];
    marked[c.index()] = true;
    fresh
}

/// Maximum number of disjoint paths between two distinct nodes.
pub fn count_disjoint_paths(
    g: &Network,
    i: NodeId,
    j: NodeId,
    mode: DisjointnessMode,
) -> Result<usize> {
    if i == j {
        return Err(Error::SameEndpoints(i));
    }
    count_disjoint_paths_to_set(g, i, &[j], mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PlayerType;

    fn minors(n: usize, edges: &[(usize, usize)]) -> Network {
        Network::from_edges(alloc::vec![PlayerType::Minor; n], edges.iter().copied()).unwrap()
    }

    #[test]
    fn star_center_is_a_cut() {
        // center 0, leaves i=1, x=2, y=3
        let g = minors(4, &[(0, 1), (0, 2), (0, 3)]);
        for mode in [
            DisjointnessMode::NodeDisjoint,
            DisjointnessMode::LinkDisjoint,
        ] {
            let k =
                count_disjoint_paths_to_set(&g, NodeId(1), &[NodeId(2), NodeId(3)], mode).unwrap();
            assert_eq!(k, 1);
        }
    }

    #[test]
    fn direct_links_to_core() {
        let g = minors(3, &[(0, 1), (0, 2)]);
        let k = count_disjoint_paths_to_set(
            &g,
            NodeId(0),
            &[NodeId(1), NodeId(2)],
            DisjointnessMode::NodeDisjoint,
        )
        .unwrap();
        assert_eq!(k, 2);
    }

    #[test]
    fn bowtie_separates_modes() {
        // Two triangles sharing node 2: 0-1-2 and 2-3-4. Between 0 and 4
        // every path crosses node 2, but two edge-disjoint paths exist.
        let g = minors(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(
            count_disjoint_paths(&g, NodeId(0), NodeId(4), DisjointnessMode::NodeDisjoint).unwrap(),
            1
        );
        assert_eq!(
            count_disjoint_paths(&g, NodeId(0), NodeId(4), DisjointnessMode::LinkDisjoint).unwrap(),
            2
        );
    }

    #[test]
    fn core_membership_is_rejected() {
        let g = minors(2, &[(0, 1)]);
        assert!(count_disjoint_paths_to_set(
            &g,
            NodeId(0),
            &[NodeId(0)],
            DisjointnessMode::NodeDisjoint
        )
        .is_err());
        assert!(
            count_disjoint_paths_to_set(&g, NodeId(0), &[], DisjointnessMode::NodeDisjoint)
                .is_err()
        );
    }
}
