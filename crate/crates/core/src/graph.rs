//! Typed undirected simple graphs, the state of the game.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlayerType {
    /// Major league player; distances to it are weighted by the major weight.
    Major,
    /// Minor league player.
    Minor,
}

impl PlayerType {
    pub fn is_major(self) -> bool {
        self == PlayerType::Major
    }
}

/// Dense node index into a [`Network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeChange {
    Add,
    Remove,
}

/// Undirected simple graph over typed players.
///
/// Nodes are `0..node_count()`. Neighbor lists are kept sorted, which the
/// deterministic tie-breaking rules elsewhere rely on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Network {
    kinds: Vec<PlayerType>,
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless network with `majors` major players (ids `0..majors`)
    /// followed by `minors` minor players.
    pub fn with_players(majors: usize, minors: usize) -> Self {
        let mut g = Network::new();
        for _ in 0..majors {
            g.add_node(PlayerType::Major);
        }
        for _ in 0..minors {
            g.add_node(PlayerType::Minor);
        }
        g
    }

    pub fn from_kinds(kinds: Vec<PlayerType>) -> Self {
        let n = kinds.len();
        Network {
            kinds,
            adj: alloc::vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(
        kinds: Vec<PlayerType>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Network::from_kinds(kinds);
        for (u, v) in edges {
            g.add_edge(NodeId::from(u), NodeId::from(v))?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, kind: PlayerType) -> NodeId {
        self.kinds.push(kind);
        self.adj.push(Vec::new());
        NodeId::from(self.kinds.len() - 1)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.kinds.len()).map(NodeId::from)
    }

    pub fn contains(&self, i: NodeId) -> bool {
        i.index() < self.kinds.len()
    }

    pub fn check(&self, i: NodeId) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::UnknownNode(i))
        }
    }

    #[inline]
    pub fn kind(&self, i: NodeId) -> PlayerType {
        self.kinds[i.index()]
    }

    pub fn kinds(&self) -> &[PlayerType] {
        &self.kinds
    }

    pub fn set_kind(&mut self, i: NodeId, kind: PlayerType) {
        self.kinds[i.index()] = kind;
    }

    #[inline]
    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i.index()].len()
    }

    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adj[i.index()]
    }

    pub fn majors(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(|&i| self.kind(i).is_major())
    }

    pub fn minors(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(|&i| !self.kind(i).is_major())
    }

    pub fn major_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_major()).count()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.contains(u) && self.adj[u.index()].binary_search(&v).is_ok()
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos_u = match self.adj[u.index()].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u, v)),
            Err(p) => p,
        };
        self.adj[u.index()].insert(pos_u, v);
        let pos_v = self.adj[v.index()].binary_search(&u).unwrap_err();
        self.adj[v.index()].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        let pos_u = self.adj[u.index()]
            .binary_search(&v)
            .map_err(|_| Error::MissingEdge(u, v))?;
        self.adj[u.index()].remove(pos_u);
        let pos_v = self.adj[v.index()].binary_search(&u).unwrap();
        self.adj[v.index()].remove(pos_v);
        self.edge_count -= 1;
        Ok(())
    }

    /// Adds or removes `(u, v)`, failing if the edge is not in the state the
    /// change expects.
    pub fn apply(&mut self, u: NodeId, v: NodeId, change: EdgeChange) -> Result<()> {
        match change {
            EdgeChange::Add => self.add_edge(u, v),
            EdgeChange::Remove => self.remove_edge(u, v),
        }
    }

    /// Copy of the network with one edge toggled.
    pub fn with_change(&self, u: NodeId, v: NodeId, change: EdgeChange) -> Result<Network> {
        let mut g = self.clone();
        g.apply(u, v, change)?;
        Ok(g)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = NodeId::from(u);
            list.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Nodes are relabeled by `perm`: node `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Network> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::input("permutation length mismatch"));
        }
        let mut kinds = alloc::vec![PlayerType::Minor; n];
        let mut seen = alloc::vec![false; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::input("not a permutation"));
            }
            seen[p] = true;
            kinds[p] = self.kinds[i];
        }
        Network::from_edges(
            kinds,
            self.edges()
                .map(|(u, v)| (perm[u.index()], perm[v.index()])),
        )
    }

    /// True when every pair of nodes in `set` is adjacent.
    pub fn is_clique(&self, set: &[NodeId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}
