//! Edge lists, rankings and network files.
//!
//! Edge lists hold one link per line, either `u v` or CAIDA-style
//! `u|v|rel[|source]` with the relationship ignored. `#` starts a comment.
//! Node ids are non-negative integers; internally they are renumbered
//! `0..n` in ascending id order.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use netform_core::{Network, NodeId, PlayerType};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A network whose nodes carry external ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledNetwork {
    pub network: Network,
    /// External id of each internal node, ascending.
    pub ids: Vec<u64>,
}

impl LabeledNetwork {
    /// Builds from external ids; nodes are renumbered in ascending id order.
    pub fn from_parts(kinds: BTreeMap<u64, PlayerType>, edges: &[(u64, u64)]) -> Result<Self> {
        let ids: Vec<u64> = kinds.keys().copied().collect();
        let mut network = Network::from_kinds(kinds.values().copied().collect());
        let index: BTreeMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        for &(u, v) in edges {
            let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) else {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) names an unknown node"
                )));
            };
            network.add_edge(NodeId::from(a), NodeId::from(b))?;
        }
        Ok(LabeledNetwork { network, ids })
    }

    pub fn node(&self, id: u64) -> Option<NodeId> {
        self.ids.binary_search(&id).ok().map(NodeId::from)
    }

    pub fn id(&self, v: NodeId) -> u64 {
        self.ids[v.index()]
    }

    /// Edges in external ids, smaller id first, sorted.
    pub fn labeled_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .network
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.id(u), self.id(v));
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn ids_of(&self, nodes: impl IntoIterator<Item = NodeId>) -> Vec<u64> {
        nodes.into_iter().map(|v| self.id(v)).collect()
    }
}

/// One topology snapshot read from an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub label: String,
    /// Every node is a minor player until [`classify_players`] runs.
    pub graph: LabeledNetwork,
    pub source_path: String,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

fn parse_id(token: &str) -> Option<u64> {
    token.trim().parse().ok()
}

/// Parses edge-list text. `path` only labels error messages.
pub fn parse_edge_list_str(text: &str, label: &str, path: &Path) -> Result<Snapshot> {
    let mut kinds = BTreeMap::new();
    let mut edges = std::collections::BTreeSet::new();
    let (mut loops, mut duplicates) = (0, 0);
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = if line.contains('|') {
            line.split('|').collect()
        } else {
            line.split_whitespace().collect()
        };
        let malformed = |msg: &str| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg: format!("{msg}: {raw:?}"),
        };
        let piped = line.contains('|');
        if fields.len() < 2 || (!piped && fields.len() != 2) {
            return Err(malformed("expected `u v` or `u|v|rel`"));
        }
        let (Some(u), Some(v)) = (parse_id(fields[0]), parse_id(fields[1])) else {
            return Err(malformed("node ids must be non-negative integers"));
        };
        if u == v {
            loops += 1;
            continue;
        }
        kinds.insert(u, PlayerType::Minor);
        kinds.insert(v, PlayerType::Minor);
        if !edges.insert((u.min(v), u.max(v))) {
            duplicates += 1;
        }
    }
    if edges.is_empty() {
        return Err(Error::input(format!("{}: no edges", path.display())));
    }
    let edges: Vec<(u64, u64)> = edges.into_iter().collect();
    Ok(Snapshot {
        label: label.to_string(),
        graph: LabeledNetwork::from_parts(kinds, &edges)?,
        source_path: path.display().to_string(),
        self_loops_dropped: loops,
        duplicates_collapsed: duplicates,
    })
}

/// Reads an edge list; the snapshot label is the file stem.
pub fn parse_edge_list(path: impl AsRef<Path>) -> Result<Snapshot> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_edge_list_str(&text, &label, path)
}

/// Writes the `u v` form, one sorted edge per line.
pub fn write_edge_list(g: &LabeledNetwork) -> String {
    let mut out = String::new();
    for (u, v) in g.labeled_edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Edge-list files of a snapshot directory (`*.txt`, `*.edges`), in
/// lexical file-name order.
pub fn snapshot_files(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let ext = path.extension().and_then(|e| e.to_str());
        if path.is_file() && matches!(ext, Some("txt") | Some("edges")) {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(Error::input(format!(
            "{}: no snapshot files",
            dir.display()
        )));
    }
    Ok(files)
}

/// Outcome of assigning player types from a ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub graph: LabeledNetwork,
    /// Major ids in ranking order.
    pub majors: Vec<u64>,
    /// Ids among the first `top_k` ranked that the snapshot lacks.
    pub ranked_absent: usize,
    /// The ranking had fewer than `top_k` entries.
    pub short_ranking: bool,
}

/// Reads a ranking file: one node id per line, best first.
pub fn read_ranking(path: impl AsRef<Path>) -> Result<Vec<u64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let id = parse_id(line).ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg: format!("expected a node id: {raw:?}"),
        })?;
        out.push(id);
    }
    Ok(out)
}

/// The first `top_k` ranked ids present in the snapshot become majors.
pub fn classify_with_ranking(
    s: &Snapshot,
    ranking: &[u64],
    top_k: usize,
) -> Result<Classification> {
    if top_k == 0 {
        return Err(Error::input("top-k must be at least 1"));
    }
    let mut graph = s.graph.clone();
    let mut majors = Vec::new();
    let mut absent = 0;
    for &id in ranking.iter().take(top_k) {
        match graph.node(id) {
            Some(v) if graph.network.kind(v) == PlayerType::Minor => {
                graph.network.set_kind(v, PlayerType::Major);
                majors.push(id);
            }
            Some(_) => {}
            None => absent += 1,
        }
    }
    if majors.is_empty() {
        return Err(Error::input(format!(
            "none of the top {top_k} ranked ids occur in snapshot {:?}; do the id spaces match?",
            s.label
        )));
    }
    Ok(Classification {
        graph,
        majors,
        ranked_absent: absent,
        short_ranking: ranking.len() < top_k,
    })
}

pub fn classify_players(
    s: &Snapshot,
    ranking_path: impl AsRef<Path>,
    top_k: usize,
) -> Result<Classification> {
    classify_with_ranking(s, &read_ranking(ranking_path)?, top_k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Major,
    Minor,
}

impl From<PlayerType> for Kind {
    fn from(k: PlayerType) -> Self {
        match k {
            PlayerType::Major => Kind::Major,
            PlayerType::Minor => Kind::Minor,
        }
    }
}

impl From<Kind> for PlayerType {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Major => PlayerType::Major,
            Kind::Minor => PlayerType::Minor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: u64,
    pub kind: Kind,
}

/// JSON form of a typed network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<(u64, u64)>,
}

impl NetworkFile {
    pub fn from_network(g: &LabeledNetwork) -> Self {
        NetworkFile {
            nodes: g
                .network
                .nodes()
                .map(|v| NodeEntry {
                    id: g.id(v),
                    kind: g.network.kind(v).into(),
                })
                .collect(),
            edges: g.labeled_edges(),
        }
    }

    pub fn to_network(&self) -> Result<LabeledNetwork> {
        let mut kinds = BTreeMap::new();
        for n in &self.nodes {
            if kinds.insert(n.id, n.kind.into()).is_some() {
                return Err(Error::input(format!("node {} listed twice", n.id)));
            }
        }
        let mut edges = self.edges.clone();
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        LabeledNetwork::from_parts(kinds, &edges)
    }
}

pub fn read_network_file(path: impl AsRef<Path>) -> Result<LabeledNetwork> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: NetworkFile = serde_json::from_str(&text)?;
    file.to_network()
}
