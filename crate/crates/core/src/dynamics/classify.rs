//! Recognizing the structures the dynamics converge to.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cost::GameParams;
use crate::graph::{Network, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// Major clique with every minor linked to the same two majors.
    OptimalStable,
    /// Major clique, a primary minor star and possibly a secondary one.
    DoubleStar,
    /// Backups only to majors: minors hang off one major or off a minor
    /// star center attached to it, without a second path to the core.
    SingleStarUnreliable,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    CliqueMember,
    /// The major the minors (or the star) attach to.
    K,
    /// The second major of two-homed minors.
    KPrime,
    Center1,
    Center2,
    S1,
    S2,
    /// Minors linked to majors only.
    L,
    /// Majors linked to center 1.
    D1,
    /// Majors linked to center 2.
    D2,
    /// Minor star center of the unreliable single star.
    StarCenter,
    /// Minor leaf of the unreliable single star.
    StarLeaf,
    /// Majors linked to the unreliable star center, other than `K`.
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub kind: StructureKind,
    pub roles: BTreeMap<NodeId, Vec<Role>>,
}

impl StructureClass {
    fn other() -> Self {
        StructureClass {
            kind: StructureKind::Other,
            roles: BTreeMap::new(),
        }
    }

    pub fn nodes_with(&self, role: Role) -> Vec<NodeId> {
        self.roles
            .iter()
            .filter(|(_, r)| r.contains(&role))
            .map(|(&v, _)| v)
            .collect()
    }
}

struct Split {
    majors: Vec<NodeId>,
    minors: Vec<NodeId>,
}

fn minor_neighbors(g: &Network, v: NodeId) -> Vec<NodeId> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&u| !g.kind(u).is_major())
        .collect()
}

fn major_neighbors(g: &Network, v: NodeId) -> Vec<NodeId> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&u| g.kind(u).is_major())
        .collect()
}

fn base_roles(split: &Split) -> BTreeMap<NodeId, Vec<Role>> {
    split
        .majors
        .iter()
        .map(|&m| (m, alloc::vec![Role::CliqueMember]))
        .collect()
}

fn push(roles: &mut BTreeMap<NodeId, Vec<Role>>, v: NodeId, role: Role) {
    roles.entry(v).or_default().push(role);
}

fn optimal_stable(g: &Network, split: &Split) -> Option<StructureClass> {
    let first = split.minors.first()?;
    let anchors = g.neighbors(*first);
    if anchors.len() != 2 || !anchors.iter().all(|&a| g.kind(a).is_major()) {
        return None;
    }
    if !split.minors.iter().all(|&v| g.neighbors(v) == anchors) {
        return None;
    }
    let mut roles = base_roles(split);
    push(&mut roles, anchors[0], Role::K);
    push(&mut roles, anchors[1], Role::KPrime);
    for &v in &split.minors {
        push(&mut roles, v, Role::L);
    }
    Some(StructureClass {
        kind: StructureKind::OptimalStable,
        roles,
    })
}

/// Major with the most neighbors in `set`, smallest id on ties.
fn busiest_major(
    g: &Network,
    split: &Split,
    set: &[NodeId],
    exclude: Option<NodeId>,
) -> Option<NodeId> {
    split
        .majors
        .iter()
        .copied()
        .filter(|&m| Some(m) != exclude)
        .map(|m| (set.iter().filter(|&&v| g.has_edge(m, v)).count(), m))
        .filter(|&(c, _)| c > 0)
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, m)| m)
}

fn double_star_with(
    g: &Network,
    split: &Split,
    c1: NodeId,
    c2: Option<NodeId>,
) -> Option<StructureClass> {
    if major_neighbors(g, c1).is_empty() {
        return None;
    }
    if let Some(c2) = c2 {
        if major_neighbors(g, c2).is_empty() {
            return None;
        }
    }
    let (mut s1, mut s2, mut l) = (Vec::new(), Vec::new(), Vec::new());
    for &v in &split.minors {
        if v == c1 || Some(v) == c2 {
            continue;
        }
        let nm = minor_neighbors(g, v);
        let na = major_neighbors(g, v).len();
        match nm.as_slice() {
            [] if na >= 2 => l.push(v),
            [a] if *a == c1 && na >= 1 => s1.push(v),
            [a, b] if c2.is_some_and(|c2| (*a, *b) == (c1.min(c2), c1.max(c2))) => s2.push(v),
            _ => return None,
        }
    }
    if s1.is_empty() && s2.is_empty() {
        return None;
    }
    if c2.is_some() && s2.is_empty() {
        return None;
    }
    if let Some(c2) = c2 {
        // The centers link to each other, their leaves and majors only.
        if minor_neighbors(g, c2)
            .iter()
            .any(|&u| u != c1 && !s2.contains(&u))
        {
            return None;
        }
    }
    if minor_neighbors(g, c1)
        .iter()
        .any(|&u| Some(u) != c2 && !s1.contains(&u) && !s2.contains(&u))
    {
        return None;
    }
    if s2.len() > s1.len() + 1 {
        return None;
    }
    let mut roles = base_roles(split);
    push(&mut roles, c1, Role::Center1);
    if let Some(c2) = c2 {
        push(&mut roles, c2, Role::Center2);
    }
    for &v in &s1 {
        push(&mut roles, v, Role::S1);
    }
    for &v in &s2 {
        push(&mut roles, v, Role::S2);
    }
    for &v in &l {
        push(&mut roles, v, Role::L);
    }
    let mut attached = s1.clone();
    attached.push(c1);
    let k = busiest_major(g, split, &attached, None);
    if let Some(k) = k {
        push(&mut roles, k, Role::K);
        if let Some(k2) = busiest_major(g, split, &l, Some(k)) {
            push(&mut roles, k2, Role::KPrime);
        }
    }
    for m in major_neighbors(g, c1) {
        push(&mut roles, m, Role::D1);
    }
    if let Some(c2) = c2 {
        for m in major_neighbors(g, c2) {
            push(&mut roles, m, Role::D2);
        }
    }
    Some(StructureClass {
        kind: StructureKind::DoubleStar,
        roles,
    })
}

fn double_star(g: &Network, split: &Split) -> Option<StructureClass> {
    let mut centers: Vec<NodeId> = split
        .minors
        .iter()
        .copied()
        .filter(|&v| !minor_neighbors(g, v).is_empty())
        .collect();
    centers.sort_by_key(|&v| (core::cmp::Reverse(minor_neighbors(g, v).len()), v));
    for &c1 in &centers {
        if let Some(found) = double_star_with(g, split, c1, None) {
            return Some(found);
        }
        for &c2 in &centers {
            if c2 != c1 {
                if let Some(found) = double_star_with(g, split, c1, Some(c2)) {
                    return Some(found);
                }
            }
        }
    }
    None
}

fn single_star_with(
    g: &Network,
    split: &Split,
    k: NodeId,
    x: Option<NodeId>,
) -> Option<StructureClass> {
    if let Some(x) = x {
        if !g.has_edge(x, k) {
            return None;
        }
    }
    let (mut leaves, mut on_k) = (Vec::new(), Vec::new());
    for &v in &split.minors {
        if Some(v) == x {
            continue;
        }
        match g.neighbors(v) {
            [u] if *u == k => on_k.push(v),
            [u] if Some(*u) == x => leaves.push(v),
            _ => return None,
        }
    }
    if x.is_some() && leaves.is_empty() {
        return None;
    }
    let mut roles = base_roles(split);
    push(&mut roles, k, Role::K);
    if let Some(x) = x {
        push(&mut roles, x, Role::StarCenter);
        for m in major_neighbors(g, x) {
            if m != k {
                push(&mut roles, m, Role::D);
            }
        }
    }
    for v in leaves {
        push(&mut roles, v, Role::StarLeaf);
    }
    for v in on_k {
        push(&mut roles, v, Role::L);
    }
    Some(StructureClass {
        kind: StructureKind::SingleStarUnreliable,
        roles,
    })
}

fn single_star(g: &Network, split: &Split) -> Option<StructureClass> {
    if split.minors.is_empty() {
        return None;
    }
    let centers: Vec<Option<NodeId>> = core::iter::once(None)
        .chain(
            split
                .minors
                .iter()
                .copied()
                .filter(|&v| !minor_neighbors(g, v).is_empty())
                .map(Some),
        )
        .collect();
    for &k in &split.majors {
        for &x in &centers {
            if let Some(found) = single_star_with(g, split, k, x) {
                return Some(found);
            }
        }
    }
    None
}

/// Matches `g` against the predicted end states. The unreliable single
/// star is only considered when backups to minors are not required.
pub fn classify_structure(g: &Network, p: &GameParams) -> StructureClass {
    let split = Split {
        majors: g.majors().collect(),
        minors: g.minors().collect(),
    };
    if !g.is_clique(&split.majors) {
        return StructureClass::other();
    }
    let found = optimal_stable(g, &split)
        .or_else(|| double_star(g, &split))
        .or_else(|| {
            if p.full_reliability {
                None
            } else {
                single_star(g, &split)
            }
        });
    found.unwrap_or_else(StructureClass::other)
}
