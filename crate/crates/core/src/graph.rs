//! Inter-QLAN graph model and the pure graph transformations used by the
//! measurement pipelines.
//!
//! Vertices are tagged with their QLAN, a 1-based index inside that QLAN and a
//! role. Edges are stored once as canonical unordered pairs; the QLAN of each
//! endpoint already tells which side of an inter-link it sits on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qlan {
    Q1,
    Q2,
}

impl Qlan {
    pub fn other(self) -> Qlan {
        match self {
            Qlan::Q1 => Qlan::Q2,
            Qlan::Q2 => Qlan::Q1,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Qlan::Q1 => 1,
            Qlan::Q2 => 2,
        }
    }
}

impl fmt::Display for Qlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Client,
    Super,
}

/// A network node of one of the two QLANs.
///
/// The derived ordering sorts clients by `(qlan, index)` and places
/// super-nodes last; the state-vector oracle relies on it for qubit order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub role: Role,
    pub qlan: Qlan,
    pub index: usize,
}

impl Vertex {
    pub const fn client(qlan: Qlan, index: usize) -> Self {
        Vertex {
            role: Role::Client,
            qlan,
            index,
        }
    }

    /// Freshly added super-node of `qlan`. Index 0 never collides with the
    /// 1-based client indices.
    pub const fn super_node(qlan: Qlan) -> Self {
        Vertex {
            role: Role::Super,
            qlan,
            index: 0,
        }
    }

    /// Shorthand for `client(Q1, i)`.
    pub const fn q1(index: usize) -> Self {
        Vertex::client(Qlan::Q1, index)
    }

    /// Shorthand for `client(Q2, j)`.
    pub const fn q2(index: usize) -> Self {
        Vertex::client(Qlan::Q2, index)
    }

    pub fn is_client(&self) -> bool {
        self.role == Role::Client
    }

    pub fn is_super(&self) -> bool {
        self.role == Role::Super
    }

    fn slot(&self) -> (Qlan, usize) {
        (self.qlan, self.index)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Client => write!(f, "{}.{}", self.qlan, self.index),
            Role::Super => write!(f, "s{}", self.qlan),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Parses `"<qlan>.<index>"` for clients and `"s1"` / `"s2"` for added
    /// super-nodes.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "invalid vertex name {s:?}; expected \"1.i\", \"2.j\", \"s1\" or \"s2\""
            ))
        };
        let qlan_of = |c: &str| match c {
            "1" => Ok(Qlan::Q1),
            "2" => Ok(Qlan::Q2),
            _ => Err(bad()),
        };
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('s') {
            return Ok(Vertex::super_node(qlan_of(rest)?));
        }
        let (q, i) = s.split_once('.').ok_or_else(bad)?;
        let index: usize = i.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Vertex::client(qlan_of(q)?, index))
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Undirected edge with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn is_cross_qlan(&self) -> bool {
        self.lo.qlan != self.hi.qlan
    }

    pub fn touches_super(&self) -> bool {
        self.lo.is_super() || self.hi.is_super()
    }

    /// Endpoints ordered as (QLAN-1 side, QLAN-2 side) for cross-QLAN edges.
    pub fn oriented(&self) -> Option<(Vertex, Vertex)> {
        match (self.lo.qlan, self.hi.qlan) {
            (Qlan::Q1, Qlan::Q2) => Some((self.lo, self.hi)),
            (Qlan::Q2, Qlan::Q1) => Some((self.hi, self.lo)),
            _ => None,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: Vertex,
    pub members: BTreeSet<Vertex>,
}

impl Neighborhood {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.members.contains(v)
    }
}

/// The artificial topology shared by two QLANs.
///
/// Construction goes through `&mut self` builders; every transformation
/// returns a fresh graph and leaves its input untouched. Intermediate graphs
/// of a measurement sequence may hold intra-QLAN edges, so the inter-link
/// invariant is checked on demand with [`InterQlanGraph::validate_inter_links`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterQlanGraph {
    adjacency: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl InterQlanGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph with clients `1.1..=1.n1` and `2.1..=2.n2`.
    pub fn with_clients(n1: usize, n2: usize) -> Self {
        let mut adjacency = BTreeMap::new();
        for i in 1..=n1 {
            adjacency.insert(Vertex::q1(i), BTreeSet::new());
        }
        for j in 1..=n2 {
            adjacency.insert(Vertex::q2(j), BTreeSet::new());
        }
        InterQlanGraph { adjacency }
    }

    /// Client-only Inter-QLAN from 1-based `(i, j)` inter-link pairs.
    pub fn from_inter_links(n1: usize, n2: usize, links: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::with_clients(n1, n2);
        for &(i, j) in links {
            g.add_edge(Vertex::q1(i), Vertex::q2(j))?;
        }
        Ok(g)
    }

    /// Complete bipartite Inter-QLAN on `n1 + n2` clients.
    pub fn complete_bipartite(n1: usize, n2: usize) -> Self {
        let mut g = Self::with_clients(n1, n2);
        for i in 1..=n1 {
            for j in 1..=n2 {
                g.toggle(Vertex::q1(i), Vertex::q2(j));
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<()> {
        if self.adjacency.keys().any(|u| u.slot() == v.slot()) {
            return Err(Error::DuplicateVertex(v));
        }
        if v.is_super() && self.super_of(v.qlan).is_some() {
            return Err(Error::DuplicateSuper(v.qlan));
        }
        self.adjacency.insert(v, BTreeSet::new());
        Ok(())
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        let edge = Edge::new(a, b)?;
        self.require(a)?;
        self.require(b)?;
        if self.has_edge(a, b) {
            return Err(Error::DuplicateEdge(edge));
        }
        self.toggle(a, b);
        Ok(())
    }

    // Callers guarantee a != b and both present.
    fn toggle(&mut self, a: Vertex, b: Vertex) {
        debug_assert_ne!(a, b);
        let na = self.adjacency.get_mut(&a).expect("vertex present");
        if !na.remove(&b) {
            na.insert(b);
            self.adjacency.get_mut(&b).expect("vertex present").insert(a);
        } else {
            self.adjacency.get_mut(&b).expect("vertex present").remove(&a);
        }
    }

    fn require(&self, v: Vertex) -> Result<&BTreeSet<Vertex>> {
        self.adjacency.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Vertices in canonical order (clients by QLAN and index, then supers).
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn clients(&self, qlan: Qlan) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |v| v.is_client() && v.qlan == qlan)
    }

    pub fn client_count(&self, qlan: Qlan) -> usize {
        self.clients(qlan).count()
    }

    pub fn supers(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(Vertex::is_super)
    }

    pub fn super_of(&self, qlan: Qlan) -> Option<Vertex> {
        self.supers().find(|v| v.qlan == qlan)
    }

    pub fn is_client_only(&self) -> bool {
        self.supers().next().is_none()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.require(v)?.len())
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.adjacency
            .iter()
            .flat_map(|(&a, n)| n.range(a..).map(move |&b| Edge { lo: a, hi: b }))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> Result<Neighborhood> {
        Ok(Neighborhood {
            center: v,
            members: self.require(v)?.clone(),
        })
    }

    /// Clients of the opposite QLAN that are *not* adjacent to client `v`.
    pub fn complement_neighborhood(&self, v: Vertex) -> Result<Neighborhood> {
        let adjacent = self.require(v)?;
        if v.is_super() {
            return Err(Error::SuperVertex(v));
        }
        let members = self.clients(v.qlan.other()).filter(|u| !adjacent.contains(u)).collect();
        Ok(Neighborhood { center: v, members })
    }

    /// Local complementation at `v`: toggles every edge between two distinct
    /// neighbors of `v`.
    pub fn local_complement(&self, v: Vertex) -> Result<Self> {
        let members: Vec<Vertex> = self.require(v)?.iter().copied().collect();
        let mut out = self.clone();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                out.toggle(a, b);
            }
        }
        Ok(out)
    }

    pub fn delete_vertex(&self, v: Vertex) -> Result<Self> {
        let incident = self.require(v)?.clone();
        let mut out = self.clone();
        for u in incident {
            out.adjacency.get_mut(&u).expect("neighbor present").remove(&v);
        }
        out.adjacency.remove(&v);
        Ok(out)
    }

    /// Same clients, with exactly the cross-QLAN client pairs absent from
    /// `self` as edges.
    pub fn complement_graph(&self) -> Result<Self> {
        if let Some(s) = self.supers().next() {
            return Err(Error::SuperPresent(s));
        }
        let mut out = Self {
            adjacency: self.adjacency.keys().map(|&v| (v, BTreeSet::new())).collect(),
        };
        let q2: Vec<Vertex> = self.clients(Qlan::Q2).collect();
        for a in self.clients(Qlan::Q1) {
            for &b in &q2 {
                if !self.has_edge(a, b) {
                    out.toggle(a, b);
                }
            }
        }
        Ok(out)
    }

    /// Copy of `self` with the edge `(a, b)` flipped.
    pub fn with_edge_toggled(&self, a: Vertex, b: Vertex) -> Result<Self> {
        Edge::new(a, b)?;
        self.require(a)?;
        self.require(b)?;
        let mut out = self.clone();
        out.toggle(a, b);
        Ok(out)
    }

    /// Copy of `self` where vertex `from` is renamed `to`, keeping its edges.
    pub fn relabel(&self, from: Vertex, to: Vertex) -> Result<Self> {
        let incident = self.require(from)?.clone();
        let mut out = self.delete_vertex(from)?;
        out.add_vertex(to)?;
        for u in incident {
            out.toggle(to, u);
        }
        Ok(out)
    }

    /// Checks that every edge is a cross-QLAN inter-link, except edges
    /// touching a super-node (allowed by the local-super augmentation).
    pub fn validate_inter_links(&self) -> Result<()> {
        match self
            .edges()
            .into_iter()
            .find(|e| !e.is_cross_qlan() && !e.touches_super())
        {
            Some(e) => Err(Error::IntraQlanEdge(e)),
            None => Ok(()),
        }
    }

    /// True when every edge is a cross-QLAN client pair and no super is left.
    pub fn is_plain_inter_qlan(&self) -> bool {
        self.is_client_only() && self.edges().iter().all(Edge::is_cross_qlan)
    }
}

impl fmt::Display for InterQlanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        let edges: Vec<String> = self.edges().iter().map(|e| e.to_string()).collect();
        write!(f, "V = {{{}}}, E = {{{}}}", names.join(", "), edges.join(", "))
    }
}
