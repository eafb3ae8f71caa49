//! Graph file formats: the JSON document used by scenario tooling and a
//! Graphviz DOT exporter.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Qlan, Role, Vertex};

/// JSON form of an [`InterQlanGraph`].
///
/// Clients are `"1.i"` / `"2.j"` with 1-based indices covering `1..=n1` and
/// `1..=n2`. Supers are `"s1"` / `"s2"`. A client promoted to super-node keeps
/// its slot and is listed under `promoted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n1: usize,
    pub n2: usize,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub supers: SuperFlags,
    #[serde(default)]
    pub super_edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub promoted: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperFlags {
    #[serde(default)]
    pub s1: bool,
    #[serde(default)]
    pub s2: bool,
}

fn super_key(qlan: Qlan) -> String {
    format!("s{qlan}")
}

impl GraphDocument {
    pub fn from_graph(g: &InterQlanGraph) -> Result<Self> {
        let mut promoted = BTreeMap::new();
        let mut counts = [0usize; 2];
        for (slot, qlan) in [Qlan::Q1, Qlan::Q2].into_iter().enumerate() {
            let mut indices: Vec<usize> = g.clients(qlan).map(|v| v.index).collect();
            if let Some(s) = g.super_of(qlan).filter(|s| s.index > 0) {
                promoted.insert(super_key(qlan), Vertex::client(qlan, s.index).to_string());
                indices.push(s.index);
            }
            indices.sort_unstable();
            if indices.iter().enumerate().any(|(k, &i)| i != k + 1) {
                return Err(Error::Parse(format!(
                    "QLAN {qlan} client indices are not contiguous from 1; the graph document cannot represent them"
                )));
            }
            counts[slot] = indices.len();
        }
        let mut edges = Vec::new();
        let mut super_edges = Vec::new();
        for e in g.edges() {
            let (a, b) = e.oriented().unwrap_or_else(|| e.endpoints());
            let pair = [a.to_string(), b.to_string()];
            if e.touches_super() {
                super_edges.push(pair);
            } else {
                edges.push(pair);
            }
        }
        Ok(GraphDocument {
            n1: counts[0],
            n2: counts[1],
            edges,
            supers: SuperFlags {
                s1: g.super_of(Qlan::Q1).is_some(),
                s2: g.super_of(Qlan::Q2).is_some(),
            },
            super_edges,
            promoted,
        })
    }

    pub fn to_graph(&self) -> Result<InterQlanGraph> {
        let mut promoted_slots = BTreeMap::new();
        for (key, name) in &self.promoted {
            let qlan = match key.as_str() {
                "s1" => Qlan::Q1,
                "s2" => Qlan::Q2,
                _ => return Err(Error::Parse(format!("promoted: unknown super-node key {key:?}"))),
            };
            let client: Vertex = name.parse()?;
            if !client.is_client() || client.qlan != qlan {
                return Err(Error::Parse(format!("promoted: {name} is not a QLAN {qlan} client")));
            }
            promoted_slots.insert(qlan, client.index);
        }
        let mut g = InterQlanGraph::new();
        for (qlan, n) in [(Qlan::Q1, self.n1), (Qlan::Q2, self.n2)] {
            let promoted = promoted_slots.get(&qlan).copied();
            if promoted.is_some_and(|i| i > n) {
                return Err(Error::Parse(format!("promoted super of QLAN {qlan} is out of range")));
            }
            for i in 1..=n {
                if Some(i) != promoted {
                    g.add_vertex(Vertex::client(qlan, i))?;
                }
            }
            let present = match qlan {
                Qlan::Q1 => self.supers.s1,
                Qlan::Q2 => self.supers.s2,
            };
            match (present, promoted) {
                (true, Some(index)) => g.add_vertex(Vertex {
                    role: Role::Super,
                    qlan,
                    index,
                })?,
                (true, None) => g.add_vertex(Vertex::super_node(qlan))?,
                (false, Some(_)) => {
                    return Err(Error::Parse(format!(
                        "promoted super of QLAN {qlan} listed but supers.s{qlan} is false"
                    )))
                }
                (false, None) => {}
            }
        }
        let resolve = |name: &str| -> Result<Vertex> {
            let v: Vertex = name.parse()?;
            if v.is_super() {
                g.super_of(v.qlan).ok_or(Error::UnknownVertex(v))
            } else {
                Ok(v)
            }
        };
        let mut edges = Vec::new();
        for [a, b] in self.edges.iter().chain(&self.super_edges) {
            edges.push((resolve(a)?, resolve(b)?));
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        g.validate_inter_links()?;
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            Error::Parse(format!(
                "graph document, field `{}` (line {}, column {}): {}",
                e.path(),
                inner.line(),
                inner.column(),
                inner
            ))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph document serializes")
    }
}

/// Graphviz DOT rendering. QLAN 1 clients are blue circles, QLAN 2 clients
/// salmon boxes, super-nodes gold double octagons.
pub fn to_dot(g: &InterQlanGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(out, "  node [style=filled];");
    for v in g.vertices() {
        let style = match (v.role, v.qlan) {
            (Role::Super, _) => "shape=doubleoctagon, fillcolor=gold, class=super",
            (Role::Client, Qlan::Q1) => "shape=circle, fillcolor=lightblue, class=qlan1",
            (Role::Client, Qlan::Q2) => "shape=box, fillcolor=lightsalmon, class=qlan2",
        };
        let _ = writeln!(out, "  \"{v}\" [{style}];");
    }
    for e in g.edges() {
        let (a, b) = e.oriented().unwrap_or_else(|| e.endpoints());
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}
