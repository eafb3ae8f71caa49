//! Scenario files: one JSON document describing both the physical network and
//! its artificial Inter-QLAN counterpart.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Qlan, Vertex};
use crate::lemma::Case;
use crate::routing::{ComplementOptions, PhysicalTopology, RequestSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub qlan1: usize,
    pub qlan2: usize,
    #[serde(default)]
    pub inter_links: Vec<[String; 2]>,
    #[serde(default)]
    pub physical_links: Vec<[String; 2]>,
    #[serde(default)]
    pub comm_qubits: BTreeMap<String, u32>,
    /// Communication qubits for nodes missing from `comm_qubits`.
    #[serde(default = "one")]
    pub default_comm_qubits: u32,
    #[serde(default)]
    pub requests: Vec<[String; 2]>,
    #[serde(default)]
    pub retain: Vec<String>,
    #[serde(default)]
    pub case: Case,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> u32 {
    1
}

const FIG1: &str = include_str!("../scenarios/fig1.json");
const FIG2: &str = include_str!("../scenarios/fig2.json");
const EXHAUSTIVE_SMALL: &str = include_str!("../scenarios/exhaustive-small.json");

/// Names accepted by [`Scenario::bundled`].
pub const BUNDLED: [&str; 3] = ["fig1", "fig2", "exhaustive-small"];

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            Error::Parse(format!(
                "scenario, field `{}` (line {}, column {}): {}",
                e.path(),
                inner.line(),
                inner.column(),
                inner
            ))
        })?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn bundled(name: &str) -> Result<Self> {
        let text = match name {
            "fig1" => FIG1,
            "fig2" => FIG2,
            "exhaustive-small" => EXHAUSTIVE_SMALL,
            other => return Err(Error::Parse(format!("no bundled scenario named {other:?}"))),
        };
        Self::from_json(text)
    }

    fn client(&self, name: &str, field: &str) -> Result<Vertex> {
        let v: Vertex = name.parse().map_err(|e: Error| Error::Parse(format!("{field}: {e}")))?;
        let n = match v.qlan {
            Qlan::Q1 => self.qlan1,
            Qlan::Q2 => self.qlan2,
        };
        if !v.is_client() || v.index > n {
            return Err(Error::UnknownNode(format!("{name} (in {field})")));
        }
        Ok(v)
    }

    /// Checks everything the builders below rely on.
    pub fn validate(&self) -> Result<()> {
        if self.qlan1 == 0 {
            return Err(Error::EmptyQlan(Qlan::Q1));
        }
        if self.qlan2 == 0 {
            return Err(Error::EmptyQlan(Qlan::Q2));
        }
        self.inter_qlan_graph()?;
        self.physical_topology()?;
        self.request_set()?;
        self.retained()?;
        Ok(())
    }

    pub fn inter_qlan_graph(&self) -> Result<InterQlanGraph> {
        let mut g = InterQlanGraph::with_clients(self.qlan1, self.qlan2);
        for [a, b] in &self.inter_links {
            let (a, b) = (self.client(a, "inter_links")?, self.client(b, "inter_links")?);
            g.add_edge(a, b)?;
        }
        g.validate_inter_links()?;
        Ok(g)
    }

    pub fn client_names(&self) -> Vec<String> {
        InterQlanGraph::with_clients(self.qlan1, self.qlan2)
            .vertices()
            .map(|v| v.to_string())
            .collect()
    }

    pub fn physical_topology(&self) -> Result<PhysicalTopology> {
        let mut t = PhysicalTopology::new();
        for name in self.client_names() {
            let q = self.comm_qubits.get(&name).copied().unwrap_or(self.default_comm_qubits);
            t.add_node(name, q)?;
        }
        for name in self.comm_qubits.keys() {
            if !t.nodes().contains(name) {
                return Err(Error::UnknownNode(format!("{name} (in comm_qubits)")));
            }
        }
        for [a, b] in &self.physical_links {
            t.add_link(a, b)?;
        }
        Ok(t)
    }

    pub fn request_set(&self) -> Result<RequestSet> {
        for [a, b] in &self.requests {
            self.client(a, "requests")?;
            self.client(b, "requests")?;
        }
        RequestSet::new(self.requests.iter().map(|[a, b]| (a.clone(), b.clone())))
    }

    pub fn retained(&self) -> Result<BTreeSet<Vertex>> {
        self.retain.iter().map(|n| self.client(n, "retain")).collect()
    }

    pub fn complement_options(&self) -> Result<ComplementOptions> {
        Ok(ComplementOptions {
            case: self.case,
            retained: self.retained()?,
            k0: None,
            skip_if_empty: false,
        })
    }

    /// Random scenario on `n1 + n2` clients.
    ///
    /// Inter-links are drawn independently with probability 1/2. The physical
    /// network is a chain through each QLAN plus the inter-links as physical
    /// cross links (at least `1.1 – 2.1`). Requests are up to `max_requests`
    /// complement pairs in random order; every node has one communication qubit.
    pub fn random(n1: usize, n2: usize, max_requests: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let name = |q: u8, i: usize| format!("{q}.{i}");
        let mut inter_links = Vec::new();
        let mut complement = Vec::new();
        for i in 1..=n1 {
            for j in 1..=n2 {
                let pair = [name(1, i), name(2, j)];
                if rng.random_bool(0.5) {
                    inter_links.push(pair);
                } else {
                    complement.push(pair);
                }
            }
        }
        let mut physical_links = Vec::new();
        for (q, n) in [(1u8, n1), (2u8, n2)] {
            for i in 1..n {
                physical_links.push([name(q, i), name(q, i + 1)]);
            }
        }
        physical_links.extend(inter_links.iter().cloned());
        if inter_links.is_empty() && n1 > 0 && n2 > 0 {
            physical_links.push([name(1, 1), name(2, 1)]);
        }
        complement.shuffle(&mut rng);
        complement.truncate(max_requests);
        Scenario {
            name: Some(format!("random-{n1}x{n2}-{seed}")),
            description: None,
            qlan1: n1,
            qlan2: n2,
            inter_links,
            physical_links,
            comm_qubits: BTreeMap::new(),
            default_comm_qubits: 1,
            requests: complement,
            retain: Vec::new(),
            case: if rng.random_bool(0.5) { Case::I } else { Case::II },
            seed,
        }
    }
}
