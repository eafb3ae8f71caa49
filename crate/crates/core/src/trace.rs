//! JSON export and import of pipeline traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Vertex};
use crate::lemma::MeasurementRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceStep {
    pub step: usize,
    pub measured: Vertex,
    pub k0: Vertex,
    pub pre_vertices: Vec<Vertex>,
    pub pre_edges: Vec<[Vertex; 2]>,
    pub post_vertices: Vec<Vertex>,
    pub post_edges: Vec<[Vertex; 2]>,
}

fn edge_list(g: &InterQlanGraph) -> Vec<[Vertex; 2]> {
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = e.oriented().unwrap_or_else(|| e.endpoints());
            [a, b]
        })
        .collect()
}

fn rebuild(vertices: &[Vertex], edges: &[[Vertex; 2]]) -> Result<InterQlanGraph> {
    let mut g = InterQlanGraph::new();
    for &v in vertices {
        g.add_vertex(v)?;
    }
    for &[a, b] in edges {
        g.add_edge(a, b)?;
    }
    Ok(g)
}

impl From<&MeasurementRecord> for TraceStep {
    fn from(r: &MeasurementRecord) -> Self {
        TraceStep {
            step: r.step_index,
            measured: r.measured_vertex,
            k0: r.special_neighbor,
            pre_vertices: r.pre_graph.vertices().collect(),
            pre_edges: edge_list(&r.pre_graph),
            post_vertices: r.post_graph.vertices().collect(),
            post_edges: edge_list(&r.post_graph),
        }
    }
}

impl TraceStep {
    pub fn to_record(&self) -> Result<MeasurementRecord> {
        Ok(MeasurementRecord {
            step_index: self.step,
            measured_vertex: self.measured,
            special_neighbor: self.k0,
            pre_graph: rebuild(&self.pre_vertices, &self.pre_edges)?,
            post_graph: rebuild(&self.post_vertices, &self.post_edges)?,
        })
    }
}

pub fn trace_to_json(records: &[MeasurementRecord]) -> String {
    let steps: Vec<TraceStep> = records.iter().map(TraceStep::from).collect();
    serde_json::to_string_pretty(&steps).expect("trace serializes")
}

pub fn trace_from_json(text: &str) -> Result<Vec<MeasurementRecord>> {
    let steps: Vec<TraceStep> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("trace: {e}")))?;
    steps.iter().map(TraceStep::to_record).collect()
}
