//! Graph-complement routing between two quantum LANs.
//!
//! * [`graph`]: the Inter-QLAN model with local complementation, vertex
//!   deletion and the bipartite complement.
//! * [`lemma`]: super-node augmentation and the two X-measurement pipelines
//!   that realize the complement, including partial complements.
//! * [`oracle`]: dense state-vector verification of every graph-level step.
//! * [`routing`]: path-based routing baseline versus the complement strategy.
//! * [`scenario`], [`sweep`], [`format`], [`trace`]: file formats and batch runs.

pub mod error;
pub mod format;
pub mod graph;
pub mod lemma;
pub mod oracle;
pub mod routing;
pub mod scenario;
pub mod sweep;
pub mod trace;

pub use error::{Error, ErrorKind, Result};
pub use graph::{Edge, InterQlanGraph, Neighborhood, Qlan, Role, Vertex};
pub use lemma::{
    augment, augment_case1, augment_case2, measure_x, promote_super, run_lemma1, run_lemma2, run_partial, run_pipeline,
    AugmentedGraph, Case, MeasurementRecord, PipelineRun,
};
