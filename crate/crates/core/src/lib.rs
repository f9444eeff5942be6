//! Diagnosability analysis for interconnection networks under the PMC and MM*
//! comparison models.

pub mod bounds;
pub mod diagnosability;
pub mod distinguish;
mod error;
pub mod fault;
pub mod formula;
pub mod graph;
mod mask;
pub mod relations;
pub mod search;
pub mod topology;
pub mod verify;
pub mod vertex_set;
pub mod witness;

pub use diagnosability::DiagnosabilityResult;
pub use distinguish::{DiagnosticModel, Verdict, Witness};
pub use error::{Error, Result};
pub use fault::{ConnectivityResult, FaultKind, FaultModelSpec};
pub use graph::{Graph, GraphDocument};
pub use search::SearchOptions;
pub use topology::TopologySpec;
pub use vertex_set::VertexSet;
