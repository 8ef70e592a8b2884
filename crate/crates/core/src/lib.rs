//! Exact QAOA performance bounds on high-girth regular graphs.
//!
//! The tree contraction in [`engine`] evaluates the single-edge expectation
//! on the depth-`p` neighbourhood of an edge, which every `d`-regular graph
//! of girth at least `2p + 2` shares. [`optimize`] searches the angles,
//! [`certificate`] records the resulting lower bounds, [`graph`] holds the
//! classical graph-side procedures and [`oracle`] is a dense statevector
//! simulator used for cross-checks and sampling.

pub mod certificate;
pub mod engine;
pub mod error;
pub mod graph;
pub mod message;
pub mod optimize;
pub mod oracle;
pub mod params;

pub use certificate::{truncate4, BoundCertificate, Provenance};
pub use engine::{EdgeExpectation, Engine, MemoryBudget};
pub use error::{Error, Result};
pub use graph::{parse_graph, CertifiedDepth, Girth, Graph};
pub use message::BranchMessage;
pub use optimize::{
    InitStrategy, Mode, OptimizationResult, OptimizerConfig, ParamsDocument, RestartSchedule, Status,
    TableOptions, ENGINE_VERSION,
};
pub use oracle::{SampleReport, Statevector};
pub use params::ParamSet;
