//! Distance-r dominating set kernelization for sparse graphs, with the
//! sparsity measurements it relies on (neighborhood and projection
//! complexity, weak reachability, quasi-wideness, VC-dimension) and
//! exhaustive oracles for checking every stage on small inputs.

pub mod domset;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod orderings;
pub mod profiles;
pub mod sparsity;

pub use domset::{DominationInstance, DominatorResult, OracleCaps};
pub use error::{Error, Result};
pub use generators::GenSpec;
pub use graph::{Dist, DistMap, Graph, IdMap, Vertex, VertexSet};
pub use kernel::{KernelConfig, KernelResult, Verdict};
pub use orderings::Ordering;
pub use profiles::{DistanceProfile, Metric, ProjectionProfile, SetFamily, VcDimension};
pub use sparsity::{ClosureResult, QwOutcome, QwResult};
