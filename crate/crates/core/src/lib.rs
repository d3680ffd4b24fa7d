//! k-balanced graph partitioning: 3-PARTITION reduction gadgets for general
//! graphs, solid grids and trees, exact oracles, and the simple algorithms
//! that match the hardness bounds.

pub mod cli;
pub mod error;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod grid;
pub mod par;
pub mod partition;
pub mod reductions;
pub mod render;
pub mod solvers;
pub mod tpart;
pub mod verify;

pub use error::{Error, InstanceError, Result};
pub use exact::Rational;
pub use graph::{Edge, GeneralGraph, Graph, TreeGraph};
pub use grid::{is_solid, GridGraph, Point};
pub use par::Exec;
pub use partition::{cut_size, is_balanced, minority_count, CutReport, Partition};
pub use reductions::{Family, ReductionBundle, ReductionParams};
pub use tpart::{ThreePartInstance, TripleSolution};
pub use verify::{audit, decide_three_partition, Algorithm, AuditOutcome, Decision};
