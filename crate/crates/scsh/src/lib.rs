//! Size-constrained community search over heterogeneous information
//! networks.
//!
//! Given a typed network, a symmetric meta-path, a query node, and a size
//! budget `s`, find the `s`-node community containing the query that
//! maximises triangle-connected truss cohesiveness in the induced
//! homogeneous graph. The crate provides the exact branch-and-bound
//! solvers (node-growing and edge-growing), the seed-and-merge heuristic,
//! reference brute-force oracles, and the quality metrics reported by the
//! CLI.

pub mod fixtures;
pub mod heuristic;
pub mod hin;
pub mod metapath;
pub mod metrics;
pub mod oracle;
pub mod search;
pub mod truss;

pub use hin::{load_hin, validate_schema, Hin, HinError, Schema};
pub use metapath::{build_pgraph, MetaPath, MetaPathError, PGraph};
pub use search::{solve, SearchOutcome, SolverOptions};
