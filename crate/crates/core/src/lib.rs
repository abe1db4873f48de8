//! Constructive machinery around subdivisions of complete bipartite graphs.
//!
//! The crate enumerates spiders in a host graph, classifies paths and spiders
//! as admissible/good against a threshold recursion, refines spider families
//! and chains them into copies of `K_{s,t}^k` (or rooted spider blowups
//! `t*S`). Brute-force oracles check every certificate it produces.

pub mod error;
pub mod finder;
pub mod generators;
pub mod goodness;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod pattern;
pub mod regularize;
pub mod rooted;
pub mod spiders;
pub mod threshold;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use pattern::{Pattern, PatternDescriptor, PatternKind};
pub use spiders::Spider;
pub use witness::{Route, Witness};

/// Crate version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
