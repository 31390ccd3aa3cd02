//! Pairwise graph spanners built by path buying.
//!
//! Four constructions share a clustering phase and a greedy buy loop:
//!
//! | construction | pairs | stretch |
//! |---|---|---|
//! | [`build_subsetwise`] | S×S | `d + 2` |
//! | [`build_sourcewise`] | S×V | `d + 2k` |
//! | [`build_pairwise_near`] | any list | `(1+ε)d + 4` |
//! | [`build_pairwise_pure`] | any list | `d + 4k` |
//!
//! [`verify`] checks outputs against exact BFS distances and the
//! explicit-constant size budgets; [`harness`] holds generators, file
//! formats and the benchmark driver used by the CLI.

pub mod buying;
pub mod clustering;
pub mod error;
pub mod graph;
pub mod harness;
pub mod mult_spanner;
pub mod pairwise_near;
pub mod pairwise_pure;
pub mod sourcewise;
pub mod subsetwise;
pub mod verify;

pub use buying::{BuyLedger, ConstructionKind, Spanner};
pub use clustering::{build_clustering, ClusterGraph, Clustering};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, Node, Path};
pub use mult_spanner::{greedy_mult_spanner, log_stretch_spanner};
pub use pairwise_near::{build_pairwise_near, NearAdditiveParams};
pub use pairwise_pure::{build_pairwise_pure, PureAdditiveParams};
pub use sourcewise::{build_sourcewise, SourcewiseParams};
pub use subsetwise::{build_subsetwise, SubsetwiseParams};
pub use verify::{verify_stretch, StretchReport, StretchSpec};
