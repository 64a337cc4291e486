//! Community detection driven by κ-path edge centrality.
//!
//! The pipeline estimates the centrality of every edge with bounded
//! self-avoiding random walks ([`centrality`]), turns centralities into
//! pairwise node proximities used as edge weights ([`proximity`]), and
//! partitions the weighted graph by multilevel modularity optimization
//! ([`community`]). A unit-weight baseline and evaluation measures
//! ([`metrics`]) are included for comparison runs.
//!
//! Numeric types are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix them to one precision.

pub mod centrality;
pub mod community;
mod error;
pub mod graph;
pub mod metrics;
pub mod proximity;
mod scalar;

pub use centrality::{
    initial_weights, local_effective_density, message_propagation, select_source, werw_kpath, werw_kpath_observed,
    werw_kpath_parallel, CentralityMap, SourceDistribution, WalkState, DEFAULT_KAPPA,
};
pub use community::{
    aggregate, fkcd, fkcd_with, louvain, louvain_baseline, louvain_phase1, modularity, modularity_gain, modularity_of,
    Dendrogram, FkcdConfig, FkcdRun, Level, Partition, DEFAULT_EPSILON,
};
pub use error::{Error, Result};
pub use graph::{load_edge_list, EdgeId, Graph, LoadedGraph, Neighbor, NodeId, NodeIdMap};
pub use metrics::{coverage, load_ground_truth, nmi, LabeledPartition};
pub use proximity::{
    build_weighted_graph, build_weighted_graph_with, edge_proximities, proximity, WeightTransform, WeightedGraph,
};
pub use scalar::Scalar;

pub type CentralityMap64 = CentralityMap<f64>;
pub type CentralityMap32 = CentralityMap<f32>;
pub type WeightedGraph64 = WeightedGraph<f64>;
pub type WeightedGraph32 = WeightedGraph<f32>;
pub type Partition64 = Partition<f64>;
pub type Partition32 = Partition<f32>;
pub type Dendrogram64 = Dendrogram<f64>;
pub type Dendrogram32 = Dendrogram<f32>;
pub type FkcdRun64 = FkcdRun<f64>;
