use std::io;

/// Errors produced by graph ingestion, the centrality and proximity stages,
/// and the community layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("node {node} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("nodes {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("unknown community {community} (partition has {capacity} community slots)")]
    UnknownCommunity { community: usize, capacity: usize },
    #[error("partition covers {found} nodes but the graph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("expected {expected} edge weights, got {found}")]
    WeightCountMismatch { expected: usize, found: usize },
    #[error("edge {edge} has a non-positive or non-finite weight")]
    InvalidWeight { edge: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("node sets differ: {0}")]
    NodeSetMismatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
