//! Weighted modularity, the local-move gain, two-phase optimization with
//! meta-graph aggregation, and the end-to-end drivers.

mod fkcd;
mod louvain;
mod partition;

pub use fkcd::{fkcd, fkcd_with, louvain_baseline, FkcdConfig, FkcdRun};
pub use louvain::{aggregate, louvain, louvain_phase1, louvain_with_rng, Dendrogram, Level, DEFAULT_EPSILON};
pub use partition::{modularity, modularity_gain, modularity_of, Partition};
