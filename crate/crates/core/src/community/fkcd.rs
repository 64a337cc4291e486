use super::louvain::{check_epsilon, louvain, Dendrogram, DEFAULT_EPSILON};
use crate::centrality::{werw_kpath_parallel, CentralityMap, DEFAULT_KAPPA};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::proximity::{edge_proximities, weighted_from_proximities, WeightTransform, WeightedGraph};
use crate::scalar::Scalar;

/// Parameters of a full pipeline run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FkcdConfig {
    pub kappa: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Walk workers; 1 selects the sequential reference.
    pub threads: usize,
    pub transform: WeightTransform,
}

impl Default for FkcdConfig {
    fn default() -> Self {
        Self {
            kappa: DEFAULT_KAPPA,
            epsilon: DEFAULT_EPSILON,
            seed: 0,
            threads: 1,
            transform: WeightTransform::Direct,
        }
    }
}

/// Everything a pipeline run produces.
#[derive(Debug, Clone)]
pub struct FkcdRun<T = f64> {
    pub centrality: CentralityMap<T>,
    /// `r_ij` per edge id.
    pub proximities: Vec<T>,
    pub weighted: WeightedGraph<T>,
    pub dendrogram: Dendrogram<T>,
}

/// Centrality, proximity weighting, then multilevel modularity optimization.
pub fn fkcd<T: Scalar>(g: &Graph, kappa: usize, epsilon: T, seed: u64) -> Result<Dendrogram<T>> {
    let config = FkcdConfig {
        kappa,
        epsilon: epsilon.to_f64_lossy(),
        seed,
        ..FkcdConfig::default()
    };
    Ok(fkcd_with::<T>(g, &config)?.dendrogram)
}

pub fn fkcd_with<T: Scalar>(g: &Graph, config: &FkcdConfig) -> Result<FkcdRun<T>> {
    let epsilon = T::from_f64_lossy(config.epsilon);
    check_epsilon(epsilon)?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let centrality = werw_kpath_parallel::<T>(g, config.kappa, config.seed, config.threads)?;
    let proximities = edge_proximities(g, &centrality)?;
    let weighted = weighted_from_proximities(g, &proximities, config.transform)?;
    let dendrogram = louvain(&weighted, epsilon, config.seed)?;
    Ok(FkcdRun {
        centrality,
        proximities,
        weighted,
        dendrogram,
    })
}

/// The same multilevel optimization on unit edge weights.
pub fn louvain_baseline<T: Scalar>(g: &Graph, epsilon: T, seed: u64) -> Result<Dendrogram<T>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    louvain(&WeightedGraph::unit(g), epsilon, seed)
}
