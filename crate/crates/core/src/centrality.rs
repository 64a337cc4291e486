//! κ-path edge centrality estimated by bounded self-avoiding random walks.
//!
//! Every edge starts with weight `1/|E|`. `ρ = |E| - 1` walks are simulated;
//! each picks a source with probability proportional to its local effective
//! density, then repeatedly follows an untraversed incident edge chosen with
//! probability proportional to the current edge weight, awarding that edge a
//! bonus of `1/|E|`. A walk stops after `κ` hops or when every incident edge
//! at the current node has been traversed by this walk. Final weights lie in
//! `[1/|E|, 1]` and are the centrality estimates.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId, NodeIdMap};
use crate::scalar::Scalar;

/// Walk-length bound used when none is given.
pub const DEFAULT_KAPPA: usize = 20;

/// Per-edge centrality weights together with the parameters that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityMap<T = f64> {
    weights: Vec<T>,
    kappa: usize,
    rho: usize,
    seed: u64,
    traversals: u64,
}

impl<T: Scalar> CentralityMap<T> {
    /// Wraps externally supplied weights, e.g. fixtures or values read back from a dump.
    pub fn from_weights(weights: Vec<T>) -> Self {
        Self {
            weights,
            kappa: 0,
            rho: 0,
            seed: 0,
            traversals: 0,
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> T {
        self.weights[e]
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Number of walks simulated.
    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total number of edge traversals over all walks.
    pub fn traversals(&self) -> u64 {
        self.traversals
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// Edge ids by decreasing weight; equal weights keep id order.
    pub fn ranking(&self) -> Vec<EdgeId> {
        let mut order: Vec<EdgeId> = (0..self.weights.len()).collect();
        order.sort_by(|&a, &b| {
            self.weights[b]
                .partial_cmp(&self.weights[a])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        order
    }

    /// Writes `u v weight` lines sorted by decreasing weight.
    pub fn write_dump<W: Write>(&self, g: &Graph, ids: &NodeIdMap, mut out: W) -> Result<()> {
        for e in self.ranking() {
            let (u, v) = g.endpoints(e);
            writeln!(out, "{} {} {}", ids.label(u), ids.label(v), self.weights[e])?;
        }
        Ok(())
    }
}

/// `δ(v) = (|I(v)| + |O(v)|) / 2|E|`. An undirected edge is both ingoing and
/// outgoing, so this is `deg(v) / |E|`.
pub fn local_effective_density<T: Scalar>(g: &Graph, v: NodeId) -> Result<T> {
    let degree = g.degree(v)?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(T::from_count(degree) / T::from_count(g.edge_count()))
}

/// Every edge at `1/|E|`.
pub fn initial_weights<T: Scalar>(g: &Graph) -> Result<CentralityMap<T>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let w = T::one() / T::from_count(g.edge_count());
    Ok(CentralityMap::from_weights(vec![w; g.edge_count()]))
}

/// Source-node distribution `P(v) = δ(v) / φ`, sampled by inverting the
/// cumulative sum.
#[derive(Debug, Clone)]
pub struct SourceDistribution<T = f64> {
    cumulative: Vec<T>,
    normalizer: T,
}

impl<T: Scalar> SourceDistribution<T> {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.edge_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut cumulative = Vec::with_capacity(g.node_count());
        let mut acc = T::zero();
        for v in 0..g.node_count() {
            acc += local_effective_density::<T>(g, v)?;
            cumulative.push(acc);
        }
        Ok(Self {
            cumulative,
            normalizer: acc,
        })
    }

    /// `φ = Σ δ(v)`.
    pub fn normalizer(&self) -> T {
        self.normalizer
    }

    pub fn probability(&self, v: NodeId) -> T {
        let prev = if v == 0 { T::zero() } else { self.cumulative[v - 1] };
        (self.cumulative[v] - prev) / self.normalizer
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        let target = T::from_f64_lossy(rng.random::<f64>()) * self.normalizer;
        let idx = self.cumulative.partition_point(|&c| c <= target);
        if idx < self.cumulative.len() {
            return idx;
        }
        // Rounding pushed the target past the last bucket: take the last node with mass.
        let last = self.cumulative[self.cumulative.len() - 1];
        self.cumulative.partition_point(|&c| c < last)
    }
}

/// Draws a source node; see [`SourceDistribution::sample`].
pub fn select_source<T: Scalar, R: Rng + ?Sized>(dist: &SourceDistribution<T>, rng: &mut R) -> NodeId {
    dist.sample(rng)
}

/// State of a single walk.
#[derive(Debug, Clone, Default)]
pub struct WalkState {
    /// Node the walk currently sits on.
    pub current: NodeId,
    /// Hops taken so far.
    pub hops: usize,
    /// Edges traversed by this walk, in order. Also serves as the traversed-flag set.
    pub traversed: Vec<EdgeId>,
}

impl WalkState {
    fn reset(&mut self, start: NodeId) {
        self.current = start;
        self.hops = 0;
        self.traversed.clear();
    }

    pub fn is_traversed(&self, e: EdgeId) -> bool {
        self.traversed.contains(&e)
    }
}

/// Scratch space reused across walks.
#[derive(Debug, Default)]
struct Walker {
    state: WalkState,
    candidates: Vec<(EdgeId, NodeId)>,
}

impl Walker {
    fn run<T: Scalar, R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        weights: &mut [T],
        bonus: T,
        start: NodeId,
        kappa: usize,
        rng: &mut R,
    ) {
        self.state.reset(start);
        while self.state.hops < kappa {
            let v = self.state.current;
            self.candidates.clear();
            let mut gamma = T::zero();
            for n in g.neighbors(v) {
                if !self.state.is_traversed(n.edge) {
                    self.candidates.push((n.edge, n.node));
                    gamma += weights[n.edge];
                }
            }
            let Some(&last) = self.candidates.last() else {
                break;
            };
            let target = T::from_f64_lossy(rng.random::<f64>()) * gamma;
            let mut acc = T::zero();
            let mut chosen = last;
            for &(e, w) in &self.candidates {
                acc += weights[e];
                if acc > target {
                    chosen = (e, w);
                    break;
                }
            }
            let (edge, next) = chosen;
            weights[edge] += bonus;
            self.state.traversed.push(edge);
            self.state.current = next;
            self.state.hops += 1;
        }
    }
}

/// Runs one walk from `start`, updating `weights` in place, and returns the
/// traversed edges in order.
pub fn message_propagation<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    weights: &mut CentralityMap<T>,
    start: NodeId,
    kappa: usize,
    rng: &mut R,
) -> Result<Vec<EdgeId>> {
    g.check_node(start)?;
    check_kappa(kappa)?;
    if weights.edge_count() != g.edge_count() {
        return Err(Error::WeightCountMismatch {
            expected: g.edge_count(),
            found: weights.edge_count(),
        });
    }
    let bonus = T::one() / T::from_count(g.edge_count());
    let mut walker = Walker::default();
    walker.run(g, &mut weights.weights, bonus, start, kappa, rng);
    weights.traversals += walker.state.traversed.len() as u64;
    Ok(std::mem::take(&mut walker.state.traversed))
}

fn check_kappa(kappa: usize) -> Result<()> {
    if kappa == 0 {
        Err(Error::InvalidParameter("kappa must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Sequential κ-path centrality estimate. Identical `(g, kappa, seed)` give
/// identical output.
pub fn werw_kpath<T: Scalar>(g: &Graph, kappa: usize, seed: u64) -> Result<CentralityMap<T>> {
    werw_kpath_observed(g, kappa, seed, |_, _| {})
}

/// [`werw_kpath`] that hands every finished walk (source, traversed edges) to `observer`.
pub fn werw_kpath_observed<T, F>(g: &Graph, kappa: usize, seed: u64, mut observer: F) -> Result<CentralityMap<T>>
where
    T: Scalar,
    F: FnMut(NodeId, &[EdgeId]),
{
    check_kappa(kappa)?;
    let mut map = initial_weights::<T>(g)?;
    let dist = SourceDistribution::<T>::new(g)?;
    let rho = g.edge_count() - 1;
    let bonus = T::one() / T::from_count(g.edge_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut walker = Walker::default();
    for _ in 0..rho {
        let start = dist.sample(&mut rng);
        walker.run(g, &mut map.weights, bonus, start, kappa, &mut rng);
        map.traversals += walker.state.traversed.len() as u64;
        observer(start, &walker.state.traversed);
    }
    map.kappa = kappa;
    map.rho = rho;
    map.seed = seed;
    Ok(map)
}

/// Runs the `ρ` walks on `workers` threads. Each worker samples against the
/// initial weights plus its own bonuses; the bonuses are summed at the end.
/// Output is reproducible for a fixed `(seed, workers)`; `workers == 1` is
/// exactly [`werw_kpath`].
pub fn werw_kpath_parallel<T: Scalar>(g: &Graph, kappa: usize, seed: u64, workers: usize) -> Result<CentralityMap<T>> {
    if workers == 0 {
        return Err(Error::InvalidParameter("worker count must be at least 1".into()));
    }
    if workers == 1 {
        return werw_kpath(g, kappa, seed);
    }
    check_kappa(kappa)?;
    let initial = initial_weights::<T>(g)?;
    let dist = SourceDistribution::<T>::new(g)?;
    let rho = g.edge_count() - 1;
    let bonus = T::one() / T::from_count(g.edge_count());

    let results: Vec<(Vec<u32>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let share = rho / workers + usize::from(w < rho % workers);
                let initial = &initial;
                let dist = &dist;
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(w as u64 + 1);
                    let mut local = initial.weights.clone();
                    let mut counts = vec![0u32; local.len()];
                    let mut walker = Walker::default();
                    let mut traversals = 0u64;
                    for _ in 0..share {
                        let start = dist.sample(&mut rng);
                        walker.run(g, &mut local, bonus, start, kappa, &mut rng);
                        for &e in &walker.state.traversed {
                            counts[e] += 1;
                        }
                        traversals += walker.state.traversed.len() as u64;
                    }
                    (counts, traversals)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("walk worker panicked"))
            .collect()
    });

    let mut map = initial;
    let mut totals = vec![0u64; map.weights.len()];
    for (counts, traversals) in &results {
        for (t, &c) in totals.iter_mut().zip(counts) {
            *t += u64::from(c);
        }
        map.traversals += traversals;
    }
    for (w, &t) in map.weights.iter_mut().zip(&totals) {
        *w += T::from_count(t as usize) * bonus;
    }
    map.kappa = kappa;
    map.rho = rho;
    map.seed = seed;
    Ok(map)
}
