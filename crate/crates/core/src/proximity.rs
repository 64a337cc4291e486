//! Node proximities derived from edge centralities, and the weighted graph
//! the modularity layer runs on.
//!
//! For an edge `(i, j)` the proximity is
//!
//! ```text
//! r_ij = sqrt( Σ_k (L(e_ik) - L(e_kj))² / d(k) )
//! ```
//!
//! with `k` ranging over `(N(i) ∪ N(j)) \ {i, j}` and `L` of a missing edge
//! taken as 0.

use std::io::Write;
use std::str::FromStr;

use crate::centrality::CentralityMap;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeIdMap};
use crate::scalar::Scalar;

/// Undirected weighted graph with optional self-loops, stored as sorted
/// adjacency rows. A self-loop of weight `w` adds `2w` to its node's weighted
/// degree, so `Σ_v k_v = 2m`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T = f64> {
    offsets: Vec<usize>,
    neighbors: Vec<(NodeId, T)>,
    self_loops: Vec<T>,
    degrees: Vec<T>,
    total: T,
    edge_count: usize,
}

impl<T: Scalar> WeightedGraph<T> {
    /// Attaches per-edge weights (indexed by edge id) to `g`.
    pub fn from_graph(g: &Graph, weights: &[T]) -> Result<Self> {
        if weights.len() != g.edge_count() {
            return Err(Error::WeightCountMismatch {
                expected: g.edge_count(),
                found: weights.len(),
            });
        }
        if let Some(edge) = weights.iter().position(|w| !(w.is_finite() && *w > T::zero())) {
            return Err(Error::InvalidWeight { edge });
        }
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for v in 0..n {
            neighbors.extend(g.neighbors(v).iter().map(|nb| (nb.node, weights[nb.edge])));
            offsets.push(neighbors.len());
        }
        Ok(Self::from_rows(offsets, neighbors, vec![T::zero(); n]))
    }

    /// Every edge of `g` with weight 1.
    pub fn unit(g: &Graph) -> Self {
        Self::from_graph(g, &vec![T::one(); g.edge_count()]).expect("unit weights are valid")
    }

    /// Builds from `(u, v, w)` triples. `u == v` is a self-loop; repeated pairs
    /// are summed. Weights must be finite and positive.
    pub fn from_weighted_edges(node_count: usize, edges: &[(NodeId, NodeId, T)]) -> Result<Self> {
        let mut rows: Vec<Vec<(NodeId, T)>> = vec![Vec::new(); node_count];
        let mut self_loops = vec![T::zero(); node_count];
        for (edge, &(u, v, w)) in edges.iter().enumerate() {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if !(w.is_finite() && w > T::zero()) {
                return Err(Error::InvalidWeight { edge });
            }
            if u == v {
                self_loops[u] += w;
            } else {
                rows[u].push((v, w));
                rows[v].push((u, w));
            }
        }
        let mut offsets = vec![0];
        let mut neighbors = Vec::new();
        for mut row in rows {
            row.sort_by_key(|&(n, _)| n);
            for (n, w) in row {
                match neighbors[*offsets.last().unwrap()..].last_mut() {
                    Some((prev, acc)) if *prev == n => *acc += w,
                    _ => neighbors.push((n, w)),
                }
            }
            offsets.push(neighbors.len());
        }
        Ok(Self::from_rows(offsets, neighbors, self_loops))
    }

    /// Rows must be sorted, symmetric and free of self entries.
    pub(crate) fn from_rows(offsets: Vec<usize>, neighbors: Vec<(NodeId, T)>, self_loops: Vec<T>) -> Self {
        let n = self_loops.len();
        debug_assert_eq!(offsets.len(), n + 1);
        let mut degrees = Vec::with_capacity(n);
        let mut twice_total = T::zero();
        for v in 0..n {
            let mut k = self_loops[v] + self_loops[v];
            for &(_, w) in &neighbors[offsets[v]..offsets[v + 1]] {
                k += w;
            }
            twice_total += k;
            degrees.push(k);
        }
        Self {
            edge_count: neighbors.len() / 2,
            offsets,
            neighbors,
            self_loops,
            degrees,
            total: twice_total / (T::one() + T::one()),
        }
    }

    pub fn node_count(&self) -> usize {
        self.self_loops.len()
    }

    /// Number of undirected non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, T)] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn self_loop(&self, v: NodeId) -> T {
        self.self_loops[v]
    }

    /// `k_v`, counting a self-loop twice.
    pub fn weighted_degree(&self, v: NodeId) -> T {
        self.degrees[v]
    }

    /// `m`: sum of all edge weights, self-loops included once.
    pub fn total_weight(&self) -> T {
        self.total
    }

    /// Non-loop edges as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, T)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        let neighbors = self.neighbors.iter().map(|&(n, w)| (n, w * factor)).collect();
        let self_loops = self.self_loops.iter().map(|&w| w * factor).collect();
        Self::from_rows(self.offsets.clone(), neighbors, self_loops)
    }
}

/// How a proximity value becomes a modularity edge weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WeightTransform {
    /// `w = r + 1/|E|`.
    #[default]
    Direct,
    /// `w = 1 / (r + 1/|E|)`.
    Inverse,
}

impl FromStr for WeightTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "inverse" => Ok(Self::Inverse),
            other => Err(Error::InvalidParameter(format!(
                "unknown weight transform `{other}` (expected direct or inverse)"
            ))),
        }
    }
}

impl WeightTransform {
    pub fn apply<T: Scalar>(self, proximity: T, floor: T) -> T {
        match self {
            Self::Direct => proximity + floor,
            Self::Inverse => T::one() / (proximity + floor),
        }
    }
}

/// Proximity of the adjacent pair `(i, j)`.
pub fn proximity<T: Scalar>(g: &Graph, c: &CentralityMap<T>, i: NodeId, j: NodeId) -> Result<T> {
    g.check_node(i)?;
    g.check_node(j)?;
    if g.find_edge(i, j).is_none() {
        return Err(Error::NotAnEdge(i, j));
    }
    if c.edge_count() != g.edge_count() {
        return Err(Error::WeightCountMismatch {
            expected: g.edge_count(),
            found: c.edge_count(),
        });
    }
    Ok(pair_proximity(g, c.weights(), i, j))
}

/// Sorted merge of the two adjacency rows; cost `deg(i) + deg(j)`.
fn pair_proximity<T: Scalar>(g: &Graph, l: &[T], i: NodeId, j: NodeId) -> T {
    let a = g.neighbors(i);
    let b = g.neighbors(j);
    let (mut x, mut y) = (0, 0);
    let mut sum = T::zero();
    let mut term = |k: NodeId, lik: T, lkj: T| {
        if k != i && k != j {
            let d = lik - lkj;
            sum += d * d / T::from_count(g.neighbors(k).len());
        }
    };
    while x < a.len() || y < b.len() {
        match (a.get(x), b.get(y)) {
            (Some(p), Some(q)) if p.node == q.node => {
                term(p.node, l[p.edge], l[q.edge]);
                x += 1;
                y += 1;
            }
            (Some(p), Some(q)) if p.node < q.node => {
                term(p.node, l[p.edge], T::zero());
                x += 1;
            }
            (Some(p), None) => {
                term(p.node, l[p.edge], T::zero());
                x += 1;
            }
            (_, Some(q)) => {
                term(q.node, T::zero(), l[q.edge]);
                y += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    sum.sqrt()
}

/// `r_ij` for every edge, indexed by edge id.
pub fn edge_proximities<T: Scalar>(g: &Graph, c: &CentralityMap<T>) -> Result<Vec<T>> {
    if c.edge_count() != g.edge_count() {
        return Err(Error::WeightCountMismatch {
            expected: g.edge_count(),
            found: c.edge_count(),
        });
    }
    Ok(g.edges().map(|(i, j)| pair_proximity(g, c.weights(), i, j)).collect())
}

/// Weighted graph with `w_ij = r_ij + 1/|E|`.
pub fn build_weighted_graph<T: Scalar>(g: &Graph, c: &CentralityMap<T>) -> Result<WeightedGraph<T>> {
    build_weighted_graph_with(g, c, WeightTransform::Direct)
}

pub fn build_weighted_graph_with<T: Scalar>(
    g: &Graph,
    c: &CentralityMap<T>,
    transform: WeightTransform,
) -> Result<WeightedGraph<T>> {
    let r = edge_proximities(g, c)?;
    weighted_from_proximities(g, &r, transform)
}

pub fn weighted_from_proximities<T: Scalar>(
    g: &Graph,
    proximities: &[T],
    transform: WeightTransform,
) -> Result<WeightedGraph<T>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let floor = T::one() / T::from_count(g.edge_count());
    let weights: Vec<T> = proximities.iter().map(|&r| transform.apply(r, floor)).collect();
    WeightedGraph::from_graph(g, &weights)
}

/// Writes `u v proximity` lines in edge id order.
pub fn write_proximities<T: Scalar, W: Write>(g: &Graph, ids: &NodeIdMap, proximities: &[T], mut out: W) -> Result<()> {
    for ((u, v), r) in g.edges().zip(proximities) {
        writeln!(out, "{} {} {}", ids.label(u), ids.label(v), r)?;
    }
    Ok(())
}
