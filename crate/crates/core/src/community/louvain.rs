//! Two-phase modularity optimization: greedy local moves, then aggregation
//! of communities into a meta-graph, repeated until the level-over-level
//! modularity gain drops below `ε`.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::partition::{dense_labels, modularity, Partition};
use crate::error::{Error, Result};
use crate::proximity::WeightedGraph;
use crate::scalar::Scalar;

/// Default level-over-level modularity gain below which the outer loop stops.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// Sweeps the nodes in a fresh random order, moving each to the neighboring
/// community with the largest positive gain (lowest id on ties), until a
/// sweep moves nothing. Returns the compacted partition and whether any node
/// moved.
pub fn louvain_phase1<T: Scalar, R: Rng + ?Sized>(
    wg: &WeightedGraph<T>,
    mut p: Partition<T>,
    rng: &mut R,
) -> (Partition<T>, bool) {
    let n = wg.node_count();
    let m = p.total_weight();
    if n == 0 || m <= T::zero() {
        return (p, false);
    }
    let two_m_sq = (m + m) * m;
    // Rounding noise in the gains must not read as an improvement.
    let threshold = T::epsilon() * T::from_count(8);

    let mut order: Vec<usize> = (0..n).collect();
    let mut links = vec![T::zero(); p.capacity()];
    let mut seen = vec![false; p.capacity()];
    let mut touched: Vec<usize> = Vec::new();
    let mut improved = false;

    loop {
        order.shuffle(rng);
        let mut moved = false;
        for &i in &order {
            let own = p.assignment[i];
            let k_i = wg.weighted_degree(i);
            let loop_i = wg.self_loop(i);

            seen[own] = true;
            touched.push(own);
            for &(j, w) in wg.neighbors(i) {
                let c = p.assignment[j];
                if !seen[c] {
                    seen[c] = true;
                    touched.push(c);
                }
                links[c] += w;
            }

            p.detach(own, k_i, links[own] + loop_i);
            let gain = |c: usize, p: &Partition<T>| links[c] / m - p.total[c] * k_i / two_m_sq;
            let stay = gain(own, &p);

            touched.sort_unstable();
            let mut best = own;
            let mut best_gain = T::neg_infinity();
            for &c in &touched {
                if c == own {
                    continue;
                }
                let g = gain(c, &p);
                if g > best_gain {
                    best_gain = g;
                    best = c;
                }
            }
            let target = if best != own && best_gain - stay > threshold {
                moved = true;
                best
            } else {
                own
            };
            p.attach(target, k_i, links[target] + loop_i);
            p.assignment[i] = target;

            for &c in &touched {
                links[c] = T::zero();
                seen[c] = false;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        improved = true;
    }
    p.compact();
    (p, improved)
}

/// Meta-graph with one node per community. Inter-community weights are
/// summed into meta-edges; intra-community weight (member self-loops plus
/// internal edges, each once) becomes the meta-node's self-loop. Total
/// weight and the modularity of every coarsening of `p` are preserved.
///
/// Meta-node ids are the dense labels of `p` in order of first appearance.
pub fn aggregate<T: Scalar>(wg: &WeightedGraph<T>, p: &Partition<T>) -> WeightedGraph<T> {
    let (labels, count) = dense_labels(p.assignment());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(v);
    }

    let two = T::one() + T::one();
    let mut offsets = Vec::with_capacity(count + 1);
    offsets.push(0);
    let mut neighbors = Vec::new();
    let mut self_loops = Vec::with_capacity(count);
    let mut links = vec![T::zero(); count];
    let mut seen = vec![false; count];
    let mut touched = Vec::new();
    for (c, nodes) in members.iter().enumerate() {
        let mut loops = T::zero();
        let mut twice_inner = T::zero();
        for &v in nodes {
            loops += wg.self_loop(v);
            for &(u, w) in wg.neighbors(v) {
                let d = labels[u];
                if d == c {
                    twice_inner += w;
                } else {
                    if !seen[d] {
                        seen[d] = true;
                        touched.push(d);
                    }
                    links[d] += w;
                }
            }
        }
        self_loops.push(loops + twice_inner / two);
        touched.sort_unstable();
        for &d in &touched {
            neighbors.push((d, links[d]));
            links[d] = T::zero();
            seen[d] = false;
        }
        touched.clear();
        offsets.push(neighbors.len());
    }
    WeightedGraph::from_rows(offsets, neighbors, self_loops)
}

/// One level of the hierarchy: the graph the level ran on, the community of
/// each of its nodes, and the resulting modularity.
#[derive(Debug, Clone, PartialEq)]
pub struct Level<T = f64> {
    pub graph: WeightedGraph<T>,
    pub assignment: Vec<usize>,
    pub modularity: T,
}

impl<T: Scalar> Level<T> {
    pub fn community_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&c| c + 1)
    }
}

/// Sequence of levels produced by repeated local moves and aggregation.
/// Level `l + 1` runs on the meta-graph of level `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram<T = f64> {
    levels: Vec<Level<T>>,
}

impl<T: Scalar> Dendrogram<T> {
    pub fn levels(&self) -> &[Level<T>] {
        &self.levels
    }

    /// Modularity of the last level.
    pub fn modularity(&self) -> T {
        self.levels.last().map_or(T::zero(), |l| l.modularity)
    }

    /// Community of every original node after composing all levels.
    pub fn flat_assignment(&self) -> Vec<usize> {
        let Some(first) = self.levels.first() else {
            return Vec::new();
        };
        let mut flat: Vec<usize> = (0..first.graph.node_count()).collect();
        for level in &self.levels {
            for c in flat.iter_mut() {
                *c = level.assignment[*c];
            }
        }
        flat
    }

    pub fn community_count(&self) -> usize {
        self.levels.last().map_or(0, |l| l.community_count())
    }

    /// One `level node_count edge_count Q` line per level.
    pub fn write_summary<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, level) in self.levels.iter().enumerate() {
            writeln!(
                out,
                "{} {} {} {}",
                i,
                level.graph.node_count(),
                level.graph.edge_count(),
                level.modularity
            )?;
        }
        Ok(())
    }
}

pub(crate) fn check_epsilon<T: Scalar>(epsilon: T) -> Result<()> {
    if epsilon.is_finite() && epsilon > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )))
    }
}

/// Random stream for the partitioning stage, independent of the walk stream
/// derived from the same seed.
pub(crate) fn partition_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    rng
}

/// Full multilevel optimization of `wg` from singletons.
pub fn louvain<T: Scalar>(wg: &WeightedGraph<T>, epsilon: T, seed: u64) -> Result<Dendrogram<T>> {
    louvain_with_rng(wg, epsilon, &mut partition_rng(seed))
}

pub fn louvain_with_rng<T: Scalar, R: Rng + ?Sized>(
    wg: &WeightedGraph<T>,
    epsilon: T,
    rng: &mut R,
) -> Result<Dendrogram<T>> {
    check_epsilon(epsilon)?;
    let mut levels: Vec<Level<T>> = Vec::new();
    let mut current = wg.clone();
    loop {
        let (p, improved) = louvain_phase1(&current, Partition::singletons(&current), rng);
        let q = modularity(&current, &p)?;
        if let Some(prev) = levels.last() {
            if !improved || q - prev.modularity < epsilon {
                break;
            }
        }
        let next = aggregate(&current, &p);
        levels.push(Level {
            graph: std::mem::replace(&mut current, next),
            assignment: p.into_assignment(),
            modularity: q,
        });
        if !improved {
            break;
        }
    }
    Ok(Dendrogram { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::partition::modularity_of;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedGraph<f64> {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        WeightedGraph::from_weighted_edges(n, &e).unwrap()
    }

    const TWO_TRIANGLES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    const BRIDGED: [(usize, usize); 7] = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)];

    #[test]
    fn phase1_splits_disjoint_triangles() {
        let wg = unit(6, &TWO_TRIANGLES);
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, improved) = louvain_phase1(&wg, Partition::singletons(&wg), &mut rng);
            assert!(improved);
            let a = p.assignment();
            assert!(a[0] == a[1] && a[1] == a[2] && a[3] == a[4] && a[4] == a[5] && a[0] != a[3]);
            assert!((modularity(&wg, &p).unwrap() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn phase1_merges_single_edge() {
        let wg = unit(2, &[(0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let singles = Partition::singletons(&wg);
        assert!((modularity(&wg, &singles).unwrap() + 0.5).abs() < 1e-15);
        let (p, improved) = louvain_phase1(&wg, singles, &mut rng);
        assert!(improved);
        assert_eq!(p.assignment(), &[0, 0]);
        assert!(modularity(&wg, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn phase1_fixpoint_is_left_alone() {
        let wg = unit(6, &TWO_TRIANGLES);
        let p = Partition::from_assignment(&wg, &[0, 0, 0, 1, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (q, improved) = louvain_phase1(&wg, p.clone(), &mut rng);
        assert!(!improved);
        assert_eq!(q.assignment(), p.assignment());
    }

    #[test]
    fn singleton_aggregation_is_identity() {
        let wg = unit(6, &BRIDGED);
        let meta = aggregate(&wg, &Partition::singletons(&wg));
        assert_eq!(meta, wg);
    }

    #[test]
    fn triangle_aggregation() {
        let w = 0.75;
        let e: Vec<_> = BRIDGED.iter().map(|&(u, v)| (u, v, w)).collect();
        let wg = WeightedGraph::from_weighted_edges(6, &e).unwrap();
        let p = Partition::from_assignment(&wg, &[0, 0, 0, 1, 1, 1]).unwrap();
        let meta = aggregate(&wg, &p);
        assert_eq!(meta.node_count(), 2);
        assert_eq!(meta.self_loop(0), 3.0 * w);
        assert_eq!(meta.self_loop(1), 3.0 * w);
        assert_eq!(meta.neighbors(0), &[(1, w)]);
        assert_eq!(meta.total_weight(), wg.total_weight());
        let q0: f64 = modularity(&wg, &p).unwrap();
        let q1 = modularity_of(&meta, &[0, 1]).unwrap();
        assert!((q0 - q1).abs() < 1e-15);
    }

    #[test]
    fn dendrogram_composes_levels() {
        // Four triangles in a ring: the first level finds the triangles.
        let mut edges = Vec::new();
        for t in 0..4 {
            let b = 3 * t;
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
            edges.push((b + 2, (b + 3) % 12));
        }
        let wg = unit(12, &edges);
        let d = louvain(&wg, DEFAULT_EPSILON, 5).unwrap();
        let flat = d.flat_assignment();
        assert_eq!(flat.len(), 12);
        let q = modularity_of(&wg, &flat).unwrap();
        assert!((q - d.modularity()).abs() < 1e-12);
        for pair in d.levels().windows(2) {
            assert!(pair[1].modularity - pair[0].modularity >= DEFAULT_EPSILON);
        }
        let mut out = Vec::new();
        d.write_summary(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("0 12 16 "));
        assert_eq!(text.lines().count(), d.levels().len());
    }

    #[test]
    fn epsilon_must_be_positive() {
        let wg = unit(2, &[(0, 1)]);
        assert!(louvain(&wg, 0.0, 1).is_err());
        assert!(louvain(&wg, f64::NAN, 1).is_err());
    }
}
