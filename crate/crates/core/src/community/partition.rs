use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::proximity::WeightedGraph;
use crate::scalar::Scalar;

/// Node-to-community assignment with the per-community sums the local-move
/// gain needs.
///
/// There is one community slot per node, so a node can always be moved into
/// an empty slot. `internal[c]` is `Σ_C`, the weight of edges with both ends
/// in `c` (self-loops once); `total[c]` is `Σ_tot`, the weighted degree of
/// the members of `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T = f64> {
    pub(crate) assignment: Vec<usize>,
    pub(crate) internal: Vec<T>,
    pub(crate) total: Vec<T>,
    pub(crate) sizes: Vec<usize>,
    pub(crate) m: T,
}

impl<T: Scalar> Partition<T> {
    /// Every node alone.
    pub fn singletons(wg: &WeightedGraph<T>) -> Self {
        let n = wg.node_count();
        Self {
            assignment: (0..n).collect(),
            internal: (0..n).map(|v| wg.self_loop(v)).collect(),
            total: (0..n).map(|v| wg.weighted_degree(v)).collect(),
            sizes: vec![1; n],
            m: wg.total_weight(),
        }
    }

    /// Builds from arbitrary labels. Labels are renumbered densely in order of
    /// first appearance.
    pub fn from_assignment(wg: &WeightedGraph<T>, labels: &[usize]) -> Result<Self> {
        let n = wg.node_count();
        if labels.len() != n {
            return Err(Error::PartitionMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        let assignment = dense_labels(labels).0;
        let mut p = Self {
            assignment,
            internal: vec![T::zero(); n],
            total: vec![T::zero(); n],
            sizes: vec![0; n],
            m: wg.total_weight(),
        };
        p.recompute(wg);
        Ok(p)
    }

    fn recompute(&mut self, wg: &WeightedGraph<T>) {
        self.internal.iter_mut().for_each(|x| *x = T::zero());
        self.total.iter_mut().for_each(|x| *x = T::zero());
        self.sizes.iter_mut().for_each(|x| *x = 0);
        let mut twice_inner = vec![T::zero(); self.internal.len()];
        for v in 0..wg.node_count() {
            let c = self.assignment[v];
            self.sizes[c] += 1;
            self.total[c] += wg.weighted_degree(v);
            self.internal[c] += wg.self_loop(v);
            for &(u, w) in wg.neighbors(v) {
                if self.assignment[u] == c {
                    twice_inner[c] += w;
                }
            }
        }
        let two = T::one() + T::one();
        for (x, t) in self.internal.iter_mut().zip(twice_inner) {
            *x += t / two;
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assignment
    }

    /// Number of community slots (equal to the node count).
    pub fn capacity(&self) -> usize {
        self.sizes.len()
    }

    /// Number of non-empty communities.
    pub fn community_count(&self) -> usize {
        self.sizes.iter().filter(|&&s| s > 0).count()
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    /// `Σ_C`.
    pub fn internal_weight(&self, c: usize) -> T {
        self.internal[c]
    }

    /// `Σ_tot`.
    pub fn total_degree(&self, c: usize) -> T {
        self.total[c]
    }

    /// `m` of the graph the partition was built on.
    pub fn total_weight(&self) -> T {
        self.m
    }

    fn check_community(&self, c: usize) -> Result<()> {
        if c < self.capacity() {
            Ok(())
        } else {
            Err(Error::UnknownCommunity {
                community: c,
                capacity: self.capacity(),
            })
        }
    }

    /// `k_i^C`: weight of the links from `i` to members of `c`, self-loop excluded.
    pub fn links_to(&self, wg: &WeightedGraph<T>, i: NodeId, c: usize) -> T {
        wg.neighbors(i)
            .iter()
            .filter(|&&(j, _)| self.assignment[j] == c)
            .map(|&(_, w)| w)
            .sum()
    }

    /// Change in modularity caused by moving `i` into `target`.
    pub fn move_gain(&self, wg: &WeightedGraph<T>, i: NodeId, target: usize) -> Result<T> {
        self.check_community(target)?;
        let own = self.assignment[i];
        if own == target {
            return Ok(T::zero());
        }
        let k_i = wg.weighted_degree(i);
        let into_target = modularity_gain(self, i, target, k_i, self.links_to(wg, i, target))?;
        let back_home = modularity_gain(self, i, own, k_i, self.links_to(wg, i, own))?;
        Ok(into_target - back_home)
    }

    /// Moves `i` into `target`, keeping the aggregates current.
    pub fn move_node(&mut self, wg: &WeightedGraph<T>, i: NodeId, target: usize) -> Result<()> {
        self.check_community(target)?;
        let own = self.assignment[i];
        if own == target {
            return Ok(());
        }
        let k_i = wg.weighted_degree(i);
        let loop_i = wg.self_loop(i);
        let to_own = self.links_to(wg, i, own);
        let to_target = self.links_to(wg, i, target);
        self.detach(own, k_i, to_own + loop_i);
        self.attach(target, k_i, to_target + loop_i);
        self.assignment[i] = target;
        Ok(())
    }

    /// Moves `i` into an empty slot and returns it.
    pub fn isolate(&mut self, wg: &WeightedGraph<T>, i: NodeId) -> usize {
        if self.sizes[self.assignment[i]] == 1 {
            return self.assignment[i];
        }
        let empty = self
            .sizes
            .iter()
            .position(|&s| s == 0)
            .expect("n nodes in fewer than n communities leave an empty slot");
        self.move_node(wg, i, empty).expect("slot in range");
        empty
    }

    pub(crate) fn detach(&mut self, c: usize, k_i: T, inner: T) {
        self.internal[c] -= inner;
        self.total[c] -= k_i;
        self.sizes[c] -= 1;
    }

    pub(crate) fn attach(&mut self, c: usize, k_i: T, inner: T) {
        self.internal[c] += inner;
        self.total[c] += k_i;
        self.sizes[c] += 1;
    }

    /// Renumbers the non-empty communities densely in order of first appearance.
    pub fn compact(&mut self) {
        let (labels, count) = dense_labels(&self.assignment);
        let mut internal = vec![T::zero(); self.capacity()];
        let mut total = vec![T::zero(); self.capacity()];
        let mut sizes = vec![0; self.capacity()];
        for (&old, &new) in self.assignment.iter().zip(&labels) {
            internal[new] = self.internal[old];
            total[new] = self.total[old];
            sizes[new] = self.sizes[old];
        }
        debug_assert_eq!(sizes.iter().filter(|&&s| s > 0).count(), count);
        self.assignment = labels;
        self.internal = internal;
        self.total = total;
        self.sizes = sizes;
    }
}

/// Dense relabeling in first-seen order; returns the labels and their count.
pub(crate) fn dense_labels(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = std::collections::HashMap::new();
    let dense = labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect();
    (dense, map.len())
}

/// `Q = Σ_s [ W_s/m − (D_s/2m)² ]` computed from scratch, with `W_s` the
/// intra-community weight and `D_s` the summed weighted degree of community `s`.
pub fn modularity<T: Scalar>(wg: &WeightedGraph<T>, p: &Partition<T>) -> Result<T> {
    modularity_of(wg, p.assignment())
}

/// [`modularity`] for a bare label vector.
pub fn modularity_of<T: Scalar>(wg: &WeightedGraph<T>, labels: &[usize]) -> Result<T> {
    let n = wg.node_count();
    if labels.len() != n {
        return Err(Error::PartitionMismatch {
            expected: n,
            found: labels.len(),
        });
    }
    let m = wg.total_weight();
    if m <= T::zero() {
        return Ok(T::zero());
    }
    let (labels, count) = dense_labels(labels);
    let mut twice_inner = vec![T::zero(); count];
    let mut degree = vec![T::zero(); count];
    for v in 0..n {
        let c = labels[v];
        degree[c] += wg.weighted_degree(v);
        twice_inner[c] += wg.self_loop(v) + wg.self_loop(v);
        for &(u, w) in wg.neighbors(v) {
            if labels[u] == c {
                twice_inner[c] += w;
            }
        }
    }
    let two_m = m + m;
    Ok(twice_inner
        .iter()
        .zip(&degree)
        .map(|(&w2, &d)| w2 / two_m - (d / two_m) * (d / two_m))
        .sum())
}

/// Gain of inserting the detached node `i` into `target`:
/// `ΔQ = k_i^C / m − Σ_tot · k_i / 2m²`, where `Σ_tot` excludes `i` itself.
///
/// `k_i` is the weighted degree of `i`; `k_i_target` its link weight into
/// `target`. When `i` currently sits alone, this is exactly the change in
/// [`modularity`] caused by the move.
pub fn modularity_gain<T: Scalar>(p: &Partition<T>, i: NodeId, target: usize, k_i: T, k_i_target: T) -> Result<T> {
    p.check_community(target)?;
    let m = p.m;
    if m <= T::zero() {
        return Ok(T::zero());
    }
    let mut tot = p.total[target];
    if p.assignment.get(i) == Some(&target) {
        tot -= k_i;
    }
    Ok(k_i_target / m - tot * k_i / ((m + m) * m))
}
