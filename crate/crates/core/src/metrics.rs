//! Partition quality measures: normalized mutual information against a
//! reference labeling, and coverage.

use std::collections::HashMap;
use std::io::BufRead;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::NodeIdMap;
use crate::proximity::WeightedGraph;
use crate::scalar::Scalar;

/// A community label for every node, indexed by internal node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPartition {
    labels: Vec<usize>,
}

impl LabeledPartition {
    pub fn new(labels: Vec<usize>) -> Self {
        Self { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl From<Vec<usize>> for LabeledPartition {
    fn from(labels: Vec<usize>) -> Self {
        Self::new(labels)
    }
}

/// Reads `node_label community_label` lines (`#` comments allowed) and maps
/// them onto the ids of a loaded graph. Every graph node must appear exactly
/// once and no other node may appear.
pub fn load_ground_truth<R: BufRead>(source: R, ids: &NodeIdMap) -> Result<LabeledPartition> {
    let mut labels: Vec<Option<usize>> = vec![None; ids.len()];
    let mut communities: HashMap<String, usize> = HashMap::new();
    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let [node, community] = tokens[..] else {
            return Err(Error::Parse {
                line: index + 1,
                message: format!("expected `node community`, found {} tokens", tokens.len()),
            });
        };
        let Some(id) = ids.id(node) else {
            return Err(Error::NodeSetMismatch(format!(
                "ground truth node `{node}` is not in the graph"
            )));
        };
        if labels[id].is_some() {
            return Err(Error::Parse {
                line: index + 1,
                message: format!("node `{node}` listed twice"),
            });
        }
        let next = communities.len();
        labels[id] = Some(*communities.entry(community.to_owned()).or_insert(next));
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(id, l)| {
            l.ok_or_else(|| Error::NodeSetMismatch(format!("graph node `{}` has no ground truth label", ids.label(id))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LabeledPartition::new(labels))
}

/// True when `a` and `b` induce the same partition.
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *forward.entry(x).or_insert(y) == y && *backward.entry(y).or_insert(x) == x)
}

/// `NMI = 2 I(A;B) / (H(A) + H(B))` with natural logarithms.
///
/// Two single-cluster labelings score 1; if exactly one has zero entropy the
/// score is 0.
pub fn nmi(a: &LabeledPartition, b: &LabeledPartition) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::NodeSetMismatch(format!(
            "partitions cover {} and {} nodes",
            a.len(),
            b.len()
        )));
    }
    if same_partition(&a.labels, &b.labels) {
        return Ok(1.0);
    }
    let n = a.len() as f64;
    let count = |labels: &[usize]| {
        let mut c: HashMap<usize, usize> = HashMap::new();
        for &l in labels {
            *c.entry(l).or_default() += 1;
        }
        c
    };
    let entropy = |counts: &HashMap<usize, usize>| {
        let mut terms: Vec<f64> = counts
            .values()
            .map(|&k| {
                let p = k as f64 / n;
                -p * p.ln()
            })
            .collect();
        terms.sort_by(f64::total_cmp);
        terms.iter().sum::<f64>()
    };
    let ca = count(&a.labels);
    let cb = count(&b.labels);
    let h = entropy(&ca) + entropy(&cb);
    if h == 0.0 {
        return Ok(1.0);
    }

    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    for (&x, &y) in a.labels.iter().zip(&b.labels) {
        *joint.entry((x, y)).or_default() += 1;
    }
    let mut terms: Vec<f64> = joint
        .iter()
        .map(|(&(x, y), &k)| {
            let ratio = (k as f64 * n) / (ca[&x] as f64 * cb[&y] as f64);
            k as f64 / n * ratio.ln()
        })
        .collect();
    terms.sort_by(f64::total_cmp);
    let mutual: f64 = terms.iter().sum();
    Ok((2.0 * mutual / h).clamp(0.0, 1.0))
}

/// Fraction of the total weight that falls inside communities.
pub fn coverage<T: Scalar>(wg: &WeightedGraph<T>, p: &Partition<T>) -> Result<T> {
    let labels = p.assignment();
    if labels.len() != wg.node_count() {
        return Err(Error::PartitionMismatch {
            expected: wg.node_count(),
            found: labels.len(),
        });
    }
    let m = wg.total_weight();
    if m <= T::zero() {
        return Ok(T::zero());
    }
    let mut inside = T::zero();
    for v in 0..wg.node_count() {
        inside += wg.self_loop(v);
    }
    for (u, v, w) in wg.edges() {
        if labels[u] == labels[v] {
            inside += w;
        }
    }
    Ok(inside / m)
}
