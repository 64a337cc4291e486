//! Immutable undirected simple graph in compressed adjacency form.
//!
//! Nodes are dense ids in `[0, node_count)`. Every undirected edge has a
//! single id; `edge_endpoints[e] = (u, v)` with `u < v`, and `e` appears once
//! in the adjacency row of `u` and once in the row of `v`. Rows are sorted by
//! neighbor id.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// One entry of an adjacency row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Neighbor {
    pub node: NodeId,
    pub edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
    endpoints: Vec<(NodeId, NodeId)>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Self-loops and repeated pairs (in
    /// either orientation) are skipped; edge ids follow first occurrence.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Ok(Self::build(node_count, edges)?.0)
    }

    /// Like [`Graph::from_edges`] but also reports how many input records were dropped.
    pub(crate) fn build<I>(node_count: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut seen = HashSet::new();
        let mut endpoints = Vec::new();
        let mut dropped = 0;
        for (a, b) in edges {
            for node in [a, b] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if a == b {
                dropped += 1;
                continue;
            }
            let pair = (a.min(b), a.max(b));
            if seen.insert(pair) {
                endpoints.push(pair);
            } else {
                dropped += 1;
            }
        }

        let mut degree = vec![0usize; node_count];
        for &(u, v) in &endpoints {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut adjacency = vec![Neighbor { node: 0, edge: 0 }; 2 * endpoints.len()];
        for (edge, &(u, v)) in endpoints.iter().enumerate() {
            adjacency[fill[u]] = Neighbor { node: v, edge };
            fill[u] += 1;
            adjacency[fill[v]] = Neighbor { node: u, edge };
            fill[v] += 1;
        }
        for v in 0..node_count {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        Ok((
            Self {
                offsets,
                adjacency,
                endpoints,
            },
            dropped,
        ))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Adjacency row of `v`, sorted by neighbor id. Panics if `v` is out of range.
    pub fn neighbors(&self, v: NodeId) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Endpoints `(u, v)` of edge `e`, with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.endpoints[e]
    }

    /// All edges in id order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (NodeId, NodeId)> + '_ {
        self.endpoints.iter().copied()
    }

    /// Id of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        if u >= self.node_count() || v >= self.node_count() {
            return None;
        }
        let row = self.neighbors(u);
        row.binary_search_by_key(&v, |n| n.node).ok().map(|i| row[i].edge)
    }

    /// Endpoint of `e` opposite to `v`.
    pub fn opposite(&self, e: EdgeId, v: NodeId) -> NodeId {
        let (a, b) = self.endpoints[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        }
    }

    /// Writes one `label_u label_v` line per edge, in edge id order.
    pub fn write_edge_list<W: Write>(&self, ids: &NodeIdMap, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", ids.label(u), ids.label(v))?;
        }
        Ok(())
    }
}

/// Bijection between the labels found in an input file and dense node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeIdMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeIdMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Result of reading an edge-list file.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub ids: NodeIdMap,
    /// Data records skipped because they were self-loops or repeated pairs.
    pub dropped: usize,
    /// Number of data (non-comment, non-blank) lines read.
    pub records: usize,
}

/// Reads a SNAP-style edge list: `#` comment lines, blank lines ignored,
/// otherwise exactly two whitespace-separated labels per line.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<LoadedGraph> {
    let mut ids = NodeIdMap::new();
    let mut pairs = Vec::new();
    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => {
                let a = ids.intern(a);
                let b = ids.intern(b);
                pairs.push((a, b));
            }
            _ => {
                return Err(Error::Parse {
                    line: index + 1,
                    message: format!(
                        "expected two node labels, found {} tokens",
                        trimmed.split_whitespace().count()
                    ),
                })
            }
        }
    }
    let records = pairs.len();
    let (graph, dropped) = Graph::build(ids.len(), pairs)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(LoadedGraph {
        graph,
        ids,
        dropped,
        records,
    })
}
