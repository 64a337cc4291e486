//! Graph generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the library's modularity or centrality code.
#![allow(dead_code)]

use fkcd::Graph;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub const TWO_TRIANGLES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
/// Two triangles joined by the bridge 2-3 (edge id 3).
pub const BRIDGED_TRIANGLES: [(usize, usize); 7] = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)];
pub const BRIDGE_EDGE: usize = 3;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

/// G(n, p) graph.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// G(n, p) with at least one edge.
pub fn nonempty_gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let edges = gnp(rng, n, p);
        if !edges.is_empty() {
            return graph(n, &edges);
        }
    }
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    loop {
        let edges = gnp(rng, n, p);
        if is_connected(n, &edges) {
            return edges;
        }
    }
}

/// Every labeled connected simple graph on `n` nodes.
pub fn all_connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect::<Vec<_>>()
        })
        .filter(|edges| is_connected(n, edges))
        .collect()
}

/// Sparse random graph with exactly `m` distinct edges.
pub fn gnm<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    graph(n, &edges)
}

/// Co-authorship-style graph: authors partitioned into groups, each article
/// a clique of 2-5 authors mostly drawn from one group.
pub fn coauthorship<R: Rng>(rng: &mut R, n: usize, groups: usize, target_edges: usize) -> Graph {
    let mut group_of: Vec<usize> = (0..n).map(|v| v % groups).collect();
    group_of.shuffle(rng);
    let mut members = vec![Vec::new(); groups];
    for (v, &g) in group_of.iter().enumerate() {
        members[g].push(v);
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    while edges.len() < target_edges {
        let g = rng.random_range(0..groups);
        let size = rng.random_range(2..=5);
        let authors: Vec<usize> = (0..size)
            .map(|_| {
                if rng.random::<f64>() < 0.9 {
                    *members[g].choose(rng).unwrap()
                } else {
                    rng.random_range(0..n)
                }
            })
            .collect();
        for (i, &a) in authors.iter().enumerate() {
            for &b in &authors[i + 1..] {
                if a != b && seen.insert((a.min(b), a.max(b))) && edges.len() < target_edges {
                    edges.push((a, b));
                }
            }
        }
    }
    graph(n, &edges)
}

/// Exact κ-path edge centrality by enumerating, from every source, every
/// node-simple path with 1..=κ edges: `L(e) = Σ_s π_s(e) / π_s`.
pub fn exact_kpath_centrality(g: &Graph, kappa: usize) -> Vec<f64> {
    let mut total = vec![0.0; g.edge_count()];
    for s in 0..g.node_count() {
        let mut through = vec![0u64; g.edge_count()];
        let mut paths = 0u64;
        let mut on_path = vec![false; g.node_count()];
        let mut stack_edges = Vec::new();
        on_path[s] = true;
        extend(g, s, kappa, &mut on_path, &mut stack_edges, &mut through, &mut paths);
        if paths > 0 {
            for (t, &c) in total.iter_mut().zip(&through) {
                *t += c as f64 / paths as f64;
            }
        }
    }
    total
}

fn extend(
    g: &Graph,
    v: usize,
    remaining: usize,
    on_path: &mut [bool],
    edges: &mut Vec<usize>,
    through: &mut [u64],
    paths: &mut u64,
) {
    if remaining == 0 {
        return;
    }
    for n in g.neighbors(v) {
        if on_path[n.node] {
            continue;
        }
        on_path[n.node] = true;
        edges.push(n.edge);
        *paths += 1;
        for &e in edges.iter() {
            through[e] += 1;
        }
        extend(g, n.node, remaining - 1, on_path, edges, through, paths);
        edges.pop();
        on_path[n.node] = false;
    }
}

/// Weighted adjacency matrix; a self-loop of weight `w` sits on the diagonal as `2w`.
pub fn adjacency(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        if u == v {
            a[u][u] += 2.0 * w;
        } else {
            a[u][v] += w;
            a[v][u] += w;
        }
    }
    a
}

/// `Q = 1/2m Σ_ij (A_ij − k_i k_j / 2m) δ(c_i, c_j)` straight from the matrix.
pub fn naive_modularity(a: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = a.len();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Calls `f` with every set partition of `0..n` as a restricted growth string.
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        for c in 0..=max + 1 {
            labels.push(c);
            rec(labels, n, max.max(c), f);
            labels.pop();
        }
    }
    if n == 0 {
        f(&[]);
        return;
    }
    let mut labels = vec![0];
    rec(&mut labels, n, 0, &mut f);
}

/// Maximum modularity over all partitions of a unit-weight graph.
pub fn best_modularity(n: usize, edges: &[(usize, usize)]) -> f64 {
    let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    let a = adjacency(n, &weighted);
    let mut best = f64::NEG_INFINITY;
    for_each_set_partition(n, |labels| best = best.max(naive_modularity(&a, labels)));
    best
}

/// Ranks (0 = lowest) of `values`, ties broken by index.
pub fn ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut r = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        r[i] = rank;
    }
    r
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
