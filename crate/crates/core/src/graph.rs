//! Simple connected undirected graphs on vertices `1..=n`, with the path and
//! chord primitives shared by every other module.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Default vertex cap for exhaustive longest-path search.
pub const DEFAULT_LONGEST_PATH_CAP: usize = 14;

/// Absolute ceiling for longest-path search; the subset table has `2^n` entries.
const LONGEST_PATH_HARD_LIMIT: usize = 26;

/// A finite, simple, nonempty, connected undirected graph.
///
/// Vertices are the integers `1..=n`. Construction validates the input and
/// precomputes all-pairs distances; the graph is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    adj_matrix: Vec<bool>,
    dist: DistanceMatrix,
}

/// Symmetric `n x n` matrix of breadth-first distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<usize>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n).map(<[usize]>::to_vec).collect()
    }
}

/// Builds a graph from a 1-indexed edge list. Duplicate edges (in either
/// orientation) are merged.
pub fn build_graph(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut adj_matrix = vec![false; n * n];
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(u, v) in edge_list {
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let (a, b) = (u.min(v), u.max(v));
        let slot = (a - 1) * n + (b - 1);
        if !adj_matrix[slot] {
            adj_matrix[slot] = true;
            adj_matrix[(b - 1) * n + (a - 1)] = true;
            edges.push((a, b));
        }
    }
    edges.sort_unstable();

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a - 1].push(b);
        adj[b - 1].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut entries = vec![usize::MAX; n * n];
    for s in 1..=n {
        bfs_into(&adj, s, &mut entries[(s - 1) * n..s * n]);
    }
    if let Some(k) = entries[..n].iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected(k + 1));
    }

    Ok(Graph {
        n,
        edges,
        adj,
        adj_matrix,
        dist: DistanceMatrix { n, entries },
    })
}

fn bfs_into(adj: &[Vec<usize>], source: usize, row: &mut [usize]) {
    row[source - 1] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = row[x - 1];
        for &y in &adj[x - 1] {
            if row[y - 1] == usize::MAX {
                row[y - 1] = dx + 1;
                queue.push_back(y);
            }
        }
    }
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj_matrix[(u - 1) * self.n + (v - 1)]
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist.get(u, v)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Checked construction of a vertex set for this graph.
    pub fn vertex_set(&self, vertices: &[usize]) -> Result<VertexSet> {
        let mut s = VertexSet::empty(self.n);
        for &v in vertices {
            self.check_vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Rejects sets built for a different vertex count.
    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::VertexOutOfRange {
                vertex: s.universe(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// Validates `p` against the path invariants in this graph.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        let vs = p.vertices();
        if vs.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "a path needs two distinct endpoints, got {vs:?}"
            )));
        }
        let mut seen = VertexSet::empty(self.n);
        for &v in vs {
            if v == 0 || v > self.n {
                return Err(Error::InvalidPath(format!("vertex {v} not in graph")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidPath(format!("vertex {v} repeated")));
            }
        }
        if let Some(w) = vs.windows(2).find(|w| !self.adjacent(w[0], w[1])) {
            return Err(Error::InvalidPath(format!(
                "{} and {} are not adjacent",
                w[0], w[1]
            )));
        }
        Ok(())
    }

    /// Path graph `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        build_graph(n, &edges).expect("path graph is valid")
    }

    /// Cycle `1 - 2 - ... - n - 1`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        build_graph(n, &edges).expect("cycle graph is valid")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        build_graph(n, &edges).expect("complete graph is valid")
    }

    /// Star with center 1 and leaves `2..=leaves+1`.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (2..=leaves + 1).map(|j| (1, j)).collect();
        build_graph(leaves + 1, &edges).expect("star graph is valid")
    }
}

/// Breadth-first distances between every pair of vertices.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    g.dist.clone()
}

/// A simple path given by its vertex sequence; `len()` counts edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() < 2
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Path {
    fn from(v: Vec<usize>) -> Self {
        Path(v)
    }
}

/// A chord between two non-consecutive positions of a path.
///
/// Positions are 1-based indices into the vertex sequence, `first < second`;
/// the chord's length is `second - first`, always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub first: usize,
    pub second: usize,
}

impl Chord {
    pub fn length(&self) -> usize {
        self.second - self.first
    }
}

/// All chords of `p`, sorted by (lower position, length).
pub fn path_chords(g: &Graph, p: &Path) -> Result<Vec<Chord>> {
    g.check_path(p)?;
    let vs = p.vertices();
    let mut chords = Vec::new();
    for i in 0..vs.len() {
        for j in i + 2..vs.len() {
            if g.adjacent(vs[i], vs[j]) {
                chords.push(Chord {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    Ok(chords)
}

/// Length of a longest simple `i`-`j` path, using the default vertex cap.
pub fn longest_path_length(g: &Graph, i: usize, j: usize) -> Result<usize> {
    longest_path_length_capped(g, i, j, DEFAULT_LONGEST_PATH_CAP)
}

pub fn longest_path_length_capped(g: &Graph, i: usize, j: usize, cap: usize) -> Result<usize> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    check_longest_cap(g, cap)?;
    Ok(longest_from(g, i)[j - 1])
}

/// Longest simple path lengths for every ordered pair, row-major; zero diagonal.
pub fn all_pairs_longest(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    check_longest_cap(g, cap)?;
    let mut out = Vec::with_capacity(g.n * g.n);
    for s in 1..=g.n {
        out.extend(longest_from(g, s));
    }
    Ok(out)
}

fn check_longest_cap(g: &Graph, cap: usize) -> Result<()> {
    let cap = cap.min(LONGEST_PATH_HARD_LIMIT);
    if g.n > cap {
        return Err(Error::SizeLimitExceeded {
            what: "longest path search",
            n: g.n,
            cap,
        });
    }
    Ok(())
}

/// Exhaustive search over vertex subsets: `ends[mask]` holds every vertex at
/// which some simple path from `source` covering exactly `mask` can stop.
fn longest_from(g: &Graph, source: usize) -> Vec<usize> {
    let n = g.n;
    let nbr_masks: Vec<u32> = (1..=n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << (w - 1)))
        .collect();
    let mut ends = vec![0u32; 1 << n];
    let start = 1u32 << (source - 1);
    ends[start as usize] = start;
    let mut best = vec![0usize; n];
    for mask in 0..ends.len() {
        let mut e = ends[mask];
        if e == 0 {
            continue;
        }
        let len = mask.count_ones() as usize - 1;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            best[v] = best[v].max(len);
            let mut fresh = nbr_masks[v] & !(mask as u32);
            while fresh != 0 {
                let w = fresh.trailing_zeros();
                fresh &= fresh - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    best
}
