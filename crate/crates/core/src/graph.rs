//! Simple undirected graphs stored as one 64-bit adjacency row per vertex,
//! plus hop distances and connectivity tests.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order representable in short-form graph6 and in a single
/// adjacency word.
pub const MAX_ORDER: usize = 62;

/// Marker stored in a [`DistanceMatrix`] for unreachable pairs.
pub const UNREACHABLE: u8 = u8::MAX;

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Vertices reachable from `start` using only vertices in `allowed`.
#[inline]
pub(crate) fn reach(rows: &[u64], start: usize, allowed: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in Bits(frontier) {
            next |= rows[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[inline]
pub(crate) fn rows_connected(rows: &[u64]) -> bool {
    let n = rows.len();
    n == 0 || reach(rows, 0, full_mask(n)) == full_mask(n)
}

/// Articulation vertices as a bit mask (Tarjan low-link, per component).
pub(crate) fn cut_vertex_mask(rows: &[u64]) -> u64 {
    struct State<'a> {
        rows: &'a [u64],
        disc: [u8; 64],
        low: [u8; 64],
        time: u8,
        cuts: u64,
    }

    fn dfs(s: &mut State<'_>, v: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        let mut children = 0;
        for u in Bits(s.rows[v]) {
            if s.disc[u] == 0 {
                children += 1;
                dfs(s, u, Some(v));
                s.low[v] = s.low[v].min(s.low[u]);
                if parent.is_some() && s.low[u] >= s.disc[v] {
                    s.cuts |= 1 << v;
                }
            } else if Some(u) != parent {
                s.low[v] = s.low[v].min(s.disc[u]);
            }
        }
        if parent.is_none() && children > 1 {
            s.cuts |= 1 << v;
        }
    }

    let mut s = State {
        rows,
        disc: [0; 64],
        low: [0; 64],
        time: 0,
        cuts: 0,
    };
    for v in 0..rows.len() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.cuts
}

#[inline]
pub(crate) fn rows_two_connected(rows: &[u64]) -> bool {
    rows.len() >= 3 && rows_connected(rows) && cut_vertex_mask(rows) == 0
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Loops, out-of-range endpoints and repeated edges are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a graph from adjacency rows, checking symmetry and the diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        for (v, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                let bad = (row & !full_mask(n)).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange {
                    vertex: bad,
                    order: n,
                });
            }
            if row >> v & 1 == 1 {
                return Err(Error::LoopEdge(v));
            }
            for u in Bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            n: rows.len(),
            rows,
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.rows[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch(perm.len(), self.n));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameters(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen |= 1 << p;
        }
        Ok(Graph {
            n: self.n,
            rows: permute_rows(&self.rows, perm),
        })
    }

    pub fn is_connected(&self) -> bool {
        rows_connected(&self.rows)
    }

    /// Articulation vertices in increasing order.
    pub fn cut_vertices(&self) -> Vec<usize> {
        Bits(cut_vertex_mask(&self.rows)).collect()
    }
}

pub(crate) fn permute_rows(rows: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; rows.len()];
    for (v, &row) in rows.iter().enumerate() {
        let mut r = 0u64;
        for u in Bits(row) {
            r |= 1 << perm[u];
        }
        out[perm[v]] = r;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Convenience wrapper around [`Graph::new`].
pub fn new_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

/// Hop distances between every pair of vertices, [`UNREACHABLE`] for pairs
/// in different components.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as u32),
        }
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u8] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    /// Sum of the finite entries of row `u`.
    pub fn row_sum(&self, u: usize) -> u64 {
        self.row(u)
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .map(|&d| d as u64)
            .sum()
    }

    pub fn max_entry(&self) -> Option<u32> {
        if !self.is_finite() {
            return None;
        }
        self.dist.iter().map(|&d| d as u32).max()
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix(n={})", self.n)?;
        for u in 0..self.n {
            let row: Vec<String> = self
                .row(u)
                .iter()
                .map(|&d| {
                    if d == UNREACHABLE {
                        "-".into()
                    } else {
                        d.to_string()
                    }
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn bfs_row(rows: &[u64], source: usize, out: &mut [u8]) {
    let n = rows.len();
    out.fill(UNREACHABLE);
    out[source] = 0;
    let all = full_mask(n);
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    let mut depth = 0u8;
    while frontier != 0 {
        depth += 1;
        let mut next = 0u64;
        for v in Bits(frontier) {
            next |= rows[v];
        }
        next &= all & !seen;
        for v in Bits(next) {
            out[v] = depth;
        }
        seen |= next;
        frontier = next;
    }
}

/// Distances from `v` to every vertex.
pub fn bfs_distances(g: &Graph, v: usize) -> Result<Vec<u8>> {
    g.check_vertex(v)?;
    let mut out = vec![0u8; g.n];
    bfs_row(&g.rows, v, &mut out);
    Ok(out)
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n;
    let mut dist = vec![0u8; n * n];
    for (v, chunk) in dist.chunks_mut(n).enumerate() {
        bfs_row(&g.rows, v, chunk);
    }
    DistanceMatrix { n, dist }
}

/// Connected, at least three vertices, and no articulation vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    rows_two_connected(&g.rows)
}
