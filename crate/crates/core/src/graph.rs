//! Immutable simple undirected graphs with bitset adjacency rows.

use std::collections::VecDeque;
use std::fmt;

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};

/// Simple undirected graph on `0..n`.
///
/// Row `v` of the adjacency matrix is stored as `words_for(n)` consecutive
/// words, so neighbourhood algebra is word-level AND/OR/popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Self {
            n,
            stride,
            rows: vec![0; stride * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices; smaller `n` degrade to a path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge_unchecked(n - 1, 0);
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge_unchecked(0, v);
        }
        g
    }

    /// Resolves the short names used on the command line and in configs:
    /// `k<n>`, `p<n>`, `c<n>`, `e<n>` (edgeless) and `s<n>` (star with `n` leaves).
    pub fn named(name: &str) -> Option<Self> {
        let name = name.to_ascii_lowercase();
        let (kind, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        let k: usize = digits.parse().ok()?;
        match kind {
            "k" => Some(Self::complete(k)),
            "p" if k >= 1 => Some(Self::path(k)),
            "c" if k >= 3 => Some(Self::cycle(k)),
            "e" => Some(Self::empty(k)),
            "s" => Some(Self::star(k)),
            _ => None,
        }
    }

    /// Inserts an edge while the graph is still being assembled.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    /// Raw adjacency row of `v`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Open neighbourhood `N(v)`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(VertexSet::from_words(self.n, self.row(v).to_vec()))
    }

    /// Closed neighbourhood `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        let mut s = self.neighborhood(v)?;
        s.insert(v);
        Ok(s)
    }

    /// Anti-neighbourhood `AN[v] = V \ N[v]`.
    pub fn anti_neighborhood(&self, v: usize) -> Result<VertexSet> {
        Ok(self.closed_neighborhood(v)?.complement())
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        crate::bitset::Ones::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced on `0..k`, keeping labels.
    pub fn prefix(&self, k: usize) -> Self {
        assert!(k <= self.n);
        let mut g = Self::empty(k);
        for (u, v) in self.edges() {
            if v < k {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Parses the plain edge-list format: a header `n m`, then `m` pairs `u v`.
    /// Tokens are whitespace-delimited; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut tokens = text.lines().enumerate().flat_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("");
            body.split_whitespace().map(move |t| (i + 1, t))
        });
        let mut next_num = |what: &str| -> Result<usize> {
            let (line, tok) = tokens.next().ok_or_else(|| Error::EdgeList {
                line: 0,
                reason: format!("unexpected end of input, expected {what}"),
            })?;
            tok.parse().map_err(|_| Error::EdgeList {
                line,
                reason: format!("expected {what}, found {tok:?}"),
            })
        };
        let n = next_num("vertex count")?;
        let m = next_num("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next_num("edge endpoint")?;
            let v = next_num("edge endpoint")?;
            edges.push((u, v));
        }
        Self::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
