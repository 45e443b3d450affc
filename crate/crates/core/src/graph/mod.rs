//! Simple undirected graphs on at most 64 vertices, one `u64` row per vertex.
//!
//! Vertices are `0..n` internally; everything that faces users (edge lists,
//! file formats, error messages) is 1-based.

mod canon;
mod interval;

use std::fmt;

use crate::error::{Error, Result};

pub use canon::Certificate;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
pub(crate) fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let v = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// Builds a graph from 1-based edges. Duplicate edges are tolerated here;
    /// the text format rejects them.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges)
    }

    /// Complete d-partite graph on d pairs: every edge except `{2i-1, 2i}`.
    pub fn complete_partite_pairs(d: usize) -> Result<Self> {
        let mut g = Self::complete(2 * d)?;
        for i in 0..d {
            g.remove_edge0(2 * i, 2 * i + 1);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge0(u - 1, v - 1);
        Ok(())
    }

    pub(crate) fn add_edge0(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn remove_edge0(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// 1-based adjacency query; out-of-range vertices are never adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.has_edge0(u - 1, v - 1)
    }

    #[inline]
    pub(crate) fn has_edge0(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// Neighbourhood of 0-based vertex `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn degree0(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree0(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)) {
                out.push((u + 1, v + 1));
            }
        }
        out
    }

    /// Non-adjacent pairs as 0-based `(u, v)` with `u < v`.
    pub(crate) fn non_edges0(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge0(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Self {
        let all = self.vertex_mask();
        Self {
            n: self.n,
            adj: (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect(),
        }
    }

    /// Subgraph induced by the 0-based vertex set `mask`, relabelled in
    /// increasing order.
    pub fn induced(&self, mask: u64) -> Self {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut g = Self {
            n: keep.len(),
            adj: vec![0; keep.len()],
        };
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge0(u, v) {
                    g.add_edge0(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]` (0-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0;
            for v in bits(self.adj[u]) {
                row |= bit(perm[v]);
            }
            adj[perm[u]] = row;
        }
        Self { n: self.n, adj }
    }

    /// Adds one vertex (index `n`) adjacent to the 0-based set `nbrs`.
    pub fn extend(&self, nbrs: u64) -> Result<Self> {
        if self.n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        let mut adj = self.adj.clone();
        let v = self.n;
        for u in bits(nbrs) {
            adj[u] |= bit(v);
        }
        adj.push(nbrs);
        Ok(Self { n: v + 1, adj })
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let mut g = Self::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge0(u - 1, v - 1);
        }
        for (u, v) in other.edges() {
            g.add_edge0(self.n + u - 1, self.n + v - 1);
        }
        Ok(g)
    }

    /// Clique number ω.
    pub fn clique_number(&self) -> usize {
        self.clique_number_within(self.vertex_mask())
    }

    /// Clique number of the subgraph induced by `mask`.
    pub fn clique_number_within(&self, mask: u64) -> usize {
        let mut best = 0;
        self.expand(mask & self.vertex_mask(), 0, &mut best);
        best
    }

    /// Branch and bound with a greedy colouring bound.
    fn expand(&self, mut cand: u64, size: usize, best: &mut usize) {
        let (order, colors) = self.color_sort(cand);
        for i in (0..order.len()).rev() {
            if size + colors[i] <= *best {
                return;
            }
            let v = order[i];
            let next = cand & self.adj[v];
            if next == 0 {
                *best = (*best).max(size + 1);
            } else {
                self.expand(next, size + 1, best);
            }
            cand &= !bit(v);
        }
    }

    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut q = uncolored;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                order.push(v);
                colors.push(color);
                uncolored &= !bit(v);
                q &= !bit(v) & !self.adj[v];
            }
        }
        (order, colors)
    }

    /// Number of `s`-vertex subsets inducing a complete subgraph.
    pub fn count_cliques_of_size(&self, s: usize) -> u64 {
        fn rec(g: &Graph, cand: u64, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            if (cand.count_ones() as usize) < left {
                return 0;
            }
            let mut total = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                total += rec(g, rest & g.adj[v], left - 1);
            }
            total
        }
        rec(self, self.vertex_mask(), s)
    }

    /// All cliques (including the empty one) as bitsets.
    pub(crate) fn cliques(&self) -> Vec<u64> {
        fn rec(g: &Graph, current: u64, cand: u64, out: &mut Vec<u64>) {
            out.push(current);
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                rec(g, current | bit(v), rest & g.adj[v], out);
            }
        }
        let mut out = Vec::new();
        rec(self, 0, self.vertex_mask(), &mut out);
        out
    }

    /// `(k, m)`-agreeability: every `m` vertices contain a `k`-clique.
    ///
    /// Vacuously true when `m > n`. For `(2, 3)` the direct check is paired
    /// with the equivalent condition ω(complement) ≤ 2.
    ///
    /// Panics unless `2 <= k <= m`.
    pub fn is_agreeable(&self, k: usize, m: usize) -> bool {
        assert!(2 <= k && k <= m, "agreeability needs 2 <= k <= m");
        if m > self.n {
            return true;
        }
        let direct = combinations(self.n, m).all(|s| self.clique_number_within(s) >= k);
        if (k, m) == (2, 3) {
            let via_complement = self.complement().clique_number() <= 2;
            assert_eq!(direct, via_complement, "agreeability forms disagree");
        }
        direct
    }

    /// Form 3 of (2,3)-agreeability: the complement has no triangle.
    pub fn is_agreeable_23(&self) -> bool {
        self.complement().clique_number() <= 2
    }

    pub fn universal_vertices(&self) -> u64 {
        let full = self.vertex_mask();
        (0..self.n)
            .filter(|&v| self.adj[v] | bit(v) == full)
            .fold(0, |m, v| m | bit(v))
    }

    /// Removes every universal vertex, returning the induced remainder and
    /// the number removed.
    pub fn strip_universal(&self) -> Result<(Self, usize)> {
        if self.is_complete() {
            return Err(Error::CompleteGraph(
                "stripping universal vertices would leave no vertices",
            ));
        }
        let universal = self.universal_vertices();
        Ok((
            self.induced(self.vertex_mask() & !universal),
            universal.count_ones() as usize,
        ))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees = self.degrees();
        degrees.sort_unstable();
        DegreeProfile {
            min_degree: degrees.first().copied().unwrap_or(0),
            max_degree: degrees.last().copied().unwrap_or(0),
            degrees,
        }
    }

    pub fn is_interval_graph(&self) -> bool {
        interval::is_interval_graph(self)
    }

    pub fn maximal_cliques(&self) -> Vec<u64> {
        interval::maximal_cliques(self)
    }

    /// Certificate equal for two graphs iff they are isomorphic.
    pub fn canonical_form(&self) -> Certificate {
        canon::canonical_form(self)
    }

    /// Canonical relabelling: `perm[v]` is the canonical position of `v`.
    pub fn canonical_labeling(&self) -> Vec<usize> {
        canon::canonical_labeling(self)
    }
}

/// Degree statistics: δ, Δ and the sorted degree multiset.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    pub degrees: Vec<usize>,
}

impl DegreeProfile {
    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }
}

/// All `m`-subsets of `0..n` as bitsets, in colex order.
pub(crate) fn combinations(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let limit = low_mask(n);
    let mut next = if m > n {
        None
    } else if m == 0 {
        Some(0u64)
    } else {
        Some(low_mask(m))
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let succ = if r == 0 {
                None
            } else {
                Some((((r ^ cur) >> 2) / c) | r)
            };
            succ.filter(|&s| s & !limit == 0)
        };
        Some(cur)
    })
}
