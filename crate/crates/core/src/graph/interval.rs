//! Interval-graph recognition through consecutive orderings of maximal
//! cliques: a graph is an interval graph iff its maximal cliques can be
//! listed so that the cliques containing any vertex are contiguous.

use std::collections::HashSet;

use super::{bit, bits, Graph};

/// Maximal cliques (Bron–Kerbosch with pivoting), sorted.
pub(super) fn maximal_cliques(g: &Graph) -> Vec<u64> {
    fn bk(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (g.row(u) & p).count_ones())
            .expect("p | x is non-empty");
        for v in bits(p & !g.row(pivot)) {
            bk(g, r | bit(v), p & g.row(v), x & g.row(v), out);
            p &= !bit(v);
            x |= bit(v);
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 {
        bk(g, 0, g.vertex_mask(), 0, &mut out);
    }
    out.sort_unstable();
    out
}

/// Maximum cardinality search, then the perfect elimination check on the
/// reversed visit order: the latest earlier neighbour of each vertex must be
/// adjacent to all its other earlier neighbours.
pub(super) fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut visited = 0u64;
    let mut weight = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for step in 0..n {
        let v = bits(g.vertex_mask() & !visited)
            .max_by_key(|&u| (weight[u], std::cmp::Reverse(u)))
            .expect("unvisited vertex");
        let earlier = g.row(v) & visited;
        if let Some(parent) = bits(earlier).max_by_key(|&u| pos[u]) {
            if earlier & !bit(parent) & !g.row(parent) != 0 {
                return false;
            }
        }
        pos[v] = step;
        visited |= bit(v);
        for u in bits(g.row(v) & !visited) {
            weight[u] += 1;
        }
    }
    true
}

pub(super) fn is_interval_graph(g: &Graph) -> bool {
    if !is_chordal(g) {
        return false;
    }
    // chordal graphs have at most n maximal cliques
    let cliques = maximal_cliques(g);
    if cliques.len() <= 2 {
        return true;
    }
    let mut failed = HashSet::new();
    let mut state = Ordering {
        cliques: &cliques,
        placed: 0,
        seen: 0,
        failed: &mut failed,
    };
    (0..cliques.len()).any(|first| state.place(first, 1))
}

struct Ordering<'a> {
    cliques: &'a [u64],
    placed: u64,
    seen: u64,
    failed: &'a mut HashSet<(u64, usize)>,
}

impl Ordering<'_> {
    /// Places clique `idx` after the current sequence, then tries to finish.
    fn place(&mut self, idx: usize, count: usize) -> bool {
        let clique = self.cliques[idx];
        self.placed |= bit(idx);
        let saved = self.seen;
        self.seen |= clique;
        let done = count == self.cliques.len() || self.extend(idx, count);
        self.seen = saved;
        self.placed &= !bit(idx);
        done
    }

    fn extend(&mut self, last: usize, count: usize) -> bool {
        let key = (self.placed, last);
        if self.failed.contains(&key) {
            return false;
        }
        let last_clique = self.cliques[last];
        for next in 0..self.cliques.len() {
            if self.placed & bit(next) != 0 {
                continue;
            }
            // A vertex already seen may continue only from the previous clique.
            if self.cliques[next] & self.seen & !last_clique != 0 {
                continue;
            }
            if self.place(next, count + 1) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}
