//! Canonical labelling by equitable refinement plus individualisation.
//!
//! The search tree is the usual one: refine the ordered partition, pick the
//! first non-singleton cell, individualise each of its vertices in turn. A
//! leaf's certificate is the adjacency matrix read in leaf order and the
//! largest one wins. Branches are skipped when they are images of an explored
//! sibling under a known automorphism fixing the current prefix, or under the
//! transposition of two twin vertices.

use super::{bit, bits, Graph};

/// Isomorphism certificate: the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Graph);

impl Certificate {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }
}

pub(super) fn canonical_form(g: &Graph) -> Certificate {
    let perm = canonical_labeling(g);
    Certificate(g.relabel(&perm))
}

pub(super) fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<_>>()];
    search.descend(cells, &mut Vec::new());
    search.best.expect("search tree has at least one leaf").1
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if explored.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let mask = !(bit(u) | bit(v));
        self.g.row(u) & mask == self.g.row(v) & mask
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by known automorphisms that fix `prefix` pointwise.
    fn equivalent_to_explored(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&x| a[x] == x) {
                any = true;
                for x in 0..n {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.n();
        let mut perm = vec![0usize; n];
        for (pos, c) in cells.iter().enumerate() {
            perm[c[0]] = pos;
        }
        let mut cert = vec![0u64; n];
        for u in 0..n {
            let mut row = 0;
            for w in bits(self.g.row(u)) {
                row |= bit(n - 1 - perm[w]);
            }
            cert[perm[u]] = row;
        }
        match &self.best {
            None => self.best = Some((cert, perm)),
            Some((best, best_perm)) => match cert.cmp(best) {
                std::cmp::Ordering::Greater => self.best = Some((cert, perm)),
                std::cmp::Ordering::Equal => {
                    // best_perm^-1 ∘ perm is an automorphism
                    let mut inv = vec![0usize; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if auto.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(auto);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

/// Refines an ordered partition to the coarsest equitable one below it.
/// Cells are split by neighbour counts into a splitter cell, smaller counts
/// first, which keeps the result isomorphism-invariant.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | bit(v));
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let counts: Vec<u32> = cells[c]
                    .iter()
                    .map(|&v| (g.row(v) & splitter).count_ones())
                    .collect();
                if counts.iter().all(|&k| k == counts[0]) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    counts.into_iter().zip(cells[c].iter().copied()).collect();
                keyed.sort_unstable();
                let mut groups: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        groups.push(Vec::new());
                        last = Some(k);
                    }
                    groups.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, groups);
                continue 'restart;
            }
        }
        break;
    }
}
