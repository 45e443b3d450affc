//! Exhaustive search over (2,3)-agreeable graphs with bounded clique number.
//!
//! The class of (2,3)-agreeable graphs with `ω <= r` is closed under induced
//! subgraphs, so every member on `k + 1` vertices arises from a member on `k`
//! vertices by adding one vertex. Graphs are generated level by level, one
//! vertex at a time, and each level is reduced to one canonical
//! representative per isomorphism class.
//!
//! A new vertex with neighbourhood `S` keeps the graph agreeable iff its
//! non-neighbours form a clique, and keeps `ω <= r` iff `ω(G[S]) <= r - 1`.
//! Extensions are therefore generated from the cliques of the parent rather
//! than from all `2^k` neighbourhoods. Two degree rules prune further: no
//! degree may exceed `η(r - 1)`, and a vertex must be able to reach degree
//! `n - r - 1` with the vertices still to come.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::boxicity::{decide_boxicity_leq, roberts_upper_bound, Decision, MAX_DECIDE_VERTICES};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{bit, bits, Certificate, Graph};

/// Why no larger graph exists for a given `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum EtaCertificate {
    /// Three vertices always need an edge, so `ω = 1` allows two vertices.
    ThreeVerticesForceEdge,
    /// At `n` vertices every degree is at least `min_degree`, which exceeds
    /// the cap `max_degree = η(r-1)`.
    DegreeContradiction {
        n: usize,
        min_degree: usize,
        max_degree: usize,
    },
    /// At `n` vertices the graph would be `degree`-regular with `n · degree`
    /// odd.
    Parity { n: usize, degree: usize },
    /// Every candidate on `n` vertices was generated and none survived.
    Exhausted { n: usize, graphs_examined: u64 },
}

impl fmt::Display for EtaCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ThreeVerticesForceEdge => write!(f, "any three vertices span an edge"),
            Self::DegreeContradiction {
                n,
                min_degree,
                max_degree,
            } => write!(f, "n = {n}: δ >= {min_degree} > {max_degree} >= Δ"),
            Self::Parity { n, degree } => {
                write!(f, "n = {n}: would be {degree}-regular with odd degree sum")
            }
            Self::Exhausted { n, graphs_examined } => {
                write!(
                    f,
                    "n = {n}: exhausted ({graphs_examined} extensions examined)"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaEntry {
    pub r: usize,
    pub confirmed_value: Option<usize>,
    pub upper_bound: usize,
    #[serde(skip)]
    pub witness: Option<Graph>,
    pub impossibility: EtaCertificate,
}

/// Known values and bounds of `η(r)`, the largest order of a
/// (2,3)-agreeable graph with clique number at most `r`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EtaTable {
    entries: BTreeMap<usize, EtaEntry>,
}

impl EtaTable {
    /// Confirmed values for `r <= 4` and the bound for `r = 5`.
    pub fn known() -> Self {
        Self::build(5).expect("registered witnesses validate")
    }

    /// Confirms `r = 1..=4` from witnesses and bounds larger `r` by the
    /// degree and parity rules.
    pub fn build(max_r: usize) -> Result<Self> {
        let mut table = Self::default();
        for r in 1..=max_r {
            let entry = if r <= 4 {
                confirm_eta(r, &table)?
            } else {
                let (upper_bound, impossibility) = eta_upper(r, &table)?;
                EtaEntry {
                    r,
                    confirmed_value: None,
                    upper_bound,
                    witness: None,
                    impossibility,
                }
            };
            table.insert(entry);
        }
        Ok(table)
    }

    pub fn insert(&mut self, entry: EtaEntry) {
        self.entries.insert(entry.r, entry);
    }

    pub fn get(&self, r: usize) -> Option<&EtaEntry> {
        self.entries.get(&r)
    }

    pub fn entries(&self) -> impl Iterator<Item = &EtaEntry> {
        self.entries.values()
    }

    pub fn confirmed(&self, r: usize) -> Option<usize> {
        self.get(r).and_then(|e| e.confirmed_value)
    }

    /// Confirmed value when known, otherwise the upper bound.
    pub fn eta_bound(&self, r: usize) -> Option<usize> {
        if r == 0 {
            return Some(0);
        }
        self.get(r)
            .map(|e| e.confirmed_value.unwrap_or(e.upper_bound))
    }

    /// `η(r, d)` where it is known independently of search: complete graphs
    /// for `d = 0`, so `η(r, 0) = r`, and `η(r, 1) = 2r` for intervals.
    pub fn eta_dim(&self, r: usize, d: usize) -> Option<usize> {
        match d {
            0 => Some(r),
            1 => Some(2 * r),
            _ => None,
        }
    }
}

/// Largest `n` not excluded by the degree window `n - r - 1 <= deg <= η(r-1)`
/// together with the parity of a forced regular graph.
pub fn eta_upper(r: usize, table: &EtaTable) -> Result<(usize, EtaCertificate)> {
    match r {
        0 => Err(Error::InvalidParameter("r must be at least 1".into())),
        1 => Ok((2, EtaCertificate::ThreeVerticesForceEdge)),
        _ => {
            let cap = table
                .eta_bound(r - 1)
                .ok_or_else(|| Error::MissingEta(format!("η({})", r - 1)))?;
            let n = cap + r + 1;
            if (n * cap) % 2 == 1 {
                Ok((n - 1, EtaCertificate::Parity { n, degree: cap }))
            } else {
                Ok((
                    n,
                    EtaCertificate::DegreeContradiction {
                        n: n + 1,
                        min_degree: cap + 1,
                        max_degree: cap,
                    },
                ))
            }
        }
    }
}

/// Registered extremal examples for `r = 1..=4`.
pub fn witness(r: usize) -> Option<Graph> {
    match r {
        1 => Graph::empty(2).ok(),
        2 => Some(fixtures::z5().graph()),
        3 => Some(fixtures::fig38a_graph()),
        4 => Some(fixtures::fig134_graph()),
        _ => None,
    }
}

/// Validates the registered witness for `r` and compares it with
/// [`eta_upper`].
pub fn confirm_eta(r: usize, table: &EtaTable) -> Result<EtaEntry> {
    let w = witness(r).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no registered witness for r = {r} (r must be 1..=4)"
        ))
    })?;
    if !w.is_agreeable(2, 3) {
        return Err(Error::InvalidWitness {
            r,
            reason: "not (2,3)-agreeable".into(),
        });
    }
    let omega = w.clique_number();
    if omega > r {
        return Err(Error::InvalidWitness {
            r,
            reason: format!("clique number {omega} exceeds {r}"),
        });
    }
    let (upper_bound, impossibility) = eta_upper(r, table)?;
    if w.n() > upper_bound {
        return Err(Error::InvalidWitness {
            r,
            reason: format!("{} vertices exceed the upper bound {upper_bound}", w.n()),
        });
    }
    Ok(EtaEntry {
        r,
        confirmed_value: (w.n() == upper_bound).then_some(upper_bound),
        upper_bound,
        witness: Some(w),
        impossibility,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PruneStats {
    /// Neighbourhoods whose complement was not a clique.
    pub independent_triple: u64,
    pub clique_too_large: u64,
    pub degree_cap: u64,
    pub degree_floor: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCertificate {
    pub n: usize,
    pub r: usize,
    /// Cap on degrees, `η(r - 1)`.
    pub degree_cap: usize,
    pub graphs_examined: u64,
    /// Isomorphism classes kept after each level `1..=n`.
    pub level_sizes: Vec<usize>,
    #[serde(skip)]
    pub survivors: Vec<Graph>,
    pub pruning: PruneStats,
}

/// All (2,3)-agreeable graphs on `n` vertices with `ω <= r`, one per
/// isomorphism class, in canonical order.
pub fn enumerate_agreeable(n: usize, r: usize, table: &EtaTable) -> Result<SearchCertificate> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    if n > 20 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is beyond desk scale"
        )));
    }
    let cap = if r == 1 {
        0
    } else {
        table
            .eta_bound(r - 1)
            .ok_or_else(|| Error::MissingEta(format!("η({})", r - 1)))?
    };
    let floor = n.saturating_sub(r + 1);
    let mut level = vec![Graph::empty(0)?];
    let mut level_sizes = Vec::with_capacity(n);
    let mut examined = 0;
    let mut pruning = PruneStats::default();
    for k in 0..n {
        let remaining = n - (k + 1);
        let results: Vec<(Vec<Certificate>, u64, PruneStats)> = level
            .par_iter()
            .map(|g| extend_one(g, r, cap, floor, remaining))
            .collect();
        let mut next: Vec<Certificate> = Vec::new();
        for (certs, seen, stats) in results {
            examined += seen;
            pruning.independent_triple += stats.independent_triple;
            pruning.clique_too_large += stats.clique_too_large;
            pruning.degree_cap += stats.degree_cap;
            pruning.degree_floor += stats.degree_floor;
            next.extend(certs);
        }
        next.par_sort_unstable();
        next.dedup();
        level = next.into_iter().map(Certificate::into_graph).collect();
        level_sizes.push(level.len());
    }
    for g in &level {
        if !g.is_agreeable(2, 3) || g.clique_number() > r || g.n() != n {
            return Err(Error::Format(format!(
                "search produced an invalid graph {g:?}"
            )));
        }
    }
    Ok(SearchCertificate {
        n,
        r,
        degree_cap: cap,
        graphs_examined: examined,
        level_sizes,
        survivors: level,
        pruning,
    })
}

fn extend_one(
    g: &Graph,
    r: usize,
    cap: usize,
    floor: usize,
    remaining: usize,
) -> (Vec<Certificate>, u64, PruneStats) {
    let k = g.n();
    let all = g.vertex_mask();
    let mut stats = PruneStats::default();
    let mut out = Vec::new();
    let mut seen = 0;
    // Non-neighbourhoods must be cliques; every other choice of neighbours
    // creates an independent triple with the new vertex.
    let non_nbr_sets = g.cliques();
    let all_sets = 1u128 << k;
    stats.independent_triple = (all_sets - non_nbr_sets.len() as u128) as u64;
    for t in non_nbr_sets {
        seen += 1;
        let nbrs = all & !t;
        let new_degree = nbrs.count_ones() as usize;
        if new_degree > cap || bits(nbrs).any(|u| g.degree0(u) + 1 > cap) {
            stats.degree_cap += 1;
            continue;
        }
        if g.clique_number_within(nbrs) + 1 > r {
            stats.clique_too_large += 1;
            continue;
        }
        let reachable = |deg: usize| deg + remaining >= floor;
        if !reachable(new_degree)
            || (0..k).any(|u| !reachable(g.degree0(u) + usize::from(nbrs & bit(u) != 0)))
        {
            stats.degree_floor += 1;
            continue;
        }
        let h = g.extend(nbrs).expect("within vertex cap");
        out.push(h.canonical_form());
    }
    out.sort_unstable();
    out.dedup();
    (out, seen + stats.independent_triple, stats)
}

/// Whether `box(g) <= d`, with `None` when the search budget runs out or
/// the graph is too large to search.
pub fn boxicity_at_most(g: &Graph, d: usize, budget: u64) -> Result<Option<bool>> {
    if d == 0 {
        return Ok(Some(g.is_complete()));
    }
    if g.is_complete() || g.is_interval_graph() {
        return Ok(Some(true));
    }
    if d == 1 {
        return Ok(Some(false));
    }
    if roberts_upper_bound(g) <= d {
        return Ok(Some(true));
    }
    if g.n() > MAX_DECIDE_VERTICES {
        return Ok(None);
    }
    Ok(match decide_boxicity_leq(g, d, budget)? {
        Decision::Yes(_) => Some(true),
        Decision::No => Some(false),
        Decision::Inconclusive => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinProportion {
    pub r: usize,
    pub d: Option<usize>,
    pub value: Ratio<u64>,
    /// Every graph attaining the minimum, in canonical order.
    pub minimizers: Vec<Graph>,
    /// Number of isomorphism classes in the search space.
    pub graphs_considered: usize,
}

/// `ρ(r, d)`: the least `ω / n` over (2,3)-agreeable graphs with `ω <= r`
/// and, when `d` is given, boxicity at most `d`.
///
/// Graphs are visited in increasing order of proportion and boxicity is
/// decided only until the minimum is settled. An undecided graph at or
/// below the minimum is an error.
pub fn min_agreement_proportion(
    r: usize,
    d: Option<usize>,
    table: &EtaTable,
    budget: u64,
) -> Result<MinProportion> {
    let max_n = table
        .eta_bound(r)
        .filter(|_| r >= 1)
        .ok_or_else(|| Error::MissingEta(format!("η({r})")))?;
    let mut candidates: Vec<(Ratio<u64>, Graph)> = Vec::new();
    for n in 1..=max_n {
        for g in enumerate_agreeable(n, r, table)?.survivors {
            candidates.push((Ratio::new(g.clique_number() as u64, n as u64), g));
        }
    }
    let graphs_considered = candidates.len();
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.n().cmp(&b.1.n())));
    let mut i = 0;
    while i < candidates.len() {
        let value = candidates[i].0;
        let class_end = candidates[i..]
            .iter()
            .position(|c| c.0 != value)
            .map_or(candidates.len(), |p| i + p);
        let mut minimizers = Vec::new();
        let mut undecided = Vec::new();
        for (_, g) in &candidates[i..class_end] {
            let fits = match d {
                None => Some(true),
                Some(d) => boxicity_at_most(g, d, budget)?,
            };
            match fits {
                Some(true) => minimizers.push(g.clone()),
                Some(false) => {}
                None => undecided.push(g.clone()),
            }
        }
        if !undecided.is_empty() {
            return Err(Error::BoxicityUndecided {
                count: undecided.len(),
                graphs: undecided
                    .iter()
                    .map(|g| format!("{g:?}"))
                    .collect::<Vec<_>>()
                    .join("; "),
            });
        }
        if !minimizers.is_empty() {
            return Ok(MinProportion {
                r,
                d,
                value,
                minimizers,
                graphs_considered,
            });
        }
        i = class_end;
    }
    Err(Error::InvalidParameter(format!(
        "no graph with ω <= {r} fits the boxicity constraint"
    )))
}

/// `ρ(r) = ρ(r, ⌊η(r)/2⌋)`. Every graph in the class already has boxicity
/// at most `⌊n/2⌋ <= ⌊η(r)/2⌋`, so this is the unconstrained minimum.
pub fn graph_agreement_proportion(
    r: usize,
    table: &EtaTable,
    budget: u64,
) -> Result<MinProportion> {
    let max_n = table
        .eta_bound(r)
        .ok_or_else(|| Error::MissingEta(format!("η({r})")))?;
    min_agreement_proportion(r, Some((max_n / 2).max(1)), table, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimizerCheck {
    pub n: usize,
    pub omega: usize,
    pub min_degree: usize,
    pub has_universal: bool,
    /// `d >= n / (2 (n - δ - 1))`
    pub boxicity_bound_ok: bool,
    /// `ω >= n - δ - 1`
    pub clique_bound_ok: bool,
}

impl MinimizerCheck {
    pub fn passed(&self) -> bool {
        !self.has_universal && self.boxicity_bound_ok && self.clique_bound_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTheoremCheck {
    pub d: usize,
    pub r: usize,
    pub minimum: Ratio<u64>,
    pub bound: Ratio<u64>,
    pub minimizers: Vec<(Graph, MinimizerCheck)>,
}

impl MainTheoremCheck {
    pub fn passed(&self) -> bool {
        self.minimum >= self.bound && self.minimizers.iter().all(|(_, c)| c.passed())
    }
}

/// Checks `ρ(r, d) >= 1/(2d)` and replays the argument on every minimiser.
pub fn verify_main_theorem(
    d: usize,
    r: usize,
    table: &EtaTable,
    budget: u64,
) -> Result<MainTheoremCheck> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let min = min_agreement_proportion(r, Some(d), table, budget)?;
    let minimizers = min
        .minimizers
        .into_iter()
        .map(|g| {
            let n = g.n();
            let delta = g.degree_profile().min_degree;
            let omega = g.clique_number();
            let gap = n - delta - 1;
            let check = MinimizerCheck {
                n,
                omega,
                min_degree: delta,
                has_universal: g.universal_vertices() != 0,
                boxicity_bound_ok: gap > 0 && 2 * d * gap >= n,
                clique_bound_ok: omega >= gap,
            };
            (g, check)
        })
        .collect();
    Ok(MainTheoremCheck {
        d,
        r,
        minimum: min.value,
        bound: Ratio::new(1, 2 * d as u64),
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxicity::DEFAULT_BUDGET;

    #[test]
    fn eta_upper_rules() {
        let table = EtaTable::known();
        assert_eq!(eta_upper(1, &table).unwrap().0, 2);
        let (v, c) = eta_upper(2, &table).unwrap();
        assert_eq!(v, 5);
        assert!(matches!(
            c,
            EtaCertificate::DegreeContradiction { n: 6, .. }
        ));
        let (v, c) = eta_upper(3, &table).unwrap();
        assert_eq!(v, 8);
        assert_eq!(c, EtaCertificate::Parity { n: 9, degree: 5 });
        assert_eq!(eta_upper(4, &table).unwrap().0, 13);
        let (v, c) = eta_upper(5, &table).unwrap();
        assert_eq!(v, 18);
        assert_eq!(c, EtaCertificate::Parity { n: 19, degree: 13 });
        assert!(matches!(
            eta_upper(3, &EtaTable::default()),
            Err(Error::MissingEta(_))
        ));
    }

    #[test]
    fn table_values() {
        let table = EtaTable::known();
        let values: Vec<_> = (1..=4).map(|r| table.confirmed(r)).collect();
        assert_eq!(values, vec![Some(2), Some(5), Some(8), Some(13)]);
        assert_eq!(table.confirmed(5), None);
        assert_eq!(table.get(5).unwrap().upper_bound, 18);
        assert_eq!(table.get(3).unwrap().witness.as_ref().unwrap().n(), 8);
        assert!(confirm_eta(5, &table).is_err());
    }

    #[test]
    fn small_enumerations() {
        let table = EtaTable::known();
        assert!(enumerate_agreeable(6, 2, &table)
            .unwrap()
            .survivors
            .is_empty());
        let five = enumerate_agreeable(5, 2, &table).unwrap();
        assert_eq!(
            five.survivors,
            vec![Graph::cycle(5).unwrap().canonical_form().into_graph()]
        );
        assert!(enumerate_agreeable(3, 1, &table)
            .unwrap()
            .survivors
            .is_empty());
        assert_eq!(
            enumerate_agreeable(2, 1, &table).unwrap().survivors.len(),
            1
        );
        assert!(matches!(
            enumerate_agreeable(4, 3, &EtaTable::default()),
            Err(Error::MissingEta(_))
        ));
    }

    #[test]
    fn minimum_proportions() {
        let table = EtaTable::known();
        let m = min_agreement_proportion(1, Some(3), &table, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.value, Ratio::new(1, 2));
        let m = min_agreement_proportion(2, Some(1), &table, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.value, Ratio::new(1, 2));
        let c5 = Graph::cycle(5).unwrap().canonical_form().into_graph();
        assert!(!m.minimizers.contains(&c5));
        let m = min_agreement_proportion(2, Some(2), &table, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.value, Ratio::new(2, 5));
        assert_eq!(m.minimizers, vec![c5]);
    }

    #[test]
    fn main_theorem_small_cases() {
        let table = EtaTable::known();
        for (d, r) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let check = verify_main_theorem(d, r, &table, DEFAULT_BUDGET).unwrap();
            assert!(check.passed(), "d = {d}, r = {r}: {check:?}");
        }
    }

    #[test]
    fn graph_proportion_matches_unconstrained() {
        let table = EtaTable::known();
        for r in 1..=3 {
            let a = graph_agreement_proportion(r, &table, DEFAULT_BUDGET).unwrap();
            let b = min_agreement_proportion(r, None, &table, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    /// Every labelled graph on `n` vertices, filtered and reduced to
    /// canonical forms, with no pruning.
    fn unpruned(n: usize, r: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut out: Vec<Graph> = (0u32..1 << pairs.len())
            .map(|mask| {
                let mut g = Graph::empty(n).unwrap();
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge0(u, v);
                    }
                }
                g
            })
            .filter(|g| g.is_agreeable(2, 3) && g.clique_number() <= r)
            .map(|g| g.canonical_form().into_graph())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn pruned_enumeration_matches_unpruned_oracle() {
        let table = EtaTable::known();
        for n in 1..=6 {
            for r in 1..=4 {
                let pruned = enumerate_agreeable(n, r, &table).unwrap().survivors;
                let mut pruned_sorted = pruned.clone();
                pruned_sorted.sort();
                assert_eq!(pruned_sorted, unpruned(n, r), "n = {n}, r = {r}");
            }
        }
    }
}
