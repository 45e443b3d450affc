//! Boxicity bounds and an exact decision procedure for `box(G) <= d`.
//!
//! A d-box realisation of `G` is the same thing as `d` interval graphs on the
//! vertex set, each containing `G`, whose common edges are exactly those of
//! `G`. Equivalently every non-edge of `G` must be separated on some axis.
//!
//! One axis is described by the order in which its intervals open. Closing
//! every interval as soon as all of its `G`-neighbours have opened keeps all
//! edges and separates as many non-edges as that opening order allows, so
//! nothing is lost by considering only these normalised models. After the
//! vertices in `O` have opened, the closed ones are exactly
//! `{u in O : N(u) ⊆ O}`, and opening `v` separates `v` from each of them.
//! The separated set of an axis is therefore built along a path through the
//! subset lattice, and for each subset only the inclusion-maximal partial
//! sets need to be kept. The maximal single-axis sets are then combined by an
//! exhaustive cover search.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersection_graph, Arrangement, AxisBox, RationalInterval};
use crate::graph::{bit, bits, Graph};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest graph the exact decision handles.
pub const MAX_DECIDE_VERTICES: usize = 16;

/// `ceil(n / (2 (n - δ - 1)))`, valid for graphs without universal vertices.
pub fn adiga_lower_bound(g: &Graph) -> Result<usize> {
    let universal = g.universal_vertices();
    if universal != 0 {
        return Err(Error::UniversalVertex(
            universal.trailing_zeros() as usize + 1,
        ));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let delta = g.degree_profile().min_degree;
    // no universal vertex means n - δ - 1 >= 1
    let denom = 2 * (n - delta - 1);
    Ok(n.div_ceil(denom))
}

/// `floor(n / 2)`, or 0 for complete graphs.
pub fn roberts_upper_bound(g: &Graph) -> usize {
    if g.is_complete() {
        0
    } else {
        g.n() / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A realising arrangement of `d`-boxes.
    Yes(Arrangement),
    /// Exhaustively refuted.
    No,
    /// The node budget ran out first.
    Inconclusive,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Decides whether `g` is the intersection graph of some family of d-boxes.
///
/// `budget` bounds the number of search steps; when it runs out the answer
/// is [`Decision::Inconclusive`]. A `No` is only returned after the whole
/// normalised space has been covered.
pub fn decide_boxicity_leq(g: &Graph, d: usize, budget: u64) -> Result<Decision> {
    check_decidable(g, d)?;
    let mut meter = Meter::new(budget);
    Ok(match AxisFamily::build(g, &mut meter) {
        Some(family) => family.decide(g, d, &mut meter)?,
        None => Decision::Inconclusive,
    })
}

fn check_decidable(g: &Graph, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph("boxicity of a complete graph is 0"));
    }
    if g.n() > MAX_DECIDE_VERTICES {
        return Err(Error::TooManyVertices(g.n()));
    }
    Ok(())
}

/// All inclusion-maximal single-axis separated sets of a graph.
struct AxisFamily {
    axes: Vec<Axis>,
    full: u128,
}

impl AxisFamily {
    fn build(g: &Graph, meter: &mut Meter) -> Option<Self> {
        Some(Self {
            axes: maximal_axes(g, meter)?,
            full: low_mask128(g.non_edges0().len()),
        })
    }

    fn decide(&self, g: &Graph, d: usize, meter: &mut Meter) -> Result<Decision> {
        let mut failed = HashSet::new();
        Ok(
            match cover(&self.axes, self.full, 0, d, meter, &mut failed) {
                CoverResult::Found(chosen) => {
                    let mut orders: Vec<Vec<usize>> =
                        chosen.iter().map(|&i| self.axes[i].order.clone()).collect();
                    // any order keeps every edge, so extra axes are free
                    while orders.len() < d {
                        orders.push(orders[0].clone());
                    }
                    let arr = realize(g, &orders)?;
                    debug_assert_eq!(intersection_graph(&arr), *g);
                    Decision::Yes(arr)
                }
                CoverResult::Exhausted => Decision::No,
                CoverResult::OutOfBudget => Decision::Inconclusive,
            },
        )
    }
}

struct Meter {
    left: u64,
}

impl Meter {
    fn new(budget: u64) -> Self {
        Self { left: budget }
    }

    fn spend(&mut self, n: u64) -> bool {
        if self.left < n {
            self.left = 0;
            false
        } else {
            self.left -= n;
            true
        }
    }
}

fn low_mask128(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// One inclusion-maximal separated set with an opening order realising it.
#[derive(Debug, Clone)]
struct Axis {
    separated: u128,
    order: Vec<usize>,
}

#[derive(Clone, Copy)]
struct Partial {
    separated: u128,
    order: u64,
}

fn maximal_axes(g: &Graph, meter: &mut Meter) -> Option<Vec<Axis>> {
    let n = g.n();
    let mut pair_bit = vec![vec![0u128; n]; n];
    for (i, (u, v)) in g.non_edges0().into_iter().enumerate() {
        pair_bit[u][v] = 1u128 << i;
        pair_bit[v][u] = 1u128 << i;
    }
    let full = g.vertex_mask();
    let mut layers: Vec<Vec<Partial>> = vec![Vec::new(); 1usize << n];
    layers[0].push(Partial {
        separated: 0,
        order: 0,
    });
    for opened in 0..full {
        let current = std::mem::take(&mut layers[opened as usize]);
        if current.is_empty() {
            continue;
        }
        let closed = bits(opened)
            .filter(|&u| g.row(u) & !opened == 0)
            .fold(0u64, |m, u| m | bit(u));
        let depth = opened.count_ones();
        for v in bits(full & !opened) {
            let gained = bits(closed).fold(0u128, |m, u| m | pair_bit[v][u]);
            let next = (opened | bit(v)) as usize;
            for p in &current {
                let candidate = Partial {
                    separated: p.separated | gained,
                    order: p.order | ((v as u64) << (4 * depth)),
                };
                let target = &mut layers[next];
                if !meter.spend(1 + target.len() as u64) {
                    return None;
                }
                insert_maximal(target, candidate);
            }
        }
    }
    let last = std::mem::take(&mut layers[full as usize]);
    Some(
        last.into_iter()
            .map(|p| Axis {
                separated: p.separated,
                order: (0..n)
                    .map(|i| ((p.order >> (4 * i)) & 0xf) as usize)
                    .collect(),
            })
            .collect(),
    )
}

fn insert_maximal(set: &mut Vec<Partial>, candidate: Partial) {
    let s = candidate.separated;
    if set.iter().any(|t| t.separated & s == s) {
        return;
    }
    set.retain(|t| t.separated & !s != 0);
    set.push(candidate);
}

enum CoverResult {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

/// Picks at most `left` axes covering every non-edge. Branches on the
/// lowest uncovered non-edge, so every cover is reachable.
fn cover(
    axes: &[Axis],
    full: u128,
    covered: u128,
    left: usize,
    meter: &mut Meter,
    failed: &mut HashSet<(u128, usize)>,
) -> CoverResult {
    if covered == full {
        return CoverResult::Found(Vec::new());
    }
    if left == 0 || failed.contains(&(covered, left)) {
        return CoverResult::Exhausted;
    }
    let missing = full & !covered;
    let target = 1u128 << missing.trailing_zeros();
    for (i, axis) in axes.iter().enumerate() {
        if axis.separated & target == 0 {
            continue;
        }
        if !meter.spend(1) {
            return CoverResult::OutOfBudget;
        }
        match cover(
            axes,
            full,
            covered | axis.separated,
            left - 1,
            meter,
            failed,
        ) {
            CoverResult::Found(mut rest) => {
                rest.insert(0, i);
                return CoverResult::Found(rest);
            }
            CoverResult::Exhausted => {}
            CoverResult::OutOfBudget => return CoverResult::OutOfBudget,
        }
    }
    failed.insert((covered, left));
    CoverResult::Exhausted
}

/// Integer coordinates from opening orders: endpoints are event positions,
/// and each interval closes as soon as all of its neighbours have opened.
fn realize(g: &Graph, orders: &[Vec<usize>]) -> Result<Arrangement> {
    let n = g.n();
    let mut sides: Vec<Vec<RationalInterval>> = vec![Vec::with_capacity(orders.len()); n];
    for order in orders {
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        let mut opened = 0u64;
        let mut closed = 0u64;
        let mut pos = 0i64;
        for &v in order {
            lo[v] = pos;
            pos += 1;
            opened |= bit(v);
            for u in bits(opened & !closed) {
                if g.row(u) & !opened == 0 {
                    hi[u] = pos;
                    pos += 1;
                    closed |= bit(u);
                }
            }
        }
        for v in 0..n {
            sides[v].push(RationalInterval::from_ints(lo[v], hi[v])?);
        }
    }
    let boxes = sides
        .into_iter()
        .map(AxisBox::new)
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(orders.len(), boxes)
}

/// Lower and upper bounds on boxicity, closed by search when possible.
#[derive(Debug, Clone, Serialize)]
pub struct BoxicityReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    #[serde(skip)]
    pub witness: Option<Arrangement>,
    pub interval: bool,
    /// Universal vertices removed before applying the degree bound.
    pub stripped_universal: usize,
    /// Degree lower bound evaluated on the graph without universal vertices;
    /// it bounds `G` through induced-subgraph monotonicity.
    pub adiga_on_stripped: Option<usize>,
    /// Whether any search ran out of budget.
    pub budget_exhausted: bool,
}

pub fn boxicity_report(g: &Graph, budget: u64) -> BoxicityReport {
    if g.is_complete() {
        return BoxicityReport {
            lower: 0,
            upper: 0,
            exact: Some(0),
            witness: None,
            interval: true,
            stripped_universal: g.n(),
            adiga_on_stripped: None,
            budget_exhausted: false,
        };
    }
    let searchable = g.n() <= MAX_DECIDE_VERTICES;
    let interval = g.is_interval_graph();
    let (stripped, k) = g.strip_universal().expect("graph is not complete");
    let adiga = adiga_lower_bound(&stripped).ok();
    let mut report = BoxicityReport {
        lower: 1,
        upper: roberts_upper_bound(g),
        exact: None,
        witness: None,
        interval,
        stripped_universal: k,
        adiga_on_stripped: adiga,
        budget_exhausted: false,
    };
    if interval {
        report.upper = 1;
    } else {
        report.lower = report.lower.max(2);
    }
    if let Some(a) = adiga {
        report.lower = report.lower.max(a);
    }
    if !searchable {
        if report.lower == report.upper {
            report.exact = Some(report.lower);
        }
        return report;
    }
    let mut meter = Meter::new(budget);
    let Some(family) = AxisFamily::build(g, &mut meter) else {
        report.budget_exhausted = true;
        return report;
    };
    let mut attempt = |d: usize, report: &mut BoxicityReport| -> Decision {
        let decision = family
            .decide(g, d, &mut meter)
            .expect("orders realise the graph");
        if decision == Decision::Inconclusive {
            report.budget_exhausted = true;
        }
        decision
    };
    let mut d = report.lower;
    while d < report.upper {
        match attempt(d, &mut report) {
            Decision::Yes(w) => {
                report.exact = Some(d);
                report.upper = d;
                report.witness = Some(w);
                return report;
            }
            Decision::No => {
                report.lower = d + 1;
                d += 1;
            }
            Decision::Inconclusive => return report,
        }
    }
    report.exact = Some(report.upper);
    if let Decision::Yes(w) = attempt(report.upper, &mut report) {
        report.witness = Some(w);
    }
    report
}
