//! Exact axis-parallel boxes and the combinatorics of their arrangements.
//!
//! All coordinates are rationals and every predicate is exact. Boxes are
//! closed, so two boxes that only touch along a face intersect.

use std::fmt;

use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

/// A closed, non-empty interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn from_ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(Rational::from_integer(lo), Rational::from_integer(hi))
    }

    pub fn lo(&self) -> Rational {
        self.lo
    }

    pub fn hi(&self) -> Rational {
        self.hi
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A d-box: the cartesian product of `d` closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisBox {
    sides: Vec<RationalInterval>,
}

impl AxisBox {
    pub fn new(sides: Vec<RationalInterval>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { sides })
    }

    /// Builds a box from integer `(lo, hi)` pairs, one per axis.
    pub fn from_ints(sides: &[(i64, i64)]) -> Result<Self> {
        let sides = sides
            .iter()
            .map(|&(lo, hi)| RationalInterval::from_ints(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sides)
    }

    pub fn dimension(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[RationalInterval] {
        &self.sides
    }

    pub fn side(&self, axis: usize) -> &RationalInterval {
        &self.sides[axis]
    }

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        self.sides.iter().zip(point).all(|(s, &x)| s.contains(x))
    }

    fn intersect_unchecked(&self, other: &Self) -> Option<Self> {
        let sides = self
            .sides
            .iter()
            .zip(&other.sides)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { sides })
    }

    fn meets(&self, other: &Self) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.lo.max(b.lo) <= a.hi.min(b.hi))
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Coordinate-wise intersection of two boxes of equal dimension.
pub fn intersect_boxes(a: &AxisBox, b: &AxisBox) -> Result<Option<AxisBox>> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            found: b.dimension(),
        });
    }
    Ok(a.intersect_unchecked(b))
}

/// An indexed family of d-boxes, `B_1, ..., B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dimension: usize,
    boxes: Vec<AxisBox>,
}

impl Arrangement {
    pub fn new(dimension: usize, boxes: Vec<AxisBox>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if boxes.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        for b in &boxes {
            if b.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: b.dimension(),
                });
            }
        }
        Ok(Self { dimension, boxes })
    }

    pub fn from_int_boxes(dimension: usize, boxes: &[&[(i64, i64)]]) -> Result<Self> {
        let boxes = boxes
            .iter()
            .map(|b| AxisBox::from_ints(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dimension, boxes)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    /// Box with 1-based index `index`.
    pub fn get(&self, index: usize) -> Result<&AxisBox> {
        index
            .checked_sub(1)
            .and_then(|i| self.boxes.get(i))
            .ok_or(Error::BoxIndexOutOfRange {
                index,
                n: self.boxes.len(),
            })
    }

    /// Sub-arrangement on the given 0-based positions.
    pub fn select(&self, positions: &[usize]) -> Result<Self> {
        let boxes = positions.iter().map(|&i| self.boxes[i].clone()).collect();
        Self::new(self.dimension, boxes)
    }
}

/// Graph on `1..=n` with `{i, j}` an edge iff `B_i` and `B_j` intersect.
pub fn intersection_graph(arr: &Arrangement) -> Graph {
    let n = arr.len();
    let mut g = Graph::empty(n).expect("arrangement size exceeds graph capacity");
    for i in 0..n {
        for j in i + 1..n {
            if arr.boxes[i].meets(&arr.boxes[j]) {
                g.add_edge0(i, j);
            }
        }
    }
    g
}

/// Largest number of boxes sharing a common point.
///
/// Any family of boxes with a common point contains the point whose
/// coordinates are the largest lower endpoints of the family, so it is
/// enough to probe the grid of lower endpoints.
pub fn agreement_number(arr: &Arrangement) -> usize {
    let d = arr.dimension;
    let mut axes: Vec<Vec<Rational>> = (0..d)
        .map(|k| {
            let mut v: Vec<_> = arr.boxes.iter().map(|b| b.sides[k].lo).collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let mut best = 0;
    let mut point = vec![Rational::one(); d];
    grid_scan(arr, &mut axes, 0, &mut point, &mut best);
    best
}

fn grid_scan(
    arr: &Arrangement,
    axes: &mut [Vec<Rational>],
    axis: usize,
    point: &mut Vec<Rational>,
    best: &mut usize,
) {
    if axis == axes.len() {
        let depth = arr.boxes.iter().filter(|b| b.contains_point(point)).count();
        *best = (*best).max(depth);
        return;
    }
    for i in 0..axes[axis].len() {
        point[axis] = axes[axis][i];
        grid_scan(arr, axes, axis + 1, point, best);
    }
}

/// Agreement number over the number of boxes.
pub fn agreement_proportion(arr: &Arrangement) -> Ratio<u64> {
    Ratio::new(agreement_number(arr) as u64, arr.len() as u64)
}

/// Counts `f_k` of non-empty `(k+1)`-fold intersections, `k = 0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector {
    entries: Vec<u64>,
}

impl FVector {
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// `f_k`, zero beyond the stored range.
    pub fn get(&self, k: usize) -> u64 {
        self.entries.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Exact f-vector of an arrangement.
///
/// Subsets are grown in increasing index order while carrying the running
/// intersection, so a branch dies as soon as its prefix is empty. The cost is
/// proportional to the number of intersecting subfamilies; it is intended for
/// arrangements of a dozen or so boxes.
pub fn f_vector(arr: &Arrangement) -> FVector {
    let family: Vec<Option<&AxisBox>> = arr.boxes.iter().map(Some).collect();
    f_vector_of_family(&family)
}

/// f-vector of a family in which some members may be absent; a subset
/// containing an absent member never counts.
pub fn f_vector_of_family(family: &[Option<&AxisBox>]) -> FVector {
    let mut entries = vec![0u64; family.len()];
    for (i, b) in family.iter().enumerate() {
        if let Some(b) = b {
            count_from(family, i + 1, (*b).clone(), 0, &mut entries);
        }
    }
    FVector { entries }
}

fn count_from(
    family: &[Option<&AxisBox>],
    start: usize,
    running: AxisBox,
    k: usize,
    entries: &mut [u64],
) {
    entries[k] += 1;
    for j in start..family.len() {
        if let Some(b) = family[j] {
            if let Some(next) = running.intersect_unchecked(b) {
                count_from(family, j + 1, next, k + 1, entries);
            }
        }
    }
}

/// Every three boxes contain an intersecting pair.
pub fn is_agreeable_arrangement(arr: &Arrangement) -> bool {
    let n = arr.len();
    let b = &arr.boxes;
    for i in 0..n {
        for j in i + 1..n {
            if b[i].meets(&b[j]) {
                continue;
            }
            for k in j + 1..n {
                if !b[i].meets(&b[k]) && !b[j].meets(&b[k]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z5() -> Arrangement {
        Arrangement::from_int_boxes(
            2,
            &[
                &[(1, 4), (0, 5)],
                &[(0, 2), (3, 12)],
                &[(3, 6), (4, 6)],
                &[(5, 7), (5, 10)],
                &[(1, 6), (7, 9)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn interval_rejects_inverted_endpoints() {
        assert!(RationalInterval::from_ints(2, 1).is_err());
        assert!(RationalInterval::from_ints(1, 1).is_ok());
    }

    #[test]
    fn intersection_is_idempotent() {
        let b = AxisBox::from_ints(&[(0, 3), (1, 2)]).unwrap();
        assert_eq!(intersect_boxes(&b, &b).unwrap(), Some(b));
    }

    #[test]
    fn z5_first_two_boxes_meet_in_expected_box() {
        let arr = z5();
        let got = intersect_boxes(arr.get(1).unwrap(), arr.get(2).unwrap()).unwrap();
        assert_eq!(got, Some(AxisBox::from_ints(&[(1, 2), (3, 5)]).unwrap()));
    }

    #[test]
    fn disjoint_boxes_have_no_intersection() {
        let a = AxisBox::from_ints(&[(0, 1), (0, 1)]).unwrap();
        let b = AxisBox::from_ints(&[(2, 3), (2, 3)]).unwrap();
        assert_eq!(intersect_boxes(&a, &b).unwrap(), None);
    }

    #[test]
    fn touching_boxes_intersect() {
        let a = AxisBox::from_ints(&[(0, 1), (0, 1)]).unwrap();
        let b = AxisBox::from_ints(&[(1, 2), (1, 3)]).unwrap();
        let p = AxisBox::from_ints(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(intersect_boxes(&a, &b).unwrap(), Some(p));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = AxisBox::from_ints(&[(0, 1)]).unwrap();
        let b = AxisBox::from_ints(&[(0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            intersect_boxes(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Arrangement::new(1, vec![a, b]).is_err());
    }

    #[test]
    fn z5_is_a_five_cycle_with_proportion_two_fifths() {
        let arr = z5();
        let g = intersection_graph(&arr);
        assert_eq!(g.edge_count(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(agreement_number(&arr), 2);
        assert_eq!(agreement_proportion(&arr), Ratio::new(2, 5));
        let f = f_vector(&arr);
        assert_eq!(f.entries(), &[5, 5, 0, 0, 0]);
    }

    #[test]
    fn single_box_invariants() {
        let arr = Arrangement::from_int_boxes(3, &[&[(0, 1), (0, 1), (0, 1)]]).unwrap();
        let g = intersection_graph(&arr);
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(agreement_number(&arr), 1);
        assert_eq!(f_vector(&arr).entries(), &[1]);
    }

    #[test]
    fn identical_boxes_all_agree() {
        let b: &[(i64, i64)] = &[(0, 2), (5, 7)];
        let arr = Arrangement::from_int_boxes(2, &[b, b, b, b]).unwrap();
        assert_eq!(agreement_number(&arr), 4);
        assert_eq!(agreement_proportion(&arr), Ratio::new(1, 1));
        assert_eq!(f_vector(&arr).entries(), &[4, 6, 4, 1]);
    }

    #[test]
    fn absent_members_kill_subsets() {
        let a = AxisBox::from_ints(&[(0, 2)]).unwrap();
        let b = AxisBox::from_ints(&[(1, 3)]).unwrap();
        let f = f_vector_of_family(&[Some(&a), None, Some(&b)]);
        assert_eq!(f.entries(), &[2, 1, 0]);
    }

    #[test]
    fn degenerate_point_boxes_are_legal() {
        let arr = Arrangement::from_int_boxes(2, &[&[(1, 1), (1, 1)], &[(0, 2), (0, 2)]]).unwrap();
        assert_eq!(intersection_graph(&arr).edge_count(), 1);
        assert_eq!(agreement_number(&arr), 2);
    }

    fn arb_arrangement() -> impl Strategy<Value = Arrangement> {
        (1usize..4).prop_flat_map(|d| {
            prop::collection::vec(prop::collection::vec((0i64..12, 0i64..6), d), 1..9).prop_map(
                move |boxes| {
                    let boxes = boxes
                        .iter()
                        .map(|sides| {
                            let sides: Vec<(i64, i64)> =
                                sides.iter().map(|&(lo, len)| (lo, lo + len)).collect();
                            AxisBox::from_ints(&sides).unwrap()
                        })
                        .collect();
                    Arrangement::new(d, boxes).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn helly_depth_is_clique_number(arr in arb_arrangement()) {
            let depth = agreement_number(&arr);
            prop_assert_eq!(depth, intersection_graph(&arr).clique_number());
            let fv = f_vector(&arr);
            prop_assert_eq!(fv.entries().iter().rposition(|&c| c > 0).map_or(0, |k| k + 1), depth);
        }

        #[test]
        fn intersection_lies_in_both(arr in arb_arrangement()) {
            let b = arr.boxes();
            for i in 0..b.len() {
                for j in 0..b.len() {
                    let ij = intersect_boxes(&b[i], &b[j]).unwrap();
                    prop_assert_eq!(&ij, &intersect_boxes(&b[j], &b[i]).unwrap());
                    if let Some(x) = ij {
                        let corner: Vec<Rational> = x.sides().iter().map(|s| s.lo()).collect();
                        prop_assert!(b[i].contains_point(&corner) && b[j].contains_point(&corner));
                    }
                }
            }
        }

        #[test]
        fn agreeable_arrangement_matches_graph(arr in arb_arrangement()) {
            prop_assert_eq!(is_agreeable_arrangement(&arr), intersection_graph(&arr).is_agreeable(2, 3));
        }
    }
}
