//! Exposed boxes, the split `B -> (B', B'')` and the edge-count bounds built
//! on the identity `f_k(B) = f_k(B') + f_{k-1}(B'')`.
//!
//! A box `Q` is exposed by an axis-parallel hyperplane `H` when `H` supports
//! `Q` and every box missing `H` lies on the other side of `H` from `Q`.
//!
//! Sweeping a hyperplane in from infinity, the first box it *supports* need
//! not be exposed: the boxes behind it lie on its side. What does work is
//! the box whose near face is furthest along the sweep direction, i.e. the
//! largest lower endpoint on an axis (or, mirrored, the smallest upper
//! endpoint). Every other box either reaches that coordinate, and so meets
//! `H`, or ends strictly before it, on the far side.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    f_vector, f_vector_of_family, intersect_boxes, Arrangement, AxisBox, Rational,
};
use crate::search::EtaTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Face {
    /// `H` passes through the lower endpoint; the box lies on `x >= c`.
    LowerFace,
    /// `H` passes through the upper endpoint; the box lies on `x <= c`.
    UpperFace,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExposureCertificate {
    /// 1-based.
    pub box_index: usize,
    /// 1-based.
    pub axis: usize,
    pub side: Face,
    pub coordinate: Rational,
}

/// Checks the two defining conditions directly against every box.
pub fn validate_exposure(arr: &Arrangement, cert: &ExposureCertificate) -> bool {
    if cert.axis == 0 || cert.axis > arr.dimension() {
        return false;
    }
    let Ok(q) = arr.get(cert.box_index) else {
        return false;
    };
    let axis = cert.axis - 1;
    let c = cert.coordinate;
    let side = q.side(axis);
    // supporting: touches H and sits in one closed half-space
    let supports = match cert.side {
        Face::LowerFace => side.lo() == c,
        Face::UpperFace => side.hi() == c,
    };
    if !supports {
        return false;
    }
    arr.boxes().iter().enumerate().all(|(i, p)| {
        if i + 1 == cert.box_index {
            return true;
        }
        let s = p.side(axis);
        let meets = s.lo() <= c && c <= s.hi();
        if meets {
            return true;
        }
        let above = s.lo() > c;
        match cert.side {
            Face::LowerFace => !above,
            Face::UpperFace => above,
        }
    })
}

/// The `2d` extremal candidates, in (axis, lower before upper) order.
pub fn exposure_candidates(arr: &Arrangement) -> Vec<ExposureCertificate> {
    let mut out = Vec::with_capacity(2 * arr.dimension());
    for axis in 0..arr.dimension() {
        let boxes = arr.boxes();
        // lowest index among ties
        let (lo_idx, lo) = boxes
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.side(axis).lo()))
            .fold(None, |best: Option<(usize, Rational)>, (i, x)| match best {
                Some((_, bx)) if bx >= x => best,
                _ => Some((i, x)),
            })
            .expect("arrangement is non-empty");
        out.push(ExposureCertificate {
            box_index: lo_idx + 1,
            axis: axis + 1,
            side: Face::LowerFace,
            coordinate: lo,
        });
        let (hi_idx, hi) = boxes
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.side(axis).hi()))
            .fold(None, |best: Option<(usize, Rational)>, (i, x)| match best {
                Some((_, bx)) if bx <= x => best,
                _ => Some((i, x)),
            })
            .expect("arrangement is non-empty");
        out.push(ExposureCertificate {
            box_index: hi_idx + 1,
            axis: axis + 1,
            side: Face::UpperFace,
            coordinate: hi,
        });
    }
    out
}

/// First validated exposure certificate: lowest axis, lower face before
/// upper face, lowest box index.
pub fn find_exposed(arr: &Arrangement) -> ExposureCertificate {
    exposure_candidates(arr)
        .into_iter()
        .find(|c| validate_exposure(arr, c))
        .expect("the extremal box on any axis is exposed")
}

/// `B'` drops box `index`; `B''` pairs every other original index with its
/// intersection with box `index`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub removed: usize,
    pub prime: Arrangement,
    /// Original 1-based indices of the boxes in `prime`.
    pub prime_indices: Vec<usize>,
    pub double_prime: Vec<(usize, Option<AxisBox>)>,
}

impl Split {
    pub fn present_count(&self) -> usize {
        self.double_prime
            .iter()
            .filter(|(_, b)| b.is_some())
            .count()
    }
}

pub fn split(arr: &Arrangement, index: usize) -> Result<Split> {
    if arr.len() < 2 {
        return Err(Error::SplitTooSmall);
    }
    let pivot = arr.get(index)?;
    let keep: Vec<usize> = (0..arr.len()).filter(|&i| i + 1 != index).collect();
    let prime = arr.select(&keep)?;
    let mut double_prime = Vec::with_capacity(keep.len());
    for &i in &keep {
        double_prime.push((i + 1, intersect_boxes(pivot, &arr.boxes()[i])?));
    }
    Ok(Split {
        removed: index,
        prime,
        prime_indices: keep.iter().map(|i| i + 1).collect(),
        double_prime,
    })
}

/// `f_k(B) == f_k(B') + f_{k-1}(B'')` for the split at `index`.
pub fn split_identity_holds(arr: &Arrangement, index: usize, k: usize) -> Result<bool> {
    if k == 0 || k >= arr.len() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must lie in 1..={}",
            arr.len().saturating_sub(1)
        )));
    }
    let s = split(arr, index)?;
    let whole = f_vector(arr);
    let prime = f_vector(&s.prime);
    let family: Vec<Option<&AxisBox>> = s.double_prime.iter().map(|(_, b)| b.as_ref()).collect();
    let double = f_vector_of_family(&family);
    Ok(whole.get(k) == prime.get(k) + double.get(k - 1))
}

/// The split identity at the box returned by [`find_exposed`].
pub fn verify_split_identity(arr: &Arrangement, k: usize) -> Result<bool> {
    let cert = find_exposed(arr);
    split_identity_holds(arr, cert.box_index, k)
}

fn binom2(r: usize) -> u64 {
    (r * r.saturating_sub(1) / 2) as u64
}

/// Unrolls `e(n,r,d) <= e(n-1,r,d) + η(r-1,d-1)` down to `e(r,r,d) = C(r,2)`.
///
/// `η(r-1, d-1)` comes from the table's dimensional entries when known and
/// otherwise from the dimension-free `η(r-1)`, which bounds it from above.
pub fn e_upper_recurrence(n: usize, r: usize, d: usize, table: &EtaTable) -> Result<u64> {
    if !(2 <= r && r <= n) || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= r >= 2 and d >= 1, got n = {n}, r = {r}, d = {d}"
        )));
    }
    let step = table
        .eta_dim(r - 1, d - 1)
        .or_else(|| table.eta_bound(r - 1))
        .ok_or_else(|| Error::MissingEta(format!("η({}, {}) or η({})", r - 1, d - 1, r - 1)))?;
    Ok(binom2(r) + (n - r) as u64 * step as u64)
}

/// `C(r,2) + (n - r)(r - 1) / γ(d-1)`.
pub fn e_upper_closed(n: usize, r: usize, d: usize, gamma_prev: f64) -> Result<f64> {
    if !(2 <= r && r <= n) || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= r >= 2 and d >= 1, got n = {n}, r = {r}, d = {d}"
        )));
    }
    if gamma_prev.is_nan() || gamma_prev <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "γ(d-1) must be positive, got {gamma_prev}"
        )));
    }
    Ok(binom2(r) as f64 + (n - r) as f64 * (r - 1) as f64 / gamma_prev)
}
