//! Closed-form bounds: the fractional Helly proportion, `1/(2d)`, the
//! iterated root map `F`, edge bounds and the quadratic growth bound on η.
//!
//! Reals are `f64` and agree with the exact forms to within `1e-12`. Where a
//! value is a quadratic surd it is also returned exactly as [`Surd`].

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `rational + coeff · √radicand` with `radicand` squarefree, or `coeff = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub rational: Ratio<i64>,
    pub coeff: Ratio<i64>,
    pub radicand: i64,
}

impl Surd {
    pub fn from_rational(x: Ratio<i64>) -> Self {
        Self {
            rational: x,
            coeff: Ratio::zero(),
            radicand: 1,
        }
    }

    /// `√x` for a non-negative rational.
    pub fn sqrt(x: Ratio<i64>) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::InvalidParameter(format!("√ of negative {x}")));
        }
        // √(p/q) = √(pq) / q
        let (outside, radicand) = split_square(x.numer() * x.denom());
        let coeff = Ratio::new(outside, *x.denom());
        Ok(if radicand == 1 {
            Self::from_rational(coeff)
        } else {
            Self {
                rational: Ratio::zero(),
                coeff,
                radicand,
            }
        })
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(self.rational) + ratio_f64(self.coeff) * (self.radicand as f64).sqrt()
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    fn scale_shift(self, scale: Ratio<i64>, shift: Ratio<i64>) -> Self {
        Self {
            rational: self.rational * scale + shift,
            coeff: self.coeff * scale,
            radicand: self.radicand,
        }
    }
}

/// Writes `(a ± b√c)/q` over a common denominator.
impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let q = self.rational.denom().lcm(self.coeff.denom());
        let a = (self.rational * q).to_integer();
        let b = (self.coeff * q).to_integer();
        let root = match b.abs() {
            1 => format!("√{}", self.radicand),
            m => format!("{m}√{}", self.radicand),
        };
        let body = match (a, b < 0) {
            (0, false) => root,
            (0, true) => format!("-{root}"),
            (a, neg) => format!("{a} {} {root}", if neg { '-' } else { '+' }),
        };
        if q == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{q}")
        }
    }
}

fn ratio_f64(x: Ratio<i64>) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// `m = s² t` with `t` squarefree; returns `(s, t)`.
fn split_square(mut m: i64) -> (i64, i64) {
    let mut s = 1;
    let mut t = 1;
    let mut p = 2;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            s *= p;
        }
        if m % p == 0 {
            m /= p;
            t *= p;
        }
        p += 1;
    }
    (s, t * m)
}

/// `C(k, d+1) / C(m, d+1)` as `Π (k-i)/(m-i)`, zero when `k <= d`.
fn binomial_ratio(k: usize, m: usize, d: usize) -> Ratio<i64> {
    (0..=d).fold(Ratio::one(), |acc, i| {
        if i >= k {
            Ratio::zero()
        } else {
            acc * Ratio::new((k - i) as i64, (m - i) as i64)
        }
    })
}

fn check_beta(k: usize, m: usize, d: usize) -> Result<()> {
    if !(2 <= k && k <= m) || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= m and d >= 1, got k = {k}, m = {m}, d = {d}"
        )));
    }
    Ok(())
}

/// Fractional Helly proportion `1 - (1 - C(k,d+1)/C(m,d+1))^(1/(d+1))`.
pub fn beta_convex(k: usize, m: usize, d: usize) -> Result<f64> {
    check_beta(k, m, d)?;
    let ratio = binomial_ratio(k, m, d);
    Ok(1.0 - (1.0 - ratio_f64(ratio)).powf(1.0 / (d + 1) as f64))
}

/// Exact value of [`beta_convex`] when it is rational or a square root.
pub fn beta_convex_exact(k: usize, m: usize, d: usize) -> Result<Option<Surd>> {
    check_beta(k, m, d)?;
    let ratio = binomial_ratio(k, m, d);
    Ok(if ratio.is_zero() || ratio.is_one() {
        Some(Surd::from_rational(ratio))
    } else if d == 1 {
        let root = Surd::sqrt(Ratio::one() - ratio)?;
        Some(root.scale_shift(-Ratio::one(), Ratio::one()))
    } else {
        None
    })
}

/// `1/(2d)`.
pub fn main_lower_bound(d: usize) -> Result<Ratio<i64>> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    Ok(Ratio::new(1, 2 * d as i64))
}

/// `F(x) = (-2 - x + √(4 - 4x + 5x²)) / (2(x - 2))` on `[0, 1]`.
pub fn f_map(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "F is defined on [0, 1], got {x}"
        )));
    }
    Ok((-2.0 - x + (4.0 - 4.0 * x + 5.0 * x * x).sqrt()) / (2.0 * (x - 2.0)))
}

/// `F(p/q)` exactly: `(-2q - p + √(4q² - 4pq + 5p²)) / (2(p - 2q))`.
pub fn f_exact(x: Ratio<i64>) -> Result<Surd> {
    if x.is_negative() || x > Ratio::one() {
        return Err(Error::InvalidParameter(format!(
            "F is defined on [0, 1], got {x}"
        )));
    }
    let (p, q) = (*x.numer(), *x.denom());
    let den = 2 * (p - 2 * q);
    let root = Surd::sqrt(Ratio::from_integer(4 * q * q - 4 * p * q + 5 * p * p))?;
    Ok(root.scale_shift(Ratio::new(1, den), Ratio::new(-2 * q - p, den)))
}

/// `F^[d-1](1/2)`. For `d = 0` this is 1: in `R^0` all boxes coincide.
pub fn gamma_lower(d: usize) -> f64 {
    if d == 0 {
        return 1.0;
    }
    (1..d).fold(0.5, |x, _| f_map(x).expect("F maps [0,1] into itself"))
}

/// Exact value of [`gamma_lower`] where it is a surd, i.e. `d <= 2`.
pub fn gamma_lower_exact(d: usize) -> Option<Surd> {
    match d {
        0 => Some(Surd::from_rational(Ratio::one())),
        1 => Some(Surd::from_rational(Ratio::new(1, 2))),
        2 => f_exact(Ratio::new(1, 2)).ok(),
        _ => None,
    }
}

/// `max(0, n(n - ω - 1)/2)`.
pub fn edge_lower_bound(n: usize, omega: usize) -> Result<Ratio<i64>> {
    if omega == 0 || omega > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ω <= n, got ω = {omega}, n = {n}"
        )));
    }
    let (n, omega) = (n as i64, omega as i64);
    Ok(Ratio::new((n * (n - omega - 1)).max(0), 2))
}

/// `r(r+3)/2`.
pub fn eta_quadratic_bound(r: usize) -> usize {
    r * (r + 3) / 2
}

/// `(a, b, c)` of `(γ-2)r² + (2n+γn+2-γ)r + (-γn² - 2n + γn)`.
pub fn quadratic_coefficients(n: usize, gamma: f64) -> (f64, f64, f64) {
    let n = n as f64;
    (
        gamma - 2.0,
        2.0 * n + gamma * n + 2.0 - gamma,
        -gamma * n * n - 2.0 * n + gamma * n,
    )
}

pub fn quadratic_discriminant(n: usize, gamma: f64) -> f64 {
    let (a, b, c) = quadratic_coefficients(n, gamma);
    b * b - 4.0 * a * c
}

/// Smaller root of the quadratic in `r`.
pub fn quadratic_min_root(n: usize, gamma: f64) -> Result<f64> {
    if n < 2 || !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and 0 < γ <= 1, got n = {n}, γ = {gamma}"
        )));
    }
    let (a, b, _) = quadratic_coefficients(n, gamma);
    let disc = quadratic_discriminant(n, gamma);
    // a < 0, so the + branch is the smaller root
    Ok((-b + disc.sqrt()) / (2.0 * a))
}

/// Printed comparison of `1/(2d)` against `F^[d-1](1/2)` for `d = 1..=5`.
pub const PRINTED_TABLE: [(usize, &str, &str); 5] = [
    (1, "0.5", "0.5"),
    (2, "0.25", "0.23"),
    (3, "0.167", "0.11"),
    (4, "0.125", "0.05"),
    (5, "0.1", "0.02"),
];

/// A printed decimal as `(digits, places)`, e.g. `"0.167"` is `(167, 3)`.
fn printed_decimal(s: &str) -> (i64, u32) {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let places = frac.len() as u32;
    let digits = format!("{int}{frac}").parse().expect("printed decimal");
    (digits, places)
}

/// Round half to even at `places` decimals, exactly.
pub fn round_half_even(x: Ratio<i64>, places: u32) -> Ratio<i64> {
    let scale = 10i64.pow(places);
    let scaled = x * scale;
    let floor = scaled.floor();
    let frac = scaled - floor;
    let half = Ratio::new(1, 2);
    let mut k = floor.to_integer();
    if frac > half || (frac == half && k.is_odd()) {
        k += 1;
    }
    Ratio::new(k, scale)
}

/// Whether `printed` is `x` rounded half to even at its own precision.
pub fn matches_rounded(x: Ratio<i64>, printed: &str) -> bool {
    let (digits, places) = printed_decimal(printed);
    round_half_even(x, places) == Ratio::new(digits, 10i64.pow(places))
}

/// Whether `printed` is `x` truncated at its own precision.
pub fn matches_truncated(x: f64, printed: &str) -> bool {
    let (digits, places) = printed_decimal(printed);
    (x * 10f64.powi(places as i32)).floor() as i64 == digits
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub printed_main: &'static str,
    pub printed_gamma: &'static str,
    /// `1/(2d)` rounds half to even to the printed value.
    pub main_matches: bool,
    /// `F^[d-1](1/2)` truncates to the printed value. The printed row
    /// truncates: `0.0570` appears as `0.05` and `0.0285` as `0.02`.
    pub gamma_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub d: usize,
    /// `β(2, 3, d)`.
    pub beta_convex: f64,
    pub beta_convex_exact: Option<String>,
    pub main_lower: String,
    pub main_lower_value: f64,
    pub gamma_lower: f64,
    pub gamma_lower_exact: Option<String>,
    pub table: Option<TableRow>,
}

pub fn bounds_report(d: usize) -> Result<BoundsReport> {
    let main = main_lower_bound(d)?;
    let gamma = gamma_lower(d);
    let table =
        PRINTED_TABLE
            .iter()
            .find(|row| row.0 == d)
            .map(|&(_, printed_main, printed_gamma)| TableRow {
                printed_main,
                printed_gamma,
                main_matches: matches_rounded(main, printed_main),
                gamma_matches: matches_truncated(gamma, printed_gamma),
            });
    Ok(BoundsReport {
        d,
        beta_convex: beta_convex(2, 3, d)?,
        beta_convex_exact: beta_convex_exact(2, 3, d)?.map(|s| s.to_string()),
        main_lower: main.to_string(),
        main_lower_value: ratio_f64(main),
        gamma_lower: gamma,
        gamma_lower_exact: gamma_lower_exact(d).map(|s| s.to_string()),
        table,
    })
}
