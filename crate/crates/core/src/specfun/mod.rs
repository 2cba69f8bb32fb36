//! Certified evaluation of the series constants that bound exceptional sets:
//! the geometric sum γ(s) = s/(s−1), the Riemann and Hurwitz zeta functions
//! on real s > 1, the fractional-part gap integral, and the exponential
//! tower sum S_e.
//!
//! All high-precision results are [`Enclosure`]s: intervals that provably
//! contain the true value, with truncation remainders folded in.

pub mod bernoulli;
mod gap;
pub mod interval;
mod tower;
mod zeta;

use serde::Serialize;
use thiserror::Error;

pub use gap::{zeta_gap_quadrature, zeta_gap_quadrature_with, GAP_MAX_INTERVALS};
pub use interval::{bits_for_digits, Arith, Interval};
pub use tower::{
    doubling_term, tower_constant_se, tower_dominates_doubling, tower_sum_from, tower_tail_bound, tower_terms,
    DoublingTerm, TowerConstant, TowerMagnitude, TowerTerm, TOWER_MAX_DIGITS,
};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_interval, riemann_zeta, shift_count};

/// Default decimal digits for certified evaluations.
pub const DEFAULT_DIGITS: u32 = 30;

/// Digits range accepted by the zeta evaluators.
pub const MIN_DIGITS: u32 = 5;
pub const MAX_DIGITS: u32 = 500;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("s = {0} is outside the convergence region s > 1 (γ(1) and ζ(1) diverge)")]
    SeriesDiverges(f64),
    #[error("shift parameter a = {0} must be positive")]
    NonPositiveShift(f64),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("cannot parse decimal literal {0:?}")]
    BadLiteral(String),
    #[error("digits = {digits} outside supported range {min}..={max}")]
    Precision { digits: u32, min: u32, max: u32 },
    #[error("could not reach the requested width: {0}")]
    Shortfall(String),
}

/// Certified enclosure `[lo, hi]` of a real number, computed at `digits`
/// decimal digits.
#[derive(Clone, Debug)]
pub struct Enclosure {
    interval: Interval,
    digits: u32,
}

/// Serialized form: decimal strings, never binary floats.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct EnclosureJson {
    pub lo: String,
    pub hi: String,
    pub digits: u32,
}

impl Enclosure {
    pub fn new(interval: Interval, digits: u32) -> Self {
        Enclosure { interval, digits }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Fractional digits used when printing the endpoints.
    pub fn print_digits(&self) -> usize {
        self.digits as usize + 2
    }

    /// Lower endpoint, rounded down to a decimal string.
    pub fn lo_decimal(&self) -> String {
        interval::to_fixed_decimal(self.interval.lo(), self.print_digits(), false)
    }

    /// Upper endpoint, rounded up to a decimal string.
    pub fn hi_decimal(&self) -> String {
        interval::to_fixed_decimal(self.interval.hi(), self.print_digits(), true)
    }

    pub fn lo_f64(&self) -> f64 {
        self.interval.lo_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.interval.hi_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.interval.mid_f64()
    }

    pub fn width_f64(&self) -> f64 {
        let a = Arith::new(self.interval.lo().precision().unwrap_or(128).max(64));
        Interval::point(a.width(&self.interval)).hi_f64()
    }

    /// `hi − lo ≤ 10^(2 − digits)`, checked in big-float arithmetic.
    pub fn meets_width_contract(&self) -> bool {
        let mut a = Arith::with_digits(self.digits);
        let w = Interval::point(a.width(&self.interval));
        let limit = if self.digits >= 2 {
            a.ten_pow_neg(self.digits - 2)
        } else {
            a.from_u64(1)
        };
        w.certainly_le(&limit)
    }

    /// True if the exact value `x` (given as a decimal literal) lies in the enclosure.
    pub fn contains_decimal(&self, x: &str) -> bool {
        let mut a = Arith::with_digits(self.digits + 10);
        match a.from_decimal(x) {
            Ok(v) => v.subset_of(&self.interval),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> EnclosureJson {
        EnclosureJson {
            lo: self.lo_decimal(),
            hi: self.hi_decimal(),
            digits: self.digits,
        }
    }
}

pub(crate) fn check_digits(digits: u32) -> Result<(), SpecfunError> {
    if (MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        Ok(())
    } else {
        Err(SpecfunError::Precision {
            digits,
            min: MIN_DIGITS,
            max: MAX_DIGITS,
        })
    }
}

/// Geometric-progression sum γ(s) = Σ_{n≥0} s^{-n} = s/(s−1), in closed form.
pub fn gamma_series(s: f64) -> Result<f64, SpecfunError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SpecfunError::SeriesDiverges(s));
    }
    Ok(s / (s - 1.0))
}

/// γ(s) as an interval in the arithmetic context `a`.
pub fn gamma_series_interval(a: &Arith, s: &Interval) -> Result<Interval, SpecfunError> {
    let one = a.from_u64(1);
    if !s.certainly_gt(&one) {
        return Err(SpecfunError::SeriesDiverges(s.mid_f64()));
    }
    let den = a.sub(s, &one);
    a.div(s, &den)
}

/// γ(s) as a certified enclosure.
pub fn gamma_series_enclosure(s: f64, digits: u32) -> Result<Enclosure, SpecfunError> {
    check_digits(digits)?;
    gamma_series(s)?;
    let a = Arith::with_digits(digits);
    let iv = gamma_series_interval(&a, &a.from_f64(s))?;
    Ok(Enclosure::new(iv, digits))
}
