//! The logarithmic-derivative error term `log⁺(T(R)·R/((R−r)·r))` and the
//! upper bounds each lemma variant gives for it at `R = r + h(T(r))`.
//!
//! All logarithms are natural and `log⁺x = max(ln x, 0)`.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{EvalError, GrowthFunction};
use crate::lemma::{rhs_threshold, step_size, LemmaError, VariantKind, VariantSpec};

/// Absolute slack allowed when checking `lhs ≤ bound`.
pub const DOMINANCE_SLACK: f64 = 1e-9;
/// Values closer than this (relative) are flagged as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;
/// Smallest `t` at which the asymptotic orderings are checked.
pub const ASYMPTOTIC_T: f64 = 1e4;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum BoundError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
}

fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), BoundError> {
    if cond {
        Ok(())
    } else {
        Err(BoundError::Domain(msg()))
    }
}

fn check_common(t: f64, r: f64, s: f64, t_min: f64) -> Result<(), BoundError> {
    check(t >= t_min && t.is_finite(), || {
        format!("t = {t} must be finite and at least {t_min}")
    })?;
    check(r > 0.0 && r.is_finite(), || format!("r = {r} must be positive"))?;
    check(s > 1.0 && s.is_finite(), || format!("s = {s} must exceed 1"))
}

/// `log⁺(T(R)·R/((R−r)·r))` for `0 < r < R`.
pub fn eq4_term(t: &dyn GrowthFunction, r: f64, big_r: f64) -> Result<f64, BoundError> {
    check(r > 0.0 && big_r > r, || {
        format!("need 0 < r < R, got r = {r}, R = {big_r}")
    })?;
    let tr = t.eval_f64(big_r)?;
    Ok(log_term(tr, r, big_r - r))
}

/// The same term with `R = r + h`, taking the step directly so tiny steps
/// do not lose precision in `R − r`.
pub fn eq4_term_step(t: &dyn GrowthFunction, r: f64, h: f64) -> Result<f64, BoundError> {
    check(r > 0.0 && h > 0.0, || {
        format!("need r > 0 and h > 0, got r = {r}, h = {h}")
    })?;
    let tr = t.eval_f64(r + h)?;
    Ok(log_term(tr, r, h))
}

fn log_term(t_at_big_r: f64, r: f64, h: f64) -> f64 {
    log_term_ln(t_at_big_r, r, h, h.ln())
}

/// `ln T(R) + ln(1 + h/r) − ln h` clamped at 0, with `ln h` supplied so that
/// steps below the f64 range (h = e^{-T} for large T) stay exact.
fn log_term_ln(t_at_big_r: f64, r: f64, h: f64, ln_h: f64) -> f64 {
    if !(t_at_big_r > 0.0) {
        return 0.0;
    }
    let v = t_at_big_r.ln() + (h / r).ln_1p() - ln_h;
    v.max(0.0)
}

/// `ln h(t)` computed without forming `h`.
fn ln_step(v: &VariantSpec, t: f64) -> f64 {
    match v.kind {
        VariantKind::Borel => -t.ln().ln(),
        VariantKind::Nevanlinna => -v.s * t.ln(),
        VariantKind::Hayman | VariantKind::HanLiu => -t.ln(),
        VariantKind::FernandezArias => -t,
    }
}

/// Error term at `R = r + h(T(r))` for the variant's step evaluated at `u`
/// (T(r) itself, or T(r)^σ for FernandezArias).
fn variant_term(t: &dyn GrowthFunction, v: &VariantSpec, r: f64, u: f64) -> Result<(f64, f64), BoundError> {
    check(r > 0.0, || format!("r = {r} must be positive"))?;
    let h = step_size(v, u)?;
    let t_big_r = t.eval_f64(r + h)?;
    Ok((h, log_term_ln(t_big_r, r, h, ln_step(v, u))))
}

/// `s log⁺t + log⁺log⁺t + ln(1 + 1/(r log⁺t))`.
pub fn bound_borel(t: f64, r: f64, s: f64) -> Result<f64, BoundError> {
    check_common(t, r, s, std::f64::consts::E)?;
    Ok(raw_bound(VariantKind::Borel, t, r, s))
}

/// `(s+1) log⁺t + ln(1 + 1/t) + ln(1 + 1/(r t^s))`.
pub fn bound_nevanlinna(t: f64, r: f64, s: f64) -> Result<f64, BoundError> {
    check_common(t, r, s, 1.0)?;
    Ok(raw_bound(VariantKind::Nevanlinna, t, r, s))
}

/// `2 log⁺t + ln s + ln(1 + 1/(r t))`.
pub fn bound_hayman(t: f64, r: f64, s: f64) -> Result<f64, BoundError> {
    check_common(t, r, s, 1.0)?;
    Ok(raw_bound(VariantKind::Hayman, t, r, s))
}

/// `2 log⁺t + s ln(1 + t^{-1/s}) + ln(1 + 1/(r t))`.
pub fn bound_hanliu(t: f64, r: f64, s: f64) -> Result<f64, BoundError> {
    check_common(t, r, s, 1.0)?;
    Ok(raw_bound(VariantKind::HanLiu, t, r, s))
}

/// The formulas without the floor check on `t`; Borel is infinite below e.
fn raw_bound(kind: VariantKind, t: f64, r: f64, s: f64) -> f64 {
    let lt = log_plus(t);
    match kind {
        VariantKind::Borel => s * lt + log_plus(lt) + (1.0 / (r * lt)).ln_1p(),
        VariantKind::Nevanlinna => (s + 1.0) * lt + (1.0 / t).ln_1p() + (1.0 / (r * t.powf(s))).ln_1p(),
        VariantKind::Hayman => 2.0 * lt + s.ln() + (1.0 / (r * t)).ln_1p(),
        VariantKind::HanLiu => 2.0 * lt + s * t.powf(-1.0 / s).ln_1p() + (1.0 / (r * t)).ln_1p(),
        VariantKind::FernandezArias => unreachable!("no s-parametrised bound"),
    }
}

/// `((σ+1)/σ) T^σ + ln(1 + 1/(r e^{T^σ}))` where `t_char` is T(r).
pub fn bound_fa(t_char: f64, r: f64, sigma: f64) -> Result<f64, BoundError> {
    check(sigma > 0.0 && sigma < 1.0, || {
        format!("sigma = {sigma} must lie in (0, 1)")
    })?;
    check(t_char >= 1.0 && t_char.is_finite(), || {
        format!("T = {t_char} must be finite and at least 1")
    })?;
    check(r > 0.0 && r.is_finite(), || format!("r = {r} must be positive"))?;
    let u = t_char.powf(sigma);
    Ok((sigma + 1.0) / sigma * u + ((-u).exp() / r).ln_1p())
}

/// Bound for one of the four parametrised variants.
pub fn bound_for(v: &VariantSpec, t: f64, r: f64) -> Result<f64, BoundError> {
    match v.kind {
        VariantKind::Borel => bound_borel(t, r, v.s),
        VariantKind::Nevanlinna => bound_nevanlinna(t, r, v.s),
        VariantKind::Hayman => bound_hayman(t, r, v.s),
        VariantKind::HanLiu => bound_hanliu(t, r, v.s),
        VariantKind::FernandezArias => Err(BoundError::Domain(
            "the fernandez-arias bound needs sigma; use bound_fa".into(),
        )),
    }
}

/// `(1/(s^{1/s} − 1))^s`: from here on the HanLiu bound is at most Hayman's.
pub fn crossover_threshold(s: f64) -> Result<f64, BoundError> {
    check(s > 1.0 && s.is_finite(), || format!("s = {s} must exceed 1"))?;
    Ok((1.0 / (s.powf(1.0 / s) - 1.0)).powf(s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: VariantKind,
    pub r: f64,
    pub t_at_r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub lhs_eq4: f64,
    pub bound_value: f64,
    pub dominated: bool,
}

impl BoundReport {
    fn new(variant: VariantKind, r: f64, t_at_r: f64, h: f64, lhs: f64, bound: f64) -> Self {
        BoundReport {
            variant,
            r,
            t_at_r,
            big_r: r + h,
            lhs_eq4: lhs,
            bound_value: bound,
            dominated: lhs <= bound + DOMINANCE_SLACK,
        }
    }
}

/// Error term against bound at `r` for a given T. FernandezArias needs
/// `sigma`; its step and threshold then act on `T^σ`.
pub fn bound_report(
    t: &dyn GrowthFunction,
    v: &VariantSpec,
    r: f64,
    sigma: Option<f64>,
) -> Result<BoundReport, BoundError> {
    let tr = t.eval_f64(r)?;
    match v.kind {
        VariantKind::FernandezArias => {
            let sigma = sigma.ok_or_else(|| BoundError::Domain("fernandez-arias needs sigma".into()))?;
            let bound = bound_fa(tr, r, sigma)?;
            let (h, lhs) = variant_term(t, v, r, tr.powf(sigma))?;
            Ok(BoundReport::new(v.kind, r, tr, h, lhs, bound))
        }
        _ => {
            let bound = bound_for(v, tr, r)?;
            let (h, lhs) = variant_term(t, v, r, tr)?;
            Ok(BoundReport::new(v.kind, r, tr, h, lhs, bound))
        }
    }
}

/// Report at the worst case allowed outside the exceptional set,
/// `T(R) = φ(T(r))`, when only the value `t = T(r)` is known.
pub fn extremal_report(v: &VariantSpec, t: f64, r: f64, sigma: Option<f64>) -> Result<BoundReport, BoundError> {
    match v.kind {
        VariantKind::FernandezArias => {
            let sigma = sigma.ok_or_else(|| BoundError::Domain("fernandez-arias needs sigma".into()))?;
            let bound = bound_fa(t, r, sigma)?;
            let u = t.powf(sigma);
            let h = step_size(v, u)?;
            // T(R) = U(R)^{1/σ} with U(R) = e^u, so ln T(R) = u/σ
            let lhs = (u / sigma + (h / r).ln_1p() + u).max(0.0);
            Ok(BoundReport::new(v.kind, r, t, h, lhs, bound))
        }
        _ => {
            let bound = bound_for(v, t, r)?;
            let h = step_size(v, t)?;
            let phi = rhs_threshold(v, t)?;
            let lhs = log_term_ln(phi, r, h, ln_step(v, t));
            Ok(BoundReport::new(v.kind, r, t, h, lhs, bound))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingEntry {
    pub variant: VariantKind,
    pub value: f64,
    /// Within [`TIE_TOLERANCE`] of the next entry.
    pub tied_with_next: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingReport {
    pub s: f64,
    pub t: f64,
    pub r: f64,
    /// Ascending by value.
    pub entries: Vec<OrderingEntry>,
    /// `t ≥ ASYMPTOTIC_T`, where the large-T ordering is claimed.
    pub asymptotic: bool,
    pub expected: Vec<VariantKind>,
}

impl OrderingReport {
    pub fn order(&self) -> Vec<VariantKind> {
        self.entries.iter().map(|e| e.variant).collect()
    }

    pub fn has_ties(&self) -> bool {
        self.entries.iter().any(|e| e.tied_with_next)
    }

    /// `None` outside the asymptotic regime.
    pub fn matches_expected(&self) -> Option<bool> {
        self.asymptotic
            .then(|| !self.has_ties() && self.order() == self.expected)
    }
}

/// Large-T ordering of the four bounds, smallest first.
pub fn expected_order(s: f64) -> Vec<VariantKind> {
    use VariantKind::*;
    if s < 2.0 {
        vec![Borel, HanLiu, Hayman, Nevanlinna]
    } else {
        vec![HanLiu, Hayman, Borel, Nevanlinna]
    }
}

/// The four parametrised bounds at `(t, r)` sorted ascending. Values are
/// raw: below the Borel floor its entry is infinite.
pub fn ordering_report(s: f64, t: f64, r: f64) -> Result<OrderingReport, BoundError> {
    check_common(t, r, s, 1.0)?;
    let mut entries = Vec::with_capacity(4);
    for kind in [
        VariantKind::Borel,
        VariantKind::Nevanlinna,
        VariantKind::Hayman,
        VariantKind::HanLiu,
    ] {
        entries.push(OrderingEntry {
            variant: kind,
            value: raw_bound(kind, t, r, s),
            tied_with_next: false,
        });
    }
    entries.sort_by(|a, b| a.value.total_cmp(&b.value));
    for i in 0..entries.len() - 1 {
        let (a, b) = (entries[i].value, entries[i + 1].value);
        entries[i].tied_with_next = a == b || (b - a).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0);
    }
    Ok(OrderingReport {
        s,
        t,
        r,
        entries,
        asymptotic: t >= ASYMPTOTIC_T,
        expected: expected_order(s),
    })
}
