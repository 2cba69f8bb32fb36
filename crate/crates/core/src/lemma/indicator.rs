//! The reversed inequality `T(r + h(T(r))) ≥ φ(T(r))`.
//!
//! Machine precision decides most points. A point is clear of the set when T
//! just above `r + h` is still well below `φ(t)`. Otherwise the comparison is
//! not trusted when the step is too small to move `r` reliably, when `φ(t)` is
//! too close to `t` to be resolved, or when both sides nearly agree;
//! expression-backed functions are then re-evaluated in interval arithmetic
//! at increasing precision.

use super::{rhs_threshold, step_size, LemmaError, VariantKind, VariantSpec};
use crate::expr::{EvalError, EvalErrorKind, GrowthExpr, GrowthFunction};
use crate::specfun::{Arith, Interval};

const CERTIFIED_DIGITS: [u32; 6] = [30, 60, 120, 240, 480, 960];

/// Relative margin by which a machine-precision comparison must clear.
const CLEAR_MARGIN: f64 = 1e-6;

/// True iff `r` belongs to the exceptional set of `v` for `t`.
pub fn violation_indicator(t: &dyn GrowthFunction, v: &VariantSpec, r: f64) -> Result<bool, LemmaError> {
    let tr = t.eval_f64(r)?;
    if tr.is_finite() {
        let h = step_size(v, tr)?;
        let rhs = rhs_threshold(v, tr)?;
        // next_up(r + h) ≥ r + h, so T there bounds T(R) from above; an
        // overflowing φ(t) exceeds every finite value
        let r_hi = (r + h).next_up();
        let rhs_floor = if rhs.is_finite() { rhs } else { f64::MAX };
        if let Ok(lhs_hi) = t.eval_f64(r_hi) {
            if lhs_hi.is_finite() && lhs_hi * (1.0 + CLEAR_MARGIN) < rhs_floor * (1.0 - CLEAR_MARGIN) {
                return Ok(false);
            }
        }
        let moves = h.is_finite() && h >= 1e-9 * r.abs().max(1.0);
        let resolvable = rhs.is_finite() && rhs - tr >= 1e-6 * tr.abs().max(f64::MIN_POSITIVE);
        if moves && resolvable {
            let lhs = t.eval_f64(r + h)?;
            if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
                return Ok(lhs >= rhs);
            }
        }
        match t.expr() {
            Some(e) => certified(e, v, r),
            None => Ok(t.eval_f64(r + h)? >= rhs),
        }
    } else {
        match t.expr() {
            Some(e) => certified(e, v, r),
            None => Err(EvalError {
                kind: EvalErrorKind::Unresolved,
                r,
            }
            .into()),
        }
    }
}

fn step_interval(ar: &mut Arith, v: &VariantSpec, t: &Interval) -> Option<Interval> {
    match v.kind {
        VariantKind::Borel => {
            let l = ar.ln(t).ok()?;
            ar.recip(&l).ok()
        }
        VariantKind::Nevanlinna => {
            let s = ar.from_f64(-v.s);
            ar.pow(t, &s).ok()
        }
        VariantKind::Hayman | VariantKind::HanLiu => ar.recip(t).ok(),
        VariantKind::FernandezArias => {
            let m = ar.neg(t);
            Some(ar.exp(&m))
        }
    }
}

fn rhs_interval(ar: &mut Arith, v: &VariantSpec, t: &Interval) -> Option<Interval> {
    match v.kind {
        VariantKind::Borel => {
            let s = ar.from_f64(v.s);
            ar.pow(t, &s).ok()
        }
        VariantKind::Nevanlinna => {
            let one = ar.from_u64(1);
            Some(ar.add(t, &one))
        }
        VariantKind::Hayman => {
            let s = ar.from_f64(v.s);
            Some(ar.mul(&s, t))
        }
        VariantKind::HanLiu => {
            let s = ar.from_f64(v.s);
            let one = ar.from_u64(1);
            let inv = ar.div(&one, &s).ok()?;
            let root = ar.pow(t, &inv).ok()?;
            let base = ar.add(&root, &one);
            ar.pow(&base, &s).ok()
        }
        VariantKind::FernandezArias => Some(ar.exp(t)),
    }
}

fn certified(e: &GrowthExpr, v: &VariantSpec, r: f64) -> Result<bool, LemmaError> {
    let eval_err = |kind| LemmaError::Eval(EvalError { kind, r });
    for digits in CERTIFIED_DIGITS {
        let mut ar = Arith::with_digits(digits);
        let x = ar.from_f64(r);
        let t = match e.eval_interval(&mut ar, &x) {
            Ok(t) => t,
            Err(EvalErrorKind::Unresolved) => continue,
            Err(kind) => return Err(eval_err(kind)),
        };
        let (Some(h), Some(rhs)) = (step_interval(&mut ar, v, &t), rhs_interval(&mut ar, v, &t)) else {
            continue;
        };
        if !h.is_finite() || !rhs.is_finite() {
            continue;
        }
        let big_r = ar.add(&x, &h);
        let lhs = match e.eval_interval(&mut ar, &big_r) {
            Ok(l) => l,
            Err(EvalErrorKind::Unresolved) => continue,
            Err(kind) => return Err(eval_err(kind)),
        };
        if lhs.certainly_lt(&rhs) {
            return Ok(false);
        }
        if rhs.certainly_le(&lhs) {
            return Ok(true);
        }
        // Both sides pinned far tighter than the gap φ(t) − t: equality,
        // which the closed exceptional set includes.
        let gap = ar.sub(&rhs, &t);
        if gap.is_positive() {
            let w = ar.add(&Interval::point(ar.width(&lhs)), &Interval::point(ar.width(&rhs)));
            let tiny = ar.ten_pow_neg(20);
            let gap_lo = Interval::point(gap.lo().clone());
            let limit = ar.mul(&gap_lo, &tiny);
            if w.certainly_le(&limit) {
                return Ok(true);
            }
        }
    }
    Err(eval_err(EvalErrorKind::Unresolved))
}
