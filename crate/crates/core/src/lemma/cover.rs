//! The inductive cover `r0 ≤ r_1 < r'_1 ≤ r_2 < r'_2 ≤ …`: `r_j` is the
//! leftmost exceptional point at or after `r'_{j-1}`, and `r'_j` the least
//! `r > r_j` with `T(r) = φ(T(r_j))`.

use serde::Serialize;

use super::{
    chain_bound, measure_bound, rhs_threshold, scan_violations_with, step_size, IntervalSet, LemmaError, ScanOptions,
    ScanReport, VariantSpec,
};
use crate::expr::GrowthFunction;
use crate::specfun::Enclosure;

/// Relative allowance when comparing machine-computed step lengths against
/// chain values.
const CHAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverStep {
    pub r: f64,
    pub r_prime: f64,
    pub t_at_r: f64,
    pub certified_length_bound: f64,
    /// φ(T(r_j)) = T(r'_j).
    pub threshold_value: f64,
}

impl CoverStep {
    pub fn length(&self) -> f64 {
        self.r_prime - self.r
    }

    pub fn within_bound(&self) -> bool {
        self.length() <= self.certified_length_bound * (1.0 + CHAIN_SLACK)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSequence {
    pub steps: Vec<CoverStep>,
    /// No exceptional point remains below the horizon.
    pub exhausted: bool,
    pub r0: f64,
    pub r_max: f64,
    pub t_at_r0: f64,
    pub chain_sum: f64,
    pub warnings: Vec<String>,
}

impl CoverSequence {
    pub fn as_set(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.steps.iter().map(|s| (s.r, s.r_prime)).collect())
    }

    pub fn steps_within_bounds(&self) -> bool {
        self.steps.iter().all(CoverStep::within_bound)
    }

    /// `r_j < r'_j ≤ r_{j+1}` throughout.
    pub fn is_interleaved(&self) -> bool {
        self.steps.iter().all(|s| s.r < s.r_prime)
            && self.steps.windows(2).all(|w| w[0].r_prime <= w[1].r)
            && self.steps.first().is_none_or(|s| s.r >= self.r0)
    }

    /// Start-aware bound on the full chain and the part of it not used by the
    /// steps taken (the slack left for exceptional points beyond the horizon).
    pub fn chain_total(&self, v: &VariantSpec, digits: u32) -> Result<(Enclosure, f64), LemmaError> {
        let total = measure_bound(v, Some(self.t_at_r0), digits)?;
        let slack = total.hi_f64() - self.chain_sum;
        Ok((total, slack))
    }
}

/// Cover with the default scan options.
pub fn build_cover(
    t: &dyn GrowthFunction,
    v: &VariantSpec,
    r0: f64,
    r_max: f64,
    max_steps: usize,
) -> Result<CoverSequence, LemmaError> {
    let opts = ScanOptions::default();
    let scan = scan_violations_with(t, v, r0, r_max, opts)?;
    build_cover_from_scan(t, v, &scan, max_steps)
}

/// Cover built on an existing scan of the same function and variant.
pub fn build_cover_from_scan(
    t: &dyn GrowthFunction,
    v: &VariantSpec,
    scan: &ScanReport,
    max_steps: usize,
) -> Result<CoverSequence, LemmaError> {
    let tau = scan.t_at_r0;
    let mut steps: Vec<CoverStep> = Vec::new();
    let mut warnings = Vec::new();
    let mut pos = scan.r0;
    let exhausted = loop {
        if steps.len() >= max_steps {
            break false;
        }
        let Some(rj) = scan.set.first_at_or_after(pos) else {
            break true;
        };
        if rj > scan.r_max {
            break true;
        }
        let tj = t.eval_f64(rj)?;
        let h = step_size(v, tj)?;
        let thr = rhs_threshold(v, tj)?;
        let right = rj + h;
        if !(right > rj) || !thr.is_finite() {
            warnings.push(format!("step at r = {rj} is below machine resolution; cover stopped"));
            break false;
        }
        let t_right = t.eval_f64(right)?;
        let r_prime = if t_right >= thr {
            first_crossing(t, thr, rj, right, scan.tol)?
        } else if t_right >= thr * (1.0 - 1e-9) {
            right
        } else {
            warnings.push(format!(
                "T(r + h) = {t_right} stays below the threshold {thr} at r = {rj}; cover stopped"
            ));
            break false;
        };
        let j = steps.len() + 1;
        steps.push(CoverStep {
            r: rj,
            r_prime,
            t_at_r: tj,
            certified_length_bound: chain_bound(v, tau, j),
            threshold_value: thr,
        });
        pos = r_prime;
    };
    let chain_sum = steps.iter().fold(0.0, |acc, s| acc + s.certified_length_bound);
    Ok(CoverSequence {
        steps,
        exhausted,
        r0: scan.r0,
        r_max: scan.r_max,
        t_at_r0: tau,
        chain_sum,
        warnings,
    })
}

/// Least `r` in `(a, b]` with `T(r) ≥ level`, given `T(a) < level ≤ T(b)`;
/// returns the upper end of the final bracket.
fn first_crossing(t: &dyn GrowthFunction, level: f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64, LemmaError> {
    while b - a > tol {
        let m = a + (b - a) / 2.0;
        if m <= a || m >= b {
            break;
        }
        if t.eval_f64(m)? >= level {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(b)
}
