use serde::Serialize;

use super::{EvalError, GrowthExpr, GrowthFunction};

/// Relative tolerance for "nondecreasing": `10^(−digits/2)` at the 16
/// digits of the machine evaluator.
pub const MONOTONE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotoneReport {
    /// Samples nondecreasing up to [`MONOTONE_TOLERANCE`].
    pub is_increasing: bool,
    /// Samples strictly increasing (no tolerance).
    pub strictly_increasing: bool,
    pub min_value: f64,
    /// Leftmost grid point whose sample drops below its predecessor (beyond
    /// tolerance), or for strictness failures the first repeated sample.
    pub first_violation: Option<f64>,
    pub grid_points: usize,
    pub r_lo: f64,
    pub r_hi: f64,
}

/// Samples `expr` on `grid` uniformly spaced points of `[r_lo, r_hi]`.
pub fn validate_monotone(expr: &GrowthExpr, r_lo: f64, r_hi: f64, grid: usize) -> Result<MonotoneReport, EvalError> {
    validate_monotone_fn(expr, r_lo, r_hi, grid)
}

/// [`validate_monotone`] for any growth function.
pub fn validate_monotone_fn(
    f: &dyn GrowthFunction,
    r_lo: f64,
    r_hi: f64,
    grid: usize,
) -> Result<MonotoneReport, EvalError> {
    assert!(r_lo < r_hi, "r_lo must be below r_hi");
    assert!(grid >= 2, "grid needs at least two points");
    let step = (r_hi - r_lo) / (grid - 1) as f64;
    let mut min_value = f64::INFINITY;
    let mut prev: Option<f64> = None;
    let mut is_increasing = true;
    let mut strictly = true;
    let mut first_violation = None;
    let mut first_flat = None;
    for i in 0..grid {
        let r = if i + 1 == grid { r_hi } else { r_lo + step * i as f64 };
        let v = f.eval_f64(r)?;
        min_value = min_value.min(v);
        if let Some(p) = prev {
            let tol = MONOTONE_TOLERANCE * p.abs().max(1.0);
            if v < p - tol && is_increasing {
                is_increasing = false;
                first_violation = Some(r);
            }
            if !(v > p) && strictly {
                strictly = false;
                first_flat = Some(r);
            }
        }
        prev = Some(v);
    }
    Ok(MonotoneReport {
        is_increasing,
        strictly_increasing: strictly,
        min_value,
        first_violation: first_violation.or(first_flat),
        grid_points: grid,
        r_lo,
        r_hi,
    })
}
