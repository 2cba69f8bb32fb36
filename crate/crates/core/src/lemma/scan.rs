use rayon::prelude::*;
use serde::Serialize;

use super::{step_size, violation_indicator, IntervalSet, LemmaError, VariantSpec};
use crate::expr::{validate_monotone_fn, GrowthFunction, MonotoneReport};

pub const DEFAULT_GRID: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanOptions {
    pub grid: usize,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid: DEFAULT_GRID,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub set: IntervalSet,
    pub r0: f64,
    pub r_max: f64,
    pub grid: usize,
    pub tol: f64,
    /// Value of T at `r0`.
    pub t_at_r0: f64,
    pub monotone: MonotoneReport,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn measure(&self) -> f64 {
        self.set.total_length()
    }
}

/// Exceptional set of `v` for `t` on `[r0, r_max]`.
pub fn scan_violations(
    t: &dyn GrowthFunction,
    v: &VariantSpec,
    r0: f64,
    r_max: f64,
    grid: usize,
    tol: f64,
) -> Result<ScanReport, LemmaError> {
    scan_violations_with(t, v, r0, r_max, ScanOptions { grid, tol })
}

fn grid_point(r0: f64, r_max: f64, grid: usize, i: usize) -> f64 {
    if i + 1 == grid {
        r_max
    } else {
        r0 + (r_max - r0) * (i as f64 / (grid - 1) as f64)
    }
}

pub fn scan_violations_with(
    t: &dyn GrowthFunction,
    v: &VariantSpec,
    r0: f64,
    r_max: f64,
    opts: ScanOptions,
) -> Result<ScanReport, LemmaError> {
    let ScanOptions { grid, tol } = opts;
    if !(r0.is_finite() && r_max.is_finite() && r0 < r_max) {
        return Err(LemmaError::BadArguments(format!(
            "need finite r0 < r_max, got [{r0}, {r_max}]"
        )));
    }
    if grid < 100 {
        return Err(LemmaError::BadArguments(format!(
            "grid = {grid} is below the minimum of 100"
        )));
    }
    if !(tol > 0.0) {
        return Err(LemmaError::BadArguments(format!("tol = {tol} must be positive")));
    }
    let t0 = t.eval_f64(r0)?;
    let h0 = step_size(v, t0)?;
    // steps shrink as T grows, so h(T(r0)) is the largest one
    let monotone = validate_monotone_fn(t, r0, r_max + h0, grid)?;
    if !monotone.strictly_increasing {
        return Err(LemmaError::NotMonotone(Box::new(monotone)));
    }

    let flags: Vec<bool> = (0..grid)
        .into_par_iter()
        .map(|i| violation_indicator(t, v, grid_point(r0, r_max, grid, i)))
        .collect::<Result<_, _>>()?;

    let mut pieces = Vec::new();
    let mut warnings = Vec::new();
    let mut i = 0;
    while i < grid {
        if !flags[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < grid && flags[i + 1] {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            r0
        } else {
            let (_, b) = bisect(
                t,
                v,
                grid_point(r0, r_max, grid, start - 1),
                grid_point(r0, r_max, grid, start),
                tol,
            )?;
            b
        };
        let hi = if end + 1 == grid {
            r_max
        } else {
            let (a, _) = bisect(
                t,
                v,
                grid_point(r0, r_max, grid, end),
                grid_point(r0, r_max, grid, end + 1),
                tol,
            )?;
            a
        };
        if start == end && start != 0 && end + 1 != grid {
            warnings.push(format!(
                "violation run near r = {} spans a single grid point; narrower runs may be missed at this grid",
                grid_point(r0, r_max, grid, start)
            ));
        }
        pieces.push((lo, hi));
        i += 1;
    }
    Ok(ScanReport {
        set: IntervalSet::from_intervals(pieces),
        r0,
        r_max,
        grid,
        tol,
        t_at_r0: t0,
        monotone,
        warnings,
    })
}

/// Shrinks a bracket whose endpoints disagree on the indicator until it is
/// at most `tol` wide (or cannot be split in machine numbers).
fn bisect(t: &dyn GrowthFunction, v: &VariantSpec, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64), LemmaError> {
    let fa = violation_indicator(t, v, a)?;
    while b - a > tol {
        let m = a + (b - a) / 2.0;
        if m <= a || m >= b {
            break;
        }
        if violation_indicator(t, v, m)? == fa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((a, b))
}
