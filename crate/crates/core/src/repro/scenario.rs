//! A growth function T(r) = e^{d(r − r0)} that climbs from 1 to (√2+1)²
//! over `[r0, r0′]`, with the HanLiu (s = 2) cover started at r0′.
//!
//! On `[r0, r0′)` the Hayman bound is the smaller one (T is below the
//! crossover (√2+1)²), so that stretch, E″, is added to the exceptional set
//! by hand; beyond r0′ the HanLiu exceptional set E′ has measure at most
//! ζ(2, √2+1). The total then fits under ζ(2) when
//! `gap = r0′ − r0 ≤ ζ(2) − ζ(2, √2+1)`.

use serde::Serialize;

use super::ReproError;
use crate::expr::{parse_growth, GrowthExpr, GrowthFunction};
use crate::lemma::{build_cover_from_scan, scan_violations_with, ScanOptions, VariantSpec};
use crate::specfun::{check_digits, hurwitz_zeta_interval, Arith, Enclosure, EnclosureJson, Interval};

/// Lower bound on d that the construction is expected to exceed.
pub const D_LOWER: &str = "1.5551982843";
/// Stated upper bound on ζ(2) − ζ(2, √2+1).
pub const GAP_UPPER: &str = "1.1334549375";
/// Stated upper bound on ζ(2, √2+1).
pub const HURWITZ_UPPER: &str = "0.52";
/// How far past r0′ the HanLiu set is scanned.
pub const SCAN_HORIZON: f64 = 12.0;

/// Certified constants shared by the scenario and the reproduction report.
#[derive(Clone, Debug)]
pub struct Constants {
    pub digits: u32,
    /// √2 + 1.
    pub a: Interval,
    /// (√2 + 1)².
    pub a_squared: Interval,
    /// 2 ln(√2 + 1).
    pub two_ln_a: Interval,
    pub zeta2: Interval,
    pub pi2_6: Interval,
    /// ζ(2, √2 + 1).
    pub hurwitz: Interval,
    /// ζ(2) − ζ(2, √2 + 1).
    pub difference: Interval,
}

impl Constants {
    pub fn compute(digits: u32) -> Result<Self, ReproError> {
        check_digits(digits)?;
        let mut ar = Arith::with_digits(digits);
        let two = ar.from_u64(2);
        let one = ar.from_u64(1);
        let root2 = ar.sqrt(&two)?;
        let a = ar.add(&root2, &one);
        let a_squared = ar.square(&a);
        let ln_a = ar.ln(&a)?;
        let two_ln_a = ar.mul(&two, &ln_a);
        let zeta2 = hurwitz_zeta_interval(&mut ar, &two, &one, digits)?;
        let hurwitz = hurwitz_zeta_interval(&mut ar, &two, &a, digits)?;
        let difference = ar.sub(&zeta2, &hurwitz);
        let pi = ar.pi();
        let pi2 = ar.square(&pi);
        let six = ar.from_u64(6);
        let pi2_6 = ar.div(&pi2, &six)?;
        Ok(Constants {
            digits,
            a,
            a_squared,
            two_ln_a,
            zeta2,
            pi2_6,
            hurwitz,
            difference,
        })
    }

    pub fn enclosure(&self, iv: &Interval) -> Enclosure {
        Enclosure::new(iv.clone(), self.digits)
    }

    /// Largest machine number certainly within ζ(2) − ζ(2, √2+1).
    pub fn max_gap(&self) -> f64 {
        self.difference.lo_f64()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioCheck {
    pub id: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub r0: f64,
    pub r0_prime: f64,
    pub gap: f64,
    pub d: f64,
    /// |E″| = r0′ − r0, the length of `{r ≥ r0 : T(r) < (√2+1)²}`.
    pub e_doubleprime_measure: f64,
    /// The same length located by bisection on T.
    pub e_doubleprime_measured: f64,
    /// Measured HanLiu exceptional set beyond r0′ (up to the scan horizon).
    pub e_prime_measure: f64,
    pub cover_steps: usize,
    /// ζ(2, √2+1).
    pub e_prime_bound: EnclosureJson,
    /// ζ(2).
    pub total_bound: EnclosureJson,
    pub checks: Vec<ScenarioCheck>,
}

impl ScenarioReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(id: &str, pass: bool, lhs: impl ToString, rhs: impl ToString) -> ScenarioCheck {
    ScenarioCheck {
        id: id.to_string(),
        pass,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// `e^{d (r − r0)}` as an expression.
pub fn scenario_growth(d: f64, r0: f64) -> GrowthExpr {
    parse_growth(&format!("exp({d:?} * (r - {r0:?}))")).expect("generated expression parses")
}

/// Least `r ≥ lo` with `T(r) ≥ level`, to within `tol`.
fn solve_level(t: &dyn GrowthFunction, level: f64, lo: f64, tol: f64) -> Result<f64, ReproError> {
    let (mut a, mut b) = (lo, lo + 1.0);
    while t.eval_f64(b)? < level {
        a = b;
        b = lo + 2.0 * (b - lo);
    }
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

/// The scenario with `r0′ = r0 + gap` and `d = 2 ln(√2+1)/gap`.
pub fn example6_scenario(r0: f64, gap: f64, digits: u32) -> Result<ScenarioReport, ReproError> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(ReproError::Precondition(format!("r0 = {r0} must be positive")));
    }
    if !(gap > 0.0 && gap.is_finite()) {
        return Err(ReproError::Precondition(format!("gap = {gap} must be positive")));
    }
    let c = Constants::compute(digits)?;
    let mut ar = Arith::with_digits(digits);
    let gap_iv = ar.from_f64(gap);
    if !gap_iv.certainly_le(&c.difference) {
        let diff = c.enclosure(&c.difference);
        return Err(ReproError::Precondition(format!(
            "gap = {gap} is not at most ζ(2) − ζ(2, √2+1) ∈ [{}, {}]",
            diff.lo_decimal(),
            diff.hi_decimal()
        )));
    }

    let d_iv = ar.div(&c.two_ln_a, &gap_iv)?;
    let d = d_iv.mid_f64();
    let r0_prime = r0 + gap;
    let t = scenario_growth(d, r0);
    let a2 = c.a_squared.mid_f64();
    let mut checks = Vec::new();

    let t0 = t.eval_f64(r0)?;
    checks.push(check("T(r0) = 1", (t0 - 1.0).abs() <= 1e-9, t0, 1));
    let t1 = t.eval_f64(r0_prime)?;
    checks.push(check("T(r0') = (sqrt2+1)^2", (t1 - a2).abs() <= 1e-9, t1, a2));

    // E″ = [r0, r″) with T(r″) = (√2+1)²
    let r_dd = solve_level(&t, a2, r0, 1e-13)?;
    let e_dd = r_dd - r0;
    checks.push(check("measured |E''| = gap", (e_dd - gap).abs() <= 1e-9, e_dd, gap));

    let hanliu = VariantSpec::hanliu(2.0)?;
    let scan = scan_violations_with(&t, &hanliu, r0_prime, r0_prime + SCAN_HORIZON, ScanOptions::default())?;
    let cover = build_cover_from_scan(&t, &hanliu, &scan, 10_000)?;
    let e_prime = scan.measure();
    let hz = c.enclosure(&c.hurwitz);
    checks.push(check(
        "cover covers E'",
        cover.as_set().covers(&scan.set, 0.0) && cover.is_interleaved() && cover.steps_within_bounds(),
        cover.steps.len(),
        scan.set.len(),
    ));
    checks.push(check(
        "|E'| <= zeta(2, sqrt2+1)",
        e_prime <= hz.lo_f64() && cover.chain_sum <= hz.hi_f64(),
        e_prime,
        hz.hi_decimal(),
    ));

    let total = ar.add(&gap_iv, &c.hurwitz);
    let z2 = c.enclosure(&c.zeta2);
    checks.push(check(
        "|E''| + zeta(2, sqrt2+1) <= zeta(2)",
        Interval::point(total.hi().clone()).certainly_le(&Interval::point(c.zeta2.hi().clone())),
        Enclosure::new(total, digits).hi_decimal(),
        z2.hi_decimal(),
    ));
    checks.push(check(
        "zeta(2) = pi^2/6",
        c.zeta2.overlaps(&c.pi2_6),
        z2.hi_decimal(),
        c.enclosure(&c.pi2_6).hi_decimal(),
    ));
    let two = ar.from_u64(2);
    checks.push(check("zeta(2) < 2", c.zeta2.certainly_lt(&two), z2.hi_decimal(), 2));
    let d_lower = ar.from_decimal(D_LOWER)?;
    checks.push(check(
        "d > 1.5551982843",
        d_iv.certainly_gt(&d_lower),
        Enclosure::new(d_iv.clone(), digits).lo_decimal(),
        D_LOWER,
    ));

    Ok(ScenarioReport {
        r0,
        r0_prime,
        gap,
        d,
        e_doubleprime_measure: gap,
        e_doubleprime_measured: e_dd,
        e_prime_measure: e_prime,
        cover_steps: cover.steps.len(),
        e_prime_bound: hz.to_json(),
        total_bound: z2.to_json(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_brute_force() {
        let c = Constants::compute(20).unwrap();
        // direct partial sum of (n + a)^{-2} plus the integral tail estimate
        let a = 2f64.sqrt() + 1.0;
        let n = 200_000;
        let mut s = 0.0;
        for k in (0..n).rev() {
            s += 1.0 / ((k as f64 + a) * (k as f64 + a));
        }
        let x = n as f64 + a;
        s += 1.0 / x + 0.5 / (x * x);
        assert!((c.hurwitz.mid_f64() - s).abs() < 1e-12);
        let diff = std::f64::consts::PI.powi(2) / 6.0 - s;
        assert!((c.difference.mid_f64() - diff).abs() < 1e-12);
        assert!((c.difference.mid_f64() - 1.133_454_937_4).abs() < 1e-10);
    }

    #[test]
    fn maximal_gap_passes() {
        let c = Constants::compute(30).unwrap();
        let rep = example6_scenario(1.0, c.max_gap(), 30).unwrap();
        assert!(rep.all_pass(), "{:#?}", rep.checks);
        assert_eq!(rep.cover_steps, 0);
        assert!(rep.d > 1.555_198_284_3);
    }

    #[test]
    fn round_d_instance() {
        let gap = 2.0 * (2f64.sqrt() + 1.0).ln() / 1.556;
        let rep = example6_scenario(1.0, gap, 20).unwrap();
        assert!(rep.all_pass());
        assert!((rep.d - 1.556).abs() < 1e-12);
        assert!(rep.r0_prime <= 2.134 && (rep.r0_prime - 2.1329).abs() < 1e-4);
    }

    #[test]
    fn slow_growth_makes_long_prefix() {
        // with d = 0.1 the stretch below (√2+1)² alone is longer than 2
        let t = scenario_growth(0.1, 1.0);
        let a2 = (2f64.sqrt() + 1.0).powi(2);
        let len = solve_level(&t, a2, 1.0, 1e-12).unwrap() - 1.0;
        assert!((len - 20.0 * (2f64.sqrt() + 1.0).ln()).abs() < 1e-9);
        assert!(len > 2.0);
    }

    #[test]
    fn rejects_large_gaps() {
        let err = example6_scenario(1.0, 2.0, 20).unwrap_err();
        assert!(matches!(err, ReproError::Precondition(ref m) if m.contains("1.13345493")));
        // the rounded constant sits just above the true difference
        assert!(example6_scenario(1.0, 1.133_454_937_5, 20).is_err());
        assert!(example6_scenario(0.0, 1.0, 20).is_err());
    }
}
