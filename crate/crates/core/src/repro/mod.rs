//! Reproduction report: every numeric claim recomputed with certified
//! arithmetic and compared against its stated digits or inequality.

mod scenario;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{crossover_threshold, BoundError};
use crate::expr::EvalError;
use crate::lemma::LemmaError;
use crate::specfun::{
    doubling_term, gamma_series_interval, hurwitz_zeta_interval, tower_constant_se, tower_dominates_doubling,
    tower_tail_bound, zeta_gap_quadrature, Arith, DoublingTerm, Enclosure, Interval, SpecfunError, TOWER_MAX_DIGITS,
};

pub use scenario::{
    example6_scenario, scenario_growth, Constants, ScenarioCheck, ScenarioReport, D_LOWER, GAP_UPPER, HURWITZ_UPPER,
    SCAN_HORIZON,
};

pub const TOOL_NAME: &str = "borel-lab";
/// Smallest precision accepted by [`reproduce_all`].
pub const MIN_REPRO_DIGITS: u32 = 15;
pub const ZETA_GAMMA_GRID: [f64; 8] = [1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0];
pub const GAP_IDENTITY_GRID: [f64; 5] = [1.5, 2.0, 3.0, 5.0, 10.0];

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ReproError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproEntry {
    pub id: String,
    pub claim: String,
    pub computed_lo: String,
    pub computed_hi: String,
    pub pass: bool,
}

impl ReproEntry {
    fn new(id: &str, claim: &str, lo: String, hi: String, pass: bool) -> Self {
        ReproEntry {
            id: id.to_string(),
            claim: claim.to_string(),
            computed_lo: lo,
            computed_hi: hi,
            pass,
        }
    }

    fn enclosure(id: &str, claim: &str, e: &Enclosure, pass: bool) -> Self {
        Self::new(id, claim, e.lo_decimal(), e.hi_decimal(), pass)
    }

    fn value(id: &str, claim: &str, v: impl ToString, pass: bool) -> Self {
        let s = v.to_string();
        Self::new(id, claim, s.clone(), s, pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproReport {
    pub digits: u32,
    pub entries: Vec<ReproEntry>,
    pub all_pass: bool,
}

/// Serialized layout of a [`ReproReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproJson {
    pub tool: String,
    pub version: String,
    pub digits: u32,
    pub entries: Vec<ReproEntry>,
}

impl ReproReport {
    fn from_entries(digits: u32, entries: Vec<ReproEntry>) -> Self {
        let all_pass = entries.iter().all(|e| e.pass);
        ReproReport {
            digits,
            entries,
            all_pass,
        }
    }

    pub fn entry(&self, id: &str) -> Option<&ReproEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json_value(&self) -> ReproJson {
        ReproJson {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            digits: self.digits,
            entries: self.entries.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let j: ReproJson = serde_json::from_str(text)?;
        Ok(Self::from_entries(j.digits, j.entries))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(e).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8 csv")
    }
}

fn decimal(ar: &mut Arith, text: &str) -> Interval {
    ar.from_decimal(text).expect("valid literal")
}

/// Recomputes every claim at `digits` (the tower constant is capped at
/// [`TOWER_MAX_DIGITS`]). Entries are in a fixed order.
pub fn reproduce_all(digits: u32) -> Result<ReproReport, ReproError> {
    if digits < MIN_REPRO_DIGITS {
        return Err(ReproError::Precondition(format!(
            "digits = {digits} is below the minimum of {MIN_REPRO_DIGITS}"
        )));
    }
    crate::specfun::check_digits(digits)?;
    let mut entries = Vec::new();
    tower_entries(digits.min(TOWER_MAX_DIGITS), &mut entries)?;
    zeta_entries(digits, &mut entries)?;
    constant_entries(digits, &mut entries)?;
    Ok(ReproReport::from_entries(digits, entries))
}

fn tower_entries(digits: u32, out: &mut Vec<ReproEntry>) -> Result<(), ReproError> {
    let tc = tower_constant_se(digits)?;
    let mut ar = Arith::with_digits(digits);
    let lo = decimal(&mut ar, "1.4338677391");
    let hi = decimal(&mut ar, "1.4338677392");
    let se = tc.se.interval();
    out.push(ReproEntry::enclosure(
        "Se_interval",
        "S_e lies in (1.4338677391, 1.4338677392)",
        &tc.se,
        lo.certainly_lt(se) && se.certainly_lt(&hi),
    ));
    let lo = decimal(&mut ar, "1.43386773918");
    let hi = decimal(&mut ar, "1.43386773919");
    let se4 = tc.se4.interval();
    out.push(ReproEntry::enclosure(
        "Se4_interval",
        "S_e(4) lies in (1.43386773918, 1.43386773919)",
        &tc.se4,
        lo.certainly_lt(se4) && se4.certainly_lt(&hi),
    ));
    let tail = tower_tail_bound(5);
    out.push(ReproEntry::value(
        "tail_19728",
        "log10 of the doubling-tower tail bound from n = 5 is at most -19728",
        tail,
        tail <= -19728.0,
    ));
    let b4 = doubling_term(4);
    out.push(ReproEntry::value(
        "b4_65536",
        "b_4 = 2^16 = 65536",
        match b4 {
            DoublingTerm::Exact(v) => v.to_string(),
            other => format!("{other:?}"),
        },
        b4 == DoublingTerm::Exact(65_536),
    ));
    let dominated = (1..=8).all(tower_dominates_doubling);
    out.push(ReproEntry::value(
        "a_gt_b",
        "a_n > b_n for n = 1..=8",
        dominated,
        dominated,
    ));
    Ok(())
}

fn zeta_entries(digits: u32, out: &mut Vec<ReproEntry>) -> Result<(), ReproError> {
    let grid: Vec<Result<ReproEntry, ReproError>> = ZETA_GAMMA_GRID
        .par_iter()
        .map(|&s| {
            let mut ar = Arith::with_digits(digits);
            let si = ar.from_f64(s);
            let one = ar.from_u64(1);
            let z = hurwitz_zeta_interval(&mut ar, &si, &one, digits)?;
            let g = gamma_series_interval(&ar, &si)?;
            let margin = Enclosure::new(ar.sub(&g, &z), digits);
            Ok(ReproEntry::enclosure(
                &format!("zeta_below_gamma_s{s}"),
                &format!("zeta({s}) < gamma({s}); computed gamma - zeta"),
                &margin,
                z.certainly_lt(&g),
            ))
        })
        .collect();
    for e in grid {
        out.push(e?);
    }
    let ident: Vec<Result<ReproEntry, ReproError>> = GAP_IDENTITY_GRID
        .par_iter()
        .map(|&s| {
            let q = zeta_gap_quadrature(s, digits)?;
            let mut ar = Arith::with_digits(digits);
            let si = ar.from_f64(s);
            let one = ar.from_u64(1);
            let z = hurwitz_zeta_interval(&mut ar, &si, &one, digits)?;
            let g = gamma_series_interval(&ar, &si)?;
            let diff = ar.sub(&g, &z);
            Ok(ReproEntry::enclosure(
                &format!("gap_quadrature_s{s}"),
                &format!(
                    "gamma({s}) - zeta({s}) = s * integral of frac(t) t^(-s-1) over [1, inf); computed quadrature"
                ),
                &q,
                q.interval().overlaps(&diff),
            ))
        })
        .collect();
    for e in ident {
        out.push(e?);
    }
    Ok(())
}

fn constant_entries(digits: u32, out: &mut Vec<ReproEntry>) -> Result<(), ReproError> {
    let c = Constants::compute(digits)?;
    let mut ar = Arith::with_digits(digits);

    let bound = decimal(&mut ar, HURWITZ_UPPER);
    out.push(ReproEntry::enclosure(
        "hurwitz_052",
        "zeta(2, sqrt2+1) <= 0.52",
        &c.enclosure(&c.hurwitz),
        c.hurwitz.certainly_le(&bound),
    ));
    let bound = decimal(&mut ar, GAP_UPPER);
    out.push(ReproEntry::enclosure(
        "zeta2_gap",
        "zeta(2) - zeta(2, sqrt2+1) < 1.1334549375",
        &c.enclosure(&c.difference),
        c.difference.certainly_lt(&bound),
    ));
    let two = ar.from_u64(2);
    out.push(ReproEntry::enclosure(
        "zeta2_pi2_6",
        "zeta(2) = pi^2/6 < 2",
        &c.enclosure(&c.zeta2),
        c.zeta2.overlaps(&c.pi2_6) && c.zeta2.certainly_lt(&two),
    ));

    let d_lower = decimal(&mut ar, D_LOWER);
    let d_max_gap = ar.div(&c.two_ln_a, &c.difference)?;
    out.push(ReproEntry::enclosure(
        "d_bound",
        "d = 2 ln(sqrt2+1) / (zeta(2) - zeta(2, sqrt2+1)) > 1.5551982843",
        &c.enclosure(&d_max_gap),
        d_max_gap.certainly_gt(&d_lower),
    ));
    // machine-precision comparison with an absolute guard of 1e-10
    let d_literal = 2.0 * (2f64.sqrt() + 1.0).ln() / 1.133_454_937_5;
    out.push(ReproEntry::value(
        "d_literal",
        "d = 2 ln(sqrt2+1) / 1.1334549375 > 1.5551982843 (1e-10 guard)",
        format!("{d_literal:.16}"),
        d_literal > 1.555_198_284_3 - 1e-10,
    ));
    let round_d = ar.from_f64(1.556);
    out.push(ReproEntry::value(
        "d_1556",
        "d = 1.556 exceeds 1.5551982843",
        "1.556",
        round_d.certainly_gt(&d_lower),
    ));
    let gap_1556 = ar.div(&c.two_ln_a, &round_d)?;
    let one = ar.from_u64(1);
    let r0_prime = ar.add(&one, &gap_1556);
    let limit = decimal(&mut ar, "2.134");
    out.push(ReproEntry::enclosure(
        "r0prime_2134",
        "r0' = 1 + 2 ln(sqrt2+1) / 1.556 <= 2.134",
        &c.enclosure(&r0_prime),
        r0_prime.certainly_le(&limit),
    ));

    let scenario = example6_scenario(1.0, c.max_gap(), digits)?;
    let total = ar.add(&ar.from_f64(scenario.gap), &c.hurwitz);
    out.push(ReproEntry::enclosure(
        "example6_chain",
        "|E''| + zeta(2, sqrt2+1) <= zeta(2) at the largest admissible gap",
        &c.enclosure(&total),
        scenario.all_pass(),
    ));

    let thr = crossover_threshold(2.0)?;
    let thr_iv = ar.from_f64(thr);
    let err = ar.sub(&thr_iv, &c.a_squared);
    let tol = ar.from_f64(1e-12 * thr);
    out.push(ReproEntry::value(
        "crossover_s2",
        "(1/(2^(1/2) - 1))^2 = (sqrt2+1)^2",
        format!("{thr:.15}"),
        Interval::point(err.mag()).certainly_le(&tol),
    ));
    Ok(())
}
