//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use borel_lab::bounds::{
    bound_hanliu, bound_hayman, bound_report, crossover_threshold, ordering_report, DOMINANCE_SLACK,
};
use borel_lab::expr::{parse_growth, GrowthExpr, GrowthFunction, Powered, TabulatedGrowth};
use borel_lab::lemma::{
    build_cover_from_scan, measure_bound, scan_violations, scan_violations_with, ScanOptions, VariantKind, VariantSpec,
};
use borel_lab::repro::{example6_scenario, Constants};
use borel_lab::specfun::{
    gamma_series_enclosure, riemann_zeta, tower_constant_se, tower_tail_bound, zeta_gap_quadrature, Arith,
};

const DIGITS: u32 = 30;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let tc = tower_constant_se(DIGITS).unwrap();
    let mut ar = Arith::with_digits(DIGITS);
    let inside = |ar: &mut Arith, lo: &str, hi: &str, iv: &borel_lab::specfun::Interval| {
        let (l, h) = (ar.from_decimal(lo).unwrap(), ar.from_decimal(hi).unwrap());
        l.certainly_lt(iv) && iv.certainly_lt(&h)
    };
    let a = inside(&mut ar, "1.4338677391", "1.4338677392", tc.se.interval());
    let b = inside(&mut ar, "1.43386773918", "1.43386773919", tc.se4.interval());
    outcome(
        a && b,
        format!(
            "S_e in [{}, {}] ({a}), S_e(4) in [{}, {}] ({b})",
            tc.se.lo_decimal(),
            tc.se.hi_decimal(),
            tc.se4.lo_decimal(),
            tc.se4.hi_decimal()
        ),
    )
}

fn criterion_2() -> Outcome {
    let v = tower_tail_bound(5);
    outcome(v <= -19728.0, format!("log10 tail bound from n = 5: {v}"))
}

fn criterion_3() -> Outcome {
    let c = Constants::compute(DIGITS).unwrap();
    let mut ar = Arith::with_digits(DIGITS);
    let h_bound = ar.from_decimal("0.52").unwrap();
    let g_bound = ar.from_decimal("1.1334549375").unwrap();
    let a = c.hurwitz.certainly_le(&h_bound);
    let b = c.difference.certainly_lt(&g_bound);
    outcome(
        a && b,
        format!(
            "zeta(2, sqrt2+1).hi = {} <= 0.52 ({a}); (zeta(2) - zeta(2, sqrt2+1)).hi = {} < 1.1334549375 ({b})",
            c.enclosure(&c.hurwitz).hi_decimal(),
            c.enclosure(&c.difference).hi_decimal()
        ),
    )
}

fn criterion_4() -> Outcome {
    const GUARD: f64 = 1e-10;
    let two_ln_a = 2.0 * (2f64.sqrt() + 1.0).ln();
    let d = two_ln_a / 1.133_454_937_5;
    let r0p = 1.0 + two_ln_a / 1.556;
    let a = d > 1.555_198_284_3 - GUARD;
    let b = r0p <= 2.134 + GUARD;
    outcome(
        a && b,
        format!(
            "d = {d:.13} > 1.5551982843 within guard ({a}, strict: {}); r0' = {r0p:.10} <= 2.134 ({b})",
            d > 1.555_198_284_3
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut worst = Vec::new();
    let mut ok = true;
    for s in [1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0] {
        let z = riemann_zeta(s, DIGITS).unwrap();
        let g = gamma_series_enclosure(s, DIGITS).unwrap();
        if !z.interval().certainly_lt(g.interval()) {
            ok = false;
            worst.push(format!("zeta({s}) not below gamma({s})"));
        }
    }
    for s in [1.5, 2.0, 3.0, 5.0, 10.0] {
        let q = zeta_gap_quadrature(s, DIGITS).unwrap();
        let z = riemann_zeta(s, DIGITS).unwrap();
        let g = gamma_series_enclosure(s, DIGITS).unwrap();
        let ar = Arith::with_digits(DIGITS + 10);
        let diff = ar.sub(g.interval(), z.interval());
        // |Q − (γ − ζ)| over both enclosures, against the sum of their widths
        let sep = ar.sub(q.interval(), &diff);
        let widths = ar.add(
            &borel_lab::specfun::Interval::point(ar.width(q.interval())),
            &borel_lab::specfun::Interval::point(ar.width(&diff)),
        );
        let within = borel_lab::specfun::Interval::point(sep.mag()).certainly_le(&widths);
        if !(within && q.interval().overlaps(&diff)) {
            ok = false;
            worst.push(format!("gap identity fails at s = {s}"));
        }
    }
    outcome(
        ok,
        if ok {
            "zeta < gamma on 8 points; quadrature matches gamma - zeta on 5 points".to_string()
        } else {
            worst.join("; ")
        },
    )
}

fn criterion_6() -> Outcome {
    let t = parse_growth("exp(r)").unwrap();
    let start = Instant::now();
    let h = scan_violations(&t, &VariantSpec::hayman(2.0).unwrap(), 0.0, 5.0, 10_000, 1e-12).unwrap();
    let th = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let hl = scan_violations(&t, &VariantSpec::hanliu(2.0).unwrap(), 0.0, 5.0, 10_000, 1e-12).unwrap();
    let thl = start.elapsed().as_secs_f64();
    let exact = (1.0 / 2f64.ln()).ln();
    let err = (h.measure() - exact).abs();
    let pass = err <= 1e-6 && hl.set.is_empty() && th < 1.0 && thl < 1.0;
    outcome(
        pass,
        format!(
            "hayman measure {} (error {err:.1e}, {th:.3}s); hanliu set {:?} ({thl:.3}s)",
            h.measure(),
            hl.set.intervals()
        ),
    )
}

/// One corpus entry: a growth function valid from `r0` with a scan horizon.
struct Case {
    name: String,
    t: Box<dyn GrowthFunction>,
    /// Same function as an expression, for building T^σ.
    expr: Option<GrowthExpr>,
    r0: f64,
    r_max: f64,
    grid: usize,
}

fn expr_case(name: &str, text: &str, r0: f64, r_max: f64, grid: usize) -> Case {
    let e = parse_growth(text).unwrap();
    Case {
        name: name.to_string(),
        t: Box::new(e.clone()),
        expr: Some(e),
        r0,
        r_max,
        grid,
    }
}

fn spline() -> TabulatedGrowth {
    // a monotone table with flat and steep stretches
    let pts: Vec<(f64, f64)> = (0..=24)
        .map(|i| {
            let r = i as f64 * 0.5;
            let v = 1.0 + r * r + if r >= 4.0 { 30.0 * (r - 4.0) } else { 0.0 } + (0.7 * r).exp() - 1.0;
            (r, v)
        })
        .collect();
    TabulatedGrowth::new(&pts).unwrap()
}

/// Corpus for a variant: each function started at the first point where it
/// reaches the variant floor.
fn corpus(kind: VariantKind) -> Vec<Case> {
    let floor = kind.floor();
    let mut out = Vec::new();
    for d in [0.5, 1.556, 5.0] {
        // T(r0) = max(1, floor) up to rounding
        let r0 = if floor > 1.0 {
            1.0 + 1.0001 * floor.ln() / d
        } else {
            1.0
        };
        let r_max = r0 + (40.0 / d).min(20.0);
        out.push(expr_case(
            &format!("exp({d}(r-1))"),
            &format!("exp({d}*(r-1))"),
            r0,
            r_max,
            4_000,
        ));
    }
    out.push(expr_case("exp(exp(r))", "exp(exp(r))", 0.0, 2.5, 2_000));
    let shifted = match kind {
        VariantKind::Borel => "r^2 + e",
        VariantKind::FernandezArias => "r^2",
        _ => "r^2 + 1",
    };
    out.push(expr_case(shifted, shifted, 0.0, 30.0, 4_000));
    let sp = spline();
    out.push(Case {
        name: "spline".into(),
        t: Box::new(sp),
        expr: None,
        r0: if floor > 1.0 { 1.5 } else { 0.0 },
        r_max: 10.5,
        grid: 4_000,
    });
    out
}

fn variants() -> Vec<VariantSpec> {
    let mut v = Vec::new();
    for s in [1.5, 2.0, 3.0] {
        v.push(VariantSpec::borel(s).unwrap());
        v.push(VariantSpec::nevanlinna(s).unwrap());
        v.push(VariantSpec::hayman(s).unwrap());
        v.push(VariantSpec::hanliu(s).unwrap());
    }
    v.push(VariantSpec::fernandez_arias());
    v
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    let mut steps = 0;
    for v in variants() {
        for case in corpus(v.kind) {
            runs += 1;
            let opts = ScanOptions {
                grid: case.grid,
                tol: 1e-12,
            };
            let scan = match scan_violations_with(case.t.as_ref(), &v, case.r0, case.r_max, opts) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{} / {v}: scan error {e}", case.name));
                    continue;
                }
            };
            let cover = build_cover_from_scan(case.t.as_ref(), &v, &scan, 1_000_000).unwrap();
            steps += cover.steps.len();
            let bound = measure_bound(&v, Some(scan.t_at_r0), 20).unwrap();
            let plain = measure_bound(&v, None, 20).unwrap();
            let covered = cover.as_set().covers(&scan.set, 0.0);
            let lengths = cover.steps_within_bounds() && cover.is_interleaved();
            let measured = scan.measure() <= bound.hi_f64() && bound.hi_f64() <= plain.hi_f64() * (1.0 + 1e-15);
            if !(covered && lengths && measured && cover.exhausted) {
                failures.push(format!(
                    "{} / {v}: covered {covered}, lengths {lengths}, measure {} vs {} ({measured}), exhausted {}, warnings {:?}",
                    case.name,
                    scan.measure(),
                    bound.hi_f64(),
                    cover.exhausted,
                    cover.warnings
                ));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{runs} (function, variant) runs, {steps} cover steps certified")
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    const SAMPLES: usize = 1_000;
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut triples = 0usize;
    let mut check_triple = |name: &str,
                            label: String,
                            scan_t: &dyn GrowthFunction,
                            t: &dyn GrowthFunction,
                            v: &VariantSpec,
                            sigma: Option<f64>,
                            case: &Case| {
        triples += 1;
        let opts = ScanOptions {
            grid: case.grid,
            tol: 1e-12,
        };
        let scan = match scan_violations_with(scan_t, v, case.r0, case.r_max, opts) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{name} / {label}: scan error {e}"));
                return;
            }
        };
        let mut taken = 0;
        let mut i = 0;
        while taken < SAMPLES && i < 4 * SAMPLES {
            // golden-ratio sequence over (r0, r_max]
            let u = ((i as f64 + 1.0) * 0.618_033_988_749_894_9).fract();
            i += 1;
            let r = case.r0 + (case.r_max - case.r0) * u;
            if r <= 0.0 || scan.set.contains(r) {
                continue;
            }
            taken += 1;
            match bound_report(t, v, r, sigma) {
                Ok(rep) if rep.lhs_eq4 <= rep.bound_value + DOMINANCE_SLACK => {}
                Ok(rep) => {
                    failures.push(format!(
                        "{name} / {label} at r = {r}: {} > {}",
                        rep.lhs_eq4, rep.bound_value
                    ));
                    return;
                }
                Err(e) => {
                    failures.push(format!("{name} / {label} at r = {r}: {e}"));
                    return;
                }
            }
        }
        checked += taken;
        if taken < SAMPLES {
            failures.push(format!("{name} / {label}: only {taken} samples outside the set"));
        }
    };
    for v in variants() {
        if v.kind == VariantKind::FernandezArias {
            continue;
        }
        for case in corpus(v.kind) {
            check_triple(
                &case.name,
                v.to_string(),
                case.t.as_ref(),
                case.t.as_ref(),
                &v,
                None,
                &case,
            );
        }
    }
    // FernandezArias on T^σ with T ≥ 1
    let fa = VariantSpec::fernandez_arias();
    for sigma in [0.25, 0.5, 0.75] {
        for case in corpus(VariantKind::Hayman) {
            let label = format!("fernandez-arias(sigma = {sigma})");
            match &case.expr {
                Some(e) => {
                    let u = e.powf(sigma);
                    check_triple(&case.name, label, &u, case.t.as_ref(), &fa, Some(sigma), &case);
                }
                None => {
                    let u = Powered { inner: spline(), sigma };
                    check_triple(&case.name, label, &u, case.t.as_ref(), &fa, Some(sigma), &case);
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} samples over {triples} (function, variant, parameter) triples")
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    for s in [1.1, 1.5, 1.9, 2.0, 3.0, 5.0] {
        for t in [1e4, 1e8] {
            for r in [1.0, 10.0] {
                let rep = ordering_report(s, t, r).unwrap();
                if rep.matches_expected() != Some(true) {
                    let got: Vec<String> = rep
                        .entries
                        .iter()
                        .map(|e| format!("{} {:.4}", e.variant, e.value))
                        .collect();
                    failures.push(format!("s = {s}, t = {t:e}, r = {r}: [{}]", got.join(" < ")));
                }
            }
        }
    }
    let mut cross_bad = Vec::new();
    let mut cross_points = 0;
    for s in [1.2, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let thr = crossover_threshold(s).unwrap();
        let mut ts: Vec<f64> = (0..=60).map(|k| 10f64.powf(k as f64 / 10.0)).collect();
        ts.extend([thr, thr * (1.0 + 1e-6), thr * (1.0 - 1e-6)]);
        for t in ts {
            if t != thr && ((t - thr) / thr).abs() < 1e-9 {
                continue;
            }
            cross_points += 1;
            let hl = bound_hanliu(t, 2.0, s).unwrap();
            let hy = bound_hayman(t, 2.0, s).unwrap();
            let ok = if t == thr {
                (hl - hy).abs() <= 1e-12 * hy
            } else {
                (hl <= hy) == (t >= thr)
            };
            if !ok {
                cross_bad.push(format!("s = {s}, t = {t}"));
            }
        }
    }
    let a2 = (2f64.sqrt() + 1.0).powi(2);
    let s2_ok = (crossover_threshold(2.0).unwrap() - a2).abs() <= 1e-12 * a2;
    let pass = failures.is_empty() && cross_bad.is_empty() && s2_ok;
    let mut detail = format!(
        "orderings: {} of 24 match; crossover: {} of {cross_points} points agree, s = 2 threshold = (sqrt2+1)^2 ({s2_ok})",
        24 - failures.len(),
        cross_points - cross_bad.len()
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; ordering mismatches: {}", failures.join("; ")));
    }
    if !cross_bad.is_empty() {
        detail.push_str(&format!("; crossover mismatches: {}", cross_bad.join("; ")));
    }
    outcome(pass, detail)
}

fn criterion_10() -> Outcome {
    let c = Constants::compute(DIGITS).unwrap();
    let rep = example6_scenario(1.0, c.max_gap(), DIGITS).unwrap();
    let ar = Arith::with_digits(DIGITS);
    let total = ar.add(&ar.from_f64(rep.e_doubleprime_measure), &c.hurwitz);
    let zeta2_hi = borel_lab::specfun::Interval::point(c.zeta2.hi().clone());
    let chain =
        borel_lab::specfun::Interval::point(total.hi().clone()).certainly_le(&zeta2_hi) && c.zeta2.overlaps(&c.pi2_6);
    let status = Command::new(env!("CARGO_BIN_EXE_borel-lab"))
        .args(["reproduce", "--digits", "30", "--format", "json"])
        .output()
        .expect("run borel-lab");
    let code = status.status.code();
    let pass = chain && rep.all_pass() && code == Some(0);
    outcome(
        pass,
        format!(
            "|E''| = {} , |E''| + zeta(2, sqrt2+1).hi <= zeta(2).hi ({chain}), scenario checks {}, reproduce exit {:?}",
            rep.e_doubleprime_measure,
            rep.all_pass(),
            code
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tower constant enclosures", criterion_1),
        ("doubling-tower tail bound", criterion_2),
        ("Hurwitz constants", criterion_3),
        ("growth-rate constants", criterion_4),
        ("zeta below gamma and gap identity", criterion_5),
        ("closed-form exceptional set", criterion_6),
        ("cover certification suite", criterion_7),
        ("dominance suite", criterion_8),
        ("ordering and crossover suite", criterion_9),
        ("end-to-end scenario", criterion_10),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "{tag} criterion {}: {name} ({:.2}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
