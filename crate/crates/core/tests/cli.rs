use std::process::{Command, Output};

use borel_lab::repro::{ReproJson, ReproReport};
use borel_lab::specfun::EnclosureJson;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_borel-lab"));
    c.env_remove("BOREL_LAB_DIGITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn borel-lab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn reproduce_json_passes_and_round_trips() {
    let o = run(&["reproduce", "--digits", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let j: ReproJson = serde_json::from_str(&text).unwrap();
    assert_eq!(j.tool, "borel-lab");
    assert_eq!(j.digits, 20);
    assert!(j.entries.iter().all(|e| e.pass));
    for id in ["Se_interval", "hurwitz_052", "zeta2_gap", "example6_chain"] {
        assert!(j.entries.iter().any(|e| e.id == id), "missing {id}");
    }
    let rep = ReproReport::from_json(&text).unwrap();
    assert!(rep.all_pass);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 4);
    let entry = v["entries"][0].as_object().unwrap();
    for k in ["id", "claim", "computed_lo", "computed_hi", "pass"] {
        assert!(entry.contains_key(k));
    }
}

#[test]
fn reproduce_is_deterministic() {
    let a = run(&["reproduce", "--digits", "16"]);
    let b = run(&["reproduce", "--digits", "16"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["reproduce", "--digits", "16", "--format", "csv"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).starts_with("id,claim,computed_lo,computed_hi,pass\n"));
}

#[test]
fn hurwitz_enclosure() {
    let o = run(&["hurwitz", "--s", "2", "--a", "2.414213562373", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let e: EnclosureJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(e.digits, 20);
    assert!(e.lo.starts_with("0.51147912943"));
    assert!(e.lo <= e.hi);
}

#[test]
fn zeta_digits_from_environment() {
    let o = bin()
        .args(["zeta", "--s", "2"])
        .env("BOREL_LAB_DIGITS", "12")
        .output()
        .unwrap();
    let e: EnclosureJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(e.digits, 12);
    let o = bin()
        .args(["zeta", "--s", "2", "--digits", "40"])
        .env("BOREL_LAB_DIGITS", "12")
        .output()
        .unwrap();
    let e: EnclosureJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(e.digits, 40);
    assert!(e.lo.starts_with("1.6449340668482264364724151666460251892"));
}

#[test]
fn exceptional_set_closed_form() {
    let o = run(&[
        "exceptional-set",
        "--T",
        "exp(r)",
        "--variant",
        "hayman",
        "--s",
        "2",
        "--r0",
        "0",
        "--rmax",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let iv = v["intervals"].as_array().unwrap();
    assert_eq!(iv.len(), 1);
    assert_eq!(iv[0][0].as_f64(), Some(0.0));
    assert!((iv[0][1].as_f64().unwrap() - 0.366_512_9).abs() < 1e-6);
    assert_eq!(v["variant"], "hayman");
}

#[test]
fn cover_csv() {
    let o = run(&[
        "cover",
        "--T",
        "exp(5*(r-1))",
        "--variant",
        "hayman",
        "--s",
        "2",
        "--r0",
        "1",
        "--rmax",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,r,r_prime,length,certified_length_bound"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn bounds_compare_csv() {
    let o = run(&[
        "bounds-compare",
        "--s",
        "2",
        "--t",
        "100",
        "--r",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "variant,lhs,bound,dominated");
    assert_eq!(rows.len(), 5);
    assert!(rows[1].starts_with("borel,10.759"));
    assert!(rows[4].starts_with("hanliu,9.40"));
    let with_fa = run(&[
        "bounds-compare",
        "--s",
        "2",
        "--t",
        "100",
        "--r",
        "10",
        "--sigma",
        "0.5",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&with_fa).lines().count(), 6);
    let with_t = run(&["bounds-compare", "--s", "3", "--T", "exp(r)", "--r", "2"]);
    assert_eq!(with_t.status.code(), Some(0));
}

#[test]
fn example6_default_and_rejection() {
    let o = run(&["example6", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let o = run(&["example6", "--d", "1.556", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["example6", "--gap", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1.1334549374"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["zeta"],
        vec!["zeta", "--s", "1"],
        vec!["hurwitz", "--s", "2", "--a", "-1"],
        vec!["zeta", "--s", "2", "--digits", "2"],
        vec!["frobnicate"],
        vec![
            "exceptional-set",
            "--T",
            "exp(q)",
            "--variant",
            "hayman",
            "--s",
            "2",
            "--r0",
            "0",
            "--rmax",
            "5",
        ],
        vec![
            "exceptional-set",
            "--T",
            "exp(r)",
            "--variant",
            "cartan",
            "--s",
            "2",
            "--r0",
            "0",
            "--rmax",
            "5",
        ],
        vec![
            "exceptional-set",
            "--T",
            "10 - r",
            "--variant",
            "hayman",
            "--s",
            "2",
            "--r0",
            "0",
            "--rmax",
            "5",
        ],
        vec!["bounds-compare", "--s", "2", "--r", "1"],
        vec!["zeta", "--s", "2", "--format", "xml"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reproduce"));
}
