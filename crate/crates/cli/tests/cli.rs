use std::process::{Command, Output};

use serde_json::Value;
use spacelike_core::{normal_form, parse};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spacelike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Value printed after `key` in the aligned key/value layout.
fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')))
        .unwrap_or_else(|| panic!("no field {key} in\n{text}"))
        .trim()
        .to_string()
}

fn real_part(complex: &str) -> f64 {
    complex.split(" + ").next().unwrap().parse().unwrap()
}

#[test]
fn verify_reports_full_suite() {
    let o = run(&["verify"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.ends_with("13/13 verified\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" verified  ")).count(), 13);
}

#[test]
fn verify_show_steps_lists_dependencies_first() {
    let o = run(&["verify", "--theorem", "T_eq11", "--show-steps"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let pos = |id: &str| out.find(&format!("\n{id} ")).unwrap_or_else(|| panic!("{id} missing:\n{out}"));
    let order = ["T_a2", "T_a5", "T_a6", "T_a7", "T_eq11"].map(pos);
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{out}");
    assert!(out.contains("[ok] interval: residual 0"));
    assert!(!out.contains("[FAIL]"));
    assert!(out.ends_with("5/5 verified\n"));
}

#[test]
fn verify_single_theorem_without_steps() {
    let o = run(&["verify", "--theorem", "T_eq9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("1/1 verified\n"));
}

#[test]
fn verify_unknown_theorem_is_input_error() {
    let o = run(&["verify", "--theorem", "bogus"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("unknown theorem 'bogus'"));
}

#[test]
fn verify_json_envelope() {
    let o = run(&["verify", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 13);
    assert!(results.iter().all(|r| r["status"] == "verified" && r["residual"] == "0"));
}

#[test]
fn normalize_examples() {
    let o = run(&["normalize", "p*x"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x*p - i*hbar\n");

    // Printed with c before m; compared as operators.
    let o = run(&["normalize", "H*H"]);
    assert_eq!(code(&o), 0);
    let printed = stdout(&o);
    let expected = normal_form(&parse("p^2*c^2 + m^2*c^4").unwrap()).unwrap();
    assert_eq!(normal_form(&parse(printed.trim()).unwrap()).unwrap(), expected);
    assert_eq!(printed.trim(), expected.to_string());

    let o = run(&["normalize", "x*("]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("byte 3"), "{}", stderr(&o));
}

#[test]
fn normalize_rejects_inverse_of_position() {
    let o = run(&["normalize", "x^-1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn commutator_examples() {
    for (a, b, want) in [("x", "p", "i*hbar"), ("H", "t", "0"), ("H^2", "x", "-2*i*hbar*c^2*p")] {
        let o = run(&["commutator", a, b]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), format!("{want}\n"), "[{a}, {b}]");
    }
}

#[test]
fn commutator_accepts_leading_minus() {
    let o = run(&["commutator", "-x", "p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-i*hbar\n");
}

#[test]
fn propagator_both_methods_agree() {
    let o = run(&["propagator", "--t", "0", "--x", "1", "--lambda-bar", "1", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let bessel = real_part(&field(&out, "gamma_bessel"));
    let quad = real_part(&field(&out, "gamma_quadrature"));
    // K0(1) / 2 pi to 20 digits.
    let exact = 0.067_008_120_508_497_137_19;
    assert!((bessel - exact).abs() < 1e-12);
    assert!((quad - exact).abs() < 1e-12);
    assert!((bessel - 0.067007).abs() < 2e-6);
    let d: f64 = field(&out, "relative_discrepancy").parse().unwrap();
    assert!(d <= 1e-6);
}

#[test]
fn propagator_half_wavelength_is_boundary_inclusive() {
    let o = run(&["propagator", "--t", "0", "--x", "0.5", "--lambda-bar", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(field(&out, "class_eq13"), "spacelike_nonnegligible");
    assert_eq!(field(&out, "class_eq2"), "spacelike_nonnegligible");
}

#[test]
fn propagator_negative_coordinates() {
    let o = run(&["propagator", "--t", "-0.3", "--x", "-2", "--lambda-bar", "1", "--method", "quadrature"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(field(&stdout(&o), "class_eq2"), "spacelike_negligible");
}

#[test]
fn propagator_mass_input() {
    // A mass equal to hbar c in MeV gives lambda_bar = 1 fm.
    let a = run(&["propagator", "--t", "0", "--x", "1", "--mass", "197.3269804"]);
    let b = run(&["propagator", "--t", "0", "--x", "1", "--lambda-bar", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let si = run(&["propagator", "--t", "0", "--x", "1e-15", "--mass", "197.3269804", "--units", "si"]);
    assert_eq!(code(&si), 0);
    assert_eq!(field(&stdout(&si), "z"), "1");
}

#[test]
fn propagator_input_errors() {
    let timelike = run(&["propagator", "--t", "2", "--x", "1", "--lambda-bar", "1"]);
    assert_eq!(code(&timelike), 2);
    assert!(stderr(&timelike).contains("not spacelike"));
    let units = run(&["propagator", "--t", "0", "--x", "1", "--lambda-bar", "1", "--units", "cgs"]);
    assert_eq!(code(&units), 2);
    let neither = run(&["propagator", "--t", "0", "--x", "1"]);
    assert_eq!(code(&neither), 2);
    let both = run(&["propagator", "--t", "0", "--x", "1", "--lambda-bar", "1", "--mass", "1"]);
    assert_eq!(code(&both), 2);
    let massless = run(&["propagator", "--t", "0", "--x", "1", "--mass", "0"]);
    assert_eq!(code(&massless), 2);
}

#[test]
fn propagator_far_tail_is_numeric_failure() {
    let o = run(&["propagator", "--t", "0", "--x", "800", "--lambda-bar", "1"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).is_empty());
}

#[test]
fn scan_csv_layout() {
    let o = run(&["scan", "--z-min", "0.1", "--z-max", "3", "--steps", "30", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 31);
    assert_eq!(lines[0], "z,interval_over_lambdabar2,gamma_re,gamma_im,prob,class_eq2,class_eq13");
    let row = |z: &str| lines.iter().find(|l| l.starts_with(&format!("{z},"))).unwrap().split(',').collect::<Vec<_>>();
    let one = row("1");
    assert_eq!((one[5], one[6]), ("spacelike_nonnegligible", "spacelike_negligible"));
    let half = row("0.5");
    assert_eq!((half[5], half[6]), ("spacelike_nonnegligible", "spacelike_nonnegligible"));
    let probs: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert!(probs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn scan_json_matches_csv() {
    let csv = stdout(&run(&["scan", "--z-min", "0.1", "--z-max", "3", "--steps", "30"]));
    let o = run(&["scan", "--z-min", "0.1", "--z-max", "3", "--steps", "30", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 30);
    for (json_row, csv_row) in rows.iter().zip(csv.lines().skip(1)) {
        let cells: Vec<&str> = csv_row.split(',').collect();
        assert_eq!(json_row["prob"].as_f64().unwrap(), cells[4].parse::<f64>().unwrap());
        assert_eq!(json_row["class_eq13"], cells[6]);
    }
}

#[test]
fn scan_bad_range() {
    for args in [
        ["--z-min", "3", "--z-max", "1", "--steps", "10"],
        ["--z-min", "0", "--z-max", "1", "--steps", "10"],
        ["--z-min", "-1", "--z-max", "1", "--steps", "10"],
        ["--z-min", "0.1", "--z-max", "1", "--steps", "1"],
    ] {
        let mut full = vec!["scan"];
        full.extend(args);
        let o = run(&full);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["verify", "--format", "json", "--show-steps"],
        &["scan", "--z-min", "0.05", "--z-max", "20", "--steps", "200"],
        &["propagator", "--t", "0.3", "--x", "1.7", "--lambda-bar", "1", "--method", "both", "--format", "json"],
        &["normalize", "(x*H + H*x)^2"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
