use std::process::Command as Process;

use k3lab_cli::{main_with_args, parse_args, run, AnalysisReport, Command, EnumerateTarget, EXIT_FAIL, EXIT_INPUT};

fn k3lab(args: &[&str]) -> (i32, String) {
    main_with_args(std::iter::once("k3lab").chain(args.iter().copied()))
}

#[test]
fn parses_analyze_and_enumerate() {
    let c = parse_args(["k3lab", "analyze", "--a", "t^7", "--b", "t"]).unwrap();
    assert!(matches!(c, Command::Analyze { json: false, .. }));
    let c = parse_args(["k3lab", "enumerate", "--prime", "19"]).unwrap();
    assert_eq!(c, Command::Enumerate { target: EnumerateTarget::Prime(19), json: false });
}

#[test]
fn malformed_input_exits_with_two() {
    let err = parse_args(["k3lab", "analyze", "--a", "t^^7"]).unwrap_err();
    assert_eq!(err.exit_code, EXIT_INPUT);
    assert!(err.message.contains("--help"));
    assert_eq!(k3lab(&["enumerate", "--power-of-three", "81"]).0, EXIT_INPUT);
    assert_eq!(k3lab(&["lattice", "U+E9"]).0, EXIT_INPUT);
    assert_eq!(k3lab(&["catalog", "verify", "--id", "nope"]).0, EXIT_INPUT);
    assert_eq!(k3lab(&["autocheck", "--a", "t", "--order", "5"]).0, EXIT_INPUT);
    assert_eq!(k3lab(&["frobnicate"]).0, EXIT_INPUT);
}

#[test]
fn analyze_text_report() {
    let (code, out) = k3lab(&["analyze", "--a", "t^7", "--b", "t"]);
    assert_eq!(code, 0);
    assert!(out.contains("Singular fibers: II, I1x19, III"), "{out}");
    assert!(out.contains("Euler total: 24, K3: yes"), "{out}");
    let (code, out) = k3lab(&["analyze", "--a", "t", "--b", "t^2+1"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("K3: no"));
}

#[test]
fn json_matches_golden_files() {
    let (_, out) = k3lab(&["analyze", "--a", "t^7", "--b", "t", "--json"]);
    assert_eq!(out, include_str!("golden/analyze_x19.json"));
    let (_, out) = k3lab(&["enumerate", "--prime", "5", "--json"]);
    assert_eq!(out, include_str!("golden/enumerate_5.json"));
}

#[test]
fn analysis_report_round_trips() {
    for (a, b) in [("t^7", "t"), ("0", "t^2(t^2-1)^5"), ("t^11", "t^7"), ("t", "t^2+1")] {
        let (_, out) = k3lab(&["analyze", "--a", a, "--b", b, "--json"]);
        let report: AnalysisReport = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_value(&report).unwrap();
        let printed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(again, printed);
        assert!(report.configuration().is_ok());
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["analyze", "--a", "0", "--b", "t^5(t^3-1)", "--json"][..],
        &["catalog", "verify", "--json", "--parallel"],
        &["cyclo", "--order", "27", "--json"],
        &["lattice", "U+E8+E8+A2", "--json"],
    ] {
        assert_eq!(k3lab(args), k3lab(args));
    }
}

#[test]
fn json_keys_are_sorted() {
    let (_, out) = k3lab(&["catalog", "verify", "--id", "X_19", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let first = out.lines().nth(1).unwrap().trim();
    assert!(first.starts_with("\"entries\""), "{first}");
}

#[test]
fn enumerate_prime_five() {
    let (code, out) = k3lab(&["enumerate", "--prime", "5"]);
    assert_eq!(code, 0);
    for pair in ["(II*, III*)", "(I5*, IV*)", "(I10*, III)", "(I10, III*)", "(I15, IV)"] {
        assert!(out.contains(pair), "{pair} missing from {out}");
    }
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn autocheck_reports() {
    let (code, out) = k3lab(&["autocheck", "--a", "t^7", "--b", "t", "--order", "19", "--alpha", "7", "--beta", "1", "--gamma", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("Omega multiplier: 8 (primitive: yes)"));
    let (code, out) = k3lab(&["autocheck", "--a", "t^5", "--b", "t^4", "--order", "13", "--alpha", "5", "--beta", "1", "--gamma", "2"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("t^4: 8 != 2"));
    let (code, out) = k3lab(&[
        "autocheck",
        "--weighted",
        "1,1,1,3",
        "--vars",
        "x0,x1,x2,y",
        "--equation",
        "y^2 + x0^6 + x0*x1^5 + x1*x2^5",
        "--exponents",
        "0,20,1,0",
        "--order",
        "25",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["omega_multiplier"], 21);
    assert_eq!(v["order"], 25);
}

#[test]
fn catalog_verify_summary() {
    let (code, out) = k3lab(&["catalog", "verify"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 failed"));
    assert!(out.contains("Flagged discrepancies: 2 (X_13-printed, X_3-printed)"));
    let (code, out) = k3lab(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 21);
}

#[test]
fn mw_reads_analyze_output() {
    let dir = std::env::temp_dir().join(format!("k3lab-mw-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p13.json");
    let (_, out) = k3lab(&["analyze", "--a", "t^7", "--b", "t^4", "--json"]);
    std::fs::write(&path, out).unwrap();
    let p = path.to_str().unwrap();
    let (code, out) = k3lab(&["mw", "--config", p, "--rho", "10", "--det-s", "13", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mw_rank"], 1);
    assert_eq!(v["target_height"], "13/6");
    assert_eq!(v["section"]["contributions"], serde_json::json!(["4/3", "1/2"]));
    assert_eq!(v["torsion_free_bound"], "13/6");
    let (code, _) = k3lab(&["mw", "--config", p, "--rho", "5"]);
    assert_eq!(code, EXIT_FAIL);
    let (code, _) = k3lab(&["mw", "--config", dir.join("missing.json").to_str().unwrap(), "--rho", "5"]);
    assert_eq!(code, EXIT_INPUT);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cyclo_prime_kernel() {
    let c = parse_args(["k3lab", "cyclo", "--order", "7", "--json"]).unwrap();
    let (code, out) = run(&c);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fixed_discriminant"][0]["dimension"], 1);
    assert_eq!(v["traces"][0], -1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_k3lab");
    let ok = Process::new(bin).args(["catalog", "verify"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Process::new(bin).args(["analyze", "--a", "t^^7"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    let help = Process::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
