use std::io::Write;

use weylkit_cli::dispatch;

fn run(args: &[&str]) -> (u8, String) {
    let mut argv = vec!["weylkit".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    dispatch(&argv)
}

#[test]
fn roots_json_has_weyl_order() {
    let (code, out) = run(&["roots", "g2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weyl_order"], 12);
    assert_eq!(v["rank"], 2);
}

#[test]
fn roots_with_group_lattice() {
    let (code, out) = run(&["roots", "a2", "--group", "psu3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"]["center_quotient_order"], 3);
    // mismatched group is a usage error
    let (code, _) = run(&["roots", "a2", "--group", "su2"]);
    assert_eq!(code, 2);
}

#[test]
fn volume_at_point_is_exact() {
    let (code, out) = run(&["volume", "a1", "--at", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "4");
    assert_eq!(v["normalization_scale"], "1");
}

#[test]
fn coxeter_from_arrangement_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // a2 root arrangement
    writeln!(file, "dim 2").unwrap();
    writeln!(file, "2 -1 ; 0").unwrap();
    writeln!(file, "-1 2 ; 0").unwrap();
    writeln!(file, "1 1 ; 0").unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out) = run(&["coxeter", "--arrangement", path, "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coxeter_matrix"][0][1], "3");
}

#[test]
fn chambers_of_strip_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "dim 2").unwrap();
    writeln!(file, "period 0 1/2").unwrap();
    writeln!(file, "box 0 1 -5/4 5/4").unwrap();
    writeln!(file, "0 1 ; 0").unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out) = run(&["chambers", "--arrangement", path, "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n_chambers"], 6);
}

#[test]
fn factor_polynomial_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // x^3 + x y^2 + x
    writeln!(file, "1 3 0").unwrap();
    writeln!(file, "1 1 2").unwrap();
    writeln!(file, "1 1 0").unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out) = run(&["factor", "--poly", path, "--height", "3", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["linear_factors"].as_array().unwrap().len(), 1);
    assert_eq!(v["roundtrip_exact"], true);
}

#[test]
fn strata_group_output() {
    let (code, out) = run(&["strata", "--group", "su3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["strata"], 7);
    let (code, out) = run(&["strata", "--group", "psu3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["strata"], 3);
}

#[test]
fn catalog_verify_reports_pass() {
    let (code, out) = run(&["catalog", "verify", "su2_dual", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["checks"][0]["theorem"].is_string());
}

#[test]
fn catalog_list_contains_registry() {
    let (code, out) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("gg_dual(g2)"));
    assert!(out.contains("rank2_minus_origin(a2)"));
}

#[test]
fn integrate_weyl_small_run() {
    let (code, out) = run(&[
        "integrate", "weyl", "--group", "su2", "--f", "gaussian:1", "--n", "20000", "--seed",
        "7", "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["agree_within_3se"], true);
    assert!(v["rhs"]["calibration"].is_string());
}

#[test]
fn json_output_is_byte_stable() {
    let args = [
        "integrate", "weyl", "--group", "su2", "--f", "cauchygauss:1:1", "--n", "20000",
        "--seed", "3", "--workers", "2", "--json",
    ];
    let (c1, o1) = run(&args);
    let (c2, o2) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(o1, o2);
}

#[test]
fn csv_format_flattens() {
    let (code, out) = run(&["volume", "a1", "--at", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("value,6"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["roots", "zzz"]).0, 2);
    assert_eq!(run(&["volume", "a1", "--at", "x"]).0, 2);
    assert_eq!(run(&["integrate", "kks", "--z", "1", "--mesh", "bad"]).0, 2);
    assert_eq!(run(&["chambers"]).0, 2);
    assert_eq!(run(&["nosuchcommand"]).0, 2);
}

#[test]
fn integrate_kks_passes() {
    let (code, out) = run(&["integrate", "kks", "--z", "3", "--mesh", "400x800", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
}
