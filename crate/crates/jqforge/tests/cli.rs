use std::io::Write;
use std::process::Command;

use jqforge::cli::run;
use serde_json::Value;

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_jqforge"))
        .args(args)
        .env_remove("JQFORGE_CONFIG")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["jqforge", "--json"];
    v.extend_from_slice(args);
    let out = run(v);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn act_prints_binomial_action() {
    let out = bin(&["act", "--op", "Jq1", "--poly", "x1^3", "--vars", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3*x1^4");
}

#[test]
fn hit_reports() {
    let (code, v) = json(&["hit", "--poly", "3*x1^7", "--vars", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["hit"], false);
    assert!(v.get("witness").is_none());
    let (_, v) = json(&["hit", "--poly", "4*x1^7", "--vars", "1"]);
    assert_eq!(v["hit"], true);
    assert_eq!(v["witness"], serde_json::json!([{"k": 3, "cofactor": "x1^4"}]));
}

#[test]
fn reports_embed_config_and_are_stable() {
    let args = ["--json", "chi", "--k", "4"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["n_vars", "deg_bound", "max_j", "order", "digits"] {
        assert!(v["config"][key].is_u64(), "{key}");
    }
    assert_eq!(v["word_count"], 8);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["act", "--bogus"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
    assert_eq!(bin(&["act", "--op", "Jq", "--poly", "x1"]).status.code(), Some(2));
    assert_eq!(bin(&["cohit", "--d", "0"]).status.code(), Some(3));
    assert_eq!(bin(&["decompose", "--k", "4", "--mode", "binary"]).status.code(), Some(4));
    let out = bin(&["sode", "--op", "Jq1 - 1", "--rhs", "0", "--center", "0", "--a0", "1", "--order", "6"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_errors_are_reported_on_stdout() {
    let (code, v) = json(&["norm", "--which", "ker", "--op", "1/2*Jq1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "domain");
    assert!(v["config"].is_object());
}

#[test]
fn config_file_then_flags() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# bounds\ndeg_bound = 9\nmax_j = 2\ndigits = 5").unwrap();
    let path = f.path().to_str().unwrap();
    let (_, v) = json(&["--config", path, "cohit", "--d", "3"]);
    assert_eq!(v["config"]["deg_bound"], 9);
    assert_eq!(v["config"]["max_j"], 2);
    let (_, v) = json(&["--config", path, "--max-j", "4", "cohit", "--d", "3"]);
    assert_eq!(v["config"]["max_j"], 4);
    let out = Command::new(env!("CARGO_BIN_EXE_jqforge"))
        .args(["--json", "cohit", "--d", "3"])
        .env("JQFORGE_CONFIG", path)
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["deg_bound"], 9);
    assert_eq!(v["order"], "2");
}

#[test]
fn digits_display() {
    let (_, v) = json(&["--digits", "6", "act", "--op", "1/3*Jq1", "--poly", "x1", "--vars", "1"]);
    assert_eq!(v["terms"][0]["coeff"]["value"], "1/3");
    assert_eq!(v["terms"][0]["coeff"]["digits"], "...101011");
    let out = run(["jqforge", "--digits", "4", "act", "--op", "-Jq1", "--poly", "x1"]);
    assert!(out.stdout.contains("-1 = ...1111"), "{}", out.stdout);
}

#[test]
fn adem_variants() {
    let (_, v) = json(&["adem", "--k", "4", "--partitions", "2"]);
    assert_eq!(v["words"], serde_json::json!(["Jq4", "Jq3.Jq1", "Jq2.Jq2", "Jq1.Jq3"]));
    assert_eq!(v["basis"], serde_json::json!([[2, -3, 1, 1]]));
    let (_, v) = json(&["adem", "--k", "4", "--partitions", "2", "--vars", "3"]);
    assert_eq!(v["dimension"], 0);
    let (_, v) = json(&["adem", "--k", "3", "--words", "Jq3,Jq2.Jq1,Jq1.Jq2,Jq1.Jq1.Jq1"]);
    assert_eq!(v["basis"], serde_json::json!([[3, -6, 3, 1]]));
    let (code, _) = json(&["adem", "--k", "3", "--words", "Jq3,Jq2"]);
    assert_eq!(code, 3);
}

#[test]
fn other_subcommands() {
    let (_, v) = json(&["phi", "--op", "Jq2.Jq2"]);
    assert_eq!(v["phi"], "Sq3.Sq1");
    let (_, v) = json(&["norm", "--which", "estimate", "--op", "Jq1.Jq1"]);
    assert_eq!(v["norm"], "1/2");
    let (_, v) = json(&["norm", "--which", "degree", "--op", "Jq3", "--rho", "1/2"]);
    assert_eq!(v["norm"], "1/8");
    let (_, v) = json(&["norm", "--which", "adem", "--op", "Jq3"]);
    assert_eq!(v["valuation"], 2);
    let (_, v) = json(&["decompose", "--k", "3", "--mode", "q12"]);
    assert_eq!(v["element"], "2*Jq2.Jq1 - Jq1.Jq2 - 1/3*Jq1.Jq1.Jq1");
    let (_, v) = json(&["geom", "--k", "1", "--poly", "x1", "--order", "5"]);
    assert_eq!(v["series"], "x1 + x1^2 + 2*x1^3 + 6*x1^4 + 24*x1^5");
    let (code, v) = json(&["sode", "--op", "Jq1 - 1", "--rhs", "0", "--center", "1", "--a0", "1", "--order", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficients"][2]["value"], "-1/2");
    assert_eq!(v["residual"]["verified_through"], 5);
    let (_, v) = json(&["ore", "--theta", "Jq1", "--eta", "Jq2"]);
    assert_eq!(v["degrees"], serde_json::json!([4, 3]));
}

#[test]
fn tate_reads_both_file_formats() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let coeffs: Vec<String> = (0..=30).map(|k| format!("\"{}\"", 1u64 << k)).collect();
    write!(f, "{{\"order\": 30, \"coefficients\": [{}]}}", coeffs.join(",")).unwrap();
    let (code, v) = json(&["tate", "--series", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let mut g = tempfile::NamedTempFile::new().unwrap();
    let terms: Vec<String> = (0..=30).map(|k| format!("x1^{k}")).collect();
    write!(g, "{}", terms.join(" + ")).unwrap();
    let (_, v) = json(&["tate", "--series", g.path().to_str().unwrap()]);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn verify_paper_has_no_failures() {
    let (code, v) = json(&["verify-paper"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["fail"], 0);
    let status = |name: &str| {
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"].as_str().unwrap().starts_with(name))
            .map(|r| r["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("Jq^1(Jq^3 + Jq^2Jq^1"), "DIVERGES");
    assert_eq!(status("non-hit elements in degree 7"), "DIVERGES");
    assert_eq!(status("range of (1 - Jq^2)^(-1)"), "DIVERGES");
    assert_eq!(status("A_3 relation"), "PASS");
}
