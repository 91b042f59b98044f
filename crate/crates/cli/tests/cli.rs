use std::process::{Command, Output};

use lowwalsh_core::boolfun::TruthTable;
use lowwalsh_core::constructions::build_g;
use lowwalsh_core::{create_ctx, FieldElem};
use serde_json::Value;

fn lowwalsh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowwalsh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn spectrum_json_reproduces_f_column() {
    let o = lowwalsh(&["spectrum", "--construction", "f", "--m", "4", "--mu", "0x1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let pairs: Vec<(i64, u64)> = j["distribution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_i64().unwrap(), e["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(-16, 92), (0, 80), (16, 64), (32, 16), (48, 4)]);
    assert_eq!(j["n"], 8);
    assert_eq!(j["degree"], 5);
    assert_eq!(j["classification"], "five-valued{-16,0,16,32,48}");
}

#[test]
fn spectrum_per_mu_and_csv() {
    let o = lowwalsh(&["spectrum", "--construction", "g", "--m", "5", "--mu", "k=-1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let reports = json(&o);
    let reports = reports.as_array().unwrap();
    assert!(reports.len() > 1);
    for r in reports {
        assert_eq!(r["kloosterman"], -1);
        assert_eq!(r["nonlinearity"], 512 - 32);
        assert_eq!(r["balanced"], true);
    }
    let o = lowwalsh(&["spectrum", "--construction", "f", "--m", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("value,count\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&lowwalsh(&["spectrum", "--construction", "f", "--m", "20"])), 3);
    assert_eq!(code(&lowwalsh(&["spectrum", "--construction", "f", "--m", "4", "--mu", "31"])), 2);
    assert_eq!(code(&lowwalsh(&["spectrum", "--construction", "h", "--m", "4"])), 2);
    let ctx = create_ctx(3, None).unwrap();
    let outside = ctx.elements().find(|&x| !ctx.in_subfield(x)).unwrap().to_string();
    assert_eq!(code(&lowwalsh(&["spectrum", "--construction", "f", "--m", "3", "--mu", &outside])), 2);
    assert_eq!(code(&lowwalsh(&["anf", "--construction", "f", "--m", "3", "--mu", "all"])), 2);
    assert_eq!(code(&lowwalsh(&["table", "--which", "remark-f", "--poly", "0x13"])), 2);
    assert_eq!(code(&lowwalsh(&["verify", "--suite", "thm32", "--m", "9", "--max-n", "16"])), 3);
}

#[test]
fn kloosterman_modes() {
    let o = lowwalsh(&["kloosterman", "--m", "3", "--scan", "--format", "json"]);
    let j = json(&o);
    assert_eq!(j["values"].as_array().unwrap().len(), 8);
    assert_eq!(j["value_set"], serde_json::json!([-5, -1, 3]));
    let o = lowwalsh(&["kloosterman", "--m", "3", "--a", "0x0"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "-1");
    let o = lowwalsh(&["kloosterman", "--m", "5", "--target", "-1"]);
    let mus: Vec<String> = String::from_utf8(o.stdout).unwrap().lines().map(str::to_string).collect();
    assert!(!mus.is_empty());
    let o = lowwalsh(&["spectrum", "--construction", "g", "--m", "5", "--mu", &mus[0], "--format", "json"]);
    assert_eq!(json(&o)["kloosterman"], -1);
}

#[test]
fn tables_match_and_survive_poly_override() {
    let o = lowwalsh(&["table", "--which", "remark-f"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("m=6: match"));
    assert_eq!(code(&lowwalsh(&["table", "--which", "remark-f", "--poly", "0x11d"])), 0);
    let o = lowwalsh(&["table", "--which", "remark-g", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["matches"], true);
    let total: u64 = j["columns"][2]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 16384);
}

#[test]
fn verify_suites() {
    assert_eq!(code(&lowwalsh(&["verify", "--suite", "lemma23", "--m-range", "3..10"])), 0);
    assert_eq!(code(&lowwalsh(&["verify", "--suite", "thm34", "--m-range", "3..6"])), 0);
    let o = lowwalsh(&["verify", "--suite", "thm35", "--m-range", "2..4", "--format", "json"]);
    assert_eq!(code(&o), 1);
    for r in json(&o).as_array().unwrap() {
        let detail = r["checks"][0]["detail"].as_str().unwrap();
        // Fails exactly when the direct sum is not -2 - (1+k)^2.
        assert_eq!(r["passed"], detail.contains("k_m(mu) = -1;"));
    }
}

#[test]
fn verify_all_fails_only_on_known_gates() {
    let o = lowwalsh(&["verify", "--suite", "all", "--m-range", "3..4", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let mut failing: Vec<(String, String)> = Vec::new();
    for r in json(&o).as_array().unwrap() {
        for c in r["checks"].as_array().unwrap() {
            if c["gate"] == "hard" && c["pass"] == false {
                failing.push((r["theorem"].as_str().unwrap().into(), c["name"].as_str().unwrap().into()));
            }
        }
    }
    failing.sort();
    failing.dedup();
    let expected: Vec<(String, String)> = [
        ("recursion_s2", "zero_a"),
        ("recursion_s3", "zero_a"),
        ("thm35", "theorem35"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(failing, expected);
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--suite", "thm32", "--m", "4", "--format", "json"];
    let a = lowwalsh(&args);
    let b = lowwalsh(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let args = ["kloosterman", "--m", "6", "--scan", "--format", "csv"];
    assert_eq!(lowwalsh(&args).stdout, lowwalsh(&args).stdout);
}

#[test]
fn export_and_anf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.bin");
    let p = path.to_str().unwrap();
    let mu = "0x1";
    let o = lowwalsh(&["export", "--construction", "g", "--m", "3", "--mu", mu, "--format", "bin", "--out", p]);
    assert_eq!(code(&o), 0);
    let ctx = create_ctx(3, None).unwrap();
    let expected = build_g(&ctx, FieldElem::ONE, None).unwrap();
    let back = TruthTable::from_le_bytes(6, &std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(back, expected);

    let o = lowwalsh(&["export", "--construction", "g", "--m", "3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), format!("0x{}", expected.to_hex()));
    assert_eq!(code(&lowwalsh(&["export", "--construction", "g", "--m", "3", "--format", "bin"])), 2);

    let o = lowwalsh(&["anf", "--construction", "f", "--m", "4", "--format", "json"]);
    let j = json(&o);
    assert_eq!(j["degree"], 5);
    let monos: Vec<u64> = j["monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| u64::from_str_radix(&s.as_str().unwrap()[2..], 16).unwrap())
        .collect();
    assert!(monos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn field_report() {
    let o = lowwalsh(&["field", "--m", "3", "--format", "json"]);
    let j = json(&o);
    assert_eq!(j["n"], 6);
    assert_eq!(j["subfield_order"], 8);
    assert_eq!(j["unit_circle_order"], 9);
    assert_eq!(j["dual_basis"].as_array().unwrap().len(), 6);
    assert_eq!(code(&lowwalsh(&["field", "--m", "3", "--poly", "0x41"])), 2);
}
