use std::process::{Command, Output};

use serde_json::Value;

fn awdaha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awdaha"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn parse_f64(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn verify_daha_relations_passes() {
    let out = awdaha(&["verify", "--suite", "daha-relations", "--samples", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rows = r["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        for key in ["check_id", "anchor", "params", "pass", "residual", "runtime_ms"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
        assert!(row["runtime_ms"].is_null());
    }
}

#[test]
fn verify_square_completed_polynomial_suite() {
    let out = awdaha(&["verify", "--suite", "aw-poly-identities", "--q", "9/25", "--params", "2,3,4,r-square"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_rejects_non_generic_tuple() {
    let out = awdaha(&["verify", "--suite", "daha-relations", "--params", "2,1/2,4,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-generic"));
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(awdaha(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(awdaha(&["verify"]).status.code(), Some(2));
    assert_eq!(awdaha(&["verify", "--suite", "appendix-a", "--params", "1,2"]).status.code(), Some(2));
}

#[test]
fn verify_report_is_byte_identical_and_sorted() {
    let args = ["verify", "--suite", "appendix-a", "--samples", "4", "--seed", "3"];
    let a = awdaha(&args);
    let b = awdaha(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let keys: Vec<(String, u64)> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["check_id"].as_str().unwrap().to_string(), x["sample"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_timings_fill_runtime() {
    let out = awdaha(&["verify", "--suite", "gaussian-conjugation", "--samples", "1", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["rows"][0]["runtime_ms"].is_u64());
}

#[test]
fn eval_normalizations() {
    // E+ is 1 at z = a for any gamma, and at gamma = a~ for any z
    let out = awdaha(&["eval", "--fn", "Eplus", "--params", "1/2,3/5,7/10,4/5", "--q", "3/10", "--z", "a"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((parse_f64(&v["value_re"]) - 1.0).abs() < 1e-12);
    assert!(v["est_error"].as_f64().unwrap() < 1e-30);

    let out = awdaha(&[
        "eval", "--fn", "Eplus", "--params", "1/2,3/5,7/10,4/5", "--q", "3/10", "--gamma", "at", "--z", "0.7",
    ]);
    let v = json(&out);
    assert!((parse_f64(&v["value_re"]) - 1.0).abs() < 1e-12);
    assert!(parse_f64(&v["value_im"]).abs() < 1e-12);
}

#[test]
fn eval_nonsym_kernel_coefficient_at_zero() {
    let out = awdaha(&["eval", "--fn", "kernel_coeff", "--m", "0", "--which", "nonsym"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], serde_json::json!(["0", "1"]));
}

#[test]
fn eval_methods_agree() {
    let mut vals = Vec::new();
    for m in ["w87", "sum4phi3", "suslov", "kernel"] {
        let out = awdaha(&["eval", "--fn", "Eplus", "--seed", "2", "--method", m]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        vals.push((parse_f64(&v["value_re"]), parse_f64(&v["value_im"])));
    }
    for v in &vals[1..] {
        assert!((v.0 - vals[0].0).abs() + (v.1 - vals[0].1).abs() < 1e-10 * (1.0 + vals[0].0.abs()));
    }
}

#[test]
fn eval_domain_error_is_structured() {
    let out = awdaha(&["eval", "--fn", "Eplus", "--z", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"], "out_of_domain");
    assert!(v["message"].is_string());

    let out = awdaha(&["eval", "--fn", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "unknown_name");
}

#[test]
fn eval_polynomial_exact() {
    // E_n^+ is 1 at z = a
    let out = awdaha(&["eval", "--fn", "Eplus_poly", "--n", "3", "--z", "1/2", "--params", "1/2,3/5,7/10,4/5"]);
    assert_eq!(json(&out)["value"], "1");
}

#[test]
fn table_kernel_coefficients() {
    let out = awdaha(&["table", "kernel-coefficients", "--m", "0..10"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0]["symmetric"], "1");
    assert_eq!(rows[0]["nonsym_minus"], "0");
    assert_eq!(rows[0]["nonsym_plus"], "1");
}

#[test]
fn table_bad_range_exits_2() {
    assert_eq!(awdaha(&["table", "kernel-coefficients", "--m", "5..2"]).status.code(), Some(2));
    assert_eq!(awdaha(&["table", "kernel-coefficients", "--m", "x"]).status.code(), Some(2));
}

#[test]
fn table_poly_coeffs_match_library() {
    use awdaha::awpoly::aw_e_plus;
    use awdaha::laurent::LaurentPoly;
    use awdaha::sampling::exact_generic;

    let out = awdaha(&["table", "poly-coeffs", "--n", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let mut obj = serde_json::Map::new();
    for r in json(&out).as_array().unwrap() {
        obj.insert(r["power"].as_str().unwrap().to_string(), r["coeff"].clone());
    }
    let from_cli = LaurentPoly::from_json(&Value::Object(obj)).unwrap();
    assert_eq!(from_cli, aw_e_plus(3, &exact_generic(5, 0)).unwrap());
}

#[test]
fn table_orbit_has_192_elements() {
    let out = awdaha(&["table", "orbit", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 193);
    assert_eq!(text.lines().next(), Some("a,b,c,d"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("awdaha-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let out = awdaha(&["table", "kernel-coefficients", "--m", "0..2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
