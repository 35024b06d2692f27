use std::io::Write;
use std::process::{Command, Stdio};

use movingcurves::text::{parse_biform, parse_tform, parse_xform};
use movingcurves_cli::{execute, Outcome};
use serde_json::Value;

const CIRCLE: [&str; 3] = ["t0^2 + t1^2", "t0^2 - t1^2", "2*t0*t1"];
const FOLIUM: [&str; 3] = ["t0^3 + t1^3", "3*t0^2*t1", "3*t0*t1^2"];

fn run(args: &[&str]) -> Outcome {
    execute(args.iter().copied(), || Ok(String::new()))
}

fn with_input(args: &[&str], input: [&str; 3]) -> Vec<String> {
    args.iter().chain(input.iter()).map(|s| s.to_string()).collect()
}

fn json(args: &[String]) -> Value {
    let out = execute(args.iter().cloned(), || Ok(String::new()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_json(out: &Outcome) -> Value {
    let last = out.stderr.lines().last().expect("error line");
    serde_json::from_str(last).unwrap()
}

fn scratch_file(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("movingcurves-{}-{name}", std::process::id()))
}

#[test]
fn help_and_usage_errors() {
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("implicitize") && help.stdout.contains("rees"));
    let bad = run(&["frobnicate"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stdout.is_empty() && !bad.stderr.is_empty());
    let wrong_count = run(&["validate", "t0", "t1"]);
    assert_eq!(wrong_count.code, 2);
    assert_eq!(error_json(&wrong_count)["error"]["code"], "USAGE");
}

#[test]
fn implicitize_schema() {
    let v = json(&with_input(&["implicitize", "--method", "resultant"], CIRCLE));
    assert_eq!(v["F"], "X0^2 - X1^2 - X2^2");
    assert_eq!(v["D"], 2);
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["constant"], "-4");
    assert_eq!(v["checks"]["vanishes"], true);
    assert_eq!(v["checks"]["alpha_eq_d"], true);
    let m = json(&with_input(&["implicitize"], CIRCLE));
    assert_eq!(m["method"], "mubasis");
    assert!(m["alpha"].is_null() && m["checks"]["alpha_eq_d"].is_null());
    let all = json(&with_input(&["implicitize", "--method", "all"], FOLIUM));
    assert_eq!(all["agree"], true);
    assert_eq!(all["results"].as_array().unwrap().len(), 3);
}

#[test]
fn stdin_input_with_comments() {
    let out = execute(["implicitize"], || Ok("# folium\nt0^3 + t1^3\n3*t0^2*t1  # u1\n\n3*t0*t1^2\n".into()));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["F"], "3*X0*X1*X2 - X1^3 - X2^3");
}

#[test]
fn text_format() {
    let out = execute(with_input(&["--format", "text", "mubasis"], CIRCLE), || Ok(String::new()));
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("d: 2\nmu: 1\n"), "{}", out.stdout);
    let err = run(&["--format", "text", "validate", "t0^2", "t1", "t1"]);
    assert_eq!(err.code, 2);
    assert!(err.stderr.starts_with("error [NOT-HOMOGENEOUS]") || err.stderr.starts_with("error [DEGREE-MISMATCH]"), "{}", err.stderr);
}

#[test]
fn plot_file() {
    let path = scratch_file("plot.txt");
    let p = path.to_str().unwrap();
    let v = json(&with_input(&["implicitize", "--plot", p], CIRCLE));
    assert_eq!(v["F"], "X0^2 - X1^2 - X2^2");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1 - x^2 - y^2 = 0\n");
    std::fs::remove_file(path).ok();
}

#[test]
fn error_shapes() {
    let out = run(&["implicitize", "t0^2", "t0^2 + t1", "t1^2"]);
    assert_eq!(out.code, 2);
    let e = &error_json(&out)["error"];
    assert_eq!(e["code"], "NOT-HOMOGENEOUS");
    assert_eq!(e["expression"], 1);
    assert_eq!(e["position"], 7);
    assert_eq!(e["degrees"], serde_json::json!([[0, 2], [7, 1]]));
    assert!(e["message"].as_str().unwrap().contains("position 7"));

    let out = run(&["validate", "t0^2 + t1^2", "t0^2 + t1^2", "0"]);
    assert_eq!((out.code, error_json(&out)["error"]["code"].clone()), (2, "COMMON-FACTOR".into()));
    let out = run(&["validate", "t0 + ", "t1", "t1"]);
    assert_eq!(error_json(&out)["error"]["code"], "SYNTAX");
    assert!(error_json(&out)["error"]["position"].is_u64());
}

#[test]
fn prime_field() {
    let v = json(&with_input(&["--field", "prime:101", "implicitize", "--method", "all"], FOLIUM));
    assert_eq!(v["agree"], true);
    assert_eq!(v["results"][0]["F"], "X0*X1*X2 + 67*X1^3 + 67*X2^3");
    for field in ["prime:8", "prime:2", "real"] {
        let out = run(&["--field", field, "validate", "t0", "t1", "t1"]);
        assert_eq!(out.code, 2, "{field}");
        assert_eq!(error_json(&out)["error"]["code"], "INVALID-FIELD");
    }
}

#[test]
fn affine_input_notes() {
    let out = run(&["mubasis", "--affine", "(1 - t^2)/(1 + t^2)", "2*t/(1 + t^2)"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.starts_with("note: affine input"), "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["mu"], 1);
}

#[test]
fn jobs_do_not_change_results() {
    let base = with_input(&["rees"], FOLIUM);
    let one = json(&[vec!["--jobs".to_string(), "1".into()], base.clone()].concat());
    let two = json(&[vec!["--jobs".to_string(), "2".into()], base.clone()].concat());
    assert_eq!(one, two);
    assert_eq!(one, json(&base));
    assert_eq!(one["n0"], 4);
}

#[test]
fn rees_flags() {
    let v = json(&with_input(&["rees", "--rescan", "1", "--no-representatives"], CIRCLE));
    assert_eq!(v["betti"], serde_json::json!([[0, 2, 1], [1, 1, 2]]));
    assert_eq!(v["truncated"], false);
    assert_eq!(v["rescan_found_more"], false);
    assert_eq!(v["generators"], serde_json::json!([]));
    let small = run(&["rees", "--xmax", "1", CIRCLE[0], CIRCLE[1], CIRCLE[2]]);
    assert_eq!((small.code, error_json(&small)["error"]["code"].clone()), (2, "BOX-TOO-SMALL".into()));
}

#[test]
fn survey_is_reproducible() {
    let args = |seed: &str| ["--seed", seed, "survey", "--degree", "3", "--count", "4"].map(String::from);
    let a = json(&args("9"));
    assert_eq!(a, json(&args("9")));
    assert_eq!(a["count"], 4);
    assert_eq!(a["samples"].as_array().unwrap().len(), 4);
}

#[test]
fn bench_sizes_and_csv() {
    let path = scratch_file("bench.csv");
    let v = json(&["bench", "--min-degree", "2", "--max-degree", "3", "--csv", path.to_str().unwrap()].map(String::from));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let d = row["d"].as_u64().unwrap();
        assert_eq!(row["sizes"], serde_json::json!({"resultant": 2 * d, "mubasis": d, "movinglines": d}));
    }
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 3);
    std::fs::remove_file(path).ok();
}

/// Every form the tool prints parses back to the same rendering.
#[test]
fn renderings_parse_back() {
    for input in [CIRCLE, FOLIUM, ["t0^4 - t1^4", "-t0^2*t1^2", "t0*t1^3"]] {
        let f = json(&with_input(&["implicitize"], input));
        let s = f["F"].as_str().unwrap();
        assert_eq!(parse_xform(s).unwrap().to_string(), s);
        let b = json(&with_input(&["mubasis"], input));
        for key in ["P", "Q"] {
            let s = b[key].as_str().unwrap();
            assert_eq!(parse_biform(s).unwrap().to_string(), s);
        }
        for key in ["P_coeffs", "Q_coeffs"] {
            for c in b[key].as_array().unwrap() {
                let s = c.as_str().unwrap();
                assert_eq!(parse_tform(s).unwrap().to_string(), s);
            }
        }
        let r = json(&with_input(&["rees"], input));
        for g in r["generators"].as_array().unwrap() {
            let s = g.as_str().unwrap();
            assert_eq!(parse_biform(s).unwrap().to_string(), s);
        }
    }
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_movingcurves");
    let mut child = Command::new(bin)
        .args(["--format", "text", "tracing-index"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"t0^4 + t1^4\nt0^4 - t1^4\n2*t0^2*t1^2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("beta: 2"));
    let status = Command::new(bin).args(["validate", "t0", "t0", "t0"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
}
