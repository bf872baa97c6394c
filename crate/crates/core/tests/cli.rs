use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-surface-lab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_p2() {
    let o = run(&["validate", "--fan", &data("p2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N=3"));
    let j = json(&run(&["validate", "--fan", &data("p2.json"), "--json"]));
    assert_eq!(j["schema"], "toric-surface-lab/1");
    assert_eq!(j["status"], "ok");
    assert_eq!(j["command"], "validate");
    assert_eq!(j["inputs"]["fan"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn dp6_report() {
    let args = [
        "report",
        "--fan",
        &data("dp6.json"),
        "--group",
        &data("d12.json"),
        "--json",
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let r = &j["result"];
    assert_eq!(r["minimal"]["label"], "dP6/D12");
    assert_eq!(r["basis"]["signature"], serde_json::json!([1, 3, 2]));
    assert_eq!(r["collection"]["certificate"]["passed"], true);
    assert_eq!(r["decomposition"]["product"], "k×P×Q");
    // no timestamps or other nondeterminism
    assert_eq!(o.stdout, run(&args).stdout);
}

#[test]
fn reversed_collection_fails() {
    let o = run(&[
        "collection",
        "--fan",
        &data("p2.json"),
        "--order",
        "reversed",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("Ext^0(O(1), O(2)) = 3"),
        "{}",
        stdout(&o)
    );
    let j = json(&run(&[
        "collection",
        "--fan",
        &data("p2.json"),
        "--order",
        "reversed",
        "--json",
    ]));
    assert_eq!(j["status"], "verification_failed");
}

#[test]
fn other_commands() {
    let sq = data("square.json");
    let d8 = data("d8.json");
    let o = run(&["aut", "--fan", &sq]);
    assert!(stdout(&o).contains("Aut order 8 (D8)"));
    let o = run(&["classify-group", "--fan", &sq, "--group", &d8]);
    assert!(stdout(&o).contains("D8"));
    let o = run(&["basis", "--fan", &sq, "--group", &d8]);
    assert!(stdout(&o).contains("orbit signature [1, 2, 1]"));
    let o = run(&["decompose", "--fan", &sq, "--group", &d8]);
    assert!(stdout(&o).contains("X = k×B×A"));
    let o = run(&["k0-verify", "--fan", &data("f2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("recurrence for m = 0..5: holds"));
    let o = run(&[
        "classify",
        "--fan",
        &data("p2.json"),
        "--group",
        &data("d6.json"),
    ]);
    assert!(stdout(&o).contains("P2/D6"), "{}", stdout(&o));
    let o = run(&["basis", "--fan", &data("p2.json"), "--bound", "2"]);
    assert!(stdout(&o).contains("search (bound 2)"));
}

#[test]
fn emitted_fans_validate() {
    let fan = scratch(
        "blown.json",
        r#"{"rays": [[1,0],[1,1],[0,1],[-1,1],[-1,0],[-1,-1],[0,-1],[1,-1]]}"#,
    );
    let j = json(&run(&["minimalize", "--fan", &fan, "--json"]));
    let mut fans = vec![j["result"]["terminal"].clone()];
    for s in j["result"]["steps"].as_array().unwrap() {
        fans.push(s["after"].clone());
    }
    for (i, f) in fans.iter().enumerate() {
        let path = scratch(&format!("emitted-{i}.json"), &f.to_string());
        let v = json(&run(&["validate", "--fan", &path, "--json"]));
        assert_eq!(v["status"], "ok");
        assert_eq!(&v["result"]["fan"], f);
    }
}

#[test]
fn malformed_json_is_located() {
    let path = scratch("broken.json", "{\"rays\": [[1,0], [0,1],\n  [-1,-1]");
    let o = run(&["validate", "--fan", &path, "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let j = json(&o);
    assert_eq!(j["status"], "invalid_input");
    assert_eq!(j["error"]["kind"], "MalformedJson");
    assert_eq!(j["error"]["location"]["line"], 2);
    let path = scratch("unknown-field.json", r#"{"generators": [], "extra": 1}"#);
    let o = run(&["aut", "--fan", &data("p2.json"), "--group", &path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn semantic_errors_are_named() {
    for (contents, kind) in [
        (r#"{"rays": [[2,0],[0,1],[-1,-1]]}"#, "NonPrimitiveRay"),
        (r#"{"rays": [[1,0],[0,1]]}"#, "TooFewRays"),
        (r#"{"rays": [[1,0],[1,2],[-1,-1]]}"#, "NotSmooth"),
    ] {
        let path = scratch(&format!("{kind}.json"), contents);
        let o = run(&["validate", "--fan", &path]);
        assert_eq!(o.status.code(), Some(2));
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.starts_with(&format!("error[{kind}]")), "{err}");
    }
    let o = run(&[
        "aut",
        "--fan",
        &data("p2.json"),
        "--group",
        &data("f2-aut.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("NotFanAutomorphism"));
    let o = run(&["validate"]);
    assert_eq!(o.status.code(), Some(2));
    let missing = run(&["validate", "--fan", "/nonexistent/fan.json"]);
    assert!(String::from_utf8(missing.stderr)
        .unwrap()
        .starts_with("error[Io]"));
}

#[test]
fn self_test_passes() {
    let o = run(&["self-test", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
