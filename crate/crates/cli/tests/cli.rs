use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bowen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bowen"))
        .args(args)
        .current_dir(dir)
        .env_remove("BOWEN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn ball_measure_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = bowen(
        dir.path(),
        &[
            "verify", "prop23", "--l", "1", "--n", "5", "--format", "json",
        ],
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["details"][4]["measure"], "1/243");
}

#[test]
fn doubling_coloring_has_no_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = bowen(
        dir.path(),
        &["color", "prop12", "--r", "4", "--out", "c.json"],
    );
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("c.meta.json").exists());
    let out = bowen(dir.path(), &["clique", "--coloring", "c.json", "--k", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "none");
}

#[test]
fn one_color_triangle_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("k3.json"),
        r#"{"n":1,"vertices":["a","b","c"],"edges":[[0,1,0],[0,2,0],[1,2,0]]}"#,
    )
    .unwrap();
    let out = bowen(
        dir.path(),
        &[
            "clique",
            "--coloring",
            "k3.json",
            "--k",
            "3",
            "--format",
            "json",
        ],
    );
    assert_eq!(code(&out), 1);
    assert_eq!(
        json(&out)["clique"]["vertices"],
        serde_json::json!([0, 1, 2])
    );
}

#[test]
fn decimals_and_unknown_fields_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = bowen(
        dir.path(),
        &[
            "bowen-ball",
            "--map",
            "6",
            "--x",
            "0",
            "--n",
            "2",
            "--eps",
            "0.333",
        ],
    );
    assert_eq!(code(&out), 2);
    fs::write(
        dir.path().join("bad.json"),
        r#"{"n":1,"vertices":["a","b"],"edges":[[0,1,0]],"colour":1}"#,
    )
    .unwrap();
    let out = bowen(
        dir.path(),
        &["clique", "--coloring", "bad.json", "--k", "3"],
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
    let out = bowen(dir.path(), &["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&bowen(
            d,
            &["color", "prop12", "--r", "3", "--out", "c.json"]
        )),
        0
    );
    let out = bowen(
        d,
        &[
            "certify",
            "--coloring",
            "c.json",
            "--seed",
            "3",
            "--out",
            "cert.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R(3,3) > 8"));
    let out = bowen(
        d,
        &[
            "certify",
            "verify",
            "--cert",
            "cert.json",
            "--coloring",
            "c.json",
        ],
    );
    assert_eq!(code(&out), 0);

    let mut c: Value =
        serde_json::from_str(&fs::read_to_string(d.join("c.json")).unwrap()).unwrap();
    c["edges"][0][2] = Value::from(0);
    fs::write(d.join("t.json"), c.to_string()).unwrap();
    let out = bowen(
        d,
        &[
            "certify",
            "verify",
            "--cert",
            "cert.json",
            "--coloring",
            "t.json",
        ],
    );
    assert_eq!(code(&out), 1);

    let out = bowen(d, &["certify", "--coloring", "c.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reports_are_deterministic_and_not_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["capacity", "--samples", "500", "--seed", "9", "--out"];
    assert_eq!(code(&bowen(d, &[&args[..], &["a.json"]].concat())), 0);
    assert_eq!(code(&bowen(d, &[&args[..], &["b.json"]].concat())), 0);
    assert_eq!(
        fs::read(d.join("a.json")).unwrap(),
        fs::read(d.join("b.json")).unwrap()
    );
    let again = bowen(d, &[&args[..], &["a.json"]].concat());
    assert_eq!(code(&again), 2);
    let forced = bowen(d, &[&args[..], &["a.json", "--force"]].concat());
    assert_eq!(code(&forced), 0);
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(d.join("a.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["command"], "capacity");
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bowen"))
        .args(["verify", "lemma22", "--l", "1", "--n", "2"])
        .env("BOWEN_OUT_DIR", dir.path().join("reports"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let saved: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("reports/verify.json")).unwrap())
            .unwrap();
    assert_eq!(saved["claim_id"], "component_thirds");
}

#[test]
fn budget_and_degenerate_maps_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = bowen(
        dir.path(),
        &[
            "separated",
            "search",
            "--map",
            "6",
            "--grid",
            "72",
            "--n",
            "2",
            "--eps",
            "1/3",
            "--exact",
            "--budget",
            "3",
            "--format",
            "json",
        ],
    );
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["maximal"], false);
    let plateau = r#"{"type":"pl","lift":[["0/1","0/1"],["1/2","0/1"],["1/1","1/1"]]}"#;
    let out = bowen(
        dir.path(),
        &[
            "bowen-ball",
            "--map",
            plateau,
            "--x",
            "0",
            "--n",
            "2",
            "--eps",
            "1/6",
        ],
    );
    assert_eq!(code(&out), 3);
}

#[test]
fn shadow_and_transfer_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("t.json"), r#"["0/1","1/2"]"#).unwrap();
    let out = bowen(
        d,
        &[
            "shadow",
            "--targets",
            "t.json",
            "--delta",
            "1/10",
            "--format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["y"], "9/100");
    assert_eq!(v["p"], 5);
    let out = bowen(
        d,
        &[
            "shadow",
            "--targets",
            "t.json",
            "--delta",
            "1/10",
            "--p",
            "1",
        ],
    );
    assert_eq!(code(&out), 1);

    fs::write(d.join("a2.json"), r#"["0/1","1/4","1/2","3/4"]"#).unwrap();
    let out = bowen(
        d,
        &[
            "transfer", "--map-g", "2", "--set", "a2.json", "--n", "2", "--eps", "1/3", "--format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["p"], 12);
    assert_eq!(v["report"]["certified"], true);
    assert_eq!(v["report"]["size"], 4);
}

#[test]
fn separated_set_files_feed_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bowen(
        d,
        &[
            "separated",
            "search",
            "--map",
            "2",
            "--grid",
            "8",
            "--n",
            "3",
            "--eps",
            "1/3",
            "--out",
            "s.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let out = bowen(
        d,
        &[
            "color", "dyn", "--map", "2", "--set", "s.json", "--n", "3", "--eps", "1/3",
            "--format", "json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 8);
    let out = bowen(
        d,
        &[
            "separated",
            "check",
            "--map",
            "2",
            "--set",
            "s.json",
            "--n",
            "2",
            "--eps",
            "1/3",
        ],
    );
    assert_eq!(code(&out), 1);
}
