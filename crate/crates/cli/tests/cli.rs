use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn packlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_packlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok(args: &[&str], stdin: Option<&str>) -> Value {
    let out = packlab(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    json(&out)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn triangle(d: &str) -> String {
    stdout(&packlab(&["gen", "triangle", "--d", d], None))
}

#[test]
fn twocs_on_the_demand_triangle_from_stdin() {
    let out = ok(&["approx", "twocs", "-"], Some(&triangle("2")));
    assert_eq!(out["certificate"]["lp_objective"], "9/4");
    assert_eq!(out["certificate"]["best_cost"], "1");
    assert_eq!(out["certificate"]["alpha"], "1/3");
}

#[test]
fn gap_of_t50() {
    let out = ok(&["gap", "-"], Some(&triangle("50")));
    assert_eq!(out["gap"], "297/100");
    assert_eq!(out["ip"], "1");
}

#[test]
fn verify_accepts_every_emitted_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let plane = stdout(&packlab(&["gen", "plane", "--q", "2", "--d", "2"], None));
    let star = stdout(&packlab(
        &[
            "gen",
            "star",
            "--capacity",
            "5",
            "--demands",
            "3,2,2",
            "--weights",
            "2,3/2,1",
        ],
        None,
    ));
    let cases = [
        ("t2.json", triangle("2"), vec!["khdm", "twocs"]),
        ("fano.json", plane, vec!["khdm"]),
        ("star.json", star, vec!["khdm", "twocs"]),
    ];
    for (name, text, algorithms) in cases {
        let inst = write(dir.path(), name, &text);
        let inst = inst.to_str().unwrap();
        for alg in algorithms {
            let out = stdout(&packlab(&["approx", alg, inst], None));
            let emitted = write(dir.path(), "approx.json", &out);
            let report = ok(&["verify", inst, emitted.to_str().unwrap()], None);
            assert_eq!(report["ok"], true, "{name} {alg}");
        }
        let out = stdout(&packlab(&["decompose", inst, "--alpha", "1/6"], None));
        let emitted = write(dir.path(), "decomp.json", &out);
        let report = ok(
            &["verify", inst, emitted.to_str().unwrap(), "--alpha", "1/6"],
            None,
        );
        assert_eq!(report["ok"], true, "{name} decompose");
    }
}

#[test]
fn verify_rejects_a_tampered_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "t2.json", &triangle("2"));
    let out = stdout(&packlab(
        &["decompose", inst.to_str().unwrap(), "--alpha", "1/4"],
        None,
    ));
    let emitted = write(dir.path(), "d.json", &out);
    let wrong = packlab(
        &[
            "verify",
            inst.to_str().unwrap(),
            emitted.to_str().unwrap(),
            "--alpha",
            "1/3",
        ],
        None,
    );
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(json(&wrong)["ok"], false);

    let mut doc: Value = serde_json::from_str(&out).unwrap();
    doc["terms"][0]["lambda"] = Value::String("1/2".into());
    let tampered = write(dir.path(), "bad.json", &doc.to_string());
    let bad = packlab(
        &["verify", inst.to_str().unwrap(), tampered.to_str().unwrap()],
        None,
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let inst = stdout(&packlab(
        &[
            "gen",
            "random",
            "--seed",
            "11",
            "--k",
            "2",
            "--vertices",
            "6",
            "--edges",
            "9",
        ],
        None,
    ));
    for alg in ["khdm", "twocs"] {
        let a = packlab(&["approx", alg, "-"], Some(&inst));
        let b = packlab(&["approx", alg, "-"], Some(&inst));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{alg}");
    }
    let args = [
        "gap", "--random", "--seed", "3", "--trials", "6", "--edges", "8",
    ];
    let serial = packlab(&[&args[..], &["--jobs", "1"]].concat(), None);
    let parallel = packlab(&[&args[..], &["--jobs", "4"]].concat(), None);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(json(&serial)["trials"].as_array().unwrap().len(), 6);
}

#[test]
fn domain_errors_are_json_with_exit_1() {
    let out = packlab(&["approx", "bmatching", "-"], Some(&triangle("2")));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NonUnitDemand");

    let out = packlab(&["validate", "-"], Some("{\"vertices\": []"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "Parse");

    let out = packlab(&["gen", "plane", "--q", "4", "--d", "1"], None);
    assert_eq!(json(&out)["error"], "UnsupportedOrder");

    let out = Command::new(env!("CARGO_BIN_EXE_packlab"))
        .args(["approx", "twocs", "-"])
        .env("PACKLAB_MAX_ITERS", "0")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin
                .take()
                .unwrap()
                .write_all(triangle("2").as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "IterationLimit");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        packlab(&["approx", "simplex", "x.json"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        packlab(&["decompose", "x.json"], None).status.code(),
        Some(2)
    );
    assert_eq!(packlab(&[], None).status.code(), Some(2));
}

#[test]
fn lp_oracle_and_validate() {
    let t2 = triangle("2");
    let lp = ok(&["lp", "-"], Some(&t2));
    assert_eq!(lp["objective"], "9/4");
    assert_eq!(lp["x"]["a"], "3/4");
    assert_eq!(lp["optimal"], true);
    assert_eq!(lp["extreme_point"], true);

    let oracle = ok(&["oracle", "-"], Some(&t2));
    assert_eq!(oracle["optimum"], serde_json::json!(["a"]));
    let too_small = packlab(&["oracle", "-", "--max-edges", "2"], Some(&t2));
    assert_eq!(json(&too_small)["error"], "TooLarge");

    let v = ok(&["validate", "-"], Some(&t2));
    assert_eq!(v["k"], 2);
    assert_eq!(v["uniform_demand"], true);
}

#[test]
fn lp_with_costs_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "t2.json", &triangle("2"));
    let costs = write(dir.path(), "c.json", r#"{"a": "1", "b": "0", "c": "0"}"#);
    let lp = ok(
        &[
            "lp",
            inst.to_str().unwrap(),
            "--costs",
            costs.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(lp["objective"], "1");
    assert_eq!(lp["x"]["a"], "1");
}

#[test]
fn audit_reports_every_insertion() {
    let out = ok(&["approx", "khdm", "-", "--audit"], Some(&triangle("3")));
    let audits = out["audits"].as_array().unwrap();
    assert_eq!(audits.len(), 3);
    assert!(audits
        .iter()
        .all(|a| a["condition_holds"] == true && a["bounds_hold"] == true));
}

#[test]
fn timing_wraps_the_output() {
    let t2 = triangle("2");
    let a = ok(&["--timing", "gap", "-"], Some(&t2));
    let b = ok(&["gap", "-", "--timing"], Some(&t2));
    assert_eq!(a["output"]["gap"], "9/4");
    assert_eq!(a["ratios"]["gap"], "9/4");
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert!(a["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn matching_on_a_given_point() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "m.json",
        r#"{"vertices":[{"id":"1","capacity":1},{"id":"2","capacity":1},{"id":"3","capacity":1}],
            "edges":[{"id":"a","endpoints":[{"vertex":"1","demand":1},{"vertex":"2","demand":1}],"weight":"1"},
                     {"id":"b","endpoints":[{"vertex":"2","demand":1},{"vertex":"3","demand":1}],"weight":"1"},
                     {"id":"c","endpoints":[{"vertex":"1","demand":1},{"vertex":"3","demand":1}],"weight":"1"}]}"#,
    );
    let x = write(
        dir.path(),
        "x.json",
        r#"{"a": "1/2", "b": "1/2", "c": "1/2"}"#,
    );
    let out = ok(
        &[
            "approx",
            "matching",
            inst.to_str().unwrap(),
            "--x",
            x.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out["alpha"], "2/3");
    let emitted = write(
        dir.path(),
        "out.json",
        &serde_json::to_string(&out).unwrap(),
    );
    assert_eq!(
        ok(
            &["verify", inst.to_str().unwrap(), emitted.to_str().unwrap()],
            None
        )["ok"],
        true
    );
}
