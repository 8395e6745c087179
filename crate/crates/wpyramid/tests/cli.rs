use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wpyramid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpyramid")).args(args).env_clear().output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn pyramid_listings() {
    let o = wpyramid(&["pyramids", "2,5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("partition (2,5): 4 pyramids"));
    for m in ["( 0 3 )\n( 0 0 )", "( 0 2 )\n( 1 0 )", "( 0 1 )\n( 2 0 )", "( 0 0 )\n( 3 0 )"] {
        assert!(s.contains(m), "{m}");
    }
    assert!(stdout(&wpyramid(&["pyramids", "3"])).starts_with("partition (3): 1 pyramids"));
    // offsets of rows 1 and 2 have 2 and 3 choices
    assert!(stdout(&wpyramid(&["pyramids", "1,2,4"])).starts_with("partition (1,2,4): 6 pyramids"));
}

#[test]
fn pyramid_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = wpyramid(&["pyramids", "1,2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema"], "wpyramid-report/1");
    assert_eq!(v["data"]["pyramids"].as_array().unwrap().len(), 2);
}

#[test]
fn relations_pass_and_report_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = wpyramid(&["verify", "--partition", "2,2", "--char", "0", "--suite", "relations", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["checks"].as_u64().unwrap() > 0);
    assert_eq!(v["records"][0]["status"], "pass");
}

#[test]
fn main_theorem_on_one_two() {
    let o = wpyramid(&["verify", "--partition", "1,2", "--p", "2", "--suite", "main-theorem"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("c_pi = 4, minimal heads = 4, exhaustive = true"), "{s}");
}

#[test]
fn negative_control_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = wpyramid(&["verify", "--partition", "1,2", "--p", "2", "--suite", "relations", "--corrupt", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = read_json(&out);
    let recs = v["records"].as_array().unwrap();
    assert!(recs.iter().any(|r| r["status"] == "fail" && r["witness"].is_string() && r["checked"].is_null()));
    let o = wpyramid(&["verify", "--partition", "2,3", "--suite", "invariance", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn guard_skip_exit_status() {
    let o = wpyramid(&["verify", "--partition", "1,2", "--suite", "relations", "--guard-boxes", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("skipped"));
    let o = wpyramid(&["verify", "--partition", "2,2", "--p", "3", "--suite", "main-theorem", "--guard-dim", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn invalid_input_exit_status() {
    assert_eq!(wpyramid(&["verify", "--partition", "1,x", "--suite", "relations"]).status.code(), Some(2));
    assert_eq!(wpyramid(&["verify", "--partition", "1,2", "--char", "4", "--suite", "relations"]).status.code(), Some(2));
    assert_eq!(wpyramid(&["verify", "--partition", "1,2", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(wpyramid(&["verify", "--partition", "1,2", "--suite", "main-theorem"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = wpyramid(&[
            "verify", "--max-n", "3", "--char", "2,3", "--suite", "invariance,fp-factoring,minimal-modules",
            "--samples", "50", "--seed", "11", "--workers", workers, "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "1"));
    assert_eq!(a, run("c.json", "3"));
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_wpyramid"))
        .args(["verify", "--suite", "one-dim"])
        .env_clear()
        .env("WPYRAMID_PARTITION", "1,1")
        .env("WPYRAMID_CHAR", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(1,1)@[0,0] char 3"));
}

#[test]
fn module_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let export = dir.path().join("x.json");
    // left-justified (1,2): box 1 sits above box 2, so a_1 = a_2 + 1
    let o = wpyramid(&[
        "module", "--partition", "1,2", "--p", "2", "--tableau", "1,0,1", "--highest-weight", "--whittaker",
        "--out", out.to_str().unwrap(), "--export", export.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = read_json(&out);
    assert_eq!(r["data"]["dim"], 4);
    assert_eq!(r["data"]["whittaker_dim"], 1);
    assert!(r["data"]["highest_weight_vector"].is_array());
    let x = read_json(&export);
    assert_eq!(x["dim"], 4);
    assert_eq!(x["generators"].as_array().unwrap().len(), 9);

    let o = wpyramid(&["module", "--partition", "1,2", "--p", "2", "--tableau", "0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wpyramid(&["module", "--partition", "1,1", "--p", "2", "--tableau", "0,1", "--kind", "head"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn one_column_module_is_one_dimensional() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("x.json");
    let o = wpyramid(&["module", "--partition", "1,1,1", "--p", "3", "--tableau", "2,1,0", "--export", export.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&export)["dim"], 1);
}
