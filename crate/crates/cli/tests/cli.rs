use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn tangles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = tangles(&full);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), value)
}

#[test]
fn counts_tangles_by_order() {
    let (code, v) = json(&["tangles", "--instance", "uniform:2,4", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 1);
    assert_eq!(
        v["result"]["tangles"][0]["members"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    let (code, v) = json(&["tangles", "--instance", "uniform:2,4", "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 0);
}

#[test]
fn reads_instance_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"graph 3\n0 1\n1 2\n0 2\n").unwrap();
    let spec = format!("file:{}", file.path().display());
    let (code, v) = json(&["tangles", "--instance", &spec, "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["instance"]["kind"], "graph");
}

#[test]
fn malformed_file_exits_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"gf2 2 3\n101\n01\n").unwrap();
    let spec = format!("file:{}", file.path().display());
    let out = tangles(&["tangles", "--instance", &spec, "-k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let (code, v) = json(&["tangles", "--instance", &spec, "-k", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    let out = tangles(&["tangles", "--instance", "file:/nonexistent/x", "-k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        tangles(&["tangles", "--instance", "uniform:2,4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tangles(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tangles(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        tangles(&["tangles", "--instance", "uniform:5,4", "-k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tangles(&["pivot", "--graph", "path3", "0", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn safe_remove_on_matroids() {
    let (code, v) = json(&["safe-remove", "--instance", "uniform:2,4", "--element", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["adherence"], "Both");
    let (code, v) = json(&[
        "safe-remove",
        "--instance",
        "graphic:triangle",
        "--element",
        "0-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["adherence"], "ContractOnly");
    assert_eq!(
        tangles(&["safe-remove", "--instance", "uniform:2,4", "--element", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn safe_remove_on_graphs() {
    let (code, v) = json(&[
        "safe-remove",
        "--instance",
        "c5",
        "--vertex",
        "0",
        "--edge",
        "0,1",
    ]);
    assert_eq!(code, 0);
    assert_ne!(v["result"]["adherence"], "None");
    assert!(v["result"]["split_free_count"].as_u64().unwrap() >= 2);
    let missing = tangles(&["safe-remove", "--graph", "c5", "--vertex", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    let not_incident = tangles(&[
        "safe-remove",
        "--graph",
        "c5",
        "--vertex",
        "0",
        "--edge",
        "2,3",
    ]);
    assert_eq!(not_incident.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for args in [
        ["verify", "bc-ineq", "--max-n", "6"],
        ["verify", "duality", "--max-n", "5"],
        ["verify", "pivot-invariance", "--max-v", "5"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["result"]["violations"], 0);
        assert!(v["result"]["checked"].as_u64().unwrap() > 0);
    }
    let out = tangles(&["verify", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("duality"));
}

#[test]
fn verify_caps_graph_sweeps() {
    assert_eq!(
        tangles(&["verify", "axioms", "--max-v", "7"]).status.code(),
        Some(2)
    );
}

#[test]
fn entangled_branch_width_and_pivot() {
    let (code, v) = json(&["entangled", "--instance", "uniform:2,4", "-k", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["entangled"], true);
    let (_, v) = json(&[
        "entangled",
        "--instance",
        "graphic:two-triangles",
        "-k",
        "2",
    ]);
    assert_eq!(v["result"]["entangled"], false);

    let (code, v) = json(&["branch-width", "--instance", "uniform:2,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["branch_width"], 3);
    let widths = v["result"]["decomposition"]["widths"].as_object().unwrap();
    assert!(widths.values().all(|w| w.as_u64().unwrap() <= 3));

    let (code, v) = json(&["pivot", "--graph", "path3", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["edges"], serde_json::json!(["01", "02"]));
}

#[test]
fn size_caps_need_force() {
    let capped = ["tangles", "--instance", "graph-random:7,0.5", "-k", "1"];
    assert_eq!(tangles(&capped).status.code(), Some(2));
    let mut forced = capped.to_vec();
    forced.push("--force");
    let out = tangles(&forced);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "tangles",
            "--instance",
            "fano",
            "-k",
            "3",
            "--format",
            "json",
        ],
        vec![
            "branch-width",
            "--instance",
            "graph-random:6,0.5",
            "--seed",
            "7",
            "--format",
            "json",
        ],
        vec![
            "verify",
            "split-free-removal",
            "--max-n",
            "5",
            "--max-v",
            "4",
            "--format",
            "json",
        ],
    ] {
        let a = tangles(&args);
        let b = tangles(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn reports_carry_version_and_hash() {
    let (_, v) = json(&["tangles", "--instance", "uniform:2,4", "-k", "1"]);
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["instance"]["sha256"].as_str().unwrap().len(), 64);
    let (_, w) = json(&[
        "tangles",
        "--instance",
        "uniform:2,4",
        "-k",
        "1",
        "--timing",
    ]);
    assert!(w["timing_ms"].is_number());
    assert!(v.get("timing_ms").is_none());
}
