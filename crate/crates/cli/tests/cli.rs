//! End-to-end tests of the `ckengine` binary against the bundled assets.

use std::path::PathBuf;
use std::process::{Command, Output};

fn assets() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckengine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(rel: &str) -> String {
    assets().join(rel).to_string_lossy().into_owned()
}

#[test]
fn bundled_scripts_pass() {
    for script in ["relations.ck", "ex41.ck", "outsplit.ck"] {
        let out = run(&["run", &path(&format!("scripts/{script}"))]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{script}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    let out = run(&["--mode", "float", "run", &path("scripts/delta.ck")]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "delta.ck: {}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn run_writes_report_and_exit_codes_match() {
    let dir = std::env::temp_dir().join(format!("ckengine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // A failing assertion: exit 1, report records the failure.
    let script = dir.join("fail.ck");
    std::fs::write(
        &script,
        format!(
            "load graph O2 \"{}\"\nuse graph O2\nassert-zero P(v)\n",
            path("graphs/o2.graph")
        ),
    )
    .unwrap();
    let report_path = dir.join("report.json");
    let out = run(&[
        "run",
        script.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["summary"]["failed"], 1);
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["inputs"].as_array().unwrap().len(), 1);
    let failing = &report["statements"][2];
    assert_eq!(failing["status"], "fail");
    assert!(failing["canonical"].is_object());

    // A parse error: exit 2.
    let bad = dir.join("bad.ck");
    std::fs::write(&bad, "frobnicate everything\n").unwrap();
    let out = run(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // An unknown verb: exit 2.
    let verb = dir.join("verb.ck");
    std::fs::write(
        &verb,
        format!(
            "load graph O2 \"{}\"\nuse graph O2\neval frob(P(v))\n",
            path("graphs/o2.graph")
        ),
    )
    .unwrap();
    let out = run(&["run", verb.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_graph_reports_structure() {
    let out = run(&["check-graph", &path("graphs/ex41.graph")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("U(B) = U(2) x U(1) x U(1) x U(1)"));
    assert!(text.contains("transitive: true"));

    let out = run(&["check-graph", &path("scripts/relations.ck")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hyp_command_reports_witness() {
    let out = run(&[
        "hyp",
        &path("graphs/ex41.graph"),
        &path("unitaries/ex41_u.unitary"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("holds: true"));
    assert!(text.contains("witness: vertex v1"));

    let out = run(&[
        "hyp",
        &path("graphs/o2.graph"),
        &path("unitaries/o2_flip.unitary"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("holds: false"));

    // The Hadamard file needs float mode; exact mode must refuse it.
    let out = run(&[
        "hyp",
        &path("graphs/o2.graph"),
        &path("unitaries/o2_hadamard.unitary"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "--mode",
        "float",
        "hyp",
        &path("graphs/o2.graph"),
        &path("unitaries/o2_hadamard.unitary"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("holds: true"));
}

#[test]
fn outsplit_command_prints_graph_and_verifies() {
    let out = run(&[
        "outsplit",
        &path("graphs/split_e.graph"),
        &path("partitions/split_e.partition"),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("vertex w^1"));
    assert!(text.contains("edge f1^2 : w^1 -> w^2"));
    assert!(text.contains("U(1) x U(1) x U(1) x U(1)"));
    assert!(text.contains("all pass: true"));
    assert!(text.contains("diagonal carry to level 3: true"));
}
