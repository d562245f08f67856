use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn octorb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_octorb")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn verify_operators_over_f5() {
    let (code, out, err) = octorb(&["verify-operators", "--field", "F5"]);
    assert_eq!(code, 0, "{err}");
    let report = json(&out);
    assert_eq!(report["task"], "verify-operators");
    assert_eq!(report["field"], "Fp:5");
    let checks: Vec<&str> = report["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["check"].as_str().unwrap())
        .collect();
    for c in ["R1-rota-baxter", "R2-non-splitting", "phi-R1-rota-baxter", "proposition-1"] {
        assert!(checks.contains(&c), "missing {c}");
    }
    assert!(err.lines().all(|l| l.starts_with("PASS")), "{err}");
    assert!(report.get("wall_ms").is_none());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify-algebra", "--field", "F4"][..],
        &["verify-algebra", "--field", "R"],
        &["search-kernel", "--weight", "0"],
        &["verify-operators", "--field", "Q", "--weight", "0/3"],
        &["search-kernel", "--kernel", "K5"],
        &["isotropic-audit", "--field", "Q"],
        &["orbit-equiv", "missing-a.json", "missing-b.json"],
    ] {
        let (code, out, err) = octorb(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(out.is_empty());
        assert!(err.starts_with("error:"), "{err}");
    }
}

#[test]
fn search_kernel_k3a() {
    let (code, out, _) = octorb(&["search-kernel", "--kernel", "K3a", "--field", "F2", "--weight", "1"]);
    assert_eq!(code, 0);
    let report = json(&out);
    assert_eq!(report["counts"]["nonsplitting_count"], 0);
    assert_eq!(report["complete"], true);
    assert_eq!(report["artifacts"]["solutions"].as_array().unwrap().len(), 16);
}

#[test]
fn exhausted_budget_exits_3() {
    let (code, out, _) = octorb(&["search-kernel", "--kernel", "K4", "--budget", "100"]);
    assert_eq!(code, 3);
    let report = json(&out);
    assert_eq!(report["complete"], false);
    assert_eq!(report["nodes_visited"], 100);
}

#[test]
fn orbit_equiv_of_an_operator_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = octorb(&["search-kernel", "--kernel", "K3b"]);
    let solutions = json(&out)["artifacts"]["solutions"].clone();
    let a = dir.path().join("a.json");
    std::fs::write(&a, solutions[0].to_string()).unwrap();
    let a = a.to_str().unwrap();
    let (code, out, err) = octorb(&["orbit-equiv", a, a, "--field", "F2"]);
    assert_eq!(code, 0, "{err}");
    let report = json(&out);
    let witness = report["findings"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["check"] == "orbit-witness")
        .unwrap();
    assert_eq!(witness["status"], "pass");
    assert_eq!(witness["detail"]["element"], 0);
    assert_eq!(witness["detail"]["applied_phi"], false);
}

#[test]
fn orbit_equiv_rejects_a_field_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = octorb(&["search-kernel", "--kernel", "K3a"]);
    let a = dir.path().join("a.json");
    std::fs::write(&a, json(&out)["artifacts"]["solutions"][0].to_string()).unwrap();
    let a = a.to_str().unwrap();
    let (code, _, err) = octorb(&["orbit-equiv", a, a, "--field", "F3"]);
    assert_eq!(code, 2);
    assert!(err.contains("Fp:2"), "{err}");
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = octorb(&["verify-decompositions", "--field", "F3", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(Path::new(&path).exists());
    assert_eq!(json(&std::fs::read_to_string(&path).unwrap())["task"], "verify-decompositions");
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for args in [
        ["verify-algebra", "--field", "Q"],
        ["verify-morphisms", "--field", "F3"],
        ["search-kernel", "--kernel", "K3b"],
    ] {
        let one = octorb(&[&args[..], &["--threads", "1", "--seed", "9"]].concat());
        let four = octorb(&[&args[..], &["--threads", "4", "--seed", "9"]].concat());
        assert_eq!(one.0, 0);
        assert_eq!(one.1, four.1, "{args:?}");
    }
}

#[test]
fn seed_changes_random_suites() {
    let a = octorb(&["verify-algebra", "--field", "F5", "--seed", "1"]).1;
    let b = octorb(&["verify-algebra", "--field", "F5", "--seed", "2"]).1;
    assert_ne!(a, b);
}

#[test]
fn timing_adds_wall_clock() {
    let (_, out, _) = octorb(&["verify-operators", "--timing"]);
    assert!(json(&out)["wall_ms"].is_u64());
}

#[test]
fn catalog_lists_kernels_and_sides() {
    let (code, out, _) = octorb(&["catalog", "--field", "Q"]);
    assert_eq!(code, 0);
    let entries = json(&out);
    let names: Vec<&str> = entries.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["K4", "K3a", "K3b", "C2", "D1.A1", "D7.A2", "E19p.A1"] {
        assert!(names.contains(&n), "missing {n}");
    }
    let k4 = entries.as_array().unwrap().iter().find(|e| e["name"] == "K4").unwrap();
    assert_eq!(k4["dim"], 4);
    assert_eq!(k4["basis"][0], serde_json::json!(["1", "0", "0", "0", "0", "0", "0", "0"]));
}
