//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-moore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_table2_row_k4() {
    let v = stdout_json(&["bounds", "1", "0", "2", "4"]);
    assert_eq!(v["value"], "25");
    assert_eq!(v["form"], "eq5");
}

#[test]
fn bounds_alternate_form_and_precondition() {
    let v = stdout_json(&["bounds", "1", "0", "2", "4", "--form", "thm-ii"]);
    assert_eq!(v["value"], "25");
    // thm-iii needs r1 >= z.
    let out = run(&["bounds", "1", "0", "2", "4", "--form", "thm-iii"]);
    assert!(!out.status.success());
}

#[test]
fn construct_reports_order_and_diameter() {
    let v = stdout_json(&["construct", "--group", "18", "--gens", "1;4;9"]);
    assert_eq!(v["order"], 18);
    assert_eq!(v["diameter"], 4);
    assert_eq!(v["r1"], 1);
    assert_eq!(v["z"], 2);
    let sizes: Vec<u64> = v["layer_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(sizes.iter().sum::<u64>(), 18);
}

#[test]
fn construct_accepts_tuples_and_negatives() {
    let v = stdout_json(&[
        "construct",
        "--group",
        "2,16",
        "--gens",
        "(1,11);(0,5);(1,8)",
    ]);
    assert_eq!(v["order"], 32);
    assert_eq!(v["diameter"], 6);

    let v = stdout_json(&["construct", "--group", "12", "--gens", "-11;4;6"]);
    assert_eq!(v["diameter"], 3); // -11 = 1 (mod 12)
}

#[test]
fn diameter_prints_only_the_diameter() {
    let v = stdout_json(&["diameter", "--group", "6", "--gens", "1;3"]);
    assert_eq!(v, serde_json::json!({"diameter": 3}));
}

#[test]
fn table1_csv_has_known_entries() {
    let out = run(&["table1", "--k", "4", "--r1-max", "2", "--z-max", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z/r1,0,1,2");
    assert_eq!(lines[1], "0,1,2,4");
    assert_eq!(lines[2], "1,5,9,16");
    assert_eq!(lines[3], "2,15,25,41");
}

#[test]
fn families_table2_small() {
    let v = stdout_json(&["families", "--name", "table2", "--k", "2"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["measured"]["order"], 8);
    assert_eq!(rows[0]["measured"]["diameter"], 2);
    assert_eq!(rows[0]["prediction_holds"], true);
}

#[test]
fn families_dense_reports_estimate_alongside() {
    let v = stdout_json(&["families", "--name", "dense", "--z", "2", "--m", "2"]);
    let row = &v.as_array().unwrap()[0];
    assert_eq!(row["measured"]["order"], 24);
    assert_eq!(row["measured"]["diameter"], 5);
    assert!(
        (row["metrics"]["closed_form_order_estimate"]
            .as_f64()
            .unwrap()
            - 12.0)
            .abs()
            < 1e-9
    );
}

#[test]
fn tiles_by_matrix_and_by_dimensions_agree() {
    let a = stdout_json(&["tiles", "--matrix", "4,-1;-3,3"]);
    let b = stdout_json(&["tiles", "--tile", "4,3,3,1"]);
    assert_eq!(a, b);
    assert_eq!(a["area"], 9);
    assert_eq!(a["tessellates"], true);
    assert_eq!(a["diameter"], 4);
}

#[test]
fn search_finds_the_k3_optimum_and_streams_progress() {
    let out = run(&["search", "--r1", "1", "--z", "2", "--k", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["best_order"], 12);
    assert_eq!(v["exhausted"], true);
    let progress = String::from_utf8_lossy(&out.stderr);
    assert!(
        progress.contains("order 16"),
        "progress on stderr: {progress}"
    );
}

#[test]
fn search_exit_code_2_when_budget_exhausted() {
    let out = run(&[
        "search",
        "--r1",
        "1",
        "--z",
        "2",
        "--k",
        "3",
        "--budget-candidates",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exhausted"], false);
}

#[test]
fn search_deterministic_across_jobs() {
    let a = run(&[
        "search",
        "--r1",
        "0",
        "--r2",
        "1",
        "--z",
        "1",
        "--k",
        "3",
        "--all-witnesses",
    ]);
    let b = run(&[
        "search",
        "--r1",
        "0",
        "--r2",
        "1",
        "--z",
        "1",
        "--k",
        "3",
        "--all-witnesses",
        "--jobs",
        "4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_respects_order_range_flags() {
    // Order 9 is odd and r1 = 1 forces even order, so the range is empty.
    let v = stdout_json(&[
        "search", "--r1", "1", "--z", "2", "--k", "2", "--n-min", "9", "--n-max", "9",
    ]);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["best_order"], serde_json::Value::Null);
    assert_eq!(v["candidates_examined"], 0);
}

#[test]
fn nonexistence_by_parity_and_by_search() {
    let v = stdout_json(&["nonexistence", "--z", "2", "--k", "2"]);
    assert_eq!(v["attained"], false);
    assert_eq!(v["evidence"]["kind"], "odd_order_parity");

    let v = stdout_json(&["nonexistence", "--z", "2", "--k", "3"]);
    assert_eq!(v["bound"], 16);
    assert_eq!(v["attained"], false);
    assert_eq!(v["evidence"]["kind"], "exhausted_search");
}

#[test]
fn fig7_columns_are_ordered() {
    let out = run(&["fig7-data", "--z", "5", "--k-max", "10", "--k-min", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,moore_bound,dense_estimate,circulant_power_estimate"
    );
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let bound: f64 = cols[1].parse().unwrap();
        let dense: f64 = cols[2].parse().unwrap();
        let power: f64 = cols[3].parse().unwrap();
        assert!(bound >= dense && dense >= power, "{line}");
    }
}

#[test]
fn invalid_input_fails_nonzero() {
    assert!(!run(&["construct", "--group", "0", "--gens", "1"])
        .status
        .success());
    assert!(!run(&["construct", "--group", "6", "--gens", "0"])
        .status
        .success());
    assert!(!run(&["tiles", "--matrix", "2,1;1,2"]).status.success());
    assert!(!run(&["bounds", "1", "0", "2"]).status.success());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["families", "--name", "table2", "--k", "6"]);
    let b = run(&["families", "--name", "table2", "--k", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
