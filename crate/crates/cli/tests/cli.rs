use std::process::{Command, Output};

const HEADER: &str = "n,l,rho,c,alpha_used,oracle,thm1_c12,thm1_c3_lo,thm1_c3_hi,thm1_c4,thm2_lo,thm3_p1_hi,thm3_p2_lo,thm3_p3_lo,thm3_p4_lo,f1_hi,f2_lo,thm4_lo,peel_total_lo";

fn g31x(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g31x"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_parameters() {
    let o = g31x(&["info", "--n", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=6\nV=20\nd=9\nE=90\nalpha=4\n");
    let o = g31x(&["info", "--n", "7", "--format", "csv"]);
    assert!(stdout(&o).ends_with("7,35,18,315,5\n"));
}

#[test]
fn bounds_header_and_row() {
    let o = g31x(&["bounds", "--n", "6", "--l", "5", "--rho", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), HEADER);
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 19);
    assert_eq!(&row[..6], &["6", "5", "6", "0.75", "6", "2"]);
    // thm3_p1_hi / thm2_lo with alpha = n
    let ratio: f64 = row[11].parse::<f64>().unwrap() / row[10].parse::<f64>().unwrap();
    assert!((ratio - 3.0).abs() < 1e-9);
    assert!(lines.next().is_none());
}

#[test]
fn out_of_cap_cells_are_na() {
    let o = g31x(&["bounds", "--n", "9", "--l", "10"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "NA");
    assert_eq!(row[5], "NA");
    assert_eq!(row[17], "NA");
    assert_eq!(row[18], "NA");
}

#[test]
fn empty_grid_is_header_only() {
    let o = g31x(&["bounds", "--n", "3", "--l-range", "2:9:1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{HEADER}\n"));
}

#[test]
fn json_bounds_keep_column_order() {
    let o = g31x(&["bounds", "--n", "5", "--l", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v[0]
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    assert_eq!(keys.join(","), HEADER);
}

#[test]
fn peel_schema() {
    let o = g31x(&["peel", "--n", "6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for k in ["n", "l", "rho", "mode", "seed"] {
        assert!(v["params"].get(k).is_some(), "params.{k}");
    }
    let step = &v["steps"][0];
    for k in ["i", "alpha", "histogram", "cross_edges", "paper_tally"] {
        assert!(step.get(k).is_some(), "steps[].{k}");
    }
    assert_eq!(step["alpha"], 4);
    for k in ["cross_edges", "bound_total", "r_of_W"] {
        assert!(v["totals"].get(k).is_some(), "totals.{k}");
    }
    assert!(v["totals"]["cross_edges"].as_u64().unwrap() <= 90);
}

#[test]
fn independent_input_peels_in_one_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    std::fs::write(&path, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n").unwrap();
    let o = g31x(&[
        "peel",
        "--n",
        "6",
        "--input",
        path.to_str().unwrap(),
        "--steps",
        "all",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["totals"]["cross_edges"], 0);
}

#[test]
fn fixed_seed_is_byte_identical() {
    let args = [
        "peel", "--n", "9", "--l", "40", "--seed", "17", "--rho", "5",
    ];
    assert_eq!(g31x(&args).stdout, g31x(&args).stdout);
    let grid = [
        "bounds",
        "--n-range",
        "4:7",
        "--l-range",
        "0:30:3",
        "--rho",
        "4",
    ];
    assert_eq!(g31x(&grid).stdout, g31x(&grid).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(g31x(&["info", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        g31x(&["peel", "--n", "6", "--l", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        g31x(&["bounds", "--n", "6", "--l-range", "5:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(g31x(&["verify", "--samples", "3"]).status.code(), Some(2));
    assert_eq!(
        g31x(&["peel", "--n", "6", "--input", "/nonexistent/w.txt"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        g31x(&["info", "--n", "6", "--out", "/nonexistent/dir/out.txt"])
            .status
            .code(),
        Some(3)
    );
    let bad_env = Command::new(env!("CARGO_BIN_EXE_g31x"))
        .args(["info", "--n", "6"])
        .env("G31X_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn verify_passes_and_catches_tampering() {
    let o = g31x(&[
        "verify",
        "--n-range",
        "3:7",
        "--samples",
        "50",
        "--seed",
        "1",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify: PASS\n"));

    let o = g31x(&[
        "verify",
        "--n-range",
        "4:6",
        "--samples",
        "5",
        "--seed",
        "1",
        "--tamper-adjacency",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verify: FAIL"));

    let o = g31x(&["verify", "--samples", "0"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("vacuous"));
}
