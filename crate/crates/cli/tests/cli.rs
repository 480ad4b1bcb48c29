use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit status")
}

fn json(args: &[&str]) -> Value {
    let out = grain(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn p(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn bound_reports_table_value_and_echoes_params() {
    let v = json(&["bound", "--n", "9", "--t", "1"]);
    assert_eq!(v["bound"], 112);
    assert_eq!(v["exact_sum"], "511/9");
    assert_eq!(v["params"]["n"], 9);
    assert_eq!(v["command"], "bound");
}

#[test]
fn bound_is_even_floor_of_twice_the_sum() {
    let v = json(&["bound", "--n", "13", "--t", "2", "--closed-form"]);
    let (num, den) = v["exact_sum"].as_str().unwrap().split_once('/').unwrap();
    // the sum counts codewords with x_1 = 0; complements double it
    let q = 2 * num.parse::<u64>().unwrap() / den.parse::<u64>().unwrap();
    assert_eq!(v["bound"], q - q % 2);
    assert_eq!(v["closed_form"], Value::Null);
}

#[test]
fn bound_rejects_t_at_least_n() {
    let out = grain(&["bound", "--n", "3", "--t", "3"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_or_unknown_flags_are_usage_errors() {
    assert_eq!(code(&grain(&["bound", "--n", "9"])), 2);
    assert_eq!(code(&grain(&["frobnicate"])), 2);
    assert_eq!(code(&grain(&["verify", "--code", "/nonexistent/c.txt", "--t", "1"])), 2);
}

#[test]
fn table_rows_match_constructions() {
    let out = grain(&["table1", "--n-min", "3", "--n-max", "20"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# table1 n_min=3 n_max=20"));
    assert_eq!(lines.next(), Some("n,lower,upper,lower_source"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 18);
    let row = |n: u32| rows.iter().find(|r| r[0] == n.to_string()).unwrap();
    assert_eq!(row(9)[1..], ["64", "112", "gamma hamming:3:2"]);
    assert_eq!(row(16)[1..3], ["4096", "8190"]);
    assert_eq!(row(20)[1..3], ["52432", "104856"]);
    assert_eq!(code(&grain(&["table1", "--n-max", "27"])), 2);
}

#[test]
fn gamma_repetition_lift_corrects_two_grain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(&dir, "c.txt");
    let v = json(&[
        "construct",
        "gamma",
        "--outer",
        "rep:3:5",
        "--t",
        "2",
        "--lift",
        "--out",
        &c,
    ]);
    assert_eq!(v["size"], 68);
    assert_eq!(v["length"], 11);
    let v = json(&["verify", "--code", &c, "--t", "2", "--model", "grain"]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["size"], 68);

    let out = grain(&["verify", "--code", &c, "--t", "3"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    let w = &v["witness"];
    assert_ne!(w["first"], w["second"]);
    assert_eq!(w["shared"].as_str().unwrap().len(), 11);
}

#[test]
fn published_colouring_beats_group_partition_by_16192() {
    let dir = tempfile::tempdir().unwrap();
    let (pub7, group) = (p(&dir, "p7.txt"), p(&dir, "g6.txt"));
    json(&["color", "published", "--out", &pub7]);
    json(&["color", "group", "--m", "6", "--out", &group]);
    let v = json(&["color", "verify", "--file", &pub7]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["sizes"], serde_json::json!([11, 8, 9, 9, 9, 9, 9]));

    let count = |file: &str| {
        json(&["cardinality", "colored", "--coloring", file, "--outer", "hamming:7:2"])["count"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(count(&pub7) - count(&group), 16192);
}

#[test]
fn long_colored_code_is_refused_but_membership_works() {
    let dir = tempfile::tempdir().unwrap();
    let pub7 = p(&dir, "p7.txt");
    json(&["color", "published", "--out", &pub7]);
    let out = grain(&["construct", "colored", "--coloring", &pub7, "--outer", "hamming:7:2"]);
    assert_eq!(code(&out), 3);
    let zero = "0".repeat(48);
    let v = json(&[
        "construct",
        "colored",
        "--coloring",
        &pub7,
        "--outer",
        "hamming:7:2",
        "--check",
        &zero,
    ]);
    assert_eq!(v["member"], true);
    // a single flipped cell moves one block to a nonzero symbol
    let one = format!("1{}", "0".repeat(47));
    let v = json(&[
        "construct",
        "colored",
        "--coloring",
        &pub7,
        "--outer",
        "hamming:7:2",
        "--check",
        &one,
    ]);
    assert_eq!(v["member"], false);
}

#[test]
fn cap_refusals_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = grain(&[
        "--cap",
        "100",
        "construct",
        "group",
        "--group",
        "Z3xZ6",
        "--out",
        &p(&dir, "g.txt"),
    ]);
    assert_eq!(code(&out), 3);
    assert!(!dir.path().join("g.txt").exists());
}

#[test]
fn huge_counts_are_strings() {
    let dir = tempfile::tempdir().unwrap();
    let pub7 = p(&dir, "p7.txt");
    json(&["color", "published", "--out", &pub7]);
    let v = json(&["cardinality", "colored", "--coloring", &pub7, "--outer", "hamming:7:3"]);
    assert_eq!(v["length"], 342);
    let s = v["count"].as_str().expect("decimal string");
    assert!(s.len() > 16 && s.bytes().all(|b| b.is_ascii_digit()));
}

#[test]
fn fourier_counts_match_lifted_construction() {
    let dir = tempfile::tempdir().unwrap();
    let h = p(&dir, "H.txt");
    std::fs::write(&h, "3 2 4\n0 1 1 1\n1 0 1 2\n").unwrap();
    let v = json(&["cardinality", "fourier", "--matrix", &h]);
    assert_eq!(v["total"], 256);
    let counts = v["counts"].as_object().unwrap();
    assert_eq!(counts.len(), 9);
    for (b, c) in counts {
        let built = json(&["construct", "lifted", "--matrix", &h, "--residue", b]);
        assert_eq!(built["size"], *c, "residue {b}");
    }
    assert_eq!(counts["0,0"], 32);
    assert_eq!(
        json(&["cardinality", "gamma", "--outer", "hamming:3:2", "--lift"])["grain"],
        64
    );
}

#[test]
fn group_code_is_single_grain_correcting() {
    let dir = tempfile::tempdir().unwrap();
    let g = p(&dir, "g.txt");
    let v = json(&["construct", "group", "--group", "Z3xZ6", "--out", &g]);
    assert_eq!(v["size"], 14592);
    assert_eq!(v["length"], 18);
    assert_eq!(json(&["verify", "--code", &g, "--t", "1"])["verdict"], "PASS");
    let best = json(&["best-group", "--n", "18"]);
    assert_eq!(best["group"], "Z2xZ3xZ3");
    assert_eq!(best["cardinality"], 14592);
}

#[test]
fn improper_colouring_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(&dir, "bad.txt");
    // 0 and 1 are one grain apart yet share a class
    std::fs::write(&f, "2 1 3\n0 1\n2\n3\n").unwrap();
    let out = grain(&["color", "verify", "--file", &f]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["violation"]["color"], 0);
}

#[test]
fn malformed_code_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(&dir, "bad.txt");
    std::fs::write(&f, "# header\n0101\n01x1\n").unwrap();
    let out = grain(&["verify", "--code", &f, "--t", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Output> = (0..2)
        .map(|i| {
            let out = p(&dir, &format!("c{i}.txt"));
            grain(&[
                "color",
                "search",
                "--m",
                "5",
                "--seed",
                "3",
                "--restarts",
                "4",
                "--out",
                &out,
            ])
        })
        .collect();
    let a = std::fs::read(dir.path().join("c0.txt")).unwrap();
    let b = std::fs::read(dir.path().join("c1.txt")).unwrap();
    assert_eq!(a, b);
    let strip = |o: &Output| {
        String::from_utf8_lossy(&o.stdout)
            .replace("c0.txt", "")
            .replace("c1.txt", "")
    };
    assert_eq!(strip(&runs[0]), strip(&runs[1]));
    let t = |threads: &str| grain(&["--threads", threads, "table1", "--n-max", "26"]).stdout;
    assert_eq!(t("1"), t("4"));
    assert!(Path::new(&p(&dir, "c0.txt")).exists());
}

#[test]
fn formats_render_same_fields() {
    let text = String::from_utf8(grain(&["best-group", "--n", "16", "--format", "text"]).stdout).unwrap();
    assert_eq!(text, "# best-group n=16\ngroup: Z16\nlength: 16\ncardinality: 4096\n");
    let csv = String::from_utf8(grain(&["best-group", "--n", "16", "--format", "csv"]).stdout).unwrap();
    assert_eq!(
        csv,
        "# best-group n=16\nkey,value\ngroup,Z16\nlength,16\ncardinality,4096\n"
    );
}
