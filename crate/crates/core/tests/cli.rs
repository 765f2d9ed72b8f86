use std::process::{Command, Output};

use serde_json::Value;

fn wiretap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiretap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gain_prints_exact_values_first() {
    let o = wiretap(&["gain", "E8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("4/3"));
    assert_eq!(stdout(&wiretap(&["gain", "Z8"])).lines().next(), Some("1"));
    assert_eq!(stdout(&wiretap(&["gain", "80"])).lines().next(), Some("536870912/1414413"));
    let v: Value = serde_json::from_slice(&wiretap(&["gain", "Leech", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["weak"], "256/63");
    assert_eq!(v["weak_exact"], true);
}

#[test]
fn extremal_prints_the_polynomial() {
    let o = wiretap(&["extremal", "24"]);
    assert_eq!(stdout(&o).lines().next(), Some("E4^3 - 720*Delta"));
    let v: Value = serde_json::from_slice(&wiretap(&["extremal", "80", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["kissing"], "1250172000");
    assert_eq!(v["min_norm"], 8);
}

#[test]
fn exit_codes() {
    assert_eq!(wiretap(&[]).status.code(), Some(2));
    assert_eq!(wiretap(&["gain"]).status.code(), Some(2));
    assert_eq!(wiretap(&["bound", "--format", "xml"]).status.code(), Some(2));
    let o = wiretap(&["gain", "NoSuchLattice"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["error"].as_str().unwrap().contains("NoSuchLattice"));
    assert_eq!(wiretap(&["encode", "--chain", "z8", "--bits", "g"]).status.code(), Some(1));
}

#[test]
fn csv_uses_seventeen_significant_digits() {
    let out = stdout(&wiretap(&["curve", "E8", "--points", "5"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("y_db,xi,theta_lattice,theta_cubic"));
    for line in lines {
        for field in line.split(',') {
            let (mantissa, _) = field.split_once('e').expect("scientific notation");
            let digits = mantissa.trim_start_matches('-').replace('.', "");
            assert_eq!(digits.len(), 17, "{field}");
            assert_eq!(field.parse::<f64>().unwrap().to_string().parse::<f64>().unwrap(), field.parse::<f64>().unwrap());
        }
    }
    let bound = stdout(&wiretap(&["bound", "--n-min", "8", "--n-max", "24"]));
    assert_eq!(bound.lines().next(), Some("n,bound_exact,bound_theta3,bound_1086,extremal_gain"));
    assert_eq!(bound.lines().count(), 4);
}

#[test]
fn identical_arguments_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["simulate", "--trials", "5000", "--seed", "9", "--sigma-e", "0.6"],
        &["curve", "D4", "--points", "21"],
        &["simulate", "--sweep", "-5:5:5", "--trials", "3000", "--seed", "4"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("run{i}_{rep}.out"));
            let mut full: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--out", &p]);
            let o = wiretap(&full);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            assert!(o.stdout.is_empty());
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1]);
    }
}

#[test]
fn simulate_json_fields() {
    let v: Value = serde_json::from_slice(&wiretap(&["simulate", "--trials", "2000", "--seed", "1"]).stdout).unwrap();
    for key in ["config", "p_bob", "p_eve", "stderr_bob", "stderr_eve", "theta_bound_eve", "trials", "seed"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["trials"], 2000);
    let sweep = stdout(&wiretap(&["simulate", "--sweep", "0:10:5", "--trials", "2000"]));
    assert_eq!(sweep.lines().next(), Some("snr_db,p_eve_mc,p_eve_closed,p_eve_bound"));
    assert_eq!(sweep.lines().count(), 4);
}

#[test]
fn encode_and_decode() {
    let v: Value = serde_json::from_slice(&wiretap(&["encode", "--chain", "z8", "--bits", "c0", "--length", "8"]).stdout).unwrap();
    assert_eq!(v["point"], serde_json::json!([0, 0, 0, 1, 0, 0, 0, 0]));
    assert_eq!(v["frame_scale2"], 0);
    assert_eq!(v["coset_labels_per_level"].as_array().unwrap().len(), 8);
    let o = wiretap(&["decode", "--chain", "z8", "--length", "8", "--point", "0.1,0,0,0.9,0,0,-0.2,0"]);
    assert_eq!(stdout(&o).trim(), "11000000");
    let v: Value = serde_json::from_slice(&wiretap(&["encode", "--chain", "e8", "--bits", "f"]).stdout).unwrap();
    assert_eq!(v["frame_scale2"], -1);
}

#[test]
fn catalog_lists_the_chain() {
    let out = stdout(&wiretap(&["catalog"]));
    assert!(out.contains("E8") && out.contains("sqrt2E8") && out.contains("(8,4,4)"));
    let v: Value = serde_json::from_slice(&wiretap(&["catalog", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["chain"].as_array().unwrap().len(), 9);
}
