use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eqbaire"))
}

fn scenarios() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

#[test]
fn list_names_everything() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["example1", "example2", "lemma81", "dirichlet", "lambda_blend", "ambiguous_limit"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn suite_is_deterministic_and_passes() {
    let run = || bin().arg("suite").arg(scenarios()).output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["all_pass"], true);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let file = scenarios().join("sorgenfrey_ratio.json");
    let json = bin().arg("run").arg(&file).output().unwrap();
    let csv = bin().args(["run", "--format", "csv"]).arg(&file).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let mut from_json = Vec::new();
    for r in v["records"].as_array().unwrap() {
        for t in r["terms"].as_array().unwrap() {
            from_json.push((t["n"].as_u64().unwrap(), t["value"][0].as_f64().unwrap(), t["gap"].as_f64().unwrap()));
        }
    }
    let mut rdr = csv::Reader::from_reader(csv.stdout.as_slice());
    let from_csv: Vec<(u64, f64, f64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[5].parse().unwrap(), r[6].parse().unwrap(), r[8].parse().unwrap())
        })
        .collect();
    assert_eq!(from_json, from_csv);
    assert!(!from_json.is_empty());
}

#[test]
fn overrides_and_exit_codes() {
    let file = scenarios().join("grid_ratio.json");
    let strict = bin().args(["run", "--eps", "0"]).arg(&file).output().unwrap();
    assert_eq!(strict.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let ok = bin()
        .args(["run", "--schedule", "64,128,256", "--seed", "4", "--out"])
        .arg(&out)
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["scenario"]["rng_seed"], 4);
    assert_eq!(v["records"][0]["terms"].as_array().unwrap().len(), 3);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "x", "function": {"name": "ratio"}, "operator": "lambda_blend", "probes": {"kind": "explicit", "points": []}, "extra": 1}"#).unwrap();
    assert_eq!(bin().arg("run").arg(&bad).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("run").arg(dir.path().join("missing.json")).output().unwrap().status.code(), Some(2));
}
