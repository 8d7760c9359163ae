use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn iwahori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwahori")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn dot_tree_has_three_nodes() {
    let out = iwahori(&["tree", "--type", "A1", "--word", "0,1,0", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with('n') && l.contains("[label=") && !l.contains("->")).count(), 3);
    assert_eq!(text.matches("->").count(), 2);
}

#[test]
fn dims_worked_example() {
    let out = iwahori(&["dims", "--type", "A1", "--word", "0,1,0", "--b", "kappa=0,nu=0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    let row = &v["rows"][0];
    assert_eq!((row["d_w"].as_i64(), row["dim"].as_i64(), row["count"].as_i64()), (Some(2), Some(2), Some(1)));
}

#[test]
fn chi_adjoint_representation() {
    let out = iwahori(&["verify", "chi", "--type", "A2", "--mu", "theta"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["rows"][0];
    assert_eq!((row["engine_count"].as_i64(), row["dual_mult"].as_i64()), (Some(2), Some(2)));
    assert_eq!(row["equal"], true);
}

#[test]
fn goldens_are_byte_stable() {
    let cases: [(&str, Vec<&str>); 6] = [
        ("tree_a1.json", vec!["tree", "--type", "A1", "--word", "0,1,0"]),
        ("tree_a1.dot", vec!["tree", "--type", "A1", "--word", "0,1,0", "--format", "dot"]),
        ("dims_a2.json", vec!["dims", "--type", "A2", "--word", "0,1,2,1,0"]),
        ("classify_a1.json", vec!["classify", "--type", "A1", "--word", "0,1,0"]),
        (
            "superregular_a1.txt",
            vec!["verify", "superregular", "--type", "A1", "--mu", "[2]", "--all-classes", "--format", "table"],
        ),
        ("chi_a2.json", vec!["verify", "chi", "--type", "A2", "--mu", "2rho", "--all-classes"]),
    ];
    for (name, mut args) in cases {
        let path = golden(name);
        args.extend(["--golden", path.as_str()]);
        let out = iwahori(&args);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn golden_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.json");
    std::fs::write(&path, "{}\n").unwrap();
    let out = iwahori(&["dims", "--type", "A1", "--word", "0,1,0", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let fresh = dir.path().join("fresh.json");
    let args = ["dims", "--type", "A1", "--word", "0,1,0", "--golden", fresh.to_str().unwrap()];
    let mut write = args.to_vec();
    write.push("--write-golden");
    assert_eq!(iwahori(&write).status.code(), Some(0));
    assert_eq!(iwahori(&args).status.code(), Some(0));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(iwahori(&["dims", "--word", "0,1,0"]).status.code(), Some(2));
    assert_eq!(iwahori(&["dims", "--type", "A1", "--word", "0,1,0", "--b", "kappa=0,nu=0,mu=1"]).status.code(), Some(2));
    assert_eq!(iwahori(&["dims", "--type", "A1", "--word", "0,7"]).status.code(), Some(2));
    assert_eq!(iwahori(&["tree", "--type", "Q5", "--word", "0"]).status.code(), Some(2));
    assert_eq!(iwahori(&["dims", "--type", "A1", "--word", "0", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(iwahori(&["verify", "chi", "--type", "C2", "--mu", "rho"]).status.code(), Some(2));
    assert_eq!(iwahori(&["tree", "--type", "A1", "--word", "0,1,0", "--max-nodes", "2"]).status.code(), Some(2));
}

#[test]
fn toml_config_is_validated_and_overridable() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.toml");
    std::fs::write(&good, "type = \"A1\"\nword = \"0,1,0\"\nb = \"nu=[1]\"\nmax-nodes = 1000\n").unwrap();
    let out = iwahori(&["dims", "--config", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rows"][0]["d_w"].as_i64(), Some(1));
    let out = iwahori(&["dims", "--config", good.to_str().unwrap(), "--b", "nu=0"]);
    assert_eq!(json(&out)["rows"][0]["d_w"].as_i64(), Some(2));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "type = \"A1\"\nwrod = \"0,1,0\"\n").unwrap();
    assert_eq!(iwahori(&["dims", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn element_json_input_matches_word() {
    let a = iwahori(&["dims", "--type", "A1", "--word", "0,1,0"]);
    let b = iwahori(&["dims", "--type", "A1", "--elem", r#"{"t":[2],"w":[1]}"#]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(iwahori(&["dims", "--type", "A1", "--word", "0", "--elem", r#"{"t":[0]}"#]).status.code(), Some(2));
}

#[test]
fn n_values_scale_component_counts() {
    let base = ["components", "--type", "A1", "--word", "0,1,0", "--b", "nu=0"];
    let out = iwahori(&base);
    assert_eq!(json(&out)["rows"][0]["components"]["count"].as_i64(), Some(1));
    let mut scaled = base.to_vec();
    scaled.extend(["--n-value", "A1|A1|1,1=2", "--dim-y-gamma", "3"]);
    let v = json(&iwahori(&scaled));
    let comp = &v["rows"][0]["components"];
    assert_eq!(comp["count"].as_i64(), Some(2));
    assert_eq!(comp["dim_y_w_gamma"].as_i64(), Some(5));
}

#[test]
fn seeded_dims_agree_with_canonical() {
    let a = json(&iwahori(&["dims", "--type", "A2", "--word", "0,1,2,1,0,2"]));
    for seed in ["1", "99", "12345"] {
        let b = json(&iwahori(&["dims", "--type", "A2", "--word", "0,1,2,1,0,2", "--seed", seed]));
        assert_eq!(a["rows"], b["rows"], "seed {seed}");
    }
}

#[test]
fn verify_invariants_small() {
    let out = iwahori(&["verify", "invariants", "--type", "GL2", "--max-len", "5", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}
