use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tordeg_cli::manifest::{Experiment, ExperimentManifest, Format, GroupSpec, OutputSpec};

fn tordeg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tordeg"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("TORDEG_CHAR")
        .output()
        .expect("the binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// The one file in `dir` with the given suffix.
fn file_with_suffix(dir: &Path, suffix: &str) -> PathBuf {
    let mut found: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let name = p.to_string_lossy();
            name.ends_with(suffix)
                && !name.ends_with(&format!(".verdicts{}", suffix))
                && !name.ends_with(&format!(".profile{}", suffix))
        })
        .collect();
    assert_eq!(found.len(), 1, "files ending in {} in {:?}: {:?}", suffix, dir, found);
    found.pop().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn veronese_2_2_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = tordeg(&["veronese", "-n", "2", "-m", "2"], dir.path());
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let path = file_with_suffix(dir.path(), ".json");
    let a = std::fs::read(&path).unwrap();
    let second = tordeg(&["veronese", "-n", "2", "-m", "2"], dir.path());
    assert_eq!(code(&second), 0);
    assert_eq!(a, std::fs::read(&path).unwrap());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn veronese_2_2_report_contents() {
    let dir = tempfile::tempdir().unwrap();
    tordeg(&["veronese", "-n", "2", "-m", "2"], dir.path());
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["instance"]["tau"], 2);
    assert_eq!(r["regularity"], 1);
    assert_eq!(r["outcome"], "all-hold");
    let tight = r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["bound"] == "invariant-tor" && v["i"] == 1)
        .unwrap();
    assert_eq!(
        (tight["lhs"].clone(), tight["rhs"].clone()),
        (Value::from(4), Value::from(4))
    );
    let csv = std::fs::read_to_string(file_with_suffix(dir.path(), ".csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("j-i,0,1"));
}

#[test]
fn veronese_3_3_exits_10_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(&["veronese", "-n", "3", "-m", "3"], dir.path());
    assert_eq!(code(&o), 10, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&file_with_suffix(dir.path(), ".json"));
    let w = r["witnesses"].as_array().unwrap();
    assert!(!w.is_empty());
    for cell in w {
        let (i, d) = (cell["i"].as_i64().unwrap(), cell["degree"].as_i64().unwrap());
        assert!(d > (i + 1) * 3);
        assert!(cell["dim"].as_u64().unwrap() > 0);
    }
    assert_eq!(r["outcome"], "counterexample-found");
}

#[test]
fn veronese_1_5_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(&["veronese", "-n", "1", "-m", "5"], dir.path());
    assert_eq!(code(&o), 0);
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["regularity"], 0);
    assert!(r["witnesses"].as_array().unwrap().is_empty());
}

fn stored_profile(dir: &Path) -> (PathBuf, PathBuf) {
    let o = tordeg(&["veronese", "-n", "2", "-m", "2"], dir);
    assert_eq!(code(&o), 0);
    (
        file_with_suffix(dir, ".profile.json"),
        file_with_suffix(dir, ".verdicts.json"),
    )
}

#[test]
fn check_reproduces_the_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let (profile, verdicts) = stored_profile(dir.path());
    let out = dir.path().join("check");
    let o = tordeg(&["check", profile.to_str().unwrap(), "--format", "json"], &out);
    assert_eq!(code(&o), 0);
    let original = std::fs::read(&verdicts).unwrap();
    assert_eq!(o.stdout, original);
    assert_eq!(
        std::fs::read(file_with_suffix(&out, ".verdicts.json")).unwrap(),
        original
    );
}

fn edit_profile(path: &Path, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut p = json(path);
    edit(&mut p);
    let edited = path.with_extension("edited.json");
    std::fs::write(&edited, serde_json::to_string_pretty(&p).unwrap()).unwrap();
    edited
}

#[test]
fn tampered_profile_fails() {
    let dir = tempfile::tempdir().unwrap();
    let (profile, _) = stored_profile(dir.path());
    let tampered = edit_profile(&profile, |p| p["s_r"]["values"][1]["t"] = Value::from(99));
    let o = tordeg(
        &["check", tampered.to_str().unwrap(), "--format", "json"],
        &dir.path().join("c"),
    );
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["bound"] == "invariant-tor" && v["i"] == 1)
        .unwrap();
    assert_eq!(bad["holds"], false);
    assert_eq!(bad["kind"], "violated");
    assert_eq!(v["outcome"], "proved-bound-violated");
}

#[test]
fn capped_profile_gives_no_violation_up_to_cap() {
    let dir = tempfile::tempdir().unwrap();
    let (profile, _) = stored_profile(dir.path());
    let capped = edit_profile(&profile, |p| p["s_r"]["values"][1]["capped"] = Value::from(true));
    let o = tordeg(
        &["check", capped.to_str().unwrap(), "--format", "json"],
        &dir.path().join("c"),
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["bound"] == "derksen-conjecture" && v["i"] == 1)
        .unwrap();
    assert_eq!(d["kind"], "no-violation-up-to-cap");
}

#[test]
fn malformed_profile_reports_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"label\": 3,\n}").unwrap();
    let o = tordeg(&["check", bad.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{}", err);
}

#[test]
fn modular_groups_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(&["invariant", "-n", "2", "--preset", "swap", "--char", "2"], dir.path());
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("characteristic 2 divides the group order 2"), "{}", err);
}

#[test]
fn swap_preset() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(&["invariant", "-n", "2", "--preset", "swap"], dir.path());
    assert_eq!(code(&o), 0);
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["instance"]["generators"].as_array().unwrap().len(), 2);
    assert_eq!(r["instance"]["tau"], 2);
    for v in r["verdicts"].as_array().unwrap() {
        assert!(v["kind"] == "holds" || v["kind"] == "not-applicable", "{}", v);
    }
}

#[test]
fn symmetric_preset() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(&["invariant", "-n", "3", "--preset", "symmetric"], dir.path());
    assert_eq!(code(&o), 0);
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["instance"]["degrees"], serde_json::json!([1, 2, 3]));
    assert_eq!(r["instance"]["noether"]["group_order"], 6);
    assert_eq!(r["instance"]["noether"]["tau_within_order"], true);
}

#[test]
fn group_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("group.json");
    std::fs::write(&g, r#"{ "generators": [[[0, 1], [1, 0]]] }"#).unwrap();
    let o = tordeg(
        &[
            "invariant",
            "-n",
            "2",
            "--group-file",
            g.to_str().unwrap(),
            "--char",
            "7",
        ],
        &dir.path().join("out"),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&file_with_suffix(&dir.path().join("out"), ".json"));
    assert_eq!(r["instance"]["degrees"], serde_json::json!([1, 2]));
}

#[test]
fn bad_arguments_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&tordeg(&["veronese", "-n", "2", "-m", "2", "--char", "4"], dir.path())),
        1
    );
    assert_eq!(
        code(&tordeg(
            &["veronese", "-n", "2", "-m", "2", "--degree-cap", "0"],
            dir.path()
        )),
        1
    );
    assert_eq!(code(&tordeg(&["veronese", "-n", "2"], dir.path())), 1);
    assert_eq!(code(&tordeg(&["invariant", "--preset", "nope"], dir.path())), 1);
    assert_eq!(code(&tordeg(&["--help"], dir.path())), 0);
}

#[test]
fn the_environment_sets_the_default_prime() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tordeg"))
        .args(["veronese", "-n", "2", "-m", "2", "--out"])
        .arg(dir.path())
        .env("TORDEG_CHAR", "7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["manifest"]["characteristic"], 7);
}

#[test]
fn koszul_with_random_forms_depends_only_on_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "koszul",
        "--vars",
        "x,y,z",
        "--gens",
        "x^2;y^2",
        "--random-degrees",
        "2",
        "--seed",
        "5",
    ];
    let a = tordeg(&args, dir.path());
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let b = tordeg(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    let r = json(&file_with_suffix(dir.path(), ".json"));
    assert_eq!(r["instance"]["degrees"], serde_json::json!([2, 2, 2]));
}

#[test]
fn resolve_the_residue_field_of_a_conic() {
    let dir = tempfile::tempdir().unwrap();
    let o = tordeg(
        &[
            "resolve",
            "--vars",
            "a,b,c",
            "--ideal",
            "b^2-a*c",
            "--residue",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "j-i,0,1,2,3,4\n0,1,3,4,4,4\n");
}

fn manifests() -> Vec<ExperimentManifest> {
    let output = OutputSpec {
        dir: "results".into(),
        format: Format::Json,
    };
    let experiments = vec![
        Experiment::Veronese { n: 3, m: 3 },
        Experiment::Invariant {
            nvars: 3,
            group: GroupSpec::CyclicScalar { m: 3 },
        },
        Experiment::Invariant {
            nvars: 2,
            group: GroupSpec::Matrices {
                group: tordeg::invariants::GroupFile::parse(
                    r#"{"characteristic": 7, "generators": [[[0, 1], [1, 0]]]}"#,
                )
                .unwrap(),
            },
        },
        Experiment::Koszul {
            variables: vec!["x".into(), "y".into()],
            weights: vec![1, 2],
            generators: vec!["x^2".into()],
            random_degrees: vec![4],
        },
        Experiment::Resolve {
            variables: vec!["a".into(), "b".into()],
            weights: vec![1, 1],
            ideal: vec!["a*b".into()],
            residue_field: true,
        },
        Experiment::Check {
            profile: "p.json".into(),
        },
    ];
    experiments
        .into_iter()
        .enumerate()
        .map(|(k, experiment)| ExperimentManifest {
            experiment,
            characteristic: [32003, 7, 0][k % 3],
            max_index: 4 + k,
            degree_cap: (k % 2 == 0).then_some(10 + k as i64),
            seed: k as u64,
            output: output.clone(),
        })
        .collect()
}

#[test]
fn manifests_round_trip() {
    for m in manifests() {
        let back = ExperimentManifest::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.content_hash(), m.content_hash());
    }
}

#[test]
fn manifests_reject_bad_values() {
    let mut m = manifests().remove(0);
    m.characteristic = 9;
    assert!(ExperimentManifest::from_json(&m.to_json()).is_err());
    let mut m = manifests().remove(0);
    m.degree_cap = Some(-1);
    assert!(ExperimentManifest::from_json(&m.to_json()).is_err());
    let text = manifests()[0].to_json().replacen('{', "{\"extra\": 1,", 1);
    assert!(ExperimentManifest::from_json(&text).is_err());
}

#[test]
fn the_hash_ignores_the_output_section() {
    let a = manifests().remove(0);
    let mut b = a.clone();
    b.output.dir = "elsewhere".into();
    assert_eq!(a.content_hash(), b.content_hash());
    b.seed += 1;
    assert_ne!(a.content_hash(), b.content_hash());
}

#[test]
fn run_matches_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let direct = tordeg(
        &["veronese", "-n", "2", "-m", "2", "--format", "json"],
        &dir.path().join("a"),
    );
    let m = ExperimentManifest {
        experiment: Experiment::Veronese { n: 2, m: 2 },
        characteristic: 32003,
        max_index: 4,
        degree_cap: None,
        seed: 0,
        output: OutputSpec {
            dir: dir.path().join("a"),
            format: Format::Json,
        },
    };
    let path = dir.path().join("m.json");
    std::fs::write(&path, m.to_json()).unwrap();
    let o = tordeg(&["run", path.to_str().unwrap()], &dir.path().join("ignored"));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(o.stdout, direct.stdout);
}

#[test]
fn shipped_manifests_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../manifests");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let m = ExperimentManifest::load(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert_eq!(ExperimentManifest::from_json(&m.to_json()).unwrap(), m);
        count += 1;
    }
    assert!(count >= 3);
}
