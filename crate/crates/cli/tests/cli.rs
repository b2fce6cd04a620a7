use std::fs;
use std::path::Path;
use std::process::Command;

use displab_cli::config::{ExperimentConfig, SuiteKind};
use displab_cli::error::CliError;
use displab_cli::record::{write_outputs, Verdict};
use displab_cli::run_suite;

const SMALL_ADMISSIBLE: &str = r#"
kind = "admissible"
[admissible]
resolution = 12
dims = [2, 3]
degrees = ["1", "2"]
round_trips = 200
"#;

const SMALL_STRICHARTZ: &str = r#"
kind = "strichartz"
[strichartz]
packets = 3
scaling_packets = 1
plancherel_packets = 2
bands = [0, 1]
shift = 2.0
horizon = 1.0
samples = 5
[strichartz.grid]
dim = 2
split = 1
half_length = 16.0
points = 64
[[strichartz.selections]]
q = "4"
r = "4"
r_tilde = "4"
"#;

const SMALL_DECAY: &str = r#"
kind = "decay"
[decay.policy]
t_min = 2.0
t_max = 8.0
samples = 8
tolerance = 0.3
[[decay.cases]]
symbol = { kind = "schrodinger" }
dim = 1
"#;

const SMALL_WELLPOSED: &str = r#"
kind = "wellposed"
[wellposed]
points = 16
amplitude = 1.0
nodes = 9
max_iters = 15
"#;

const SMALL_DUNKL: &str = r#"
kind = "dunkl"
[dunkl]
phases = [2.0]
homogeneous_dims = [3.0]
late_window = [16.0, 32.0]
recurrence_points = 10
envelope_points = 80
envelope_dims = [2]
[dunkl.policy]
t_min = 4.0
t_max = 16.0
samples = 8
tolerance = 0.3
"#;

fn parse(text: &str) -> ExperimentConfig {
    ExperimentConfig::parse(text).unwrap()
}

fn case<'a>(cases: &'a [displab_cli::record::Case], id: &str) -> &'a displab_cli::record::Case {
    cases
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("no case {id}"))
}

#[test]
fn unknown_keys_are_rejected() {
    for text in [
        "colour = 1",
        "[decay]\nwindow = 3",
        "[strichartz.grid]\ndims = 2",
        "[[decay.cases]]\nsymbol = { kind = \"wave\", degree = 1.0 }\ndim = 2",
        "[dunkl.policy]\nt_min = 1.0\nt_mid = 2.0",
        "kind = \"heat\"",
    ] {
        assert!(
            matches!(ExperimentConfig::parse(text), Err(CliError::Config(_))),
            "accepted: {text}"
        );
    }
}

#[test]
fn empty_config_reproduces_defaults() {
    assert_eq!(parse(""), ExperimentConfig::default());
}

#[test]
fn kind_must_match_the_subcommand() {
    let cfg = parse(SMALL_ADMISSIBLE);
    assert!(matches!(
        run_suite(SuiteKind::Dunkl, &cfg, 0, 1),
        Err(CliError::Config(_))
    ));
    assert!(matches!(
        run_suite(SuiteKind::Admissible, &cfg, 0, 0),
        Err(CliError::Config(_))
    ));
}

#[test]
fn inadmissible_selection_is_a_config_error() {
    let text = SMALL_STRICHARTZ.replace("q = \"4\"", "q = \"3\"");
    let cfg = parse(&text);
    assert!(matches!(
        run_suite(SuiteKind::Strichartz, &cfg, 0, 1),
        Err(CliError::Config(_))
    ));
}

#[test]
fn admissible_summary_has_the_documented_schema() {
    let cfg = parse(SMALL_ADMISSIBLE);
    let (summary, tables) = run_suite(SuiteKind::Admissible, &cfg, 7, 1).unwrap();
    assert!(
        summary.cases.iter().all(|c| c.verdict == Verdict::Pass),
        "{:#?}",
        summary.cases
    );
    assert!(tables.iter().all(|t| t.columns.len() == 3));

    let dir = tempfile::tempdir().unwrap();
    write_outputs(dir.path(), &summary, &tables).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("admissible_summary.json")).unwrap()).unwrap();
    let mut keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["cases", "config_hash", "suite", "wall_clock_s"]);
    assert_eq!(json["config_hash"].as_str().unwrap().len(), 64);
    for c in json["cases"].as_array().unwrap() {
        let mut keys: Vec<_> = c.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["anchor", "id", "inputs", "measured", "predicted", "verdict"]);
        assert_eq!(c["inputs"]["seed"], 7);
    }
    assert!(dir.path().join("admissible.csv").exists());
}

#[test]
fn config_hash_tracks_seed_and_settings() {
    let cfg = parse(SMALL_ADMISSIBLE);
    let h = |cfg: &ExperimentConfig, seed| displab_cli::suite_hash(SuiteKind::Admissible, cfg, seed).unwrap();
    assert_eq!(h(&cfg, 1), h(&cfg, 1));
    assert_ne!(h(&cfg, 1), h(&cfg, 2));
    let mut other = cfg.clone();
    other.admissible.round_trips += 1;
    assert_ne!(h(&cfg, 1), h(&other, 1));
}

#[test]
fn strichartz_small_run() {
    let cfg = parse(SMALL_STRICHARTZ);
    let (summary, tables) = run_suite(SuiteKind::Strichartz, &cfg, 3, 1).unwrap();
    assert_eq!(case(&summary.cases, "plancherel").verdict, Verdict::Pass);
    assert!(summary.cases.iter().any(|c| c.id == "q=4,r=4,rt=4/scaling/delta=2"));
    assert_eq!(tables[0].rows.len(), 6);
    assert!(tables.iter().all(|t| t.columns.len() == 2));
}

#[test]
fn reruns_with_the_same_seed_are_byte_identical() {
    let cfg = parse(SMALL_STRICHARTZ);
    let dirs: Vec<_> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
    for (jobs, dir) in [1, 2].into_iter().zip(&dirs) {
        let (summary, tables) = run_suite(SuiteKind::Strichartz, &cfg, 11, jobs).unwrap();
        write_outputs(dir.path(), &summary, &tables).unwrap();
    }
    let mut names: Vec<_> = fs::read_dir(dirs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n.to_string_lossy().ends_with(".csv"))
        .collect();
    names.sort();
    assert!(names.len() >= 2);
    for name in names {
        let read = |d: &Path| fs::read(d.join(&name)).unwrap();
        assert_eq!(read(dirs[0].path()), read(dirs[1].path()), "{name:?} differs");
    }
}

#[test]
fn decay_small_run() {
    let cfg = parse(SMALL_DECAY);
    let (summary, tables) = run_suite(SuiteKind::Decay, &cfg, 0, 1).unwrap();
    let c = &summary.cases[0];
    assert_eq!(c.id, "schrodinger/d=1/k=1/sup-sup");
    assert_eq!(c.verdict, Verdict::Pass, "{c:#?}");
    assert_eq!(c.predicted["exponent"], -0.5);
    assert_eq!(tables[0].rows.len(), 8);
}

#[test]
fn wellposed_small_run() {
    let cfg = parse(SMALL_WELLPOSED);
    let (summary, _) = run_suite(SuiteKind::Wellposed, &cfg, 0, 1).unwrap();
    assert_eq!(case(&summary.cases, "exponents").verdict, Verdict::Pass);
    assert_eq!(case(&summary.cases, "zero-data").verdict, Verdict::Pass);
    assert!(summary.cases.iter().any(|c| c.id == "existence"));
}

#[test]
fn dunkl_small_run() {
    let cfg = parse(SMALL_DUNKL);
    let (summary, _) = run_suite(SuiteKind::Dunkl, &cfg, 0, 1).unwrap();
    for id in [
        "bessel/half-order",
        "bessel/recurrence",
        "bessel/envelope",
        "transform/euclidean-2d",
        "envelope/d=2",
    ] {
        assert_eq!(case(&summary.cases, id).verdict, Verdict::Pass, "{id}");
    }
    let near = case(&summary.cases, "decay/N=3/phi=r^2/near");
    assert!(near.measured["late_exponent"].is_f64());
}

fn binary(args: &[&str], config: &str) -> (Option<i32>, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(&path, config).unwrap();
    let out = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_displab"))
        .args(args)
        .arg("--config")
        .arg(&path)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

#[test]
fn exit_code_reflects_verdicts() {
    let (code, stdout) = binary(&["admissible", "--seed", "5", "--jobs", "2"], SMALL_ADMISSIBLE);
    assert_eq!(code, Some(0), "{stdout}");
    assert!(stdout.contains("[PASS] scaling-round-trip"));

    let failing = SMALL_STRICHARTZ.replace("samples = 5", "samples = 5\nratio_band = [2.0, 3.0]");
    let (code, stdout) = binary(&["strichartz"], &failing);
    assert_eq!(code, Some(1), "{stdout}");
    assert!(stdout.contains("[FAIL] q=4,r=4,rt=4/scaling/delta=2"));

    let (code, _) = binary(&["admissible"], "bogus = true");
    assert_eq!(code, Some(2));
    let (code, _) = binary(&["dunkl"], SMALL_ADMISSIBLE);
    assert_eq!(code, Some(2));
}
