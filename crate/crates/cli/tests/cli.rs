use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn parasource(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parasource"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.toml");
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const SMALL: &str = r#"
name = "small"
[source]
id = "triangle1d"
[grid]
samples = [256]
[noise]
epsilons = [0.01, 0.05, 0.1]
seed = 4
[output]
dir = "results"
fields = "none"
"#;

#[test]
fn presets_lists_five_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = parasource(&["presets"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with("Example ")).count(),
        5
    );
    assert!(text.contains("Example 3 (cosine2d): alpha^2=0.2, beta=(0,0), nu=0.999, t0=1, p=1"));
    assert!(text.contains("beta=(1,-0.5,-0.5)"));

    let out = parasource(&["presets", "--show", "example2-table"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("id = \"triangle1d\""));
    assert!(
        !parasource(&["presets", "--show", "example9-table"], dir.path())
            .status
            .success()
    );
}

#[test]
fn run_writes_csv_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let out = parasource(&["run", &config], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read(dir.path().join("results/errors.csv")).unwrap();
    let text = String::from_utf8(csv.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "epsilon,delta,mu,abs_unreg,abs_reg,rel_unreg,rel_reg,theoretical_bound"
    );
    assert_eq!(lines.len(), 4);
    assert!(text.ends_with('\n'));
    assert!(String::from_utf8(out.stdout).unwrap().contains("rel reg"));

    assert!(parasource(&["run", &config], dir.path()).status.success());
    assert_eq!(
        fs::read(dir.path().join("results/errors.csv")).unwrap(),
        csv
    );

    let out = parasource(&["run", &config, "--seed", "5"], dir.path());
    assert!(out.status.success());
    assert_ne!(
        fs::read(dir.path().join("results/errors.csv")).unwrap(),
        csv
    );
}

#[test]
fn flags_override_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let out = parasource(
        &[
            "run",
            &config,
            "--out",
            "other",
            "--mu",
            "0.25",
            "--resolution-override",
            "128",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dir.path().join("other/errors.csv")).unwrap();
    for row in text.lines().skip(1) {
        assert_eq!(row.split(',').nth(2).unwrap(), "2.5e-1");
    }
}

#[test]
fn field_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &SMALL.replace("\"none\"", "\"all\""));
    assert!(parasource(&["run", &config], dir.path()).status.success());
    let truth = fs::read_to_string(dir.path().join("results/truth.field")).unwrap();
    assert!(truth.contains("axis 0 -8e0 8e0 256"));
    assert!(dir.path().join("results/eps2_regularized.field").exists());
}

#[test]
fn slices_of_a_3d_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "[source]\nid = \"sine3d\"\n[grid]\nsamples = [16, 16, 16]\n[noise]\nepsilons = [0.035]\n[output]\ndir = \"cuts\"\n",
    );
    let out = parasource(
        &["slices", &config, "--at", "z=0", "--at", "x=1"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("cuts/truth_z0.field").exists());
    assert!(dir.path().join("cuts/eps0_regularized_x1.field").exists());

    let out = parasource(&["slices", &config, "--at", "z=50"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("outside"));
}

#[test]
fn preset_names_run_directly() {
    let dir = tempfile::tempdir().unwrap();
    let out = parasource(
        &[
            "run",
            "example2-figure",
            "--out",
            "fig",
            "--resolution-override",
            "256",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dir.path().join("fig/errors.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn errors_exit_nonzero_with_stage() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!parasource(&["run", "missing.toml"], dir.path())
        .status
        .success());

    let config = write_config(
        dir.path(),
        &SMALL.replace("[output]", "[reg]\ndelta_max = 0.001\n[output]"),
    );
    let out = parasource(&["run", &config], dir.path());
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("choose-mu"), "{err}");

    let config = write_config(
        dir.path(),
        "[source]\nid = \"triangle1d\"\n[noise]\nepsilons = [0.1]\nbogus = 1\n",
    );
    assert!(!parasource(&["run", &config], dir.path()).status.success());
}
