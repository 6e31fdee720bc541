use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dqsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqsim"))
        .args(args)
        .current_dir(dir)
        .env_remove("DQSIM_SEED")
        .output()
        .expect("binary runs")
}

fn data_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn amplitude_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "# undriven\nomega = 0\nt_max = 10\nt_steps = 11\n").unwrap();
    let out = dqsim(&["amplitude", "--config", "run.cfg", "--out", "res/"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = fs::read_to_string(dir.path().join("res/amplitude.csv")).unwrap();
    assert!(text.starts_with("# dqsim "));
    assert!(text.contains("# omega=0\n"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], [0.0, 1.0, 0.0, 1.0]);
    for r in &rows {
        assert!((r[1] * r[1] + r[2] * r[2] - r[3]).abs() < 1e-11);
        assert!(r[3] <= 1.0);
    }
}

#[test]
fn overrides_and_file_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dqsim(
        &["entropy", "--set", "omega=1", "--set", "t_steps=5", "--out", "runs/a"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("runs/a_entropy.csv")).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][1], 0.0);
    assert!(rows.iter().all(|r| r[1] <= std::f64::consts::LN_2 + 1e-12));
}

#[test]
fn bad_configuration_exits_with_error() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["amplitude", "--set", "lambda=-1"][..],
        &["amplitude", "--set", "colour=red"],
        &["amplitude", "--set", "theta=4"],
        &["figure", "6"],
    ] {
        let out = dqsim(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_dqsim"))
            .args(["power", "--set", "power_method=montecarlo", "--set", "power_samples=5000"])
            .args(["--set", "t_max=5", "--set", "t_steps=3", "--out", "same/"])
            .current_dir(dir.path())
            .env("DQSIM_SEED", seed)
            .output()
            .unwrap();
        assert!(out.status.success());
        fs::read_to_string(dir.path().join("same/power.csv")).unwrap()
    };
    let a = run("7");
    let b = run("7");
    let c = run("8");
    assert_eq!(a, b);
    assert_ne!(data_rows(&a), data_rows(&c));
    assert!(a.contains("# seed=7\n"));
}

#[test]
fn swap_matches_maximal_condition() {
    let dir = tempfile::tempdir().unwrap();
    let out = dqsim(
        &["swap", "--set", "theta=1", "--set", "theta2=1", "--set", "phi=2", "--set", "phi2=2", "--set", "t_steps=26"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("out/swap.csv")).unwrap();
    for r in data_rows(&text) {
        assert!((r[1] - 1.0).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn validate_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dqsim(&["validate"], dir.path());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().count() > 10);
    assert!(!text.contains("FAIL"));
}
