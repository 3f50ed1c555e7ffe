use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn twotime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twotime"))
        .args(args)
        .env_remove("TWOTIME_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn figure1_defaults_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let out = twotime(&["--out", a.path().to_str().unwrap(), "figure1"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let scatter = rows(&a.path().join("figure1_scatter.csv"));
    let curves = rows(&a.path().join("figure1_curves.csv"));
    assert_eq!(scatter[0], ["r", "theta", "phi", "irr_spin", "irr_torque"]);
    assert_eq!(curves[0], ["r", "phi", "irr_spin", "irr_torque"]);
    assert_eq!(scatter.len(), 40_001);
    assert_eq!(curves.len(), 1_441);

    assert!(twotime(&[
        "--out",
        b.path().to_str().unwrap(),
        "--seed",
        "20240001",
        "figure1"
    ])
    .status
    .success());
    for name in ["figure1_scatter.csv", "figure1_curves.csv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap()
        );
    }
}

#[test]
fn figure1_seed_changes_scatter_only() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, seed) in [(&a, "1"), (&b, "2")] {
        let out = twotime(&[
            "--out",
            dir.path().to_str().unwrap(),
            "--seed",
            seed,
            "--samples",
            "50",
            "figure1",
        ]);
        assert!(out.status.success());
    }
    let read = |d: &tempfile::TempDir, n: &str| fs::read(d.path().join(n)).unwrap();
    assert_ne!(
        read(&a, "figure1_scatter.csv"),
        read(&b, "figure1_scatter.csv")
    );
    assert_eq!(
        read(&a, "figure1_curves.csv"),
        read(&b, "figure1_curves.csv")
    );
}

#[test]
fn figure1_maximally_mixed_band_collapses() {
    let dir = tempfile::tempdir().unwrap();
    let out = twotime(&[
        "--out",
        dir.path().to_str().unwrap(),
        "--samples",
        "200",
        "figure1",
        "--r-list",
        "0.0",
    ]);
    assert!(out.status.success());
    let scatter = rows(&dir.path().join("figure1_scatter.csv"));
    assert_eq!(scatter.len(), 201);
    for row in &scatter[1..] {
        let spin: f64 = row[3].parse().unwrap();
        let torque: f64 = row[4].parse().unwrap();
        assert!(spin.abs() < 1e-12 && torque.abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn figure1_rejects_unphysical_radius() {
    let dir = tempfile::tempdir().unwrap();
    let out = twotime(&[
        "--out",
        dir.path().to_str().unwrap(),
        "figure1",
        "--r-list",
        "1.5",
    ]);
    assert!(!out.status.success());
}

#[test]
fn lambda_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = twotime(&["--out", dir.path().to_str().unwrap(), "lambda"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("physical fraction 1/180"));
    let table = rows(&dir.path().join("lambda.csv"));
    assert_eq!(table[0], ["theta", "nu_norm", "min_eigenvalue", "physical"]);
    assert_eq!(table.len(), 181);
    let half = &table[90];
    assert!((half[1].parse::<f64>().unwrap() - 2f64.sqrt()).abs() < 1e-10);
    assert_eq!(half[3], "false");
    let last = &table[180];
    assert!((last[0].parse::<f64>().unwrap() - std::f64::consts::PI).abs() < 1e-10);
    assert_eq!(last[1], "1");
    assert_eq!(last[3], "true");
    assert_eq!(table.iter().filter(|r| r[3] == "true").count(), 1);

    assert!(!twotime(&[
        "--out",
        dir.path().to_str().unwrap(),
        "lambda",
        "--theta-steps",
        "1"
    ])
    .status
    .success());
}

#[test]
fn out_dir_from_environment_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_twotime"))
        .args(["--format", "tsv", "lambda", "--theta-steps", "4"])
        .env("TWOTIME_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("lambda.tsv")).unwrap();
    assert!(text.starts_with("theta\tnu_norm\tmin_eigenvalue\tphysical\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn tpm_gap_summaries() {
    let out = twotime(&["tpm-gap", "--dim", "2", "--trials", "200"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS max gap, 200 qubit instances"));

    let out = twotime(&["tpm-gap", "--dim", "3", "--trials", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fixture heisenberg correlator: 0.353553390593"));
    assert!(text.contains("fixture tpm correlator:"));
    assert!(text.contains("PASS fixture gap"));
    assert!(!text.contains("FAIL"));

    assert!(!twotime(&["tpm-gap", "--dim", "4"]).status.success());
}

#[test]
fn reports_pass() {
    for name in ["torque-bound", "eigenprep", "displacement", "precession"] {
        let out = twotime(&["--samples", "2000", "report", name]);
        let text = stdout(&out);
        assert!(out.status.success(), "{name}: {text}");
        assert!(text.lines().all(|l| !l.starts_with("FAIL")));
        assert!(text.lines().any(|l| l.starts_with("PASS")));
    }
    assert!(!twotime(&["report", "nonsense"]).status.success());
}

#[test]
fn same_seed_same_report() {
    let a = stdout(&twotime(&["--seed", "7", "report", "eigenprep"]));
    let b = stdout(&twotime(&["--seed", "7", "report", "eigenprep"]));
    assert_eq!(a, b);
}

#[test]
fn zero_samples_rejected() {
    assert!(!twotime(&["--samples", "0", "report", "displacement"])
        .status
        .success());
}
