//! The `ggbm` binary driven as a subprocess.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ggbm_core::paths::io::load_path;
use ggbm_core::variation::{dyadic_sums_multi, write_profiles_csv};

fn ggbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggbm"))
        .args(args)
        .env_remove("GGBM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn dir_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn specfun_eval_prints_one_value_per_point() {
    let out = ggbm(&["specfun", "eval", "--beta", "1", "--x", "-1,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(v.len(), 3);
    assert!((v[0] - (-1f64).exp()).abs() < 1e-15);
    assert_eq!(v[1], 1.0);
    assert!((v[2] - 1f64.exp()).abs() < 1e-14);

    let out = ggbm(&["specfun", "eval", "--function", "mwright", "--beta", "0.5", "--x", "1"]);
    let m: f64 = stdout(&out).trim().parse().unwrap();
    let gaussian = (-0.25f64).exp() / std::f64::consts::PI.sqrt();
    assert!((m - gaussian).abs() < 1e-12);
}

#[test]
fn sample_to_stdout_has_one_row_per_grid_point() {
    let out = ggbm(&["sample", "--process", "ggbm", "--level", "10", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value"));
    assert_eq!(lines.count(), 1025);
}

#[test]
fn several_replicas_need_an_output_directory() {
    let out = ggbm(&["sample", "--process", "bm", "--replicas", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampled_files_do_not_depend_on_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let dir = tmp.path().join(name);
        let out = ggbm(&[
            "sample", "--process", "tcbm", "--level", "8", "--replicas", "5", "--seed", "3",
            "--threads", threads, "--out", dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        dir_files(&dir)
    };
    let one = run("1", "a");
    assert_eq!(one.len(), 10, "five paths and five sidecars");
    assert_eq!(one, run("4", "b"));
}

#[test]
fn variation_output_matches_library() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("paths");
    let out = ggbm(&[
        "sample", "--process", "fbm", "--level", "9", "--replicas", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = dir.join("fbm_0001.csv");
    let out = ggbm(&["variation", "--p", "1.5,2", "--levels", "3..9", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let (path, meta) = load_path(&file).unwrap();
    assert_eq!(meta.get("stream").map(String::as_str), Some("1"));
    let profiles = dyadic_sums_multi(&path, &[1.5, 2.0], &(3..=9).collect::<Vec<_>>()).unwrap();
    let mut expected = Vec::new();
    write_profiles_csv(&profiles, &mut expected).unwrap();
    assert_eq!(stdout(&out), String::from_utf8(expected).unwrap());
}

#[test]
fn discriminate_labels_every_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("paths");
    ggbm(&[
        "sample", "--process", "ggbm", "--level", "12", "--replicas", "2", "--out", dir.to_str().unwrap(),
    ]);
    let a = dir.join("ggbm_0000.csv");
    let b = dir.join("ggbm_0001.csv");
    let out = ggbm(&["discriminate", "--alpha", "1.5", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "file,label,slope_2,slope_2a");
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let label = line.split(',').nth(1).unwrap();
        assert!(["GGBM", "TCBM", "INCONCLUSIVE"].contains(&label), "{line}");
    }
}

#[test]
fn sde_writes_solution_with_metadata() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("sol.csv");
    let out = ggbm(&[
        "sde", "--driver", "ggbm", "--coefficient", "linear:0.5", "--level", "8", "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (path, meta) = load_path(&file).unwrap();
    assert_eq!(path.level(), 8);
    assert_eq!(path.values()[0], 1.0);
    assert!(meta.contains_key("coefficient"));
    assert_eq!(meta.get("seed").map(String::as_str), Some("20251016"));

    let out = ggbm(&["sde", "--driver", "ggbm", "--coefficient", "cubic:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("exp.ini");
    let out_dir = tmp.path().join("out");
    fs::write(&cfg, "kind = specfun\n").unwrap();
    let out = ggbm(&["experiment", "run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(out_dir.join("report.md").exists());
    assert!(out_dir.join("report.csv").exists());
    assert!(out_dir.join("mittag_leffler_reference.csv").exists());

    // an impossible tolerance turns the report red
    fs::write(&cfg, "kind = ggbm-law\nlevel = 4\nreplicas = 50\ntol.moment2_t1 = 0\n").unwrap();
    let out = ggbm(&["experiment", "run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    fs::write(&cfg, "kind = ggbm-law\nbogus = 1\n").unwrap();
    let out = ggbm(&["experiment", "run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = tmp.path().join("missing.ini");
    let out = ggbm(&["experiment", "run", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(ggbm(&["no-such-command"]).status.code(), Some(2));
}
