use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use ellbasis::basis::{search_basis, BasisFile};
use ellbasis::cli::{run, CliError, WORKERS_ENV};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ellbasis-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    d
}

fn call(dir: &Path, args: &[&str]) -> Result<String, CliError> {
    let d = dir.to_str().unwrap();
    let mut v = vec!["ellbasis", "--dir", d, "--small-prime-threshold", "0"];
    v.extend_from_slice(args);
    run(v)
}

fn bin(dir: &Path, args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ellbasis"));
    c.arg("--dir").arg(dir).args(["--small-prime-threshold", "0"]).args(args);
    c.env_remove(WORKERS_ENV);
    c
}

fn pipeline(dir: &Path) {
    for step in [&["search"][..], &["basis"], &["harvest"], &["extend"], &["solve"]] {
        call(dir, step).unwrap_or_else(|e| panic!("{step:?}: {e}"));
    }
}

const ARTIFACTS: [&str; 4] = ["curve.txt", "basis.json", "relations.txt", "logs.txt"];

#[test]
fn full_pipeline_and_dlog() {
    let d = scratch("pipeline");
    pipeline(&d);
    let out = call(&d, &["dlog", "--planted", "12345"]).unwrap();
    assert!(out.contains("x = 12345 mod 488281"), "{out}");
    assert!(out.contains("VERIFIED"));
    let out = call(&d, &["dlog", "--target", "1f3a"]).unwrap();
    assert!(out.contains("VERIFIED"), "{out}");
    let out = call(&d, &["verify", "--sample", "30"]).unwrap();
    assert!(out.contains("relations: 30/30"), "{out}");
    assert!(out.contains("logs: 30/30"), "{out}");
    fs::remove_dir_all(&d).unwrap();
}

#[test]
fn artifacts_are_reproducible() {
    let (a, b) = (scratch("repro-a"), scratch("repro-b"));
    pipeline(&a);
    pipeline(&b);
    for f in ARTIFACTS {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    // A second harvest adds nothing.
    let before = fs::read(a.join("relations.txt")).unwrap();
    call(&a, &["harvest"]).unwrap();
    assert_eq!(fs::read(a.join("relations.txt")).unwrap(), before);
    fs::remove_dir_all(&a).unwrap();
    fs::remove_dir_all(&b).unwrap();
}

#[test]
fn golden_basis_file() {
    let d = scratch("golden");
    call(&d, &["search"]).unwrap();
    call(&d, &["basis"]).unwrap();
    let got = fs::read_to_string(d.join("basis.json")).unwrap();
    let golden = include_str!("golden/basis_5_9_0.json");
    assert_eq!(got, golden);
    let b = BasisFile::from_json(golden).unwrap().to_basis().unwrap();
    let fresh = search_basis(5, 1, 9, 0).unwrap();
    assert_eq!((b.m, &b.theta, &b.tau, b.ext.modulus()), (fresh.m, &fresh.theta, &fresh.tau, fresh.ext.modulus()));
    assert_eq!(BasisFile::from_basis(&b).to_json(), golden);
    fs::remove_dir_all(&d).unwrap();
}

#[test]
fn exit_codes() {
    let d = scratch("codes");
    let code = |c: &mut Command| c.output().unwrap().status.code().unwrap();
    assert_eq!(code(&mut bin(&d, &["search", "--p", "4"])), 2);
    assert_eq!(code(&mut bin(&d, &["search", "--k", "2"])), 2);
    assert_eq!(code(&mut bin(&d, &["frobnicate"])), 2);
    assert_eq!(code(&mut bin(&d, &["solve"])), 3);
    assert_eq!(code(&mut bin(&d, &["dlog", "--planted", "5"])), 3);
    assert_eq!(code(&mut bin(&d, &["search"]).env(WORKERS_ENV, "zero")), 2);
    assert_eq!(code(&mut bin(&d, &["search"])), 0);
    assert_eq!(code(&mut bin(&d, &["harvest"])), 3);
    assert_eq!(code(&mut bin(&d, &["--help"])), 0);
    fs::remove_dir_all(&d).unwrap();
}

#[test]
fn tampered_relation_fails_verification() {
    let d = scratch("tamper");
    pipeline(&d);
    let text = fs::read_to_string(d.join("relations.txt")).unwrap();
    let line = text.lines().find(|l| l.starts_with("core|")).unwrap();
    let (head, c) = line.rsplit_once("|c:").unwrap();
    let bumped = format!("{head}|c:{}", (c.parse::<u128>().unwrap() + 1) % 488_281);
    fs::write(d.join("relations.txt"), text.replacen(line, &bumped, 1)).unwrap();
    let out = bin(&d, &["verify", "--sample", "100000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    fs::remove_dir_all(&d).unwrap();
}

#[test]
fn worker_count_from_environment() {
    let (a, b) = (scratch("workers-a"), scratch("workers-b"));
    for (dir, w) in [(&a, "1"), (&b, "4")] {
        for step in ["search", "basis", "harvest"] {
            let st = bin(dir, &[step]).env(WORKERS_ENV, w).output().unwrap().status;
            assert!(st.success());
        }
    }
    assert_eq!(fs::read(a.join("relations.txt")).unwrap(), fs::read(b.join("relations.txt")).unwrap());
    fs::remove_dir_all(&a).unwrap();
    fs::remove_dir_all(&b).unwrap();
}

#[test]
fn stats_reports_rates() {
    let out = run(["ellbasis", "stats", "--q", "25", "--degree", "4", "--samples", "2000"]).unwrap();
    assert!(out.contains("0.75"), "{out}");
    assert!(run(["ellbasis", "stats", "--q", "6"]).is_err());
}

#[test]
fn hopeless_order_exhausts_quickly() {
    // 5 divides #E and (11^5 - 1)/10, so no curve over F_11 or F_121 qualifies.
    let d = scratch("exhaust");
    let t = std::time::Instant::now();
    let code = bin(&d, &["search", "--p", "11", "--k", "5"]).output().unwrap().status.code();
    assert_eq!(code, Some(5));
    assert!(t.elapsed().as_secs() < 10);
    fs::remove_dir_all(&d).unwrap();
}
