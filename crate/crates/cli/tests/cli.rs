use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use troplift::schema::{Artifact, Body};
use troplift::*;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn troplift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troplift")).args(args).output().expect("binary runs")
}

fn artifact(out: &Output) -> Artifact {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    Artifact::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn pt(x: Rat, y: Rat) -> Point2 {
    Point2::new(x, y)
}

/// Saves `args`' JSON output under `dir` and returns the path.
fn save(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = args.to_vec();
    let p = path.display().to_string();
    full.extend(["--out", &p]);
    let out = troplift(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write_divisor(dir: &Path, name: &str, d: Divisor) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, Artifact::new(Body::Divisor { divisor: d }).to_json()).unwrap();
    path
}

#[test]
fn stable_of_line_and_conic() {
    let a = artifact(&troplift(&["stable", "-f", &fixture("ex12_f.poly"), "-g", &fixture("ex12_g.poly")]));
    let Body::Divisor { divisor } = a.body else { panic!("{}", a.kind()) };
    assert_eq!(divisor, Divisor::from_points([(Point2::origin(), 1), (pt(q(1, 1), q(0, 1)), 1)]));
}

#[test]
fn lift_of_two_conics() {
    let a = artifact(&troplift(&["lift", "-f", &fixture("ex52_f.poly"), "-g", &fixture("ex52_g.poly")]));
    let Body::LiftReport { report } = a.body else { panic!("{}", a.kind()) };
    let want = Divisor::from_points([
        (pt(q(2, 3), q(2, 3)), 1),
        (pt(q(0, 1), q(-2, 3)), 1),
        (pt(q(-1, 2), q(0, 1)), 1),
        (pt(q(-1, 6), q(0, 1)), 1),
    ]);
    assert_eq!(report.image, want);
    assert!(report.certificate.is_some());
    assert!(!report.falsified);
}

#[test]
fn inline_input_matches_files() {
    let from_files = troplift(&["intersect", "-f", &fixture("ex52_f.poly"), "-g", &fixture("ex52_g.poly")]);
    let g = std::fs::read_to_string(fixture("ex52_g.poly")).unwrap();
    let inline = troplift(&["intersect", "--inline", "-f", "x + y + x*y", "-g", &g]);
    assert_eq!(artifact(&from_files), artifact(&inline));
}

#[test]
fn certify_outcomes_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (fixture("ex12_f.poly"), fixture("ex12_g.poly"));
    let curve = save(dir.path(), "curve.json", &["tropicalize", "-f", &f]);
    let complex = save(dir.path(), "complex.json", &["intersect", "-f", &f, "-g", &g]);
    let e = save(dir.path(), "e.json", &["stable", "-f", &f, "-g", &g]);
    let certify = |d: &Path, expect: bool| {
        let mut args = vec!["certify", "--curve", curve.to_str().unwrap(), "--complex", complex.to_str().unwrap()];
        args.extend(["--d", d.to_str().unwrap(), "--e", e.to_str().unwrap()]);
        if expect {
            args.push("--expect");
        }
        troplift(&args)
    };

    let a = artifact(&certify(&e, true));
    let Body::PlFunc { function: Some(h), .. } = a.body else { panic!("expected a certificate") };
    assert!(h.is_zero());

    let moved = write_divisor(dir.path(), "moved.json", Divisor::from_points([(pt(q(1, 4), q(0, 1)), 1), (pt(q(3, 4), q(0, 1)), 1)]));
    assert!(certify(&moved, true).status.success());

    let bad = write_divisor(dir.path(), "bad.json", Divisor::from_points([(pt(q(1, 4), q(0, 1)), 1), (pt(q(1, 2), q(0, 1)), 1)]));
    let none = certify(&bad, false);
    assert!(none.status.success());
    assert_eq!(String::from_utf8_lossy(&none.stdout).trim(), "none");
    assert_eq!(certify(&bad, true).status.code(), Some(2));

    let off = write_divisor(dir.path(), "off.json", Divisor::from_points([(pt(q(5, 1), q(5, 1)), 2)]));
    assert_eq!(certify(&off, false).status.code(), Some(1));
}

#[test]
fn written_artifacts_reload_equal() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (fixture("ex52_f.poly"), fixture("ex52_g.poly"));
    for cmd in ["intersect", "stable", "lift", "configspace"] {
        let path = save(dir.path(), &format!("{cmd}.json"), &[cmd, "-f", &f, "-g", &g]);
        let text = std::fs::read_to_string(&path).unwrap();
        let a = Artifact::from_json(&text).unwrap();
        assert_eq!(a.to_json(), text, "{cmd}");
        let printed = artifact(&troplift(&[cmd, "-f", &f, "-g", &g]));
        assert_eq!(printed, a, "{cmd}");
    }
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 4, "temporary files left behind");
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (fixture("ex52_f.poly"), fixture("ex52_g.poly"));
    let report = save(dir.path(), "lift.json", &["lift", "-f", &f, "-g", &g]);
    let plot = || troplift(&["plot", report.to_str().unwrap(), "--ray-len", "3/2"]);
    let (a, b) = (plot(), plot());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    // Four zeros of D and four poles from E.
    assert_eq!(svg.matches(r#"fill="black""#).count(), 4);
    assert_eq!(svg.matches("<path").count(), 4);

    let both = dir.path().join("curve.json");
    let out = troplift(&["tropicalize", "-f", &f, "--json", "--svg", "--out", both.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(both.exists());
    let drawn = std::fs::read_to_string(both.with_extension("svg")).unwrap();
    let direct = troplift(&["tropicalize", "-f", &f, "--svg"]);
    assert_eq!(drawn.as_bytes(), &direct.stdout[..]);
}

#[test]
fn errors_exit_one() {
    let out = troplift(&["tropicalize", "--inline", "-f", "t^(1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:7"));
    assert_eq!(troplift(&["stable", "-f", "/nonexistent.poly", "-g", "/nonexistent.poly"]).status.code(), Some(1));
    assert_eq!(troplift(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn stress_passes() {
    let out = troplift(&["stress", "--seed", "7", "--count", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
