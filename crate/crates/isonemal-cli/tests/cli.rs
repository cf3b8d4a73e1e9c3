//! End-to-end checks of the command-line surface.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isonemal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("isonemal-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn species_check_reports_verdicts() {
    let out = run(&["species", "check", "1_m", "2", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ok: 1_m(2,3) order=12"));

    let out = run(&["species", "check", "8_o", "3", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reject"));
    assert!(text.contains("coprimality"));
}

#[test]
fn species_list_order_prints_candidates() {
    let out = run(&["species", "list-order", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for expected in ["1_m(2,3)", "3(2,3)", "6(1,6)", "7_o(1,3)"] {
        assert!(text.contains(expected), "missing {expected} in {text}");
    }

    let out = run(&["species", "list-order", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_plain_weave_file() {
    let dir = tmpdir("analyze");
    let file = dir.join("pw.design");
    fs::write(&file, "order 2\n10\n01\n").unwrap();
    let out = run(&["analyze", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 2"));
    assert!(text.contains("isonemal: true"));
    assert!(text.contains("hangs-together: true"));
    assert!(text.contains("twill: 1/1"));
}

#[test]
fn transform_double_and_halve() {
    let dir = tmpdir("transform");
    let file = dir.join("pw.design");
    fs::write(&file, "order 2\n10\n01\n").unwrap();

    let out = run(&["transform", "double", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "order 4\n1100\n1100\n0011\n0011\n");

    let out = run(&["transform", "halve", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("# factor").count(), 4);

    let out = run(&["transform", "halve", file.to_str().unwrap(), "--factor", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("# factor 2\norder 1\n"));
}

#[test]
fn catalog_writes_designs_and_summary() {
    let dir = tmpdir("catalog");
    let out = run(&["catalog", "7", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = fs::read_to_string(dir.join("summary.tsv")).unwrap();
    assert!(summary.starts_with("id\tspecies\tell\tw\torder\tgenus\tisonemal\thangs\ttwill\n"));
    assert!(summary.contains("8_o\t7\t1\t7"));
    assert!(summary.contains("1/1/2/3"));
    // the design files round-trip through analyze
    let design_files: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "design"))
        .collect();
    assert!(!design_files.is_empty());
    let out = run(&["analyze", design_files[0].path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("order: 7"));
}

#[test]
fn catalog_exit_codes() {
    // Orders 4 and below are out of scope: usage error.
    let out = run(&["catalog", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // Above the default bound without raising it: usage error.
    let out = run(&["catalog", "40"]);
    assert_eq!(out.status.code(), Some(2));
    // A family over the colouring cap: cap exit code.
    let out = run(&["family", "enum", "1_e", "3", "4", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn render_is_deterministic_and_svg() {
    let dir = tmpdir("render");
    let file = dir.join("pw.design");
    fs::write(&file, "order 2\n10\n01\n").unwrap();
    let svg1 = dir.join("a.svg");
    let svg2 = dir.join("b.svg");
    for out_file in [&svg1, &svg2] {
        let out = run(&[
            "render",
            file.to_str().unwrap(),
            "--overlays",
            "all",
            "--group",
            "5_e,2,3",
            "-o",
            out_file.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = fs::read(&svg1).unwrap();
    let b = fs::read(&svg2).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(b"<svg"));
}

#[test]
fn family_enum_summary() {
    let out = run(&["family", "enum", "1_m", "2", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# policy: translations+views"));
    assert_eq!(text.matches("\n12-").count(), 2, "{text}");
}
