use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn formgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formgroup"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("FORMGROUP_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("fgl_check_multiplicative", &["fgl", "check", "--builtin", "multiplicative"], 0),
    ("fgl_check_additive4", &["fgl", "check", "--builtin", "additive", "--dim", "4"], 0),
    ("fgl_check_broken", &["fgl", "check", "--file", "tests/fixtures/broken.fgl"], 1),
    ("antipode_multiplicative", &["antipode", "--builtin", "multiplicative", "--trunc", "5"], 0),
    ("antipode_additive", &["antipode", "--builtin", "additive"], 0),
    ("antipode_heisenberg", &["antipode", "--builtin", "heisenberg", "--trunc", "4"], 0),
    ("lie_heisenberg", &["lie", "--builtin", "heisenberg"], 0),
    ("cohomology_heisenberg", &["cohomology", "--builtin", "heisenberg"], 0),
    ("cohomology_ax_plus_b", &["cohomology", "--builtin", "ax_plus_b"], 0),
    ("phi_heisenberg_2", &["phi", "--builtin", "heisenberg", "--n", "2"], 0),
    (
        "chainmap_heisenberg",
        &["chainmap", "--builtin", "heisenberg", "--n", "1", "--trials", "25", "--seed", "7"],
        0,
    ),
    ("tals_graded_multiplicative", &["tals-graded", "--builtin", "multiplicative", "--max-degree", "6"], 0),
    (
        "padic_normality_heisenberg",
        &["padic-normality", "--builtin", "heisenberg", "--prime", "3", "--level", "1", "--samples", "5", "--trunc", "12"],
        0,
    ),
    ("convergence_exp", &["convergence", "--k", "1,2"], 0),
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("FORMGROUP_UPDATE_GOLDEN").is_some();
    for (name, args, code) in GOLDEN {
        let out = formgroup(args);
        assert_eq!(out.status.code(), Some(*code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = tests_dir().join("golden").join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, stdout(&out)).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(stdout(&out), want, "{name}");
    }
}

#[test]
fn broken_law_prints_degree_three_residual() {
    let out = formgroup(&["fgl", "check", "--file", "tests/fixtures/broken.fgl"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("associativity: FAIL"));
    assert!(text.contains("residual: component 2") && text.contains("(degree 3)"), "{text}");
}

#[test]
fn antipode_dump() {
    let out = formgroup(&["antipode", "--builtin", "multiplicative", "--trunc", "5"]);
    assert_eq!(stdout(&out), "-1*t + 1*t^2 - 1*t^3 + 1*t^4 - 1*t^5\n");
    let out = formgroup(&["antipode", "--builtin", "heisenberg"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().contains("+ 1*t1 t2"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = std::env::temp_dir().join(format!("formgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.fgl");
    std::fs::write(&bad, "{\"dim\": 1,\n \"trunc\": x}").unwrap();
    let out = formgroup(&["fgl", "check", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 21"));

    let out = formgroup(&["fgl", "check", "--builtin", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = formgroup(&["fgl", "check", "--builtin", "multiplicative", "--trunc", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = formgroup(&["padic-normality", "--builtin", "multiplicative", "--prime", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("formgroup-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut texts = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("run{run}.json"));
        let out = formgroup(&[
            "padic-normality", "--builtin", "ax_plus_b", "--prime", "5", "--level", "2",
            "--samples", "6", "--seed", "11", "--trunc", "16", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        texts.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let report: serde_json::Value = serde_json::from_slice(&texts[0]).unwrap();
    for key in ["p", "N", "h", "D", "seed", "samples", "verdicts"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = std::env::temp_dir().join(format!("formgroup-env-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_formgroup"))
        .args(["cohomology", "--builtin", "heisenberg"])
        .env("FORMGROUP_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("cohomology.json")).unwrap()).unwrap();
    assert_eq!(report["betti"], serde_json::json!([1, 2, 2, 1]));
}

#[test]
fn exported_law_checks_clean() {
    let dir = std::env::temp_dir().join(format!("formgroup-exp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = formgroup(&["fgl", "export", "--builtin", "ax_plus_b", "--trunc", "5"]);
    let path = dir.join("axb.fgl");
    std::fs::write(&path, out.stdout).unwrap();
    let out = formgroup(&["fgl", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}
