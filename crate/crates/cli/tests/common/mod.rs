//! Golden-file cases shared by the golden and acceptance suites.
//!
//! Each case runs the `msk` binary from the fixtures directory and compares
//! exit code, stdout and stderr with `tests/golden/<name>.txt`. Set
//! `MSK_BLESS=1` to rewrite the golden files.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

#[rustfmt::skip]
pub const CASES: &[Case] = &[
    Case { name: "empty_report", args: &["report", "--input", "empty.json"], exit: 0 },
    Case { name: "compose", args: &["compose", "--input", "square.json", "alpha", "sigma"], exit: 0 },
    Case { name: "compose_named", args: &["compose", "--input", "square.json", "--name", "ring", "beta", "sigma"], exit: 0 },
    Case { name: "compose_not_composable", args: &["compose", "--input", "square.json", "alpha", "beta"], exit: 2 },
    Case { name: "compose_rejects_leaky_kernel", args: &["compose", "--input", "broken_concentration.json", "leaky", "good"], exit: 2 },
    Case { name: "lift_right", args: &["lift", "--input", "square.json", "alpha", "q"], exit: 0 },
    Case { name: "lift_left", args: &["lift", "--input", "square.json", "--left", "beta", "p"], exit: 0 },
    Case { name: "fibre_product", args: &["fibre-product", "--input", "tower.json", "gamma1", "xi1", "p1", "q1", "p2", "q2"], exit: 0 },
    Case { name: "fibre_product_incompatible", args: &["fibre-product", "--input", "tower.json", "gamma1", "xi1", "p1_bad", "q1", "p2", "q2"], exit: 2 },
    Case { name: "disintegrate", args: &["disintegrate", "--input", "disintegration.json", "--name", "gamma_new", "f", "mu", "nu"], exit: 0 },
    Case { name: "disintegrate_not_class_preserving", args: &["disintegrate", "--input", "disintegration.json", "f", "mu", "nu_off"], exit: 2 },
    Case { name: "check_concentration_pass", args: &["check", "--input", "square.json", "concentration"], exit: 0 },
    Case { name: "check_concentration_fail", args: &["check", "--input", "broken_concentration.json", "concentration"], exit: 1 },
    Case { name: "check_positivity_pass", args: &["check", "--input", "not_positive.json", "positivity", "full"], exit: 0 },
    Case { name: "check_positivity_fail", args: &["check", "--input", "not_positive.json", "positivity"], exit: 1 },
    Case { name: "check_square_pass", args: &["check", "--input", "square.json", "square-commutes", "alpha", "beta"], exit: 0 },
    Case { name: "check_square_leaky", args: &["check", "--input", "broken_concentration.json", "square-commutes", "good", "leaky"], exit: 1 },
    Case { name: "check_square_mismatch", args: &["check", "--input", "square_mismatch.json", "square-commutes", "alpha", "beta"], exit: 2 },
    Case { name: "check_interchange_pass", args: &["check", "--input", "tower.json", "interchange", "gamma1", "gamma2", "xi1", "xi2", "p3", "q3"], exit: 0 },
    Case { name: "check_interchange_explicit_legs", args: &["check", "--input", "tower.json", "interchange", "gamma1", "gamma2", "xi1", "xi2", "p1", "q1", "p2", "q2", "p3", "q3"], exit: 0 },
    Case { name: "check_interchange_fail", args: &["check", "--input", "tower.json", "interchange", "gamma1", "gamma2", "xi1", "xi2", "p1_bad", "q1", "p2", "q2", "p3", "q3"], exit: 1 },
    Case { name: "check_left_invariance_pass", args: &["check", "--input", "groupoid.json", "left-invariance", "P", "scaled"], exit: 0 },
    Case { name: "check_left_invariance_fail", args: &["check", "--input", "groupoid.json", "left-invariance", "P", "skewed"], exit: 1 },
    Case { name: "check_left_invariance_broken_groupoid", args: &["check", "--input", "broken_groupoid.json", "left-invariance", "P", "counting"], exit: 2 },
    Case { name: "check_haar_pass", args: &["check", "--input", "groupoid.json", "haar", "P", "counting"], exit: 0 },
    Case { name: "check_haar_fail", args: &["check", "--input", "groupoid.json", "haar", "P", "zero"], exit: 1 },
    Case { name: "check_pi_lambda_pass", args: &["check", "--input", "families.json", "pi-lambda", "pi", "dynkin"], exit: 0 },
    Case { name: "check_pi_lambda_not_pi", args: &["check", "--input", "families.json", "pi-lambda", "not_pi", "dynkin"], exit: 1 },
    Case { name: "check_pi_lambda_not_dynkin", args: &["check", "--input", "families.json", "pi-lambda", "pi", "not_dynkin"], exit: 1 },
    Case { name: "check_reconstruction_pass", args: &["check", "--input", "disintegration.json", "reconstruction", "f", "mu", "nu", "gamma"], exit: 0 },
    Case { name: "check_reconstruction_fail", args: &["check", "--input", "disintegration.json", "reconstruction", "f", "mu", "nu", "gamma_bad"], exit: 1 },
    Case { name: "check_wrong_arity", args: &["check", "--input", "square.json", "square-commutes", "alpha"], exit: 2 },
    Case { name: "check_unknown_object", args: &["check", "--input", "square.json", "square-commutes", "alpha", "gamma"], exit: 2 },
    Case { name: "haar_verify_pass", args: &["haar-verify", "--input", "groupoid_haar.json", "P"], exit: 0 },
    Case { name: "haar_verify_mixed", args: &["haar-verify", "--input", "groupoid.json", "P"], exit: 1 },
    Case { name: "haar_verify_broken_groupoid", args: &["haar-verify", "--input", "broken_groupoid.json", "P"], exit: 1 },
    Case { name: "report_square", args: &["report", "--input", "square.json"], exit: 0 },
    Case { name: "report_families", args: &["report", "--input", "families.json"], exit: 0 },
    Case { name: "report_groupoid", args: &["report", "--input", "groupoid.json"], exit: 1 },
    Case { name: "report_broken_concentration", args: &["report", "--input", "broken_concentration.json"], exit: 1 },
    Case { name: "parse_malformed", args: &["report", "--input", "malformed.json"], exit: 2 },
    Case { name: "parse_negative_mass", args: &["report", "--input", "negative_mass.json"], exit: 2 },
    Case { name: "parse_wrong_version", args: &["report", "--input", "wrong_version.json"], exit: 2 },
    Case { name: "parse_missing_file", args: &["report", "--input", "no_such_file.json"], exit: 2 },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures_dir() -> PathBuf {
    crate_dir().join("tests").join("fixtures")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir()
        .join("tests")
        .join("golden")
        .join(format!("{name}.txt"))
}

pub fn msk() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_msk"));
    cmd.current_dir(fixtures_dir()).env_remove("MSK_SEED");
    cmd
}

/// Exit code, stdout and stderr in the golden-file layout.
pub fn transcript(code: i32, stdout: &str, stderr: &str) -> String {
    format!("exit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

pub struct CaseResult {
    pub code: i32,
    pub actual: String,
    pub expected: Option<String>,
}

impl CaseResult {
    pub fn matches(&self, case: &Case) -> bool {
        self.code == case.exit && self.expected.as_deref() == Some(self.actual.as_str())
    }
}

pub fn run_case(case: &Case) -> CaseResult {
    let out = msk().args(case.args).output().expect("msk runs");
    let code = out.status.code().expect("exited normally");
    let actual = transcript(
        code,
        &String::from_utf8(out.stdout).expect("utf-8 stdout"),
        &String::from_utf8(out.stderr).expect("utf-8 stderr"),
    );
    let path = golden_path(case.name);
    if std::env::var_os("MSK_BLESS").is_some() {
        std::fs::write(&path, &actual).expect("write golden");
    }
    CaseResult {
        code,
        actual,
        expected: std::fs::read_to_string(&path).ok(),
    }
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
