//! Helpers for driving the built binaries.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const SPLITQA: &str = env!("CARGO_BIN_EXE_splitqa");
pub const MOCK: &str = env!("CARGO_BIN_EXE_mock-backend");

pub const ARTIFACTS: [&str; 14] = [
    "sentences.jsonl",
    "transfer.jsonl",
    "thresholded.jsonl",
    "stage_stats.json",
    "metrics.jsonl",
    "metric_report.json",
    "rebuilt.jsonl",
    "simple.json",
    "original.json",
    "drops.jsonl",
    "transfer_analysis.json",
    "transfer_analysis.txt",
    "sample.jsonl",
    "manifest.json",
];

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn splitqa(args: &[&str]) -> Command {
    let mut cmd = Command::new(SPLITQA);
    cmd.args(args).arg("--quiet");
    cmd
}

pub fn run_ok(args: &[&str]) -> Output {
    let out = splitqa(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "splitqa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// Backend command for the mock with the given extra flags.
pub fn mock(flags: &str) -> String {
    format!("{MOCK} {flags}")
}

/// Names of artifacts whose bytes differ between two output directories.
pub fn differing(a: &Path, b: &Path, names: &[&str]) -> Vec<String> {
    names
        .iter()
        .filter(|n| fs::read(a.join(n)).ok() != fs::read(b.join(n)).ok())
        .map(|n| n.to_string())
        .collect()
}
