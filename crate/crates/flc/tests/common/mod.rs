#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;

use flc::cli::{run, Outcome};

/// Builtins with the circle used for their golden report.
pub const GOLDEN: [(&str, &str); 8] = [
    ("s4", "trivial"),
    ("s1xs3", "t"),
    ("cp2", "trivial"),
    ("s2xs2", "trivial"),
    ("t4", "t1"),
    ("enriques_like", "g"),
    ("q8pair", "x"),
    ("m_conn_s3s1", "c"),
];

pub fn flc(args: &[&str]) -> Outcome {
    run(std::iter::once("flc").chain(args.iter().copied()))
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

pub fn classify_json(name: &str, circle: &str) -> Outcome {
    flc(&["classify", "--builtin", name, "--circle", circle, "--format", "json"])
}

/// A temporary file holding `text`, removed on drop.
pub fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().expect("temp file");
    f.write_all(text.as_bytes()).expect("write temp file");
    f
}
