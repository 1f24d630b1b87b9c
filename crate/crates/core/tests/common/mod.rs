#![allow(dead_code)]

use std::path::PathBuf;

use genpoly::cli::parse::parse_bipoly;
use genpoly::exact::BiPoly;

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/covers.txt")
}

pub fn fixture_lines() -> Vec<String> {
    std::fs::read_to_string(fixture_path())
        .expect("fixture file")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn fixtures() -> Vec<BiPoly> {
    fixture_lines().iter().map(|l| parse_bipoly(l).expect("fixture parses")).collect()
}
