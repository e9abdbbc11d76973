#![allow(dead_code)]

use std::path::PathBuf;

use knotoid::diagram::Fixture;
use knotoid::Diagram;

pub const NAMES: [&str; 7] = ["trivial", "bifoil", "spiral", "kinoshita", "cloud", "borromean", "trefoil"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn load(name: &str) -> Fixture {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    Fixture::parse(&text).unwrap()
}

pub fn diagram(name: &str) -> Diagram {
    load(name).diagram
}

pub fn all() -> Vec<(&'static str, Diagram)> {
    NAMES.iter().map(|&n| (n, diagram(n))).collect()
}

pub fn expected(name: &str, key: &str) -> Option<String> {
    load(name).meta?.expected.get(key).map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
}
