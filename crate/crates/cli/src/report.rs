//! JSON reports. Every report carries `"schema": 1`; objects are emitted
//! with sorted keys so identical inputs give byte-identical output.

use std::collections::BTreeMap;

use anyhow::Result;
use knotoid::diagram::{Fixture, Report};
use knotoid::invariants::{Invariants, StateSumOptions};
use knotoid::moves::{Budget, CertifyResult, ExploreResult, HeightBound};
use knotoid::ops;
use knotoid::seqcalc::SignSequence;
use knotoid::Diagram;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

fn input(name: &str, f: &Fixture) -> Value {
    json!({
        "path": name,
        "name": f.meta.as_ref().and_then(|m| m.name.clone()),
    })
}

fn header(command: &str, name: &str, f: &Fixture) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), input(name, f));
    m
}

fn seqs<'a>(it: impl IntoIterator<Item = &'a SignSequence>) -> Vec<String> {
    it.into_iter().map(|s| s.to_string()).collect()
}

fn budget(b: &Budget) -> Value {
    json!({"max_crossings": b.max_crossings, "max_height": b.max_height, "max_states": b.max_states})
}

fn height(h: &HeightBound) -> Value {
    if h.is_exact() {
        json!(h.lower)
    } else {
        json!([h.lower, h.upper])
    }
}

pub fn validate(name: &str, f: &Fixture, r: &Report) -> Value {
    let mut m = header("validate", name, f);
    m.insert("valid".into(), json!(r.is_valid()));
    m.insert("vertices".into(), json!(r.vertices));
    m.insert("edges".into(), json!(r.edges));
    m.insert("faces".into(), json!(r.faces));
    m.insert("euler_characteristic".into(), json!(r.euler_characteristic()));
    m.insert("violations".into(), serde_json::to_value(&r.violations).unwrap_or_default());
    Value::Object(m)
}

pub fn invariants(name: &str, f: &Fixture) -> Result<Value> {
    let d = &f.diagram;
    let mut m = header("invariants", name, f);
    m.insert("crossings".into(), json!(d.crossing_count()));
    m.insert("closed".into(), json!(d.is_closed()));
    if d.is_closed() {
        let b = knotoid::invariants::bracket(d)?;
        m.insert("writhe".into(), json!(d.writhe()));
        m.insert("bracket".into(), json!(b.to_string()));
        m.insert("normalized_bracket".into(), json!(knotoid::invariants::normalized_bracket(d)?.to_string()));
        return Ok(Value::Object(m));
    }
    let d = ops::with_minimal_shortcut(d)?;
    let inv = Invariants::compute(&d, &StateSumOptions::default())?;
    let by_u: BTreeMap<i32, String> = inv
        .normalized_turaev
        .terms()
        .map(|((_, u), _)| u)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|u| (u, inv.normalized_turaev.u_coefficient(u).to_string()))
        .collect();
    m.insert("shortcut_intersections".into(), json!(d.flat_count()));
    m.insert("writhe".into(), json!(inv.writhe));
    m.insert("n_writhes".into(), json!(inv.writhes));
    m.insert("index_polynomial".into(), json!(inv.index_polynomial.to_string()));
    m.insert("affine_index_polynomial".into(), json!(inv.affine_index_polynomial.to_string()));
    m.insert("bracket".into(), json!(inv.bracket.to_string()));
    m.insert("normalized_bracket".into(), json!(inv.normalized_bracket.to_string()));
    m.insert("turaev".into(), json!(inv.turaev.to_string()));
    m.insert("normalized_turaev".into(), json!(inv.normalized_turaev.to_string()));
    m.insert("normalized_turaev_by_u".into(), json!(by_u));
    m.insert("bounds".into(), serde_json::to_value(inv.bounds)?);
    Ok(Value::Object(m))
}

pub fn seq(name: &str, f: &Fixture) -> Result<Value> {
    let given = f.diagram.has_shortcut();
    let d = ops::with_minimal_shortcut(&f.diagram)?;
    let s = d.seq();
    let mut m = header("seq", name, f);
    m.insert("shortcut".into(), json!(if given { "given" } else { "shortest" }));
    m.insert("seq".into(), json!(s.to_string()));
    m.insert("h_plus".into(), json!(s.h_plus()));
    m.insert("h_minus".into(), json!(s.h_minus()));
    m.insert("algebraic_height".into(), json!(s.sum()));
    Ok(Value::Object(m))
}

fn search_stats(r: &ExploreResult) -> Value {
    json!({"states": r.states, "depth": r.depth, "partial": r.partial})
}

pub fn search(name: &str, f: &Fixture, r: &ExploreResult) -> Value {
    let mut m = header("search", name, f);
    m.insert("budget".into(), budget(&r.budget));
    m.insert("search".into(), search_stats(r));
    m.insert("min_height".into(), json!(r.min_height));
    m.insert("upper_plus".into(), json!(r.upper_plus));
    m.insert("upper_minus".into(), json!(r.upper_minus));
    m.insert("minimal_sequences".into(), json!(seqs(&r.minimal_sequences)));
    m.insert("sequences".into(), json!(seqs(&r.sequences)));
    Value::Object(m)
}

pub fn certify(name: &str, f: &Fixture, c: &CertifyResult) -> Value {
    let mut m = header("certify", name, f);
    m.insert("status".into(), serde_json::to_value(c.status).unwrap_or_default());
    m.insert("h_plus".into(), height(&c.h_plus));
    m.insert("h_minus".into(), height(&c.h_minus));
    m.insert("height".into(), height(&c.height()));
    m.insert("minimal_sequences".into(), json!(seqs(&c.minimal_sequences)));
    m.insert("shift_connected".into(), json!(c.shift_connected));
    m.insert("bounds".into(), serde_json::to_value(c.bounds).unwrap_or_default());
    m.insert("budget".into(), budget(&c.search.budget));
    m.insert("search".into(), search_stats(&c.search));
    Value::Object(m)
}

/// A derived diagram as a fixture other subcommands can read back.
pub fn diagram(d: &Diagram, source: Value) -> Result<Value> {
    let mut v: Value = serde_json::from_str(&d.to_json())?;
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("source".into(), source);
    }
    Ok(v)
}
