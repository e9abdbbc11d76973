//! JSON fixture format.
//!
//! ```json
//! {
//!   "vertices": [
//!     {"id": 0, "kind": "tail", "degree": 2},
//!     {"id": 1, "kind": "crossing", "degree": 4, "over": [0, 2]}
//!   ],
//!   "edges": [
//!     {"strand": "main", "from": [0, 0], "to": [1, 0]}
//!   ],
//!   "meta": {"name": "example", "expected": {"seq": "+-"}}
//! }
//! ```
//!
//! `from` is the source of the edge along its strand. Shortcut strands are
//! `"shortcut"` (number 0) or `"shortcut:k"`. Structural problems that the
//! in-memory map cannot represent (slots out of range, a slot used twice or
//! not at all) are parse errors; everything else is left to validation.

use std::collections::{BTreeMap, HashMap};

use super::{Dart, Diagram, End, Kind, Strand};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, serde_json::Value>,
}

/// A diagram together with its optional metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub diagram: Diagram,
    pub meta: Option<Meta>,
}

#[derive(Serialize, Deserialize)]
struct RawVertex {
    id: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    over: Option<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    strand: String,
    from: [usize; 2],
    to: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

fn malformed(msg: String) -> Error {
    Error::Parse { line: 0, column: 0, msg }
}

fn parse_strand(s: &str) -> Result<Strand> {
    match s {
        "main" => Ok(Strand::Main),
        "shortcut" => Ok(Strand::Shortcut(0)),
        _ => s
            .strip_prefix("shortcut:")
            .and_then(|k| k.parse().ok())
            .map(Strand::Shortcut)
            .ok_or_else(|| malformed(format!("unknown strand '{s}'"))),
    }
}

fn strand_name(s: Strand) -> String {
    match s {
        Strand::Main => "main".into(),
        Strand::Shortcut(0) => "shortcut".into(),
        Strand::Shortcut(k) => format!("shortcut:{k}"),
    }
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let raw: RawDiagram = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(malformed(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut degree: Vec<usize> = vec![0; raw.vertices.len()];
        for (i, v) in raw.vertices.iter().enumerate() {
            degree[i] = match (v.kind.as_str(), v.degree) {
                ("crossing" | "flat", None) => 4,
                ("joint", None) => 2,
                (_, Some(d)) => d,
                ("tail" | "head", None) => raw
                    .edges
                    .iter()
                    .flat_map(|e| [e.from, e.to])
                    .filter(|x| x[0] == v.id)
                    .map(|x| x[1] + 1)
                    .max()
                    .unwrap_or(0),
                (k, None) => return Err(malformed(format!("vertex {}: unknown kind '{k}'", v.id))),
            };
        }
        let mut d = Diagram::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            let kind = match v.kind.as_str() {
                "crossing" => {
                    let [a, b] = v.over.ok_or_else(|| malformed(format!("crossing {} has no over pair", v.id)))?;
                    if a >= 4 || b >= 4 || (a + 2) % 4 != b {
                        return Err(malformed(format!("crossing {}: over pair must be opposite slots", v.id)));
                    }
                    Kind::Crossing { over: a % 2 }
                }
                "flat" => Kind::Flat,
                "joint" => Kind::Joint,
                "tail" => Kind::End(End::Tail),
                "head" => Kind::End(End::Head),
                k => return Err(malformed(format!("vertex {}: unknown kind '{k}'", v.id))),
            };
            let expected = match kind {
                Kind::Crossing { .. } | Kind::Flat => Some(4),
                Kind::Joint => Some(2),
                Kind::End(_) => None,
            };
            if expected.is_some_and(|e| e != degree[i]) || degree[i] == 0 {
                return Err(malformed(format!("vertex {}: bad slot count {}", v.id, degree[i])));
            }
            d.add_vertex(kind, degree[i]);
        }
        let mut used: Vec<Vec<bool>> = degree.iter().map(|&n| vec![false; n]).collect();
        let dart = |x: [usize; 2], used: &mut Vec<Vec<bool>>| -> Result<Dart> {
            let v = *index.get(&x[0]).ok_or_else(|| malformed(format!("edge references unknown vertex {}", x[0])))?;
            if x[1] >= degree[v] {
                return Err(malformed(format!("vertex {} has no slot {}", x[0], x[1])));
            }
            if std::mem::replace(&mut used[v][x[1]], true) {
                return Err(malformed(format!("slot [{}, {}] used twice", x[0], x[1])));
            }
            Ok(Dart::new(v, x[1]))
        };
        for e in &raw.edges {
            let strand = parse_strand(&e.strand)?;
            let from = dart(e.from, &mut used)?;
            let to = dart(e.to, &mut used)?;
            d.connect(from, to, strand);
        }
        for (v, slots) in used.iter().enumerate() {
            if let Some(s) = slots.iter().position(|u| !u) {
                return Err(malformed(format!("slot [{}, {s}] is not connected", raw.vertices[v].id)));
            }
        }
        Ok(Fixture { diagram: d, meta: raw.meta })
    }

    /// Canonical JSON: vertices in canonical order, edges listed from their
    /// source slot in vertex/slot order.
    pub fn to_json(&self) -> String {
        let d = self.diagram.canonical();
        let vertices = d
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| {
                let (kind, over) = match v.kind {
                    Kind::Crossing { over } => ("crossing", Some([over, over + 2])),
                    Kind::Flat => ("flat", None),
                    Kind::Joint => ("joint", None),
                    Kind::End(End::Tail) => ("tail", None),
                    Kind::End(End::Head) => ("head", None),
                };
                RawVertex { id, kind: kind.into(), degree: Some(v.degree()), over }
            })
            .collect();
        let edges = d
            .darts()
            .filter(|&x| d.link(x).out)
            .map(|x| {
                let l = d.link(x);
                RawEdge { strand: strand_name(l.strand), from: [x.v, x.s], to: [l.to.v, l.to.s] }
            })
            .collect();
        let raw = RawDiagram { vertices, edges, meta: self.meta.clone() };
        let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
        s.push('\n');
        s
    }
}

impl Diagram {
    pub fn from_json(text: &str) -> Result<Diagram> {
        Fixture::parse(text).map(|f| f.diagram)
    }

    pub fn to_json(&self) -> String {
        Fixture { diagram: self.clone(), meta: None }.to_json()
    }
}
