//! Structural validation of diagrams.

use std::fmt;

use serde::Serialize;

use super::{Dart, Diagram, End, Kind, Strand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Short machine-readable name of the broken invariant.
    pub rule: &'static str,
    pub message: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    fn push(&mut self, rule: &'static str, message: impl Into<String>, vertices: Vec<usize>) {
        self.violations.push(Violation { rule, message: message.into(), vertices });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid (V={}, E={}, F={})", self.vertices, self.edges, self.faces);
        }
        for v in &self.violations {
            writeln!(f, "{}: {} {:?}", v.rule, v.message, v.vertices)?;
        }
        Ok(())
    }
}

impl Diagram {
    /// Checks every structural invariant; never panics on malformed maps.
    pub fn validate(&self) -> Report {
        let mut r = Report { vertices: self.len(), edges: self.edge_count(), ..Report::default() };

        let mut links_ok = true;
        for d in self.darts() {
            let l = *self.link(d);
            if l.to.v >= self.len() || l.to.s >= self.degree(l.to.v) {
                r.push("dangling-link", format!("slot {}:{} points outside the map", d.v, d.s), vec![d.v]);
                links_ok = false;
                continue;
            }
            let back = *self.link(l.to);
            if back.to != d || l.to == d {
                r.push(
                    "asymmetric-link",
                    format!("slot {}:{} is not paired consistently", d.v, d.s),
                    vec![d.v, l.to.v],
                );
                links_ok = false;
            } else if back.strand != l.strand || back.out == l.out {
                r.push(
                    "edge-orientation",
                    format!("edge at {}:{} has inconsistent strand or direction", d.v, d.s),
                    vec![d.v, l.to.v],
                );
            }
        }
        if !links_ok {
            return r;
        }
        r.faces = self.faces().len();

        for (v, vert) in self.vertices.iter().enumerate() {
            let deg = vert.links.len();
            let strand = |s: usize| vert.links[s].strand;
            let passes = |a: usize, b: usize| vert.links[a].out != vert.links[b].out;
            match vert.kind {
                Kind::Crossing { over } => {
                    if deg != 4 || over > 1 {
                        r.push("crossing-shape", "crossing must have 4 slots and an opposite over pair", vec![v]);
                        continue;
                    }
                    for a in 0..2 {
                        if strand(a) != strand(a + 2) || !passes(a, a + 2) {
                            r.push(
                                "crossing-strand",
                                "opposite slots of a crossing must carry one directed strand",
                                vec![v],
                            );
                        }
                    }
                    if !self.is_closed() && (0..4).any(|s| !strand(s).is_main()) {
                        r.push("shortcut-at-crossing", "a shortcut passes through a crossing", vec![v]);
                    }
                }
                Kind::Flat => {
                    if deg != 4 {
                        r.push("flat-shape", "flat vertex must have 4 slots", vec![v]);
                        continue;
                    }
                    let ok = (0..2).all(|a| strand(a) == strand(a + 2) && passes(a, a + 2))
                        && strand(0).is_main() != strand(1).is_main();
                    if !ok {
                        r.push("flat-strands", "flat vertex must alternate a main and a shortcut strand", vec![v]);
                    }
                }
                Kind::Joint => {
                    if deg != 2 || !passes(0, 1) {
                        r.push("joint-shape", "joint must be a directed 2-valent pass-through", vec![v]);
                    }
                }
                Kind::End(_) => {
                    let mains = vert.links.iter().filter(|l| l.strand.is_main()).count();
                    let mut shortcuts: Vec<usize> = vert
                        .links
                        .iter()
                        .filter_map(|l| match l.strand {
                            Strand::Shortcut(k) => Some(k),
                            Strand::Main => None,
                        })
                        .collect();
                    let n = shortcuts.len();
                    shortcuts.sort_unstable();
                    shortcuts.dedup();
                    if mains != 1 || shortcuts.len() != n {
                        r.push(
                            "endpoint-shape",
                            "endpoint needs one main slot and at most one slot per shortcut",
                            vec![v],
                        );
                    }
                }
            }
        }

        let shapes_ok = r.violations.is_empty();
        let tails: Vec<usize> = (0..self.len()).filter(|&v| self.kind(v) == Kind::End(End::Tail)).collect();
        let heads: Vec<usize> = (0..self.len()).filter(|&v| self.kind(v) == Kind::End(End::Head)).collect();
        let closed = tails.is_empty() && heads.is_empty();
        if !closed && (tails.len() != 1 || heads.len() != 1) {
            let mut vs = tails.clone();
            vs.extend(&heads);
            r.push(
                "endpoint-count",
                format!("expected one tail and one head, found {} and {}", tails.len(), heads.len()),
                vs,
            );
        }

        if shapes_ok && !closed && tails.len() == 1 && heads.len() == 1 {
            let tail = tails[0];
            let mut strands: Vec<Strand> = self.vertices[tail].links.iter().map(|l| l.strand).collect();
            strands.sort();
            for strand in strands {
                let total = self.darts().filter(|&d| self.strand(d) == strand && self.link(d).out).count();
                let s = self.endpoint_slot(tail, strand).unwrap();
                let name = match strand {
                    Strand::Main => "main strand".to_string(),
                    Strand::Shortcut(k) => format!("shortcut {k}"),
                };
                match self.walk_from(Dart::new(tail, s)) {
                    Some((walk, end)) if end.v == heads[0] => {
                        let mut ok = walk.len() + 1 == total;
                        let mut cur = Dart::new(tail, s);
                        for p in &walk {
                            ok &= self.link(cur).out && self.strand(cur) == strand;
                            cur = Dart::new(p.v, p.exit);
                        }
                        ok &= self.link(cur).out && self.strand(cur) == strand;
                        if !ok {
                            r.push(
                                "strand-walk",
                                format!("{name} does not run tail to head through all of its edges"),
                                vec![tail],
                            );
                        }
                    }
                    _ => r.push("strand-walk", format!("{name} does not end at the head"), vec![tail]),
                }
            }
            let head_strands: Vec<Strand> = self.vertices[heads[0]].links.iter().map(|l| l.strand).collect();
            for s in head_strands {
                if self.endpoint_slot(tail, s).is_none() {
                    r.push("strand-walk", "head has a strand that does not start at the tail", vec![heads[0]]);
                }
            }
        }

        if !self.is_connected() {
            r.push("disconnected", "the map is not connected", vec![]);
        } else if r.euler_characteristic() != 2 {
            r.push(
                "euler",
                format!("V - E + F = {} (expected 2): not a sphere embedding", r.euler_characteristic()),
                vec![],
            );
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_valid() {
        let r = Diagram::trivial().validate();
        assert!(r.is_valid(), "{r}");
        assert_eq!(r.faces, 1);
        assert_eq!(r.euler_characteristic(), 2);
        assert!(Diagram::trivial_shortcut().is_valid());
    }

    #[test]
    fn three_endpoints_rejected() {
        let mut d = Diagram::trivial();
        let extra = d.add_vertex(Kind::End(End::Head), 2);
        d.connect(Dart::new(extra, 0), Dart::new(extra, 1), Strand::Main);
        let r = d.validate();
        assert!(r.violations.iter().any(|v| v.rule == "endpoint-count"), "{r}");
    }

    #[test]
    fn torus_rejected() {
        // Interleaved crossings with rotations that need a handle.
        let mut found = false;
        for code in ["O1+ O2- U1+ U2-", "O1+ O2+ U1+ U2+", "O1- O2- U1- U2-", "O1- O2+ U1- U2+"] {
            let tokens: Vec<super::super::GaussToken> = code.split(' ').map(|t| t.parse().unwrap()).collect();
            if Diagram::from_gauss_tokens(&tokens).is_err() {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn broken_orientation_reported() {
        let mut d = Diagram::trivial();
        d.link_mut(Dart::new(1, 0)).out = true;
        assert!(d.validate().violations.iter().any(|v| v.rule == "edge-orientation"));
    }
}
