//! Operations on knotoid diagrams: the involutions, product, closures and
//! lifts to branched covers.

mod lift;

pub use lift::{lift_cover, lift_cover_from, stabilize, LiftResult};

use std::fmt;
use std::str::FromStr;

use crate::diagram::{Dart, Diagram, End, Kind, Link, Strand};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Rev,
    Mir,
    Sym,
    Rot,
}

impl Involution {
    pub const ALL: [Involution; 4] = [Involution::Rev, Involution::Mir, Involution::Sym, Involution::Rot];

    pub fn name(self) -> &'static str {
        match self {
            Involution::Rev => "rev",
            Involution::Mir => "mir",
            Involution::Sym => "sym",
            Involution::Rot => "rot",
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Involution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Involution::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown involution '{s}' (expected rev, mir, sym or rot)")))
    }
}

pub fn involution(d: &Diagram, which: Involution) -> Diagram {
    match which {
        Involution::Rev => rev(d),
        Involution::Mir => mir(d),
        Involution::Sym => sym(d),
        Involution::Rot => sym(&mir(d)),
    }
}

/// Swaps tail and head and reverses every strand.
pub fn rev(d: &Diagram) -> Diagram {
    let mut e = d.clone();
    for v in e.vertices.iter_mut() {
        v.kind = match v.kind {
            Kind::End(End::Tail) => Kind::End(End::Head),
            Kind::End(End::Head) => Kind::End(End::Tail),
            k => k,
        };
        for l in v.links.iter_mut() {
            l.out = !l.out;
        }
    }
    e
}

/// Changes every crossing.
pub fn mir(d: &Diagram) -> Diagram {
    let mut e = d.clone();
    for v in e.vertices.iter_mut() {
        if let Kind::Crossing { over } = v.kind {
            v.kind = Kind::Crossing { over: 1 - over };
        }
    }
    e
}

/// Reflects the sphere: every cyclic slot order is reversed.
pub fn sym(d: &Diagram) -> Diagram {
    let flip = |s: usize, deg: usize| (deg - s) % deg;
    let mut e = d.clone();
    for (v, vert) in d.vertices.iter().enumerate() {
        let deg = vert.links.len();
        for s in 0..deg {
            let l = vert.links[s];
            let to = Dart::new(l.to.v, flip(l.to.s, d.degree(l.to.v)));
            e.vertices[v].links[flip(s, deg)] = Link { to, ..l };
        }
        // Slot parity is preserved, so the over pair stays the same.
    }
    e
}

/// The diagram with a shortest shortcut when it has none.
pub fn with_minimal_shortcut(d: &Diagram) -> Result<Diagram> {
    if d.has_shortcut() {
        return Ok(d.clone());
    }
    let path = d
        .shortcut_paths(d.edge_count(), 1)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid("no shortcut path between the endpoints".into()))?;
    d.with_shortcut(&path)
}

/// Disjoint union; vertices of `b` are numbered after those of `a`.
fn disjoint_union(a: &Diagram, b: &Diagram) -> Diagram {
    let off = a.len();
    let mut out = a.clone();
    for vert in &b.vertices {
        let mut v = vert.clone();
        for l in v.links.iter_mut() {
            l.to.v += off;
        }
        out.vertices.push(v);
    }
    out
}

/// Glues the head of `a` to the tail of `b`. Shortcuts are concatenated
/// when both diagrams carry one and dropped otherwise.
pub fn product(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    let both = a.has_shortcut() && b.has_shortcut();
    let (a, b) =
        if both { (a.keep_shortcut(0), b.keep_shortcut(0)) } else { (a.without_shortcut(), b.without_shortcut()) };
    let head = a.head().ok_or_else(|| Error::Invalid("left factor has no head".into()))?;
    let tail = b.tail().ok_or_else(|| Error::Invalid("right factor has no tail".into()))?;
    let mut d = disjoint_union(&a, &b);
    let tail = tail + a.len();
    let strands: Vec<Strand> = d.vertices[head].links.iter().map(|l| l.strand).collect();
    for strand in strands {
        let hs = d.endpoint_slot(head, strand).unwrap();
        let ts =
            d.endpoint_slot(tail, strand).ok_or_else(|| Error::Invalid("factors carry different strands".into()))?;
        let from = d.partner(Dart::new(head, hs));
        let to = d.partner(Dart::new(tail, ts));
        d.connect(from, to, strand);
    }
    let mut dead = vec![false; d.len()];
    dead[head] = true;
    dead[tail] = true;
    d.remove_vertices(&dead);
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    Over,
    Under,
}

impl FromStr for ClosureMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "over" => Ok(ClosureMode::Over),
            "under" => Ok(ClosureMode::Under),
            _ => Err(Error::Invalid(format!("unknown closure mode '{s}' (expected over or under)"))),
        }
    }
}

/// Closes the knotoid along its shortcut, which passes over or under every
/// strand it meets. A diagram without a shortcut is closed along a shortest
/// one. The result is a closed map with one strand; the former endpoints
/// become 2-valent joints.
pub fn closure(d: &Diagram, mode: ClosureMode) -> Result<Diagram> {
    let mut d = with_minimal_shortcut(d)?.keep_shortcut(0);
    for v in 0..d.len() {
        match d.kind(v) {
            Kind::Flat => {
                let sc = (0..4).find(|&s| !d.vertices[v].links[s].strand.is_main()).unwrap();
                let over = match mode {
                    ClosureMode::Over => sc % 2,
                    ClosureMode::Under => 1 - sc % 2,
                };
                d.vertices[v].kind = Kind::Crossing { over };
            }
            Kind::End(_) => d.vertices[v].kind = Kind::Joint,
            _ => {}
        }
    }
    for vert in d.vertices.iter_mut() {
        for l in vert.links.iter_mut() {
            if !l.strand.is_main() {
                // The shortcut now runs from the head back to the tail.
                l.out = !l.out;
                l.strand = Strand::Main;
            }
        }
    }
    Ok(d)
}

/// Connected sum of two closed diagrams, joining the first outgoing edge of
/// vertex 0 in each.
pub fn connected_sum(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if !a.is_closed() || !b.is_closed() || a.is_empty() || b.is_empty() {
        return Err(Error::Invalid("connected sum needs two nonempty closed diagrams".into()));
    }
    let first_out = |d: &Diagram| (0..d.degree(0)).map(|s| Dart::new(0, s)).find(|&x| d.link(x).out).unwrap();
    let x = first_out(a);
    let y = first_out(b);
    let mut d = disjoint_union(a, b);
    let y = Dart::new(y.v + a.len(), y.s);
    let xt = d.partner(x);
    let yt = d.partner(y);
    d.connect(x, yt, Strand::Main);
    d.connect(y, xt, Strand::Main);
    Ok(d)
}
