//! Knotoid and shortcut diagrams as rotation systems.
//!
//! A [`Diagram`] is a list of vertices, each with its half-edges ("slots")
//! in counterclockwise order. Every slot is linked to exactly one other
//! slot; the link records which strand the edge belongs to and whether the
//! strand leaves the vertex through this slot. The same type covers plain
//! knotoid diagrams, diagrams with one shortcut, lifted diagrams carrying
//! several shortcuts, and closed knot diagrams.
//!
//! Sign conventions (counterclockwise is the positive orientation):
//! * `tau(x, y)` is `+1` when slot `y` is a counterclockwise quarter turn
//!   from slot `x`, `-1` for a clockwise quarter turn;
//! * a crossing is positive when the outgoing under slot is a
//!   counterclockwise quarter turn from the outgoing over slot;
//! * a flat vertex is positive when the main strand crosses the shortcut
//!   from its right to its left, facing along the shortcut.

mod canon;
mod gauss;
mod json;
mod validate;

pub use canon::CanonCode;
pub use gauss::{GaussToken, Passing};
pub use json::{Fixture, Meta};
pub use validate::{Report, Violation};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::seqcalc::SignSequence;
use crate::Sign;

/// A half-edge: slot `s` of vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub v: usize,
    pub s: usize,
}

impl Dart {
    pub fn new(v: usize, s: usize) -> Dart {
        Dart { v, s }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Main,
    /// Shortcut number `k`; ordinary shortcut diagrams only use `0`.
    Shortcut(usize),
}

impl Strand {
    pub fn is_main(self) -> bool {
        self == Strand::Main
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    pub to: Dart,
    pub strand: Strand,
    /// The strand leaves the vertex through this slot.
    pub out: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Slots `over` and `over + 2` carry the over strand.
    Crossing {
        over: usize,
    },
    /// Transversal main/shortcut intersection; strands alternate.
    Flat,
    End(End),
    /// Two-valent pass-through vertex (closures, temporary edge splits).
    Joint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: Kind,
    pub links: SmallVec<[Link; 4]>,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.links.len()
    }
}

/// One pass of a strand through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub v: usize,
    pub enter: usize,
    pub exit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Diagram {
    pub vertices: Vec<Vertex>,
}

/// `+1` when `y` is one counterclockwise step after `x` at a 4-valent
/// vertex, `-1` when one step before, `0` otherwise.
pub fn tau(x: usize, y: usize) -> i32 {
    if (x + 1) % 4 == y {
        1
    } else if (y + 1) % 4 == x {
        -1
    } else {
        0
    }
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram::default()
    }

    /// Adds a vertex with `degree` unlinked slots (each slot temporarily
    /// points at itself).
    pub fn add_vertex(&mut self, kind: Kind, degree: usize) -> usize {
        let v = self.vertices.len();
        let links = (0..degree).map(|s| Link { to: Dart::new(v, s), strand: Strand::Main, out: false }).collect();
        self.vertices.push(Vertex { kind, links });
        v
    }

    /// Links `from` to `to` with `strand` running from `from` to `to`.
    pub fn connect(&mut self, from: Dart, to: Dart, strand: Strand) {
        self.vertices[from.v].links[from.s] = Link { to, strand, out: true };
        self.vertices[to.v].links[to.s] = Link { to: from, strand, out: false };
    }

    /// Tail and head joined by a single main edge.
    pub fn trivial() -> Diagram {
        let mut d = Diagram::new();
        let t = d.add_vertex(Kind::End(End::Tail), 1);
        let h = d.add_vertex(Kind::End(End::Head), 1);
        d.connect(Dart::new(t, 0), Dart::new(h, 0), Strand::Main);
        d
    }

    /// The trivial diagram with a shortcut that meets nothing.
    pub fn trivial_shortcut() -> Diagram {
        let mut d = Diagram::new();
        let t = d.add_vertex(Kind::End(End::Tail), 2);
        let h = d.add_vertex(Kind::End(End::Head), 2);
        d.connect(Dart::new(t, 0), Dart::new(h, 0), Strand::Main);
        d.connect(Dart::new(t, 1), Dart::new(h, 1), Strand::Shortcut(0));
        d
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].links.len()
    }

    pub fn kind(&self, v: usize) -> Kind {
        self.vertices[v].kind
    }

    pub fn link(&self, d: Dart) -> &Link {
        &self.vertices[d.v].links[d.s]
    }

    pub fn link_mut(&mut self, d: Dart) -> &mut Link {
        &mut self.vertices[d.v].links[d.s]
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.link(d).to
    }

    pub fn strand(&self, d: Dart) -> Strand {
        self.link(d).strand
    }

    /// The slot through which a strand entering at `d` leaves the vertex;
    /// `None` at endpoints.
    pub fn through(&self, d: Dart) -> Option<Dart> {
        match self.kind(d.v) {
            Kind::Crossing { .. } | Kind::Flat => Some(Dart::new(d.v, (d.s + 2) % 4)),
            Kind::Joint => Some(Dart::new(d.v, 1 - d.s)),
            Kind::End(_) => None,
        }
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.vertices.iter().enumerate().flat_map(|(v, x)| (0..x.links.len()).map(move |s| Dart::new(v, s)))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| v.links.len()).sum::<usize>() / 2
    }

    pub fn endpoint(&self, which: End) -> Option<usize> {
        self.vertices.iter().position(|v| v.kind == Kind::End(which))
    }

    pub fn tail(&self) -> Option<usize> {
        self.endpoint(End::Tail)
    }

    pub fn head(&self) -> Option<usize> {
        self.endpoint(End::Head)
    }

    pub fn is_closed(&self) -> bool {
        !self.vertices.iter().any(|v| matches!(v.kind, Kind::End(_)))
    }

    /// Slot of endpoint `v` carrying `strand`.
    pub fn endpoint_slot(&self, v: usize, strand: Strand) -> Option<usize> {
        self.vertices[v].links.iter().position(|l| l.strand == strand)
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| matches!(self.kind(v), Kind::Crossing { .. })).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v.kind, Kind::Crossing { .. })).count()
    }

    pub fn flats(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.kind(v) == Kind::Flat).collect()
    }

    pub fn flat_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == Kind::Flat).count()
    }

    /// Number of shortcut strands (one more than the largest index used).
    pub fn shortcut_count(&self) -> usize {
        self.darts()
            .filter_map(|d| match self.strand(d) {
                Strand::Shortcut(k) => Some(k + 1),
                Strand::Main => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_shortcut(&self) -> bool {
        self.shortcut_count() > 0
    }

    /// Follows a strand leaving through `start` until it reaches an
    /// endpoint or returns to `start`. Returns the passages and the final
    /// arrival dart. Stops with `None` when the walk runs longer than the
    /// number of edges (a malformed map).
    pub fn walk_from(&self, start: Dart) -> Option<(Vec<Passage>, Dart)> {
        let mut out = Vec::new();
        let mut d = start;
        let limit = self.edge_count() + 1;
        loop {
            let arr = self.partner(d);
            match self.through(arr) {
                None => return Some((out, arr)),
                Some(next) => {
                    out.push(Passage { v: arr.v, enter: arr.s, exit: next.s });
                    if next == start {
                        return Some((out, arr));
                    }
                    d = next;
                }
            }
            if out.len() > limit {
                return None;
            }
        }
    }

    /// Passages of the main strand from tail to head.
    pub fn try_main_walk(&self) -> Option<Vec<Passage>> {
        let t = self.tail()?;
        let s = self.endpoint_slot(t, Strand::Main)?;
        let (walk, end) = self.walk_from(Dart::new(t, s))?;
        (self.kind(end.v) == Kind::End(End::Head)).then_some(walk)
    }

    /// Passages of the main strand; panics on a map without a proper main
    /// strand (callers validate first).
    pub fn main_walk(&self) -> Vec<Passage> {
        self.try_main_walk().expect("diagram has no tail-to-head main strand")
    }

    /// Passages of shortcut `k` from tail to head.
    pub fn try_shortcut_walk(&self, k: usize) -> Option<Vec<Passage>> {
        let t = self.tail()?;
        let s = self.endpoint_slot(t, Strand::Shortcut(k))?;
        let (walk, end) = self.walk_from(Dart::new(t, s))?;
        (self.kind(end.v) == Kind::End(End::Head)).then_some(walk)
    }

    /// For every vertex, the positions (indices into [`Diagram::main_walk`])
    /// at which the main strand passes through it.
    pub fn main_positions(&self, walk: &[Passage]) -> Vec<SmallVec<[usize; 2]>> {
        let mut pos = vec![SmallVec::new(); self.len()];
        for (i, p) in walk.iter().enumerate() {
            pos[p.v].push(i);
        }
        pos
    }

    /// Sets every `out` flag from the geometry: the main strand runs from
    /// the tail to the head, every shortcut likewise. Closed maps are
    /// oriented along the walk that leaves vertex 0 through its first
    /// outgoing slot, continuing through every other component in order.
    pub fn reorient(&mut self) {
        let mut visited: Vec<SmallVec<[bool; 4]>> =
            self.vertices.iter().map(|v| SmallVec::from_elem(false, v.links.len())).collect();
        if let Some(t) = self.tail() {
            for s in 0..self.degree(t) {
                self.orient_strand(Dart::new(t, s), &mut visited);
            }
        }
        // Remaining components (closed maps, stray loops) keep the
        // direction of their first unvisited slot.
        for v in 0..self.len() {
            for s in 0..self.degree(v) {
                if !visited[v][s] {
                    let d = Dart::new(v, s);
                    let start = if self.link(d).out { d } else { self.partner(d) };
                    self.orient_strand(start, &mut visited);
                }
            }
        }
    }

    fn orient_strand(&mut self, start: Dart, visited: &mut [SmallVec<[bool; 4]>]) {
        let mut cur = start;
        while !visited[cur.v][cur.s] {
            let arr = self.partner(cur);
            visited[cur.v][cur.s] = true;
            visited[arr.v][arr.s] = true;
            self.link_mut(cur).out = true;
            self.link_mut(arr).out = false;
            match self.through(arr) {
                Some(next) => cur = next,
                None => break,
            }
        }
    }

    /// Crossing sign `±1`.
    pub fn crossing_sign(&self, v: usize) -> Result<i32> {
        let Kind::Crossing { over } = self.kind(v) else {
            return Err(Error::UnknownCrossing(v));
        };
        let links = &self.vertices[v].links;
        let over_out = if links[over].out { over } else { over + 2 };
        let under_out = if links[over + 1].out { over + 1 } else { (over + 3) % 4 };
        Ok(tau(over_out, under_out))
    }

    /// Sign of a flat vertex: `+1` when the main strand crosses its
    /// shortcut from right to left.
    pub fn flat_sign(&self, v: usize) -> i32 {
        debug_assert_eq!(self.kind(v), Kind::Flat);
        let links = &self.vertices[v].links;
        let main_out = (0..4).find(|&s| links[s].strand.is_main() && links[s].out).unwrap_or(0);
        let sc_out = (0..4).find(|&s| !links[s].strand.is_main() && links[s].out).unwrap_or(1);
        tau(sc_out, main_out)
    }

    /// Shortcut index of a flat vertex.
    pub fn flat_shortcut(&self, v: usize) -> usize {
        self.vertices[v]
            .links
            .iter()
            .find_map(|l| match l.strand {
                Strand::Shortcut(k) => Some(k),
                Strand::Main => None,
            })
            .unwrap_or(0)
    }

    pub fn writhe(&self) -> i32 {
        self.crossings().into_iter().map(|c| self.crossing_sign(c).unwrap()).sum()
    }

    /// Sign sequence of shortcut `k` read along the main strand.
    pub fn seq_of(&self, k: usize) -> SignSequence {
        let walk = self.main_walk();
        SignSequence::new(
            walk.iter()
                .filter(|p| self.kind(p.v) == Kind::Flat && self.flat_shortcut(p.v) == k)
                .map(|p| Sign::from_i32(self.flat_sign(p.v)))
                .collect(),
        )
    }

    /// Sign sequence of the (first) shortcut.
    pub fn seq(&self) -> SignSequence {
        self.seq_of(0)
    }

    /// `h+ - h-` of the first shortcut.
    pub fn algebraic_height(&self) -> i32 {
        self.seq().sum()
    }

    /// Face successor: the next dart along the face to the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        let arr = self.partner(d);
        let deg = self.degree(arr.v);
        Dart::new(arr.v, (arr.s + deg - 1) % deg)
    }

    /// Faces as cycles of darts; each face lies to the left of its darts.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen: Vec<SmallVec<[bool; 4]>> =
            self.vertices.iter().map(|v| SmallVec::from_elem(false, v.links.len())).collect();
        let mut faces = Vec::new();
        for start in self.darts() {
            if seen[start.v][start.s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d.v][d.s] {
                seen[d.v][d.s] = true;
                face.push(d);
                d = self.face_next(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Face index of every dart, along with the face list.
    pub fn face_index(&self) -> (Vec<Vec<Dart>>, Vec<SmallVec<[usize; 4]>>) {
        let faces = self.faces();
        let mut idx: Vec<SmallVec<[usize; 4]>> =
            self.vertices.iter().map(|v| SmallVec::from_elem(0, v.links.len())).collect();
        for (f, face) in faces.iter().enumerate() {
            for d in face {
                idx[d.v][d.s] = f;
            }
        }
        (faces, idx)
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.len() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for l in &self.vertices[v].links {
                if !seen[l.to.v] {
                    seen[l.to.v] = true;
                    stack.push(l.to.v);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Connected and of genus zero.
    pub fn is_spherical(&self) -> bool {
        self.is_connected() && self.euler_characteristic() == 2
    }

    /// Drops the vertices flagged in `dead` and renumbers the rest in order.
    /// Links into dead vertices must already have been rewired.
    pub fn remove_vertices(&mut self, dead: &[bool]) {
        let mut map = vec![usize::MAX; self.len()];
        let mut next = 0;
        for v in 0..self.len() {
            if !dead[v] {
                map[v] = next;
                next += 1;
            }
        }
        let old = std::mem::take(&mut self.vertices);
        for (v, mut vert) in old.into_iter().enumerate() {
            if dead[v] {
                continue;
            }
            for l in vert.links.iter_mut() {
                debug_assert!(!dead[l.to.v], "link into removed vertex");
                l.to.v = map[l.to.v];
            }
            self.vertices.push(vert);
        }
    }

    /// Renames vertex `v` to `perm[v]` and rotates its slots so that old
    /// slot `s` becomes `(s + rot[v]) % degree`.
    pub fn relabel(&self, perm: &[usize], rot: &[usize]) -> Diagram {
        let mut vertices: Vec<Option<Vertex>> = vec![None; self.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            let deg = vert.links.len();
            let mut links: SmallVec<[Link; 4]> = vert.links.clone();
            for s in 0..deg {
                let l = vert.links[s];
                let tdeg = self.degree(l.to.v);
                links[(s + rot[v]) % deg] = Link { to: Dart::new(perm[l.to.v], (l.to.s + rot[l.to.v]) % tdeg), ..l };
            }
            let kind = match vert.kind {
                Kind::Crossing { over } => Kind::Crossing { over: (over + rot[v]) % 2 },
                k => k,
            };
            vertices[perm[v]] = Some(Vertex { kind, links });
        }
        Diagram { vertices: vertices.into_iter().map(|v| v.expect("perm is a permutation")).collect() }
    }

    /// Keeps shortcut `k` (renumbered to 0) and dissolves every flat vertex
    /// of the other shortcuts, deleting those shortcut strands.
    pub fn keep_shortcut(&self, k: usize) -> Diagram {
        let mut d = self.clone();
        let mut dead = vec![false; d.len()];
        for v in 0..d.len() {
            if d.kind(v) == Kind::Flat && d.flat_shortcut(v) != k {
                let main: SmallVec<[usize; 2]> = (0..4).filter(|&s| d.vertices[v].links[s].strand.is_main()).collect();
                d.bypass(v, main[0], main[1]);
                dead[v] = true;
            }
        }
        // Endpoint slots of dropped shortcuts.
        for v in 0..d.len() {
            if let Kind::End(_) = d.kind(v) {
                let keep: Vec<usize> = (0..d.degree(v))
                    .filter(|&s| {
                        matches!(d.vertices[v].links[s].strand, Strand::Main)
                            || d.vertices[v].links[s].strand == Strand::Shortcut(k)
                    })
                    .collect();
                d.retain_slots(v, &keep);
            }
        }
        d.remove_vertices(&dead);
        for vert in d.vertices.iter_mut() {
            for l in vert.links.iter_mut() {
                if l.strand == Strand::Shortcut(k) {
                    l.strand = Strand::Shortcut(0);
                }
            }
        }
        d
    }

    /// Drops every shortcut: flats dissolve into main pass-throughs and the
    /// endpoints keep only their main slot.
    pub fn without_shortcut(&self) -> Diagram {
        let mut d = self.keep_shortcut(usize::MAX);
        for v in 0..d.len() {
            if let Kind::End(_) = d.kind(v) {
                let keep: Vec<usize> = (0..d.degree(v)).filter(|&s| d.vertices[v].links[s].strand.is_main()).collect();
                d.retain_slots(v, &keep);
            }
        }
        d
    }

    /// Joins the far ends of slots `a` and `b` of vertex `v` directly,
    /// leaving `v`'s other slots untouched. The new edge keeps the strand
    /// and direction of the path through `v`.
    pub fn bypass(&mut self, v: usize, a: usize, b: usize) {
        let la = *self.link(Dart::new(v, a));
        let lb = *self.link(Dart::new(v, b));
        if la.to == Dart::new(v, b) {
            // A loop at v through a and b: nothing outside to reconnect.
            return;
        }
        let (from, to) = if la.out { (lb.to, la.to) } else { (la.to, lb.to) };
        let strand = la.strand;
        self.connect(from, to, strand);
    }

    /// Keeps only the listed slots of vertex `v` (in the given order),
    /// assuming the dropped slots are no longer referenced from outside.
    pub fn retain_slots(&mut self, v: usize, keep: &[usize]) {
        let old = self.vertices[v].links.clone();
        let mut new_index = vec![usize::MAX; old.len()];
        for (i, &s) in keep.iter().enumerate() {
            new_index[s] = i;
        }
        let mut links: SmallVec<[Link; 4]> = SmallVec::new();
        for &s in keep {
            let mut l = old[s];
            if l.to.v == v {
                l.to.s = new_index[l.to.s];
            }
            links.push(l);
        }
        self.vertices[v].links = links;
        for (i, &s) in keep.iter().enumerate() {
            let l = self.vertices[v].links[i];
            if l.to.v != v {
                debug_assert_eq!(self.link(l.to).to, Dart::new(v, s));
                self.link_mut(l.to).to = Dart::new(v, i);
            }
        }
    }
}
