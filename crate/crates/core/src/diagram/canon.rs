//! Canonical labeling and isomorphism codes.
//!
//! A connected rotation system with a distinguished root dart has exactly
//! one orientation-preserving labeling that numbers vertices in BFS order
//! from the root and rotates every vertex so that the slot it was reached
//! through becomes slot 0. For open diagrams the root is the tail's main
//! slot, so the labeling is computed in linear time. Closed diagrams try
//! every dart and keep the smallest code.

use std::collections::VecDeque;

use super::{Dart, Diagram, End, Kind, Link, Strand, Vertex};

/// Complete isomorphism invariant of a diagram (orientation-preserving
/// isomorphisms that respect strands, directions and crossing data).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode(pub Box<[u32]>);

impl Diagram {
    /// BFS labeling from `root`: returns `(perm, rot)` for
    /// [`Diagram::relabel`]. Vertices unreachable from the root keep their
    /// relative order after the reachable ones.
    pub fn labeling_from(&self, root: Dart) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut perm = vec![usize::MAX; n];
        let mut rot = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        let visit = |v: usize,
                     slot: usize,
                     perm: &mut Vec<usize>,
                     rot: &mut Vec<usize>,
                     order: &mut Vec<usize>,
                     queue: &mut VecDeque<usize>| {
            if perm[v] == usize::MAX {
                perm[v] = order.len();
                let deg = self.degree(v);
                rot[v] = (deg - slot) % deg;
                order.push(v);
                queue.push_back(v);
            }
        };
        visit(root.v, root.s, &mut perm, &mut rot, &mut order, &mut queue);
        while let Some(v) = queue.pop_front() {
            let deg = self.degree(v);
            for i in 0..deg {
                let s = (i + deg - rot[v]) % deg;
                let to = self.partner(Dart::new(v, s));
                visit(to.v, to.s, &mut perm, &mut rot, &mut order, &mut queue);
            }
        }
        for (v, p) in perm.iter_mut().enumerate() {
            if *p == usize::MAX {
                *p = order.len();
                order.push(v);
            }
        }
        (perm, rot)
    }

    fn root_darts(&self) -> Vec<Dart> {
        match self.tail() {
            Some(t) => {
                let s = self.endpoint_slot(t, Strand::Main).unwrap_or(0);
                vec![Dart::new(t, s)]
            }
            None => self.darts().collect(),
        }
    }

    fn code_for(&self, perm: &[usize], rot: &[usize]) -> Vec<u32> {
        let mut inv = vec![0; self.len()];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut code = Vec::with_capacity(self.len() * 18);
        for &v in &inv {
            let vert = &self.vertices[v];
            let deg = vert.links.len();
            let (kind, extra) = match vert.kind {
                Kind::Crossing { over } => (0, ((over + rot[v]) % 2) as u32),
                Kind::Flat => (1, 0),
                Kind::End(End::Tail) => (2, 0),
                Kind::End(End::Head) => (3, 0),
                Kind::Joint => (4, 0),
            };
            code.extend([kind, extra, deg as u32]);
            for i in 0..deg {
                let s = (i + deg - rot[v]) % deg;
                let l = vert.links[s];
                let tdeg = self.degree(l.to.v);
                let strand = match l.strand {
                    Strand::Main => 0,
                    Strand::Shortcut(k) => k as u32 + 1,
                };
                code.extend([perm[l.to.v] as u32, ((l.to.s + rot[l.to.v]) % tdeg) as u32, strand * 2 + l.out as u32]);
            }
        }
        code
    }

    /// Canonical labeling `(perm, rot)`.
    pub fn canonical_labeling(&self) -> (Vec<usize>, Vec<usize>) {
        let mut best: Option<(Vec<u32>, Vec<usize>, Vec<usize>)> = None;
        for root in self.root_darts() {
            let (perm, rot) = self.labeling_from(root);
            let code = self.code_for(&perm, &rot);
            if best.as_ref().is_none_or(|(b, _, _)| code < *b) {
                best = Some((code, perm, rot));
            }
        }
        match best {
            Some((_, perm, rot)) => (perm, rot),
            None => (Vec::new(), Vec::new()),
        }
    }

    pub fn canon_code(&self) -> CanonCode {
        let (perm, rot) = self.canonical_labeling();
        CanonCode(self.code_for(&perm, &rot).into_boxed_slice())
    }

    /// The diagram relabeled canonically.
    pub fn canonical(&self) -> Diagram {
        let (perm, rot) = self.canonical_labeling();
        self.relabel(&perm, &rot)
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.len() == other.len() && self.canon_code() == other.canon_code()
    }

    /// Byte encoding of the diagram as labeled; equal for isomorphic
    /// diagrams once both are [`canonical`](Diagram::canonical). Needs
    /// fewer than 256 vertices and slots per vertex.
    pub fn to_compact(&self) -> Box<[u8]> {
        let mut out = Vec::with_capacity(self.len() * 18 + 1);
        out.push(self.len() as u8);
        for vert in &self.vertices {
            let (kind, extra) = match vert.kind {
                Kind::Crossing { over } => (0, over as u8),
                Kind::Flat => (1, 0),
                Kind::End(End::Tail) => (2, 0),
                Kind::End(End::Head) => (3, 0),
                Kind::Joint => (4, 0),
            };
            out.extend([kind, extra, vert.links.len() as u8]);
            for l in &vert.links {
                let strand = match l.strand {
                    Strand::Main => 0,
                    Strand::Shortcut(k) => k as u8 + 1,
                };
                out.extend([l.to.v as u8, l.to.s as u8, strand * 2 + l.out as u8]);
            }
        }
        out.into_boxed_slice()
    }

    pub fn from_compact(bytes: &[u8]) -> Diagram {
        let mut d = Diagram::new();
        let mut it = bytes.iter().map(|&b| b as usize);
        let n = it.next().unwrap_or(0);
        for _ in 0..n {
            let (kind, extra, deg) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
            let kind = match kind {
                0 => Kind::Crossing { over: extra },
                1 => Kind::Flat,
                2 => Kind::End(End::Tail),
                3 => Kind::End(End::Head),
                _ => Kind::Joint,
            };
            let links = (0..deg)
                .map(|_| {
                    let (v, s, so) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    let strand = if so / 2 == 0 { Strand::Main } else { Strand::Shortcut(so / 2 - 1) };
                    Link { to: Dart::new(v, s), strand, out: so % 2 == 1 }
                })
                .collect();
            d.vertices.push(Vertex { kind, links });
        }
        d
    }
}
