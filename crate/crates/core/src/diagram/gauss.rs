//! Building diagrams from signed Gauss codes and threading shortcuts
//! through the faces of a diagram.
//!
//! A signed Gauss code lists the crossings met along the main strand, e.g.
//! `O1+ U2- U1+ O2-`: over/under passage, crossing label, crossing sign.
//! The signs fix the rotation at each crossing, so the code determines a
//! rotation system; codes whose map is not spherical are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Dart, Diagram, End, Kind, Strand};
use crate::error::{Error, Result};
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Passing {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussToken {
    pub passing: Passing,
    pub label: usize,
    pub sign: Sign,
}

impl fmt::Display for GaussToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.passing {
            Passing::Over => 'O',
            Passing::Under => 'U',
        };
        write!(f, "{p}{}{}", self.label, self.sign)
    }
}

impl FromStr for GaussToken {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Gauss(format!("bad token '{s}'"));
        let passing = match s.chars().next() {
            Some('O') => Passing::Over,
            Some('U') => Passing::Under,
            _ => return Err(bad()),
        };
        let sign = match s.chars().last() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        let label = s.get(1..s.len() - 1).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        Ok(GaussToken { passing, label, sign })
    }
}

impl Diagram {
    /// Builds the knotoid diagram of a signed Gauss code (whitespace
    /// separated tokens). Crossing vertices are numbered by label order
    /// after the tail (0) and head (1).
    pub fn from_gauss(code: &str) -> Result<Diagram> {
        let tokens = code.split_whitespace().map(str::parse).collect::<Result<Vec<GaussToken>>>()?;
        Diagram::from_gauss_tokens(&tokens)
    }

    pub fn from_gauss_tokens(tokens: &[GaussToken]) -> Result<Diagram> {
        let mut occ: BTreeMap<usize, Vec<&GaussToken>> = BTreeMap::new();
        for t in tokens {
            occ.entry(t.label).or_default().push(t);
        }
        for (label, ts) in &occ {
            if ts.len() != 2 {
                return Err(Error::Gauss(format!("label {label} occurs {} times", ts.len())));
            }
            if ts[0].passing == ts[1].passing {
                return Err(Error::Gauss(format!("label {label} needs one over and one under passage")));
            }
            if ts[0].sign != ts[1].sign {
                return Err(Error::Gauss(format!("label {label} has inconsistent signs")));
            }
        }
        let mut d = Diagram::new();
        let tail = d.add_vertex(Kind::End(End::Tail), 1);
        let head = d.add_vertex(Kind::End(End::Head), 1);
        let mut vertex_of = BTreeMap::new();
        for (&label, ts) in &occ {
            let over = if ts[0].passing == Passing::Over { 0 } else { 1 };
            vertex_of.insert(label, d.add_vertex(Kind::Crossing { over }, 4));
        }
        let mut seen = BTreeMap::new();
        let mut prev = Dart::new(tail, 0);
        for t in tokens {
            let c = vertex_of[&t.label];
            let (enter, exit) = if seen.insert(t.label, ()).is_none() {
                (0, 2)
            } else {
                let first_over = occ[&t.label][0].passing == Passing::Over;
                let exit = if first_over == (t.sign == Sign::Plus) { 3 } else { 1 };
                ((exit + 2) % 4, exit)
            };
            d.connect(prev, Dart::new(c, enter), Strand::Main);
            prev = Dart::new(c, exit);
        }
        d.connect(prev, Dart::new(head, 0), Strand::Main);
        if !d.is_spherical() {
            return Err(Error::Gauss("code does not describe a spherical diagram".into()));
        }
        Ok(d)
    }

    /// Signed Gauss code of a diagram without shortcuts, labels numbered by
    /// first appearance.
    pub fn gauss_code(&self) -> Vec<GaussToken> {
        let walk = self.main_walk();
        let mut labels = BTreeMap::new();
        let mut out = Vec::new();
        for p in &walk {
            if let Kind::Crossing { over } = self.kind(p.v) {
                let next = labels.len() + 1;
                let label = *labels.entry(p.v).or_insert(next);
                let passing = if p.enter % 2 == over { Passing::Over } else { Passing::Under };
                let sign = Sign::from_i32(self.crossing_sign(p.v).unwrap());
                out.push(GaussToken { passing, label, sign });
            }
        }
        out
    }

    /// Every spherical knotoid diagram with `n` crossings, as Gauss codes
    /// with labels in order of first appearance. Mirror images and
    /// crossing changes are included; isomorphic duplicates are not removed.
    pub fn all_gauss_codes(n: usize) -> Vec<Vec<GaussToken>> {
        let mut words = Vec::new();
        label_words(&mut vec![0; 2 * n], 0, 0, n, &mut words);
        let build = |w: &[usize], over_first: u32, sign_bits: u32| -> Vec<GaussToken> {
            let mut seen = vec![false; n + 1];
            w.iter()
                .map(|&l| {
                    let first = !std::mem::replace(&mut seen[l], true);
                    let of = (over_first >> (l - 1)) & 1 == 1;
                    let sign = if (sign_bits >> (l - 1)) & 1 == 1 { Sign::Plus } else { Sign::Minus };
                    let passing = if first == of { Passing::Over } else { Passing::Under };
                    GaussToken { passing, label: l, sign }
                })
                .collect()
        };
        let mut out = Vec::new();
        for w in words {
            // The embedding only depends on whether "over first" agrees with
            // the sign at each crossing, so planarity is checked once per
            // rotation pattern.
            for rotation in 0..(1u32 << n) {
                if Diagram::from_gauss_tokens(&build(&w, 0, rotation)).is_err() {
                    continue;
                }
                for over_first in 0..(1u32 << n) {
                    let signs = rotation ^ over_first;
                    out.push(build(&w, over_first, signs));
                }
            }
        }
        out
    }

    /// Adds a shortcut to a diagram without one. `crossed` lists, in order
    /// from the tail, one dart per main edge the shortcut crosses; the
    /// shortcut runs through the face to the left of each dart before
    /// crossing into the face on its right.
    pub fn with_shortcut(&self, crossed: &[Dart]) -> Result<Diagram> {
        let bad = |m: &str| Error::Invalid(format!("shortcut path: {m}"));
        if self.has_shortcut() {
            return Err(bad("diagram already has a shortcut"));
        }
        let (tail, head) = match (self.tail(), self.head()) {
            (Some(t), Some(h)) if self.degree(t) == 1 && self.degree(h) == 1 => (t, h),
            _ => return Err(bad("endpoints must be univalent")),
        };
        let (_, face) = self.face_index();
        let face_of = |d: Dart| face[d.v][d.s];
        let mut here = face_of(Dart::new(tail, 0));
        for (i, &d) in crossed.iter().enumerate() {
            if face_of(d) != here {
                return Err(bad(&format!("step {i} leaves from the wrong face")));
            }
            let p = self.partner(d);
            if crossed[..i].iter().any(|&e| e == d || e == p || self.partner(e) == d) {
                return Err(bad("an edge is crossed twice"));
            }
            here = face_of(p);
        }
        if here != face_of(Dart::new(head, 0)) {
            return Err(bad("path does not end at the head"));
        }

        let mut out = self.clone();
        let mut flats = Vec::with_capacity(crossed.len());
        for &d in crossed {
            let p = out.partner(d);
            let f = out.add_vertex(Kind::Flat, 4);
            if out.link(d).out {
                out.connect(d, Dart::new(f, 0), Strand::Main);
                out.connect(Dart::new(f, 2), p, Strand::Main);
            } else {
                out.connect(p, Dart::new(f, 2), Strand::Main);
                out.connect(Dart::new(f, 0), d, Strand::Main);
            }
            flats.push(f);
        }
        for e in [tail, head] {
            let l = out.vertices[e].links[0];
            out.vertices[e].links.push(l);
        }
        let mut prev = Dart::new(tail, 1);
        for &f in &flats {
            // Slot 3 lies to the left of the crossed dart.
            out.connect(prev, Dart::new(f, 3), Strand::Shortcut(0));
            prev = Dart::new(f, 1);
        }
        out.connect(prev, Dart::new(head, 1), Strand::Shortcut(0));
        debug_assert!(out.is_spherical());
        Ok(out)
    }

    /// All face paths from the tail to the head that visit no face twice and
    /// cross at most `max_len` edges, shortest first; at most `limit` paths.
    pub fn shortcut_paths(&self, max_len: usize, limit: usize) -> Vec<Vec<Dart>> {
        let (Some(tail), Some(head)) = (self.tail(), self.head()) else {
            return Vec::new();
        };
        let (faces, face) = self.face_index();
        let start = face[tail][0];
        let goal = face[head][0];
        // Dual distances to the goal face, used to prune the search.
        let mut dist = vec![usize::MAX; faces.len()];
        dist[goal] = 0;
        let mut queue = std::collections::VecDeque::from([goal]);
        while let Some(f) = queue.pop_front() {
            for &d in &faces[f] {
                if self.strand(d).is_main() {
                    let p = self.partner(d);
                    let g = face[p.v][p.s];
                    if dist[g] == usize::MAX {
                        dist[g] = dist[f] + 1;
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut found: Vec<Vec<Dart>> = Vec::new();
        if dist[start] == usize::MAX {
            return found;
        }
        for len in dist[start]..=max_len {
            let mut path = Vec::new();
            let mut on_path = vec![false; faces.len()];
            on_path[start] = true;
            let mut search = FaceSearch { faces: &faces, face: &face, dist: &dist, goal, limit };
            search.run(self, start, len, &mut path, &mut on_path, &mut found);
            if found.len() >= limit {
                break;
            }
        }
        found
    }
}

struct FaceSearch<'a> {
    faces: &'a [Vec<Dart>],
    face: &'a [smallvec::SmallVec<[usize; 4]>],
    dist: &'a [usize],
    goal: usize,
    limit: usize,
}

impl FaceSearch<'_> {
    fn run(
        &mut self,
        d: &Diagram,
        here: usize,
        remaining: usize,
        path: &mut Vec<Dart>,
        on_path: &mut [bool],
        found: &mut Vec<Vec<Dart>>,
    ) {
        if found.len() >= self.limit || self.dist[here] > remaining {
            return;
        }
        if remaining == 0 {
            if here == self.goal {
                found.push(path.clone());
            }
            return;
        }
        for &x in &self.faces[here] {
            if !d.strand(x).is_main() {
                continue;
            }
            let p = d.partner(x);
            let next = self.face[p.v][p.s];
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            path.push(x);
            self.run(d, next, remaining - 1, path, on_path, found);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// Words in which each of `1..=n` occurs twice and labels first occur in
/// increasing order.
fn label_words(word: &mut Vec<usize>, pos: usize, used: usize, n: usize, out: &mut Vec<Vec<usize>>) {
    if pos == word.len() {
        out.push(word.clone());
        return;
    }
    let count = |w: &[usize], l: usize| w[..pos].iter().filter(|&&x| x == l).count();
    for l in 1..=n.min(used + 1) {
        if count(word, l) < 2 {
            word[pos] = l;
            label_words(word, pos + 1, used.max(l), n, out);
        }
    }
}
