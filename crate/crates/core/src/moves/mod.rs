//! Reidemeister and shortcut moves on rotation systems, bounded search of
//! shortcut-diagram space, and height certification.
//!
//! Every site is described by darts of the current map. Faces lie to the
//! left of their darts, so a move that works inside a face (R2, R3 and
//! their shortcut analogues) is given by darts of that face. Reidemeister
//! moves only use main edges and crossings; a face whose boundary is a
//! bigon or triangle cannot contain an endpoint or a piece of the shortcut,
//! so the moves never pass an endpoint or the shortcut.

mod explore;

pub use explore::{
    certify_heights, explore, explore_with, Budget, CertifyResult, CertifyStatus, ExploreResult, HeightBound,
    DEFAULT_MAX_STATES,
};

use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::diagram::{Dart, Diagram, End, Kind, Strand};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Pos,
    R1Neg,
    R1Undo,
    R2,
    R2Undo,
    R3,
    S1,
    S1Undo,
    S2,
    S2Undo,
    S3,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Pos => "R1+",
            MoveKind::R1Neg => "R1-",
            MoveKind::R1Undo => "R1undo",
            MoveKind::R2 => "R2",
            MoveKind::R2Undo => "R2undo",
            MoveKind::R3 => "R3",
            MoveKind::S1 => "S1",
            MoveKind::S1Undo => "S1undo",
            MoveKind::S2 => "S2",
            MoveKind::S2Undo => "S2undo",
            MoveKind::S3 => "S3",
        }
    }

    pub fn is_reidemeister(self) -> bool {
        matches!(
            self,
            MoveKind::R1Pos | MoveKind::R1Neg | MoveKind::R1Undo | MoveKind::R2 | MoveKind::R2Undo | MoveKind::R3
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where and how a move applies.
///
/// * R1±: `darts = [x]`, the source dart of a main edge; `variant` bit 0 is
///   the over passage (0 = first), bit 1 the side of the loop.
/// * R1undo: `[c.s]`, the source slot of the loop edge at crossing `c`.
/// * R2 / S2: two darts of one face; for R2 `variant` 0 puts the first
///   dart's strand over.
/// * R2undo / S2undo / R3 / S3: the first dart of a bigon / triangle face.
/// * S1: `[e.s]`, the main slot of an endpoint; `variant` picks the sign.
/// * S1undo: `[f.s]`, the main slot of a flat leading to an endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub darts: SmallVec<[Dart; 2]>,
    pub variant: u8,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for d in &self.darts {
            write!(f, " {}:{}", d.v, d.s)?;
        }
        write!(f, " v{}", self.variant)
    }
}

fn site(kind: MoveKind, darts: SmallVec<[Dart; 2]>, variant: u8) -> MoveSite {
    MoveSite { kind, darts, variant }
}

fn is_crossing(d: &Diagram, v: usize) -> bool {
    matches!(d.kind(v), Kind::Crossing { .. })
}

/// Edge identity: the smaller of its two darts.
fn edge_key(d: &Diagram, x: Dart) -> Dart {
    x.min(d.partner(x))
}

/// Strand of the side of a face starting at dart `x` and the vertices it
/// joins.
fn main_side(d: &Diagram, x: Dart) -> bool {
    d.strand(x).is_main()
}

/// Sign of the kink made by an R1 move with the given variant.
fn r1_sign(variant: u8) -> i32 {
    let over_first = variant & 1 == 0;
    let b_is_one = variant & 2 == 0;
    let s = if b_is_one { 1 } else { -1 };
    if over_first {
        s
    } else {
        -s
    }
}

/// Every applicable move, in a deterministic order.
pub fn enumerate_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let shortcut = d.has_shortcut();

    // R1 creations on main edges.
    for x in d.darts() {
        if d.link(x).out && d.strand(x).is_main() {
            for variant in 0..4u8 {
                let kind = if r1_sign(variant) > 0 { MoveKind::R1Pos } else { MoveKind::R1Neg };
                out.push(site(kind, smallvec![x], variant));
            }
        }
    }
    // R1 removals.
    for c in d.crossings() {
        for s in 0..4 {
            let x = Dart::new(c, s);
            let p = d.partner(x);
            if d.link(x).out && p.v == c && (p.s + 1) % 4 == s || d.link(x).out && p.v == c && (s + 1) % 4 == p.s {
                out.push(site(MoveKind::R1Undo, smallvec![x], 0));
            }
        }
    }

    let faces = d.faces();
    for face in &faces {
        // R2 / S2 creations.
        for i in 0..face.len() {
            for j in i + 1..face.len() {
                let (p, q) = (face[i], face[j]);
                if edge_key(d, p) == edge_key(d, q) {
                    continue;
                }
                match (main_side(d, p), main_side(d, q)) {
                    (true, true) => {
                        out.push(site(MoveKind::R2, smallvec![p, q], 0));
                        out.push(site(MoveKind::R2, smallvec![p, q], 1));
                    }
                    (true, false) | (false, true) if shortcut => out.push(site(MoveKind::S2, smallvec![p, q], 0)),
                    _ => {}
                }
            }
        }
        match face.len() {
            2 => {
                if let Some(kind) = bigon_kind(d, face) {
                    out.push(site(kind, smallvec![face[0]], 0));
                }
            }
            3 => {
                if let Some(kind) = triangle_kind(d, face) {
                    out.push(site(kind, smallvec![face[0]], 0));
                }
            }
            _ => {}
        }
    }

    if shortcut {
        for e in [d.tail(), d.head()].into_iter().flatten() {
            if let Some(m) = d.endpoint_slot(e, Strand::Main) {
                for variant in 0..2 {
                    out.push(site(MoveKind::S1, smallvec![Dart::new(e, m)], variant));
                }
            }
        }
        for f in d.flats() {
            for s in 0..4 {
                let x = Dart::new(f, s);
                if s1_undo_ok(d, x) {
                    out.push(site(MoveKind::S1Undo, smallvec![x], 0));
                }
            }
        }
    }
    out
}

fn bigon_kind(d: &Diagram, face: &[Dart]) -> Option<MoveKind> {
    let (d1, d2) = (face[0], face[1]);
    let (x, y) = (d1.v, d2.v);
    if x == y {
        return None;
    }
    let m1 = d.strand(d1).is_main();
    let m2 = d.strand(d2).is_main();
    match (d.kind(x), d.kind(y)) {
        (Kind::Crossing { over: ox }, Kind::Crossing { over: oy }) if m1 && m2 => {
            // The strand along the first side must be over at both ends or
            // under at both ends.
            let far = d.partner(d1);
            let over_at_x = d1.s % 2 == ox;
            let over_at_y = far.s % 2 == oy;
            (over_at_x == over_at_y).then_some(MoveKind::R2Undo)
        }
        (Kind::Flat, Kind::Flat) if m1 != m2 => Some(MoveKind::S2Undo),
        _ => None,
    }
}

/// Vertices of a triangle face and whether its six outer slots lead away
/// from the triangle.
fn triangle_kind(d: &Diagram, face: &[Dart]) -> Option<MoveKind> {
    let vs = [face[0].v, face[1].v, face[2].v];
    if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
        return None;
    }
    if vs.iter().any(|&v| d.degree(v) != 4 || matches!(d.kind(v), Kind::End(_) | Kind::Joint)) {
        return None;
    }
    for &x in face {
        for s in [(x.s + 2) % 4, (x.s + 3) % 4] {
            if vs.contains(&d.partner(Dart::new(x.v, s)).v) {
                return None;
            }
        }
    }
    let mains = face.iter().filter(|&&x| d.strand(x).is_main()).count();
    match mains {
        3 => {
            if !vs.iter().all(|&v| is_crossing(d, v)) {
                return None;
            }
            // Side i runs from vs[i] to vs[i+1]; it is over at both ends, or
            // the triangle is cyclic and cannot be moved.
            let over_at = |x: Dart| match d.kind(x.v) {
                Kind::Crossing { over } => x.s % 2 == over,
                _ => false,
            };
            let top = (0..3).any(|i| over_at(face[i]) && over_at(d.partner(face[i])));
            top.then_some(MoveKind::R3)
        }
        2 => Some(MoveKind::S3),
        _ => None,
    }
}

/// `x` is a main slot of a flat whose main and shortcut neighbours on one
/// side are the same endpoint.
fn s1_undo_ok(d: &Diagram, x: Dart) -> bool {
    if !d.strand(x).is_main() {
        return false;
    }
    let p = d.partner(x);
    let Kind::End(_) = d.kind(p.v) else { return false };
    [(x.s + 1) % 4, (x.s + 3) % 4].iter().any(|&s| d.partner(Dart::new(x.v, s)).v == p.v)
}

/// Applies a move after checking that it is currently applicable.
pub fn apply_move(d: &Diagram, m: &MoveSite) -> Result<Diagram> {
    if !enumerate_moves(d).contains(m) {
        return Err(Error::StaleMove(m.to_string()));
    }
    Ok(apply_unchecked(d, m))
}

/// Applies a site produced by [`enumerate_moves`] on this very diagram.
pub fn apply_unchecked(d: &Diagram, m: &MoveSite) -> Diagram {
    let mut e = d.clone();
    match m.kind {
        MoveKind::R1Pos | MoveKind::R1Neg => {
            let x = m.darts[0];
            let y = e.partner(x);
            let over = (m.variant & 1) as usize;
            let b = if m.variant & 2 == 0 { 1 } else { 3 };
            let c = e.add_vertex(Kind::Crossing { over }, 4);
            e.connect(x, Dart::new(c, 0), Strand::Main);
            e.connect(Dart::new(c, 2), Dart::new(c, b), Strand::Main);
            e.connect(Dart::new(c, (b + 2) % 4), y, Strand::Main);
        }
        MoveKind::R1Undo => {
            dissolve(&mut e, &[m.darts[0].v]);
        }
        MoveKind::R2 | MoveKind::S2 => {
            let (p, q) = (m.darts[0], m.darts[1]);
            let kinds = if m.kind == MoveKind::S2 {
                [Kind::Flat, Kind::Flat]
            } else {
                let over = if m.variant == 0 { 1 } else { 0 };
                [Kind::Crossing { over }, Kind::Crossing { over }]
            };
            finger(&mut e, p, q, kinds);
        }
        MoveKind::R2Undo | MoveKind::S2Undo => {
            let x = m.darts[0];
            let y = e.partner(x).v;
            dissolve(&mut e, &[x.v, y]);
        }
        MoveKind::R3 | MoveKind::S3 => {
            triangle_flip(&mut e, m.darts[0]);
        }
        MoveKind::S1 => {
            let x = m.darts[0];
            let end = x.v;
            let sc = e.endpoint_slot(end, Strand::Shortcut(0)).expect("endpoint has a shortcut slot");
            let main_far = e.partner(x);
            let sc_far = e.partner(Dart::new(end, sc));
            let f = e.add_vertex(Kind::Flat, 4);
            let t = if m.variant == 0 { 1 } else { 3 };
            if e.kind(end) == Kind::End(End::Head) {
                e.connect(main_far, Dart::new(f, 0), Strand::Main);
                e.connect(Dart::new(f, 2), x, Strand::Main);
                e.connect(sc_far, Dart::new(f, t), Strand::Shortcut(0));
                e.connect(Dart::new(f, (t + 2) % 4), Dart::new(end, sc), Strand::Shortcut(0));
            } else {
                e.connect(x, Dart::new(f, 0), Strand::Main);
                e.connect(Dart::new(f, 2), main_far, Strand::Main);
                e.connect(Dart::new(end, sc), Dart::new(f, t), Strand::Shortcut(0));
                e.connect(Dart::new(f, (t + 2) % 4), sc_far, Strand::Shortcut(0));
            }
        }
        MoveKind::S1Undo => {
            dissolve(&mut e, &[m.darts[0].v]);
        }
    }
    e
}

/// Deletes `dead` vertices, joining every strand that ran through them
/// straight across.
fn dissolve(d: &mut Diagram, dead_list: &[usize]) {
    let mut dead = vec![false; d.len()];
    for &v in dead_list {
        dead[v] = true;
    }
    let starts: Vec<Dart> = d.darts().filter(|&x| !dead[x.v] && d.link(x).out && dead[d.partner(x).v]).collect();
    for x in starts {
        let strand = d.strand(x);
        let mut arr = d.partner(x);
        while dead[arr.v] {
            let next = d.through(arr).expect("dissolved vertices pass strands through");
            arr = d.partner(next);
        }
        d.connect(x, arr, strand);
    }
    d.remove_vertices(&dead);
}

/// Pushes the side starting at face dart `p` across the side starting at
/// face dart `q` of the same face, creating two vertices of the given
/// kinds; the `p` strand uses slots 1 and 3 of both.
fn finger(d: &mut Diagram, p: Dart, q: Dart, kinds: [Kind; 2]) {
    let (a, b) = (p, d.partner(p));
    let (c, dd) = (q, d.partner(q));
    let sp = d.strand(p);
    let sq = d.strand(q);
    let x = d.add_vertex(kinds[0], 4);
    let y = d.add_vertex(kinds[1], 4);
    d.connect(a, Dart::new(x, 3), sp);
    d.connect(Dart::new(x, 1), Dart::new(y, 1), sp);
    d.connect(Dart::new(y, 3), b, sp);
    d.connect(c, Dart::new(y, 0), sq);
    d.connect(Dart::new(y, 2), Dart::new(x, 0), sq);
    d.connect(Dart::new(x, 2), dd, sq);
    d.reorient();
}

/// Moves the strand opposite each corner of a triangle face across that
/// corner. Side `i` of the face joins `v_i` to `v_{i+1}`; afterwards the
/// crossing of sides `i` and `i-1` sits next to the far ends of those sides.
fn triangle_flip(d: &mut Diagram, first: Dart) {
    let f0 = first;
    let f1 = d.face_next(f0);
    let f2 = d.face_next(f1);
    let face = [f0, f1, f2];
    // Outer ends: E_i continues side i beyond v_i, F_i continues side i-1
    // beyond v_i.
    let e_end: Vec<Dart> = face.iter().map(|x| d.partner(Dart::new(x.v, (x.s + 2) % 4))).collect();
    let f_end: Vec<Dart> = face.iter().map(|x| d.partner(Dart::new(x.v, (x.s + 3) % 4))).collect();
    let strand: Vec<Strand> = face.iter().map(|&x| d.strand(x)).collect();
    let kinds: Vec<Kind> = (0..3)
        .map(|i| {
            let prev = (i + 2) % 3;
            if !strand[i].is_main() || !strand[prev].is_main() {
                return Kind::Flat;
            }
            // Over at v_i: side i uses slots of the parity of face[i].s.
            let Kind::Crossing { over } = d.kind(face[i].v) else { unreachable!() };
            let side_i_over = face[i].s % 2 == over;
            Kind::Crossing { over: if side_i_over { 0 } else { 1 } }
        })
        .collect();
    let w: Vec<usize> = kinds.iter().map(|&k| d.add_vertex(k, 4)).collect();
    for i in 0..3 {
        let next = (i + 1) % 3;
        let prev = (i + 2) % 3;
        // w_i: slot 0 toward F_{i+1} and slot 2 toward w_{i+1} carry side i;
        // slot 1 toward E_{i-1} and slot 3 toward w_{i-1} carry side i-1.
        d.connect(Dart::new(w[i], 0), f_end[next], strand[i]);
        d.connect(Dart::new(w[i], 1), e_end[prev], strand[prev]);
        d.connect(Dart::new(w[i], 2), Dart::new(w[next], 3), strand[i]);
    }
    let mut dead = vec![false; d.len()];
    for x in face {
        dead[x.v] = true;
    }
    d.remove_vertices(&dead);
    d.reorient();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants;

    fn check_all_moves(d: &Diagram) {
        for m in enumerate_moves(d) {
            let e = apply_unchecked(d, &m);
            let r = e.validate();
            assert!(r.is_valid(), "{m} on {:?}:\n{r}", d.gauss_code());
        }
    }

    #[test]
    fn moves_keep_maps_valid() {
        check_all_moves(&Diagram::trivial_shortcut());
        for n in 1..=3 {
            for code in Diagram::all_gauss_codes(n).into_iter().step_by(7) {
                let d = Diagram::from_gauss_tokens(&code).unwrap();
                for path in d.shortcut_paths(n + 1, 2) {
                    check_all_moves(&d.with_shortcut(&path).unwrap());
                }
            }
        }
    }

    #[test]
    fn trivial_sites() {
        let d = Diagram::trivial_shortcut();
        let kinds: Vec<MoveKind> = enumerate_moves(&d).iter().map(|m| m.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == MoveKind::S1).count(), 4);
        assert_eq!(kinds.iter().filter(|&&k| k == MoveKind::S2).count(), 2);
        assert_eq!(kinds.iter().filter(|&&k| matches!(k, MoveKind::R1Pos | MoveKind::R1Neg)).count(), 4);
        assert!(kinds.iter().all(|k| matches!(k, MoveKind::S1 | MoveKind::S2 | MoveKind::R1Pos | MoveKind::R1Neg)));
    }

    #[test]
    fn s1_signs() {
        let d = Diagram::trivial_shortcut();
        let mut seqs = Vec::new();
        for m in enumerate_moves(&d).into_iter().filter(|m| m.kind == MoveKind::S1) {
            let e = apply_unchecked(&d, &m);
            assert_eq!(e.flat_count(), 1);
            seqs.push(e.seq().to_string());
        }
        seqs.sort();
        assert_eq!(seqs, ["+", "+", "-", "-"]);
    }

    #[test]
    fn r1_then_undo() {
        let d = Diagram::from_gauss("O1+ U2+ U1+ O2+").unwrap();
        let base = invariants::bracket(&d).unwrap();
        for m in enumerate_moves(&d).into_iter().filter(|m| matches!(m.kind, MoveKind::R1Pos | MoveKind::R1Neg)) {
            let e = apply_unchecked(&d, &m);
            let sign = if m.kind == MoveKind::R1Pos { 1 } else { -1 };
            assert_eq!(e.writhe(), d.writhe() + sign, "{m}");
            let factor = crate::laurent::minus_a_pow(3 * sign);
            assert_eq!(invariants::bracket(&e).unwrap(), &factor * &base, "{m}");
            let undo: Vec<MoveSite> = enumerate_moves(&e).into_iter().filter(|m| m.kind == MoveKind::R1Undo).collect();
            assert!(undo.iter().any(|u| apply_unchecked(&e, u).is_isomorphic(&d)), "{m}");
        }
    }

    #[test]
    fn stale_site_rejected() {
        let d = Diagram::trivial_shortcut();
        let m = MoveSite { kind: MoveKind::R2Undo, darts: smallvec![Dart::new(0, 0)], variant: 0 };
        assert!(matches!(apply_move(&d, &m), Err(Error::StaleMove(_))));
    }
}
