//! Lifts to the n-fold cover of the sphere branched over the endpoints.
//!
//! Cutting the sphere along the shortcut gives a disk; the cover is `n`
//! copies ("sheets") of it glued cyclically, and seam `m` joins sheet
//! `m - 1` to sheet `m`. The main strand starts on a chosen sheet and moves
//! up one sheet at every positive shortcut intersection, down one at every
//! negative one, so its `i`-th intersection lies on seam `q(i)`. Only the
//! chosen lift of the main strand is kept: a crossing survives when both of
//! its passages lie on the same sheet, every other preimage is erased.
//!
//! Around the lifted tail the slots are, counterclockwise, seam `j` then
//! the main strand on sheet `j`, for `j = 0..n`. Around the lifted head
//! they are seam `-k` then sheet `-k-1`. Seam `x` becomes shortcut `x`.

use std::collections::BTreeMap;

use super::with_minimal_shortcut;
use crate::diagram::{Dart, Diagram, End, Kind, Strand};
use crate::error::{Error, Result};
use crate::invariants;

#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    /// Lifted diagram with shortcuts `0..n`.
    pub diagram: Diagram,
    pub n: usize,
    /// Every surviving crossing has index 0, so the lift is the stable one.
    pub stabilized: bool,
}

pub fn lift_cover(d: &Diagram, n: usize) -> Result<LiftResult> {
    lift_cover_from(d, n, 0)
}

/// Lift whose main strand starts on sheet `sheet`.
pub fn lift_cover_from(d: &Diagram, n: usize, sheet: usize) -> Result<LiftResult> {
    if n == 0 {
        return Err(Error::Invalid("lift degree must be positive".into()));
    }
    let d = with_minimal_shortcut(d)?.keep_shortcut(0);
    let walk = d.try_main_walk().ok_or_else(|| Error::Invalid("no tail-to-head main strand".into()))?;
    let sc_walk = d.try_shortcut_walk(0).ok_or_else(|| Error::Invalid("no tail-to-head shortcut".into()))?;
    let modn = |x: i64| x.rem_euclid(n as i64) as usize;

    // Sheet of every passage and seam of every flat.
    let mut level = sheet as i64;
    let mut sheet_at = Vec::with_capacity(walk.len());
    let mut seam_of = BTreeMap::new();
    for p in &walk {
        if d.kind(p.v) == Kind::Flat {
            let next = level + d.flat_sign(p.v) as i64;
            seam_of.insert(p.v, modn(level.max(next)));
            level = next;
        }
        sheet_at.push(modn(level));
    }
    let mut first_sheet = BTreeMap::new();
    let mut survives = BTreeMap::new();
    for (p, &s) in walk.iter().zip(&sheet_at) {
        if let Kind::Crossing { .. } = d.kind(p.v) {
            match first_sheet.insert(p.v, s) {
                None => {}
                Some(f) => {
                    survives.insert(p.v, f == s);
                }
            }
        }
    }

    let mut out = Diagram::new();
    let tail = out.add_vertex(Kind::End(End::Tail), 2 * n);
    let head = out.add_vertex(Kind::End(End::Head), 2 * n);
    let mut image = BTreeMap::new();
    for v in 0..d.len() {
        let keep = match d.kind(v) {
            Kind::Crossing { .. } => survives[&v],
            Kind::Flat => true,
            _ => false,
        };
        if keep {
            image.insert(v, out.add_vertex(d.kind(v), 4));
        }
    }

    let mut prev = Dart::new(tail, 2 * sheet + 1);
    for p in &walk {
        if let Some(&w) = image.get(&p.v) {
            out.connect(prev, Dart::new(w, p.enter), Strand::Main);
            prev = Dart::new(w, p.exit);
        }
    }
    let end_sheet = modn(level);
    let head_main = 2 * modn(-(end_sheet as i64) - 1) + 1;
    out.connect(prev, Dart::new(head, head_main), Strand::Main);

    for x in 0..n {
        let mut prev = Dart::new(tail, 2 * x);
        for p in &sc_walk {
            if seam_of.get(&p.v) == Some(&x) {
                let w = image[&p.v];
                out.connect(prev, Dart::new(w, p.enter), Strand::Shortcut(x));
                prev = Dart::new(w, p.exit);
            }
        }
        out.connect(prev, Dart::new(head, 2 * modn(-(x as i64))), Strand::Shortcut(x));
    }

    let tail_keep: Vec<usize> = (0..2 * n).filter(|&s| s % 2 == 0 || s == 2 * sheet + 1).collect();
    let head_keep: Vec<usize> = (0..2 * n).filter(|&s| s % 2 == 0 || s == head_main).collect();
    out.retain_slots(tail, &tail_keep);
    out.retain_slots(head, &head_keep);
    debug_assert!(out.is_valid(), "{}", out.validate());

    let stabilized = invariants::all_indices(&d)?
        .into_iter()
        .all(|(c, ind)| !survives.get(&c).copied().unwrap_or(false) || ind == 0);
    Ok(LiftResult { diagram: out, n, stabilized })
}

/// Lift of degree `1 + max |Ind|`, which keeps exactly the crossings of
/// index 0; its main strand is a diagram of the stable knot-type lift.
pub fn stabilize(d: &Diagram) -> Result<LiftResult> {
    let max = invariants::all_indices(&d.without_shortcut())?.values().map(|i| i.unsigned_abs()).max().unwrap_or(0);
    lift_cover(d, 1 + max as usize)
}
