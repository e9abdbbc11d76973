//! Sign sequences and their calculus: shift moves, consecutive sums,
//! involution transforms, concatenation and lift subsequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Sign;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence(Vec<Sign>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Replaces `(-, +)` pairs by `(+, -)` pairs.
    Left,
    /// Replaces `(+, -)` pairs by `(-, +)` pairs.
    Right,
}

impl SignSequence {
    pub fn new(entries: Vec<Sign>) -> SignSequence {
        SignSequence(entries)
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn h_plus(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn h_minus(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Minus).count()
    }

    /// `h+ - h-`.
    pub fn sum(&self) -> i32 {
        self.0.iter().map(|s| s.value()).sum()
    }

    pub fn negate(&self) -> SignSequence {
        SignSequence(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn reverse(&self) -> SignSequence {
        SignSequence(self.0.iter().rev().copied().collect())
    }

    /// `[rev(A), -A, rev(-A)]`.
    pub fn transforms(&self) -> [SignSequence; 3] {
        [self.reverse(), self.negate(), self.negate().reverse()]
    }

    pub fn concat(&self, other: &SignSequence) -> SignSequence {
        SignSequence(self.0.iter().chain(&other.0).copied().collect())
    }

    /// True when some consecutive run sums to `target`; the empty run
    /// counts, so target 0 always succeeds.
    pub fn consecutive_subsum_exists(&self, target: i32) -> bool {
        if target == 0 {
            return true;
        }
        let mut prefix = vec![0];
        for s in &self.0 {
            prefix.push(prefix.last().unwrap() + s.value());
        }
        (0..prefix.len()).any(|i| (i + 1..prefix.len()).any(|j| prefix[j] - prefix[i] == target))
    }

    /// Prefix sums `p(0) = 0, p(i) = a_1 + ... + a_i`.
    pub fn prefix_sums(&self) -> Vec<i32> {
        let mut p = Vec::with_capacity(self.len() + 1);
        p.push(0);
        for s in &self.0 {
            p.push(p.last().unwrap() + s.value());
        }
        p
    }

    /// `q(i) = max(p(i-1), p(i))` for `i = 1..=len`.
    pub fn lift_levels(&self) -> Vec<i32> {
        let p = self.prefix_sums();
        (1..p.len()).map(|i| p[i - 1].max(p[i])).collect()
    }

    /// Entries whose level `q(i)` is congruent to `x` modulo `n`, in order.
    pub fn lift_subsequence(&self, n: usize, x: i64) -> SignSequence {
        assert!(n >= 1, "lift degree must be positive");
        let n = n as i64;
        let x = x.rem_euclid(n);
        SignSequence(
            self.0
                .iter()
                .zip(self.lift_levels())
                .filter(|(_, q)| (*q as i64).rem_euclid(n) == x)
                .map(|(s, _)| *s)
                .collect(),
        )
    }

    /// All results of one shift move of the given size and direction.
    pub fn shift_results(&self, dir: ShiftDirection, size: usize) -> BTreeSet<SignSequence> {
        let (del, ins) = match dir {
            ShiftDirection::Left => ((Sign::Minus, Sign::Plus), (Sign::Plus, Sign::Minus)),
            ShiftDirection::Right => ((Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)),
        };
        let mut out = BTreeSet::new();
        if size == 0 {
            return out;
        }
        let starts: Vec<usize> =
            (0..self.len().saturating_sub(1)).filter(|&i| self.0[i] == del.0 && self.0[i + 1] == del.1).collect();
        let mut chosen = Vec::new();
        let mut intermediates = BTreeSet::new();
        choose_disjoint(&starts, 0, size, &mut chosen, &mut |picked: &[usize]| {
            let mut rest = Vec::with_capacity(self.len() - 2 * size);
            let mut i = 0;
            while i < self.len() {
                if picked.contains(&i) {
                    i += 2;
                } else {
                    rest.push(self.0[i]);
                    i += 1;
                }
            }
            intermediates.insert(rest);
        });
        for rest in intermediates {
            let mut gaps = Vec::with_capacity(size);
            nondecreasing(rest.len(), size, 0, &mut gaps, &mut |gaps: &[usize]| {
                let mut seq = Vec::with_capacity(rest.len() + 2 * size);
                let mut g = 0;
                for pos in 0..=rest.len() {
                    while g < size && gaps[g] == pos {
                        seq.push(ins.0);
                        seq.push(ins.1);
                        g += 1;
                    }
                    if pos < rest.len() {
                        seq.push(rest[pos]);
                    }
                }
                out.insert(SignSequence(seq));
            });
        }
        out
    }

    /// Every sequence reachable by one shift move of any size or direction.
    pub fn all_shift_results(&self) -> BTreeSet<SignSequence> {
        let mut out = BTreeSet::new();
        for size in 1..=self.len() / 2 {
            out.extend(self.shift_results(ShiftDirection::Left, size));
            out.extend(self.shift_results(ShiftDirection::Right, size));
        }
        out.remove(self);
        out
    }
}

/// Calls `f` with every nondecreasing `size`-tuple over `from..=max`.
fn nondecreasing(max: usize, size: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for g in from..=max {
        cur.push(g);
        nondecreasing(max, size, g, cur, f);
        cur.pop();
    }
}

fn choose_disjoint(starts: &[usize], from: usize, left: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if left == 0 {
        f(chosen);
        return;
    }
    for k in from..starts.len() {
        let s = starts[k];
        if chosen.last().is_some_and(|&c| s < c + 2) {
            continue;
        }
        chosen.push(s);
        choose_disjoint(starts, k + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

/// Result of [`shift_connected`]: connectivity plus a BFS spanning tree of
/// shift-move edges (indices into the input order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftConnectivity {
    pub connected: bool,
    pub tree: Vec<(usize, usize)>,
}

/// Whether the graph on `set` whose edges are single shift moves inside
/// the set is connected. Members of different lengths or sign counts make
/// the answer false immediately.
pub fn shift_connected(set: &[SignSequence]) -> ShiftConnectivity {
    let none = ShiftConnectivity { connected: false, tree: Vec::new() };
    if set.is_empty() {
        return ShiftConnectivity { connected: true, tree: Vec::new() };
    }
    let (p, m) = (set[0].h_plus(), set[0].h_minus());
    if set.iter().any(|s| s.h_plus() != p || s.h_minus() != m) {
        return none;
    }
    let index: BTreeMap<&SignSequence, usize> = set.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; set.len()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for t in set[i].all_shift_results() {
            if let Some(&j) = index.get(&t) {
                if !seen[j] {
                    seen[j] = true;
                    tree.push((i, j));
                    queue.push_back(j);
                }
            }
        }
    }
    ShiftConnectivity { connected: seen.iter().all(|&x| x), tree }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SignSequence {
    type Err = Error;
    /// Accepts `+-`, `(+, -)`, `()` or the empty string; `−` is read as `-`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for c in s.chars() {
            match c {
                '+' => out.push(Sign::Plus),
                '-' | '−' => out.push(Sign::Minus),
                '(' | ')' | ',' => {}
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse { line: 1, column: 0, msg: format!("unexpected '{c}' in sign sequence") })
                }
            }
        }
        Ok(SignSequence(out))
    }
}
