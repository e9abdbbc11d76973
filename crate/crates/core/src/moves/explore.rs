//! Breadth-first search of shortcut diagrams under budgets, and height
//! certification from found diagrams plus polynomial lower bounds.

use std::collections::BTreeSet;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{apply_unchecked, enumerate_moves};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::{self, BoundsReport};
use crate::ops::with_minimal_shortcut;
use crate::seqcalc::{shift_connected, SignSequence};

/// Successors of one frontier state: fingerprint and compact encoding.
type Layer = Vec<(u128, Box<[u8]>)>;

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Limits of a search: diagrams with more crossings or shortcut
/// intersections than allowed are not entered, and the search stops after
/// `max_states` distinct diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_crossings: usize,
    pub max_height: usize,
    pub max_states: usize,
}

impl Budget {
    /// Four extra crossings and two extra intersections.
    pub fn default_for(d: &Diagram) -> Budget {
        Budget { max_crossings: d.crossing_count() + 4, max_height: d.flat_count() + 2, max_states: DEFAULT_MAX_STATES }
    }

    fn admits(&self, d: &Diagram) -> bool {
        d.crossing_count() <= self.max_crossings && d.flat_count() <= self.max_height
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreResult {
    pub budget: Budget,
    /// Distinct diagrams reached, including the start.
    pub states: usize,
    /// BFS layers completed.
    pub depth: usize,
    /// The state limit cut the search short.
    pub partial: bool,
    pub sequences: BTreeSet<SignSequence>,
    pub min_height: usize,
    /// Smallest `h+` and `h-` seen, possibly on different diagrams.
    pub upper_plus: usize,
    pub upper_minus: usize,
    /// Sequences of length `min_height`.
    pub minimal_sequences: BTreeSet<SignSequence>,
}

impl ExploreResult {
    fn new(budget: Budget) -> ExploreResult {
        ExploreResult {
            budget,
            states: 0,
            depth: 0,
            partial: false,
            sequences: BTreeSet::new(),
            min_height: usize::MAX,
            upper_plus: usize::MAX,
            upper_minus: usize::MAX,
            minimal_sequences: BTreeSet::new(),
        }
    }

    fn record(&mut self, d: &Diagram) {
        let s = d.seq();
        self.states += 1;
        self.upper_plus = self.upper_plus.min(s.h_plus());
        self.upper_minus = self.upper_minus.min(s.h_minus());
        if s.len() < self.min_height {
            self.min_height = s.len();
            self.minimal_sequences.clear();
        }
        if s.len() == self.min_height {
            self.minimal_sequences.insert(s.clone());
        }
        self.sequences.insert(s);
    }
}

fn fingerprint(bytes: &[u8]) -> u128 {
    let half = |seed: u64| {
        let mut h = DefaultHasher::new();
        seed.hash(&mut h);
        bytes.hash(&mut h);
        h.finish() as u128
    };
    half(0) << 64 | half(1)
}

fn threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn explore(d: &Diagram, budget: Budget) -> Result<ExploreResult> {
    explore_with(d, budget, |_, _| false)
}

/// BFS over the move graph within `budget`. `visit` sees every new diagram
/// (in canonical form, in a deterministic order) with its depth; once it
/// returns `true` the search finishes the current layer and stops.
///
/// Diagrams are deduplicated by a 128-bit hash of their canonical encoding.
pub fn explore_with(
    d: &Diagram,
    budget: Budget,
    mut visit: impl FnMut(&Diagram, usize) -> bool,
) -> Result<ExploreResult> {
    if !d.has_shortcut() {
        return Err(Error::Invalid("search needs a shortcut diagram".into()));
    }
    if !budget.admits(d) {
        return Err(Error::Invalid(format!(
            "budget ({} crossings, height {}) is below the diagram's size ({}, {})",
            budget.max_crossings,
            budget.max_height,
            d.crossing_count(),
            d.flat_count()
        )));
    }
    let mut result = ExploreResult::new(budget);
    let start = d.canonical();
    let code = start.to_compact();
    let mut seen = FxHashSet::default();
    seen.insert(fingerprint(&code));
    result.record(&start);
    let mut stop = visit(&start, 0);
    let mut frontier = vec![code];
    if budget.max_states <= 1 {
        result.partial = true;
        return Ok(result);
    }

    while !frontier.is_empty() && !stop {
        let children = expand(&frontier, &seen, &budget);
        let mut next = Vec::new();
        'merge: for list in children {
            for (fp, code) in list {
                if seen.insert(fp) {
                    let e = Diagram::from_compact(&code);
                    result.record(&e);
                    stop |= visit(&e, result.depth + 1);
                    next.push(code);
                    if result.states >= budget.max_states {
                        result.partial = true;
                        break 'merge;
                    }
                }
            }
        }
        result.depth += 1;
        if result.partial {
            break;
        }
        frontier = next;
    }
    Ok(result)
}

/// Children of every frontier diagram not seen before, grouped by parent.
fn expand(frontier: &[Box<[u8]>], seen: &FxHashSet<u128>, budget: &Budget) -> Vec<Vec<(u128, Box<[u8]>)>> {
    let work = |code: &[u8]| {
        let d = Diagram::from_compact(code);
        let mut local = FxHashSet::default();
        let mut out = Vec::new();
        for m in enumerate_moves(&d) {
            let e = apply_unchecked(&d, &m);
            if !budget.admits(&e) {
                continue;
            }
            let c = e.canonical().to_compact();
            let fp = fingerprint(&c);
            if !seen.contains(&fp) && local.insert(fp) {
                out.push((fp, c));
            }
        }
        out
    };
    let threads = threads().min(frontier.len());
    if threads <= 1 {
        return frontier.iter().map(|c| work(c)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Layer>>> = Mutex::new(vec![None; frontier.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frontier.len() {
                    break;
                }
                let out = work(&frontier[i]);
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|o| o.unwrap_or_default()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifyStatus {
    Exact,
    Interval,
}

/// A signed height: exact, or between a proven lower bound and the best
/// upper bound found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightBound {
    pub lower: usize,
    pub upper: usize,
}

impl HeightBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyResult {
    pub status: CertifyStatus,
    pub h_plus: HeightBound,
    pub h_minus: HeightBound,
    pub bounds: BoundsReport,
    /// Minimal sequences found; when exact they realize the height.
    pub minimal_sequences: BTreeSet<SignSequence>,
    pub shift_connected: bool,
    pub search: ExploreResult,
}

impl CertifyResult {
    pub fn height(&self) -> HeightBound {
        HeightBound { lower: self.h_plus.lower + self.h_minus.lower, upper: self.h_plus.upper + self.h_minus.upper }
    }
}

/// Upper bounds from a search, lower bounds from the index and Turaev
/// polynomials. The search stops at the end of the first layer in which
/// the two meet.
pub fn certify_heights(d: &Diagram, budget: Budget) -> Result<CertifyResult> {
    let d = with_minimal_shortcut(d)?;
    let bounds = invariants::height_lower_bounds(&d)?;
    let (lp, lm) = (bounds.lower_plus as usize, bounds.lower_minus as usize);
    let (mut up, mut um) = (usize::MAX, usize::MAX);
    let search = explore_with(&d, budget, |e, _| {
        let s = e.seq();
        up = up.min(s.h_plus());
        um = um.min(s.h_minus());
        up <= lp && um <= lm
    })?;
    let (up, um) = (search.upper_plus, search.upper_minus);
    if up < lp || um < lm {
        return Err(Error::Inconsistent(format!(
            "found (h+, h-) upper bounds ({up}, {um}) below lower bounds ({lp}, {lm})"
        )));
    }
    let h_plus = HeightBound { lower: lp, upper: up };
    let h_minus = HeightBound { lower: lm, upper: um };
    let exact = h_plus.is_exact() && h_minus.is_exact();
    let minimal_sequences = search.minimal_sequences.clone();
    let list: Vec<SignSequence> = minimal_sequences.iter().cloned().collect();
    let connected = shift_connected(&list).connected;
    if exact {
        // h = h+ + h-: every shortest sequence found has exactly the signed
        // heights as its sign counts.
        if search.min_height != lp + lm || list.iter().any(|s| s.h_plus() != lp || s.h_minus() != lm) {
            return Err(Error::Consistency(format!(
                "exact heights ({lp}, {lm}) but shortest sequences found are {:?}",
                list.iter().map(|s| s.to_string()).collect::<Vec<_>>()
            )));
        }
        if !connected {
            return Err(Error::Consistency("minimal sequences are not shift-connected".into()));
        }
        if bounds.index_tight() && list.len() != 1 {
            return Err(Error::Consistency(format!(
                "index bounds are tight but {} minimal sequences were found",
                list.len()
            )));
        }
    }
    Ok(CertifyResult {
        status: if exact { CertifyStatus::Exact } else { CertifyStatus::Interval },
        h_plus,
        h_minus,
        bounds,
        minimal_sequences,
        shift_connected: connected,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_search() {
        let d = Diagram::trivial_shortcut();
        let budget = Budget { max_crossings: 0, max_height: 2, max_states: 10_000 };
        let r = explore(&d, budget).unwrap();
        assert!(!r.partial);
        assert_eq!(r.min_height, 0);
        for s in ["", "+", "-", "-+", "+-", "++", "--"] {
            assert!(r.sequences.contains(&s.parse().unwrap()), "{s}");
        }
    }

    #[test]
    fn state_limit_marks_partial() {
        let d = Diagram::trivial_shortcut();
        let r = explore(&d, Budget { max_crossings: 2, max_height: 2, max_states: 20 }).unwrap();
        assert!(r.partial);
        assert_eq!(r.states, 20);
    }

    #[test]
    fn search_is_deterministic() {
        let d = Diagram::trivial_shortcut();
        let budget = Budget { max_crossings: 1, max_height: 2, max_states: 500 };
        assert_eq!(explore(&d, budget).unwrap(), explore(&d, budget).unwrap());
    }

    #[test]
    fn kink_certifies_to_zero() {
        let d = Diagram::from_gauss("O1+ U1+").unwrap();
        let r = certify_heights(&d, Budget::default_for(&with_minimal_shortcut(&d).unwrap())).unwrap();
        assert_eq!(r.status, CertifyStatus::Exact);
        assert_eq!((r.h_plus.upper, r.h_minus.upper), (0, 0));
    }
}
