//! Bracket and Turaev state sums.
//!
//! A state assigns an A- or B-smoothing to every crossing. Each state is
//! evaluated by re-pairing the crossing slots and tracing the components of
//! the smoothed rotation system; the result is tallied by `(n, a, l)` and
//! only turned into a polynomial at the end. States are split into fixed
//! blocks that worker threads pull from a shared counter; tallies are plain
//! integer counts, so the merged result does not depend on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::diagram::{Dart, Diagram, Kind};
use crate::error::{Error, Result};
use crate::laurent::{loop_value, Laurent1, Laurent2, Var};

pub const DEFAULT_MAX_CROSSINGS: usize = 20;

const NONE: u32 = u32::MAX;
const END: u32 = u32::MAX - 1;
const BLOCK_BITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSumOptions {
    /// Refuse diagrams with more crossings than this.
    pub max_crossings: usize,
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

impl Default for StateSumOptions {
    fn default() -> Self {
        StateSumOptions { max_crossings: DEFAULT_MAX_CROSSINGS, threads: None }
    }
}

/// Slot pairs joined by the A- and B-smoothings of a crossing whose over
/// strand uses slots `over` and `over + 2`.
pub fn smoothing_pairs(over: usize, a_smoothing: bool) -> [(usize, usize); 2] {
    let o = over;
    if a_smoothing {
        [((o + 1) % 4, (o + 2) % 4), ((o + 3) % 4, o)]
    } else {
        [(o, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4)]
    }
}

struct Compiled {
    partner: Vec<u32>,
    through: Vec<u32>,
    /// Change of `a` when a trace arrives through this dart.
    delta: Vec<i32>,
    crossings: Vec<([u32; 4], usize)>,
    start: Option<u32>,
    max_abs_a: usize,
}

impl Compiled {
    fn new(d: &Diagram) -> Compiled {
        let closed = d.is_closed();
        let used = |x: Dart| closed || d.strand(x).is_main();
        let mut id = vec![Vec::new(); d.len()];
        let mut n = 0u32;
        for v in 0..d.len() {
            for s in 0..d.degree(v) {
                id[v].push(if used(Dart::new(v, s)) {
                    n += 1;
                    n - 1
                } else {
                    NONE
                });
            }
        }
        let n = n as usize;
        let mut partner = vec![NONE; n];
        let mut through = vec![NONE; n];
        let mut delta = vec![0; n];
        let mut crossings = Vec::new();
        let mut start = None;
        let mut flats = 0;
        for v in 0..d.len() {
            for s in 0..d.degree(v) {
                let i = id[v][s];
                if i == NONE {
                    continue;
                }
                let p = d.partner(Dart::new(v, s));
                partner[i as usize] = id[p.v][p.s];
                match d.kind(v) {
                    Kind::Crossing { .. } => {}
                    Kind::End(e) => {
                        through[i as usize] = END;
                        if e == crate::diagram::End::Tail {
                            start = Some(i);
                        }
                    }
                    Kind::Joint => through[i as usize] = id[v][1 - s],
                    Kind::Flat => {
                        through[i as usize] = id[v][(s + 2) % 4];
                        if d.flat_shortcut(v) == 0 {
                            let sign = d.flat_sign(v);
                            delta[i as usize] = if d.link(Dart::new(v, s)).out { -sign } else { sign };
                        }
                    }
                }
            }
            match d.kind(v) {
                Kind::Crossing { over } => {
                    crossings.push(([id[v][0], id[v][1], id[v][2], id[v][3]], over));
                }
                Kind::Flat => flats += 1,
                _ => {}
            }
        }
        debug_assert!(partner.iter().all(|&p| p != NONE));
        Compiled { partner, through, delta, crossings, start, max_abs_a: flats }
    }

    /// Tally of `(n, a, l)` for the states in `range`, into a dense array.
    fn evaluate(
        &self,
        range: std::ops::Range<u64>,
        tally: &mut Tally,
        through: &mut [u32],
        stamp: &mut [u32],
        gen: &mut u32,
    ) {
        let k = self.crossings.len();
        for state in range {
            let mut nsum = 0i32;
            for (c, (slots, over)) in self.crossings.iter().enumerate() {
                let a_smoothing = (state >> c) & 1 == 1;
                nsum += if a_smoothing { 1 } else { -1 };
                for (x, y) in smoothing_pairs(*over, a_smoothing) {
                    through[slots[x] as usize] = slots[y];
                    through[slots[y] as usize] = slots[x];
                }
            }
            *gen = gen.wrapping_add(1);
            if *gen == 0 {
                stamp.fill(0);
                *gen = 1;
            }
            let g = *gen;
            let mut a = 0i32;
            if let Some(t) = self.start {
                let mut cur = t;
                loop {
                    stamp[cur as usize] = g;
                    let arr = self.partner[cur as usize];
                    stamp[arr as usize] = g;
                    let next = through[arr as usize];
                    if next == END {
                        break;
                    }
                    a += self.delta[arr as usize];
                    cur = next;
                }
            }
            let mut loops = 0usize;
            for d in 0..self.partner.len() {
                if stamp[d] == g {
                    continue;
                }
                loops += 1;
                let mut cur = d as u32;
                while stamp[cur as usize] != g {
                    stamp[cur as usize] = g;
                    let arr = self.partner[cur as usize];
                    stamp[arr as usize] = g;
                    cur = through[arr as usize];
                }
            }
            tally.add(nsum + k as i32, a, loops);
        }
    }
}

/// Dense counts indexed by `(n + k, a + f, l)`.
struct Tally {
    counts: Vec<u64>,
    a_span: usize,
    loop_span: usize,
    a_off: i32,
}

impl Tally {
    fn new(k: usize, f: usize, darts: usize) -> Tally {
        let a_span = 2 * f + 1;
        let loop_span = darts / 2 + 2;
        Tally { counts: vec![0; (2 * k + 1) * a_span * loop_span], a_span, loop_span, a_off: f as i32 }
    }

    #[inline]
    fn add(&mut self, n: i32, a: i32, l: usize) {
        let i = (n as usize * self.a_span + (a + self.a_off) as usize) * self.loop_span + l;
        self.counts[i] += 1;
    }

    fn merge(&mut self, other: &Tally) {
        for (x, y) in self.counts.iter_mut().zip(&other.counts) {
            *x += y;
        }
    }
}

/// `sum_s A^n(s) u^a(s) d^l(s)` with `d = -A^2 - A^-2`. On closed maps one
/// circle is not weighted (`d^(l-1)`); on open maps the interval is never a
/// circle. The shortcut is ignored except for the `u` exponents.
pub fn state_sum(d: &Diagram, opts: &StateSumOptions) -> Result<Laurent2> {
    let k = d.crossing_count();
    if k > opts.max_crossings {
        return Err(Error::TooManyCrossings { crossings: k, limit: opts.max_crossings });
    }
    if !d.is_closed() && d.try_main_walk().is_none() {
        return Err(Error::Invalid("no tail-to-head main strand".into()));
    }
    let c = Compiled::new(d);
    let darts = c.partner.len();
    let total: u64 = 1 << k;
    let block_bits = BLOCK_BITS.min(k);
    let blocks = (total >> block_bits) as usize;
    let threads =
        opts.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).clamp(1, blocks);

    let next = AtomicUsize::new(0);
    let result = Mutex::new(Tally::new(k, c.max_abs_a, darts));
    let work = || {
        let mut tally = Tally::new(k, c.max_abs_a, darts);
        let mut through = c.through.clone();
        let mut stamp = vec![0u32; darts];
        let mut gen = 0u32;
        loop {
            let b = next.fetch_add(1, Ordering::Relaxed);
            if b >= blocks {
                break;
            }
            let lo = (b as u64) << block_bits;
            c.evaluate(lo..lo + (1 << block_bits), &mut tally, &mut through, &mut stamp, &mut gen);
        }
        result.lock().unwrap().merge(&tally);
    };
    if threads == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(work);
            }
        });
    }
    let tally = result.into_inner().unwrap();
    Ok(assemble(&tally, k, d.is_closed()))
}

fn assemble(t: &Tally, k: usize, closed: bool) -> Laurent2 {
    let dl = loop_value();
    let mut powers = vec![Laurent1::one(Var::A)];
    let mut out = Laurent2::zero();
    for ai in 0..t.a_span {
        for l in 0..t.loop_span {
            let mut coeffs = Vec::new();
            for n in 0..=2 * k {
                let count = t.counts[(n * t.a_span + ai) * t.loop_span + l];
                if count > 0 {
                    coeffs.push((n as i32 - k as i32, BigInt::from(count)));
                }
            }
            if coeffs.is_empty() {
                continue;
            }
            let e = if closed { l.saturating_sub(1) } else { l };
            while powers.len() <= e {
                let p = powers.last().unwrap() * &dl;
                powers.push(p);
            }
            let poly = &Laurent1::from_terms(Var::A, coeffs) * &powers[e];
            let u = ai as i32 - t.a_off;
            out = out + Laurent2::from_terms(poly.terms().map(|(a, c)| ((a, u), c.clone())));
        }
    }
    out
}

/// Kauffman bracket; any shortcut is ignored.
pub fn bracket_with(d: &Diagram, opts: &StateSumOptions) -> Result<Laurent1> {
    Ok(state_sum(d, opts)?.specialize_u_one())
}

pub fn bracket(d: &Diagram) -> Result<Laurent1> {
    bracket_with(d, &StateSumOptions::default())
}

/// `(-A)^(-3w) <K>`.
pub fn normalized_bracket_with(d: &Diagram, opts: &StateSumOptions) -> Result<Laurent1> {
    Ok(normalize_a(&bracket_with(d, opts)?, d.writhe()))
}

pub fn normalized_bracket(d: &Diagram) -> Result<Laurent1> {
    normalized_bracket_with(d, &StateSumOptions::default())
}

fn normalize_a(p: &Laurent1, writhe: i32) -> Laurent1 {
    let p = p.shift(-3 * writhe);
    if writhe % 2 != 0 {
        -p
    } else {
        p
    }
}

/// Turaev polynomial of a diagram with a shortcut (a diagram without one
/// behaves as if its shortcut were empty).
pub fn turaev_with(d: &Diagram, opts: &StateSumOptions) -> Result<Laurent2> {
    if d.is_closed() {
        return Err(Error::Invalid("the Turaev polynomial needs endpoints".into()));
    }
    state_sum(d, opts)
}

pub fn turaev(d: &Diagram) -> Result<Laurent2> {
    turaev_with(d, &StateSumOptions::default())
}

/// `(-A)^(-3w) u^(-a(K)) T(K)`; checked to use even exponents only.
pub fn normalized_turaev_with(d: &Diagram, opts: &StateSumOptions) -> Result<Laurent2> {
    normalize_turaev(&turaev_with(d, opts)?, d)
}

/// Normalizes an already computed Turaev polynomial of `d`.
pub fn normalize_turaev(t: &Laurent2, d: &Diagram) -> Result<Laurent2> {
    let w = d.writhe();
    let a = if d.has_shortcut() { d.algebraic_height() } else { 0 };
    let t = t.shift(-3 * w, -a);
    let t = if w % 2 != 0 { -t } else { t };
    if !t.is_even() {
        return Err(Error::Consistency(format!("normalized Turaev polynomial {t} has odd exponents")));
    }
    Ok(t)
}

pub fn normalized_turaev(d: &Diagram) -> Result<Laurent2> {
    normalized_turaev_with(d, &StateSumOptions::default())
}
