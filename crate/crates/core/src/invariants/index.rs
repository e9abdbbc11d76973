//! Intersection indices, n-writhes, and the index / affine index
//! polynomials.

use std::collections::BTreeMap;

use crate::diagram::{tau, Diagram, Kind, Passage};
use crate::error::{Error, Result};
use crate::laurent::{Laurent1, Var};

/// `n -> J_n` for the nonzero `n` with a nonzero writhe.
pub type WritheTable = BTreeMap<i32, i64>;

/// Positions of the two passages through each crossing along the walk.
fn passage_pairs(d: &Diagram, walk: &[Passage]) -> BTreeMap<usize, (usize, usize)> {
    let mut first = BTreeMap::new();
    let mut pairs = BTreeMap::new();
    for (i, p) in walk.iter().enumerate() {
        if let Kind::Crossing { .. } = d.kind(p.v) {
            match first.insert(p.v, i) {
                None => {}
                Some(j) => {
                    pairs.insert(p.v, (j, i));
                }
            }
        }
    }
    pairs
}

/// Intersection index of crossing `c`: the algebraic intersection number of
/// the loop `L` cut off by the oriented smoothing at `c` with the remaining
/// interval `K'`, counting `+1` where `L` crosses `K'` from right to left.
pub fn intersection_index(d: &Diagram, c: usize) -> Result<i32> {
    Ok(*all_indices(d)?.get(&c).ok_or(Error::UnknownCrossing(c))?)
}

/// Intersection index of every crossing.
pub fn all_indices(d: &Diagram) -> Result<BTreeMap<usize, i32>> {
    let walk = d.try_main_walk().ok_or_else(|| Error::Invalid("no tail-to-head main strand".into()))?;
    let pairs = passage_pairs(d, &walk);
    let mut out = BTreeMap::new();
    for (&c, &(i, j)) in &pairs {
        let mut ind = 0;
        for (&e, &(k, l)) in &pairs {
            if e == c {
                continue;
            }
            let k_in = i < k && k < j;
            let l_in = i < l && l < j;
            if k_in == l_in {
                continue;
            }
            let (on_loop, on_rest) = if k_in { (walk[k], walk[l]) } else { (walk[l], walk[k]) };
            ind += tau(on_rest.exit, on_loop.exit);
        }
        out.insert(c, ind);
    }
    Ok(out)
}

/// Index of every crossing measured against the first shortcut: the sum of
/// the flat signs met between the two passages.
pub fn indices_from_shortcut(d: &Diagram) -> Result<BTreeMap<usize, i32>> {
    let walk = d.try_main_walk().ok_or_else(|| Error::Invalid("no tail-to-head main strand".into()))?;
    let mut prefix = vec![0];
    for p in &walk {
        let s = if d.kind(p.v) == Kind::Flat && d.flat_shortcut(p.v) == 0 { d.flat_sign(p.v) } else { 0 };
        prefix.push(prefix.last().unwrap() + s);
    }
    Ok(passage_pairs(d, &walk).into_iter().map(|(c, (i, j))| (c, prefix[j] - prefix[i])).collect())
}

/// Sequential sign: `+1` when the strand through the first passage is
/// crossed by the second passage from right to left.
pub fn sequential_sign(d: &Diagram, c: usize) -> Result<i32> {
    let walk = d.try_main_walk().ok_or_else(|| Error::Invalid("no tail-to-head main strand".into()))?;
    let (i, j) = *passage_pairs(d, &walk).get(&c).ok_or(Error::UnknownCrossing(c))?;
    Ok(tau(walk[i].exit, walk[j].exit))
}

/// `J_n = (1/2) * sum of the signs of the crossings of index n`, for `n != 0`.
pub fn n_writhes(d: &Diagram) -> Result<WritheTable> {
    let mut sums: BTreeMap<i32, i64> = BTreeMap::new();
    for (c, ind) in all_indices(d)? {
        if ind != 0 {
            *sums.entry(ind).or_default() += d.crossing_sign(c)? as i64;
        }
    }
    let mut table = WritheTable::new();
    for (n, s) in sums {
        if s % 2 != 0 {
            return Err(Error::Consistency(format!("signs of the {n}-crossings sum to the odd number {s}")));
        }
        if s != 0 {
            table.insert(n, s / 2);
        }
    }
    Ok(table)
}

/// `F(t) = sum_n J_n (t^n - 1)`.
pub fn index_polynomial_from_table(table: &WritheTable) -> Laurent1 {
    let mut terms = Vec::new();
    for (&n, &j) in table {
        terms.push((n, j));
        terms.push((0, -j));
    }
    Laurent1::from_terms(Var::T, terms)
}

pub fn index_polynomial(d: &Diagram) -> Result<Laurent1> {
    Ok(index_polynomial_from_table(&n_writhes(d)?))
}

/// `P(t) = sum_c sign(c) (t^w(c) - 1)` with `w(c) = sign(c) ssgn(c) Ind(c)`,
/// computed directly from the crossings.
pub fn affine_index_polynomial(d: &Diagram) -> Result<Laurent1> {
    let mut terms = Vec::new();
    for (c, ind) in all_indices(d)? {
        let sign = d.crossing_sign(c)?;
        let w = sign * sequential_sign(d, c)? * ind;
        terms.push((w, sign as i64));
        terms.push((0, -(sign as i64)));
    }
    Ok(Laurent1::from_terms(Var::T, terms))
}

/// Checks `P(t) = F(t) + F(1/t)` and `P(t) = P(1/t)`.
pub fn check_affine_identity(f: &Laurent1, p: &Laurent1) -> Result<()> {
    if *p != f + &f.substitute_inverse() {
        return Err(Error::Consistency(format!("P = {p} but F(t) + F(1/t) = {}", f + &f.substitute_inverse())));
    }
    if *p != p.substitute_inverse() {
        return Err(Error::Consistency(format!("P = {p} is not symmetric")));
    }
    Ok(())
}
