//! Polynomial and integer invariants: intersection indices, n-writhes, the
//! index and affine index polynomials, bracket and Turaev polynomials, and
//! the lower bounds they give for signed heights.

mod index;
mod statesum;

pub use index::{
    affine_index_polynomial, all_indices, check_affine_identity, index_polynomial, index_polynomial_from_table,
    indices_from_shortcut, intersection_index, n_writhes, sequential_sign, WritheTable,
};
pub use statesum::{
    bracket, bracket_with, normalize_turaev, normalized_bracket, normalized_bracket_with, normalized_turaev,
    normalized_turaev_with, smoothing_pairs, state_sum, turaev, turaev_with, StateSumOptions, DEFAULT_MAX_CROSSINGS,
};

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::Result;
use crate::laurent::{Laurent1, Laurent2};
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    None,
    IndexPolynomial,
    Turaev,
    Both,
}

impl BoundSource {
    fn pick(from_f: u32, from_t: u32) -> BoundSource {
        match (from_f, from_t) {
            (0, 0) => BoundSource::None,
            (f, t) if f == t => BoundSource::Both,
            (f, t) if f > t => BoundSource::IndexPolynomial,
            _ => BoundSource::Turaev,
        }
    }
}

/// Lower bounds for `(h+, h-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower_plus: u32,
    pub lower_minus: u32,
    pub source_plus: BoundSource,
    pub source_minus: BoundSource,
    /// `deg+ F` and `deg- F`.
    pub f_plus: u32,
    pub f_minus: u32,
    /// Ceilings of half the negative / positive u-degree of the normalized
    /// Turaev polynomial.
    pub turaev_plus: u32,
    pub turaev_minus: u32,
}

impl BoundsReport {
    pub fn from_polynomials(f: &Laurent1, t: &Laurent2) -> BoundsReport {
        let f_plus = f.signed_degree(Sign::Plus);
        let f_minus = f.signed_degree(Sign::Minus);
        let turaev_plus = t.signed_degree_u(Sign::Minus).div_ceil(2);
        let turaev_minus = t.signed_degree_u(Sign::Plus).div_ceil(2);
        BoundsReport {
            lower_plus: f_plus.max(turaev_plus),
            lower_minus: f_minus.max(turaev_minus),
            source_plus: BoundSource::pick(f_plus, turaev_plus),
            source_minus: BoundSource::pick(f_minus, turaev_minus),
            f_plus,
            f_minus,
            turaev_plus,
            turaev_minus,
        }
    }

    /// Both bounds are attained by the index polynomial.
    pub fn index_tight(&self) -> bool {
        self.f_plus == self.lower_plus && self.f_minus == self.lower_minus
    }
}

pub fn height_lower_bounds(d: &Diagram) -> Result<BoundsReport> {
    Ok(BoundsReport::from_polynomials(&index_polynomial(d)?, &normalized_turaev(d)?))
}

/// Everything the invariant report shows.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub writhe: i32,
    pub writhes: WritheTable,
    pub index_polynomial: Laurent1,
    pub affine_index_polynomial: Laurent1,
    pub bracket: Laurent1,
    pub normalized_bracket: Laurent1,
    pub turaev: Laurent2,
    pub normalized_turaev: Laurent2,
    pub bounds: BoundsReport,
}

impl Invariants {
    pub fn compute(d: &Diagram, opts: &StateSumOptions) -> Result<Invariants> {
        let writhes = n_writhes(d)?;
        let f = index_polynomial_from_table(&writhes);
        let p = affine_index_polynomial(d)?;
        check_affine_identity(&f, &p)?;
        let t = turaev_with(d, opts)?;
        let b = t.specialize_u_one();
        let w = d.writhe();
        let nb = &crate::laurent::minus_a_pow(-3 * w) * &b;
        let nt = normalize_turaev(&t, d)?;
        let bounds = BoundsReport::from_polynomials(&f, &nt);
        Ok(Invariants {
            writhe: w,
            writhes,
            index_polynomial: f,
            affine_index_polynomial: p,
            bracket: b,
            normalized_bracket: nb,
            turaev: t,
            normalized_turaev: nt,
            bounds,
        })
    }
}
