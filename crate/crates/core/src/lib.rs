//! Combinatorial engine for knotoids on the sphere.
//!
//! Diagrams are rotation systems ([`Diagram`]): every vertex lists its
//! half-edges in counterclockwise order, which pins the spherical embedding
//! without any geometry. On top of that model the crate computes index and
//! bracket-type invariants, rewrites diagrams by Reidemeister and shortcut
//! moves, and bounds signed heights from both sides.

pub mod diagram;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod moves;
pub mod ops;
pub mod seqcalc;

pub use diagram::{Dart, Diagram, End, Kind, Link, Strand, Vertex};
pub use error::{Error, Result};
pub use laurent::{Laurent1, Laurent2, Poly, Var};
pub use seqcalc::SignSequence;

use std::fmt;

/// A sign in `{+, -}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(v: i32) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
