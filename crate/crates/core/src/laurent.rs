//! Exact Laurent polynomials with integer coefficients.
//!
//! [`Laurent1`] is a polynomial in a single variable (`t` for index
//! polynomials, `A` for brackets); [`Laurent2`] is a polynomial in the pair
//! `(A, u)` used by the Turaev polynomial. Coefficients are arbitrary
//! precision and no zero coefficient is ever stored, so the zero polynomial
//! is the empty term map and structural equality is polynomial equality.
//!
//! The canonical text form lists terms by ascending exponent (lexicographic
//! on `(A, u)` for two variables), e.g. `t^-1 - 2 + t` or
//! `-A^-10*u^2 + A^-6*u^2`. [`str::parse`] accepts the same grammar with any
//! term order and free whitespace.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Sign;

/// Exponent of a monomial: a single integer or an `(A, u)` pair.
trait Exponent: Copy + Ord + Hash + fmt::Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Exponent for i32 {
    fn zero() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for (i32, i32) {
    fn zero() -> Self {
        (0, 0)
    }
    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Terms<E: Exponent>(BTreeMap<E, BigInt>);

impl<E: Exponent> Terms<E> {
    fn new() -> Self {
        Terms(BTreeMap::new())
    }

    fn add_term(&mut self, exp: E, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.0.entry(exp).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.0.remove(&exp);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        Terms(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Terms::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        out
    }

    fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Terms::new();
        }
        Terms(self.0.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Terms::new();
        acc.add_term(E::zero(), BigInt::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Name of the variable of a one-variable polynomial. Metadata only: it
/// affects printing, never equality or arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    A,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::A => 'A',
        }
    }
}

/// Laurent polynomial in one variable.
#[derive(Clone, Debug)]
pub struct Laurent1 {
    var: Var,
    terms: Terms<i32>,
}

impl PartialEq for Laurent1 {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Laurent1 {}

impl Hash for Laurent1 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl Laurent1 {
    pub fn zero(var: Var) -> Self {
        Laurent1 { var, terms: Terms::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn monomial(var: Var, coef: impl Into<BigInt>, exp: i32) -> Self {
        let mut terms = Terms::new();
        terms.add_term(exp, coef.into());
        Laurent1 { var, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(var: Var, terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut t = Terms::new();
        for (e, c) in terms {
            t.add_term(e, c.into());
        }
        Laurent1 { var, terms: t }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.0.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.0.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.0.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.0.keys().next().copied()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Laurent1 { var: self.var, terms: self.terms.scale(&k.into()) }
    }

    pub fn pow(&self, n: u32) -> Self {
        Laurent1 { var: self.var, terms: self.terms.pow(n) }
    }

    /// `p(x) -> p(x^-1)`.
    pub fn substitute_inverse(&self) -> Self {
        Laurent1 { var: self.var, terms: Terms(self.terms.0.iter().map(|(e, c)| (-e, c.clone())).collect()) }
    }

    /// `deg+ = max(maxdeg, 0)`, `deg- = max(-mindeg, 0)`; both are 0 for the
    /// zero polynomial.
    pub fn signed_degree(&self, sign: Sign) -> u32 {
        match sign {
            Sign::Plus => self.max_degree().map_or(0, |d| d.max(0) as u32),
            Sign::Minus => self.min_degree().map_or(0, |d| (-d).max(0) as u32),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Laurent1 { var: self.var, terms: Terms(self.terms.0.iter().map(|(e, c)| (e + shift, c.clone())).collect()) }
    }

    pub fn is_even(&self) -> bool {
        self.terms.0.keys().all(|e| e % 2 == 0)
    }
}

impl fmt::Display for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.var.symbol();
        write_terms(f, self.terms.0.iter().map(|(e, c)| (c, vec![(sym, *e)])))
    }
}

/// Laurent polynomial in `A` and `u`; exponents are stored as `(A, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent2 {
    terms: Terms<(i32, i32)>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Laurent2 { terms: Terms::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coef: impl Into<BigInt>, a_exp: i32, u_exp: i32) -> Self {
        let mut terms = Terms::new();
        terms.add_term((a_exp, u_exp), coef.into());
        Laurent2 { terms }
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = ((i32, i32), C)>) -> Self {
        let mut t = Terms::new();
        for (e, c) in terms {
            t.add_term(e, c.into());
        }
        Laurent2 { terms: t }
    }

    /// Embeds a polynomial in `A` (the variable tag is ignored).
    pub fn from_a_poly(p: &Laurent1) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.0.is_empty()
    }

    pub fn coeff(&self, a_exp: i32, u_exp: i32) -> BigInt {
        self.terms.0.get(&(a_exp, u_exp)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> {
        self.terms.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Laurent2 { terms: self.terms.scale(&k.into()) }
    }

    pub fn pow(&self, n: u32) -> Self {
        Laurent2 { terms: self.terms.pow(n) }
    }

    /// `u -> u^-1`; the `A` slot is untouched.
    pub fn substitute_inverse_u(&self) -> Self {
        Laurent2 { terms: Terms(self.terms.0.iter().map(|((a, u), c)| ((*a, -u), c.clone())).collect()) }
    }

    /// `A -> A^-1`; the `u` slot is untouched.
    pub fn substitute_inverse_a(&self) -> Self {
        Laurent2 { terms: Terms(self.terms.0.iter().map(|((a, u), c)| ((-a, *u), c.clone())).collect()) }
    }

    /// Multiplies by `A^a_shift * u^u_shift`.
    pub fn shift(&self, a_shift: i32, u_shift: i32) -> Self {
        Laurent2 {
            terms: Terms(self.terms.0.iter().map(|((a, u), c)| ((a + a_shift, u + u_shift), c.clone())).collect()),
        }
    }

    /// Coefficient of `u^k`, as a polynomial in `A`.
    pub fn u_coefficient(&self, k: i32) -> Laurent1 {
        Laurent1::from_terms(
            Var::A,
            self.terms.0.iter().filter(|((_, u), _)| *u == k).map(|((a, _), c)| (*a, c.clone())),
        )
    }

    /// Specialization `u = 1`.
    pub fn specialize_u_one(&self) -> Laurent1 {
        Laurent1::from_terms(Var::A, self.terms.0.iter().map(|((a, _), c)| (*a, c.clone())))
    }

    pub fn signed_degree_u(&self, sign: Sign) -> u32 {
        let us = self.terms.0.keys().map(|(_, u)| *u);
        match sign {
            Sign::Plus => us.max().map_or(0, |d| d.max(0) as u32),
            Sign::Minus => us.min().map_or(0, |d| (-d).max(0) as u32),
        }
    }

    pub fn signed_degree_a(&self, sign: Sign) -> u32 {
        let ays = self.terms.0.keys().map(|(a, _)| *a);
        match sign {
            Sign::Plus => ays.max().map_or(0, |d| d.max(0) as u32),
            Sign::Minus => ays.min().map_or(0, |d| (-d).max(0) as u32),
        }
    }

    /// True when every exponent of both variables is even.
    pub fn is_even(&self) -> bool {
        self.terms.0.keys().all(|(a, u)| a % 2 == 0 && u % 2 == 0)
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.0.iter().map(|((a, u), c)| (c, vec![('A', *a), ('u', *u)])))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, Vec<(char, i32)>)>,
) -> fmt::Result {
    let mut first = true;
    for (coef, vars) in terms {
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mag = coef.abs();
        if first {
            if coef.is_negative() {
                f.write_str("-")?;
            }
        } else if coef.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&mono.join("*"))?;
        } else {
            write!(f, "{mag}*{}", mono.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

macro_rules! impl_ring_ops {
    ($ty:ty) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.terms = self.terms.add(&rhs.terms);
                out
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.terms = self.terms.add(&rhs.terms.neg());
                out
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.terms = self.terms.mul(&rhs.terms);
                out
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = self.clone();
                out.terms = self.terms.neg();
                out
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
}

// Results keep the left operand's variable tag.
impl_ring_ops!(Laurent1);
impl_ring_ops!(Laurent2);

impl std::iter::Sum for Laurent2 {
    fn sum<I: Iterator<Item = Laurent2>>(iter: I) -> Self {
        iter.fold(Laurent2::zero(), |acc, p| &acc + &p)
    }
}

/// Arithmetic operation for the arity-checked [`Poly::arith`] entry point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Scale(BigInt),
    Power(u32),
}

/// A polynomial of either arity, for callers that only know the arity at
/// run time (parsed fixture values, CLI arguments).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    One(Laurent1),
    Two(Laurent2),
}

impl Poly {
    /// Applies `op`; binary operations need a right operand of the same
    /// arity, unary ones ignore `rhs`.
    pub fn arith(&self, rhs: Option<&Poly>, op: &ArithOp) -> Result<Poly> {
        match (op, self, rhs) {
            (ArithOp::Add, Poly::One(p), Some(Poly::One(q))) => Ok(Poly::One(p + q)),
            (ArithOp::Add, Poly::Two(p), Some(Poly::Two(q))) => Ok(Poly::Two(p + q)),
            (ArithOp::Mul, Poly::One(p), Some(Poly::One(q))) => Ok(Poly::One(p * q)),
            (ArithOp::Mul, Poly::Two(p), Some(Poly::Two(q))) => Ok(Poly::Two(p * q)),
            (ArithOp::Add | ArithOp::Mul, _, Some(_)) => Err(Error::ArityMismatch),
            (ArithOp::Add | ArithOp::Mul, _, None) => Err(Error::ArityMismatch),
            (ArithOp::Scale(k), Poly::One(p), _) => Ok(Poly::One(p.scale(k.clone()))),
            (ArithOp::Scale(k), Poly::Two(p), _) => Ok(Poly::Two(p.scale(k.clone()))),
            (ArithOp::Power(n), Poly::One(p), _) => Ok(Poly::One(p.pow(*n))),
            (ArithOp::Power(n), Poly::Two(p), _) => Ok(Poly::Two(p.pow(*n))),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poly::One(p) => p.fmt(f),
            Poly::Two(p) => p.fmt(f),
        }
    }
}

type RawTerm = (BigInt, Vec<(char, i32)>);

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::PolyParse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<i32> {
        self.skip_ws();
        let paren = self.src.get(self.pos) == Some(&b'(');
        if paren {
            self.pos += 1;
            self.skip_ws();
        }
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let v: i32 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self, coef: &mut BigInt, vars: &mut Vec<(char, i32)>) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                *coef *= d.parse::<BigInt>().unwrap();
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.exponent()?;
                }
                vars.push((c as char, exp));
            }
            _ => return Err(self.err("expected coefficient or variable")),
        }
        Ok(())
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            let mut coef = sign;
            let mut vars = Vec::new();
            self.factor(&mut coef, &mut vars)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut coef, &mut vars)?;
            }
            out.push((coef, vars));
        }
        Ok(out)
    }
}

fn parse_raw(s: &str) -> Result<Vec<RawTerm>> {
    TermParser { src: s.as_bytes(), pos: 0 }.parse()
}

impl Laurent1 {
    /// Parses a one-variable polynomial; a constant-only string gets
    /// `default_var`.
    pub fn parse_with(s: &str, default_var: Var) -> Result<Self> {
        let mut var: Option<Var> = None;
        let mut out = Laurent1::zero(default_var);
        for (coef, vars) in parse_raw(s)? {
            let mut exp = 0;
            for (name, e) in vars {
                let v = match name {
                    't' => Var::T,
                    'A' => Var::A,
                    other => return Err(Error::PolyParse { pos: 0, msg: format!("unknown variable '{other}'") }),
                };
                if var.is_some_and(|w| w != v) {
                    return Err(Error::PolyParse { pos: 0, msg: "mixed variables in one-variable polynomial".into() });
                }
                var = Some(v);
                exp += e;
            }
            out.terms.add_term(exp, coef);
        }
        out.var = var.unwrap_or(default_var);
        Ok(out)
    }
}

impl FromStr for Laurent1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Laurent1::parse_with(s, Var::T)
    }
}

impl FromStr for Laurent2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Laurent2::zero();
        for (coef, vars) in parse_raw(s)? {
            let (mut a, mut u) = (0, 0);
            for (name, e) in vars {
                match name {
                    'A' => a += e,
                    'u' => u += e,
                    other => return Err(Error::PolyParse { pos: 0, msg: format!("unknown variable '{other}'") }),
                }
            }
            out.terms.add_term((a, u), coef);
        }
        Ok(out)
    }
}

/// `-A^2 - A^-2`, the value of a closed circle in the bracket state sum.
pub fn loop_value() -> Laurent1 {
    Laurent1::from_terms(Var::A, [(2, -1), (-2, -1)])
}

/// `(-A)^k`.
pub fn minus_a_pow(k: i32) -> Laurent1 {
    let coef = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    Laurent1::monomial(Var::A, coef, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Laurent1 {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert!((&t("t - 1") + &t("1 - t")).is_zero());
        assert_eq!((&t("t - 1") + &t("1 - t")).to_string(), "0");
    }

    #[test]
    fn unit_product() {
        let p = Laurent1::parse_with("-A^2", Var::A).unwrap();
        let q = Laurent1::parse_with("-A^-2", Var::A).unwrap();
        assert_eq!(&p * &q, Laurent1::one(Var::A));
    }

    #[test]
    fn loop_value_squared() {
        let expect = Laurent1::parse_with("A^4 + 2 + A^-4", Var::A).unwrap();
        assert_eq!(loop_value().pow(2), expect);
        assert_eq!(loop_value().pow(2).to_string(), "A^-4 + 2 + A^4");
    }

    #[test]
    fn substitute_inverse_examples() {
        let f = t("t^-1 - 2 + t");
        assert_eq!(f.substitute_inverse(), f);
        assert_eq!(t("1 - t").substitute_inverse(), t("1 - t^-1"));
        assert!(Laurent1::zero(Var::T).substitute_inverse().is_zero());
    }

    #[test]
    fn signed_degrees() {
        let f = t("t^-1 - 2 + t");
        assert_eq!(f.signed_degree(Sign::Plus), 1);
        assert_eq!(f.signed_degree(Sign::Minus), 1);
        let z = Laurent1::zero(Var::T);
        assert_eq!(z.signed_degree(Sign::Plus), 0);
        assert_eq!(z.signed_degree(Sign::Minus), 0);
        assert_eq!(t("1 - t").signed_degree(Sign::Minus), 0);
        assert_eq!(t("3*t^-4").signed_degree(Sign::Plus), 0);
    }

    #[test]
    fn canonical_rendering() {
        let p: Laurent2 = "u^2*A^-2 - 2*A^-6*u^2 + A^-10*u^2".parse().unwrap();
        assert_eq!((-p).to_string(), "-A^-10*u^2 + 2*A^-6*u^2 - A^-2*u^2");
        assert_eq!(t("-1").to_string(), "-1");
        assert_eq!(t("2*t + t^(-3)").to_string(), "t^-3 + 2*t");
        let q: Laurent2 = "u^-2 + 3".parse().unwrap();
        assert_eq!(q.to_string(), "u^-2 + 3");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<Laurent1>().is_err());
        assert!("t^".parse::<Laurent1>().is_err());
        assert!("t + A".parse::<Laurent1>().is_err());
        assert!("2 t".parse::<Laurent1>().is_err());
        assert!("x".parse::<Laurent2>().is_err());
    }

    #[test]
    fn arity_mismatch() {
        let p = Poly::One(t("t"));
        let q = Poly::Two(Laurent2::one());
        assert!(matches!(p.arith(Some(&q), &ArithOp::Add), Err(Error::ArityMismatch)));
        assert!(p.arith(Some(&p), &ArithOp::Mul).is_ok());
        assert_eq!(p.arith(None, &ArithOp::Power(3)).unwrap(), Poly::One(t("t^3")));
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let p = t("2*t + 3").pow(60);
        assert_eq!(p.coeff(60), BigInt::from(2).pow(60));
        assert_eq!(p.coeff(0), BigInt::from(3).pow(60));
    }

    fn arb_poly() -> impl Strategy<Value = Laurent1> {
        proptest::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(|ts| Laurent1::from_terms(Var::T, ts))
    }

    fn arb_poly2() -> impl Strategy<Value = Laurent2> {
        proptest::collection::vec(((-6i32..6, -4i32..4), -5i64..5), 0..6).prop_map(Laurent2::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn ring_laws_two_vars(p in arb_poly2(), q in arb_poly2()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&(&p + &q) - &q) == p);
        }

        #[test]
        fn degrees_add_under_mul(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let pq = &p * &q;
            prop_assert_eq!(pq.max_degree().unwrap(), p.max_degree().unwrap() + q.max_degree().unwrap());
            prop_assert_eq!(pq.min_degree().unwrap(), p.min_degree().unwrap() + q.min_degree().unwrap());
        }

        #[test]
        fn inverse_is_involution(p in arb_poly(), q in arb_poly2()) {
            prop_assert_eq!(p.substitute_inverse().substitute_inverse(), p);
            prop_assert_eq!(q.substitute_inverse_u().substitute_inverse_u(), q);
        }

        #[test]
        fn render_parse_roundtrip(p in arb_poly(), q in arb_poly2()) {
            prop_assert_eq!(p.to_string().parse::<Laurent1>().unwrap(), p);
            prop_assert_eq!(q.to_string().parse::<Laurent2>().unwrap(), q);
        }
    }
}
