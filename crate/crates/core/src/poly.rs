//! Exact Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! [`Laurent1`] is a polynomial in one variable (`A`, or `t^{1/4}` with
//! exponents counted in quarter units) and [`Laurent2`] one in two variables
//! (`l, m` or `a, z`). Both are the same generic [`Laurent`] container keyed by
//! the exponent type.
//!
//! The canonical text form sorts terms by ascending exponent and writes every
//! term as `coef*var^exp`, joined by `" + "`:
//!
//! ```
//! use railknot::poly::{Laurent1, Var1};
//! let p = Laurent1::monomial(Var1::A, -4, -1) + Laurent1::one(Var1::A);
//! assert_eq!(p.to_string(), "-1*A^-4 + 1*A^0");
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {0} vs {1}")]
    TagMismatch(String, String),
    #[error("negative power of a polynomial that is not a unit monomial")]
    NonUnitInverse,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Variable of a one-variable Laurent polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var1 {
    /// The bracket variable `A`.
    A,
    /// The Jones variable `t`, stored with exponents in units of `1/4`.
    TQuarter,
}

/// Variable pair of a two-variable Laurent polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var2 {
    /// HOMFLYPT variables `(l, m)`.
    LM,
    /// Kauffman variables `(a, z)`.
    AZ,
}

impl Display for Var1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var1::A => f.write_str("A"),
            Var1::TQuarter => f.write_str("t^{1/4}"),
        }
    }
}

impl Display for Var2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var2::LM => f.write_str("(l,m)"),
            Var2::AZ => f.write_str("(a,z)"),
        }
    }
}

/// Exponent of a monomial: an integer or a pair of integers.
pub trait Exponent: Copy + Ord + Hash + Debug {
    type Tag: Copy + Eq + Hash + Debug + Display;

    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
    fn times(self, n: i64) -> Self;
    fn write_monomial(self, tag: Self::Tag, out: &mut String);
    fn parse_monomial(text: &str, tag: Self::Tag) -> Result<Self, PolyError>;
}

impl Exponent for i32 {
    type Tag = Var1;

    fn zero() -> Self {
        0
    }

    fn plus(self, other: Self) -> Self {
        self + other
    }

    fn times(self, n: i64) -> Self {
        (self as i64 * n) as i32
    }

    fn write_monomial(self, tag: Var1, out: &mut String) {
        use std::fmt::Write;
        match tag {
            Var1::A => {
                let _ = write!(out, "A^{self}");
            }
            Var1::TQuarter => {
                let g = gcd(self.unsigned_abs(), 4) as i32;
                let (num, den) = (self / g, 4 / g);
                if den == 1 {
                    let _ = write!(out, "t^{num}");
                } else {
                    let _ = write!(out, "t^{num}/{den}");
                }
            }
        }
    }

    fn parse_monomial(text: &str, tag: Var1) -> Result<Self, PolyError> {
        let err = || PolyError::Parse(text.to_string());
        match tag {
            Var1::A => text
                .strip_prefix("A^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(err),
            Var1::TQuarter => {
                let e = text.strip_prefix("t^").ok_or_else(err)?;
                let (num, den) = match e.split_once('/') {
                    Some((n, d)) => (n, d.parse::<i32>().map_err(|_| err())?),
                    None => (e, 1),
                };
                let num: i32 = num.parse().map_err(|_| err())?;
                if den <= 0 || 4 % den != 0 {
                    return Err(err());
                }
                Ok(num * (4 / den))
            }
        }
    }
}

impl Exponent for (i32, i32) {
    type Tag = Var2;

    fn zero() -> Self {
        (0, 0)
    }

    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }

    fn times(self, n: i64) -> Self {
        ((self.0 as i64 * n) as i32, (self.1 as i64 * n) as i32)
    }

    fn write_monomial(self, tag: Var2, out: &mut String) {
        use std::fmt::Write;
        let (x, y) = var2_names(tag);
        let _ = write!(out, "{x}^{}*{y}^{}", self.0, self.1);
    }

    fn parse_monomial(text: &str, tag: Var2) -> Result<Self, PolyError> {
        let err = || PolyError::Parse(text.to_string());
        let (x, y) = var2_names(tag);
        let (first, second) = text.split_once('*').ok_or_else(err)?;
        let i = first
            .strip_prefix(x)
            .and_then(|s| s.strip_prefix('^'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(err)?;
        let j = second
            .strip_prefix(y)
            .and_then(|s| s.strip_prefix('^'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(err)?;
        Ok((i, j))
    }
}

fn var2_names(tag: Var2) -> (&'static str, &'static str) {
    match tag {
        Var2::LM => ("l", "m"),
        Var2::AZ => ("a", "z"),
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A Laurent polynomial with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<E: Exponent> {
    tag: E::Tag,
    terms: BTreeMap<E, BigInt>,
}

pub type Laurent1 = Laurent<i32>;
pub type Laurent2 = Laurent<(i32, i32)>;

impl<E: Exponent> Laurent<E> {
    pub fn zero(tag: E::Tag) -> Self {
        Laurent { tag, terms: BTreeMap::new() }
    }

    pub fn one(tag: E::Tag) -> Self {
        Self::monomial(tag, E::zero(), 1)
    }

    pub fn monomial(tag: E::Tag, exp: E, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(tag);
        p.add_term(exp, coef.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(tag: E::Tag, terms: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero(tag);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn tag(&self) -> E::Tag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&E::zero()).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: E) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(E, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: E, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn check_tag(&self, other: &Self) -> Result<(), PolyError> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(PolyError::TagMismatch(self.tag.to_string(), other.tag.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_tag(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_tag(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_tag(other)?;
        let mut out = Self::zero(self.tag);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies every exponent by a monomial `x^shift`.
    pub fn shift(&self, shift: E) -> Self {
        Laurent {
            tag: self.tag,
            terms: self.terms.iter().map(|(e, c)| (e.plus(shift), c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.tag);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    /// `self^n`. Negative powers are only defined for monomials with coefficient ±1.
    pub fn pow(&self, n: i64) -> Result<Self, PolyError> {
        if n < 0 {
            let (e, c) = self.as_monomial().ok_or(PolyError::NonUnitInverse)?;
            if !c.abs().is_one() {
                return Err(PolyError::NonUnitInverse);
            }
            let coef = if c.is_negative() && n % 2 != 0 { -1 } else { 1 };
            return Ok(Self::monomial(self.tag, e.times(n), coef));
        }
        let mut result = Self::one(self.tag);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Parses the canonical rendering produced by `Display`.
    pub fn parse(text: &str, tag: E::Tag) -> Result<Self, PolyError> {
        let text = text.trim();
        let mut p = Self::zero(tag);
        if text == "0" {
            return Ok(p);
        }
        for term in text.split(" + ") {
            let (coef, mono) = term
                .split_once('*')
                .ok_or_else(|| PolyError::Parse(term.to_string()))?;
            let coef: BigInt = coef.parse().map_err(|_| PolyError::Parse(term.to_string()))?;
            if coef.is_zero() {
                return Err(PolyError::Parse(term.to_string()));
            }
            let exp = E::parse_monomial(mono, tag)?;
            if p.terms.contains_key(&exp) {
                return Err(PolyError::Parse(format!("repeated exponent in {text}")));
            }
            p.add_term(exp, coef);
        }
        Ok(p)
    }
}

impl Laurent1 {
    /// Substitutes `A = t^{-1/4}`: the `A`-exponent `k` becomes the quarter exponent `-k`.
    pub fn substitute_a_to_t(&self) -> Laurent1 {
        debug_assert_eq!(self.tag, Var1::A);
        Laurent {
            tag: Var1::TQuarter,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Exact quotient `self / divisor`, failing if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Laurent1) -> Result<Laurent1, PolyError> {
        self.check_tag(divisor)?;
        let (d_lo, d_hi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(PolyError::NotDivisible),
        };
        let lead = divisor.terms[&d_hi].clone();
        let mut rem = self.clone();
        let mut quot = Laurent1::zero(self.tag);
        while let (Some(r_lo), Some(r_hi)) = (rem.min_exp(), rem.max_exp()) {
            if r_hi - r_lo < d_hi - d_lo {
                return Err(PolyError::NotDivisible);
            }
            let c = &rem.terms[&r_hi];
            if !(c % &lead).is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let q = Laurent1::monomial(self.tag, r_hi - d_hi, c / &lead);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Ok(quot)
    }
}

impl<E: Exponent> Display for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&c.to_string());
            out.push('*');
            e.write_monomial(self.tag, &mut out);
        }
        f.write_str(&out)
    }
}

impl<E: Exponent> Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self)
    }
}

// Operator impls panic on a variable mismatch; use the `checked_*` methods
// when the tags are not known to agree.
macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<E: Exponent> $trait<&Laurent<E>> for &Laurent<E> {
            type Output = Laurent<E>;
            fn $method(self, rhs: &Laurent<E>) -> Laurent<E> {
                self.$checked(rhs).expect("polynomial variable mismatch")
            }
        }
        impl<E: Exponent> $trait<Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;
            fn $method(self, rhs: Laurent<E>) -> Laurent<E> {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent {
            tag: self.tag,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(e: i32, c: i64) -> Laurent1 {
        Laurent1::monomial(Var1::A, e, c)
    }

    #[test]
    fn add_examples() {
        assert_eq!((a(1, 1) + a(-1, 1)).to_string(), "1*A^-1 + 1*A^1");
        assert!((a(3, 2) + a(3, -2)).is_zero());
        assert_eq!((a(2, -1) + a(-2, -1) + a(2, 1)), a(-2, -1));
    }

    #[test]
    fn mul_examples() {
        assert!((a(3, -1) * a(-3, -1)).is_one());
        let delta = a(2, -1) + a(-2, -1);
        assert_eq!(&delta * &delta, a(4, 1) + a(0, 2) + a(-4, 1));
        assert!((&delta * &Laurent1::zero(Var1::A)).is_zero());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(a(3, -1).pow(-2).unwrap(), a(-6, 1));
        assert_eq!(a(3, -1).pow(3).unwrap(), a(9, -1));
        assert_eq!(a(3, -1).pow(-3).unwrap(), a(-9, -1));
        assert!((a(2, -1) + a(-2, -1)).pow(0).unwrap().is_one());
        assert_eq!((a(2, -1) + a(-2, -1)).pow(-1), Err(PolyError::NonUnitInverse));
        assert_eq!(a(1, 2).pow(-1), Err(PolyError::NonUnitInverse));
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let t = Laurent1::one(Var1::TQuarter);
        assert!(matches!(a(0, 1).checked_add(&t), Err(PolyError::TagMismatch(..))));
        assert!(matches!(a(0, 1).checked_mul(&t), Err(PolyError::TagMismatch(..))));
    }

    #[test]
    fn substitution_examples() {
        let t = a(3, -1).substitute_a_to_t();
        assert_eq!(t, Laurent1::monomial(Var1::TQuarter, -3, -1));
        assert_eq!(t.to_string(), "-1*t^-3/4");
        assert!(Laurent1::one(Var1::A).substitute_a_to_t().is_one());
        let d = (a(2, -1) + a(-2, -1)).substitute_a_to_t();
        assert_eq!(d.to_string(), "-1*t^-1/2 + -1*t^1/2");
    }

    #[test]
    fn rendering() {
        assert_eq!(Laurent1::zero(Var1::A).to_string(), "0");
        assert_eq!((a(-4, -1) + a(0, 1)).to_string(), "-1*A^-4 + 1*A^0");
        let p = Laurent2::from_terms(Var2::LM, [((-2, 0), -2), ((-4, 0), -1), ((-2, 2), 1)]);
        assert_eq!(p.to_string(), "-1*l^-4*m^0 + -2*l^-2*m^0 + 1*l^-2*m^2");
        assert_eq!(Laurent2::parse(&p.to_string(), Var2::LM).unwrap(), p);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Laurent1::parse("1*B^2", Var1::A).is_err());
        assert!(Laurent1::parse("0*A^2", Var1::A).is_err());
        assert!(Laurent1::parse("1*A^2 + 1*A^2", Var1::A).is_err());
        assert!(Laurent1::parse("1*t^1/3", Var1::TQuarter).is_err());
    }

    #[test]
    fn exact_division() {
        let d = a(2, 1) - a(-2, 1);
        let p = &(&d * &d) * &(a(5, 3) + a(-1, -7));
        assert_eq!(p.div_exact(&d).unwrap(), &d * &(a(5, 3) + a(-1, -7)));
        assert_eq!((a(0, 1)).div_exact(&d), Err(PolyError::NotDivisible));
        assert_eq!((a(4, 1) + a(0, 1)).div_exact(&d), Err(PolyError::NotDivisible));
    }

    fn arb_l1() -> impl Strategy<Value = Laurent1> {
        prop::collection::vec((-6i32..6, -5i64..5), 0..5)
            .prop_map(|ts| Laurent1::from_terms(Var1::A, ts))
    }

    fn arb_l2() -> impl Strategy<Value = Laurent2> {
        prop::collection::vec(((-3i32..3, -3i32..3), -5i64..5), 0..5)
            .prop_map(|ts| Laurent2::from_terms(Var2::AZ, ts))
    }

    proptest! {
        #[test]
        fn ring_laws_one_var(p in arb_l1(), q in arb_l1(), r in arb_l1()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn ring_laws_two_var(p in arb_l2(), q in arb_l2(), r in arb_l2()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn substitution_is_a_ring_map(p in arb_l1(), q in arb_l1()) {
            prop_assert_eq!((&p + &q).substitute_a_to_t(), &p.substitute_a_to_t() + &q.substitute_a_to_t());
            prop_assert_eq!((&p * &q).substitute_a_to_t(), &p.substitute_a_to_t() * &q.substitute_a_to_t());
        }

        #[test]
        fn render_parse_round_trip(p in arb_l1(), q in arb_l2()) {
            prop_assert_eq!(Laurent1::parse(&p.to_string(), Var1::A).unwrap(), p.clone());
            let t = p.substitute_a_to_t();
            prop_assert_eq!(Laurent1::parse(&t.to_string(), Var1::TQuarter).unwrap(), t);
            prop_assert_eq!(Laurent2::parse(&q.to_string(), Var2::AZ).unwrap(), q);
        }

        #[test]
        fn no_zero_coefficients_stored(p in arb_l1(), q in arb_l1()) {
            let s = &p * &q + -(&p * &q) + p.clone();
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
