//! Valued coefficient fields.
//!
//! Two fields are supported: fractions of Puiseux polynomials over the
//! rationals with the `t`-adic valuation, and the rationals with a `p`-adic
//! valuation. Both are exposed through [`ValuedField`], a context object that
//! owns the arithmetic, in the style of `ring.add(&a, &b)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;

mod dense;
mod padic;
mod puiseux;

pub(crate) use padic::rat_mod;
pub use padic::{is_prime, padic_val, Padic, PadicApprox};
pub use puiseux::{Puiseux, PuiseuxFraction};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a` or `a/b`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Comma separated rationals, e.g. `0,-2,1/2`.
pub fn parse_rat_list(s: &str) -> Option<Vec<Rat>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators of `v`.
pub fn denominator_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive scaling only). The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|r| (r * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Serializes a rational as the string `a/b` (or `a`).
pub fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Value of a valuation: a rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(rat(n))
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Infinity, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinity, ExtRat::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl Add<&Rat> for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(a) => ExtRat::Finite(a + rhs),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{r}"),
            ExtRat::Infinity => write!(f, "inf"),
        }
    }
}

/// Which valued field a ring is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Puiseux,
    Padic(u64),
}

impl FieldConfig {
    pub fn uniformizer_symbol(&self) -> String {
        match self {
            FieldConfig::Puiseux => "t".to_string(),
            FieldConfig::Padic(p) => p.to_string(),
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Puiseux => write!(f, "puiseux"),
            FieldConfig::Padic(p) => write!(f, "padic {p}"),
        }
    }
}

/// A field with a non-trivial valuation whose value group lies in the
/// rationals and whose residue field is modelled by the rationals (Puiseux)
/// or by `[0, p)` representatives (p-adic).
pub trait ValuedField: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn config(&self) -> FieldConfig;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut n: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_rat(&self, r: &Rat) -> Self::Elem;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rat(&rat(n))
    }

    /// `Some(r)` when `a` is the image of the rational `r`.
    fn as_rat(&self, a: &Self::Elem) -> Option<Rat>;

    fn val(&self, a: &Self::Elem) -> ExtRat;

    /// Residue of `a · u^{-val(a)}` for the uniformizer `u`.
    fn leading_residue(&self, a: &Self::Elem) -> Result<Rat>;

    /// Reduces a rational in the residue field to its canonical representative.
    fn reduce_residue(&self, r: &Rat) -> Rat;

    /// The uniformizer raised to a rational power.
    fn uniformizer_pow(&self, e: &Rat) -> Result<Self::Elem>;

    /// `Some(q)` if the integer `q` is a unit (valuation zero).
    fn unit_from_int(&self, q: i64) -> Option<Self::Elem>;

    /// Drops information below absolute precision `prec`; used to keep
    /// approximate values small. The default keeps `a` unchanged.
    fn truncate(&self, a: &Self::Elem, _prec: &Rat) -> Self::Elem {
        a.clone()
    }

    /// Parseable rendering of an element.
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// True if `fmt_elem(a)` is a single signed term that needs no parentheses
    /// when used as a coefficient.
    fn is_single_term(&self, a: &Self::Elem) -> bool;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn ext_rat_infinity_absorbs_and_dominates() {
        let a = ExtRat::from_int(3);
        assert_eq!(&a + &ExtRat::Infinity, ExtRat::Infinity);
        assert!(ExtRat::Infinity > ExtRat::Finite(rat(1_000_000)));
        assert_eq!(&a + &ExtRat::from_int(-1), ExtRat::from_int(2));
    }

    #[test]
    fn primitive_vectors_keep_direction() {
        let v = vec![ratio(2, 3), ratio(-1, 3), ratio(-1, 3)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-1), BigInt::from(-1)]);
        let w = vec![ratio(-4, 1), rat(0), rat(6)];
        assert_eq!(primitive_integer_vector(&w), vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rat("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat_list("0,-2,1/2"), Some(vec![rat(0), rat(-2), ratio(1, 2)]));
    }

    #[test]
    fn negative_integer_check() {
        assert!(rat(-3).is_negative());
        assert_eq!(rat_to_i64(&ratio(6, 3)), Some(2));
        assert_eq!(rat_to_i64(&ratio(1, 3)), None);
    }
}
