use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{rat, ExtRat, FieldConfig, Rat, ValuedField};
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a rational.
pub fn padic_val(a: &Rat, p: u64) -> ExtRat {
    if a.is_zero() {
        return ExtRat::Infinity;
    }
    let pb = BigInt::from(p);
    ExtRat::from_int(int_val(a.numer(), &pb) - int_val(a.denom(), &pb))
}

/// Representative in `[0, m)` of a rational whose denominator is prime to `m`.
pub(crate) fn rat_mod(a: &Rat, m: &BigInt) -> Option<BigInt> {
    let d = a.denom().mod_floor(m);
    let e = d.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some((a.numer() * e.x).mod_floor(m))
}

/// The rationals with the `p`-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
}

impl Padic {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Padic { p })
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn pb(&self) -> BigInt {
        BigInt::from(self.p)
    }

    fn p_pow(&self, e: i64) -> Rat {
        let base = Rat::from_integer(self.pb());
        if e >= 0 {
            num_traits::pow(base, e as usize)
        } else {
            Rat::one() / num_traits::pow(base, (-e) as usize)
        }
    }
}

impl ValuedField for Padic {
    type Elem = Rat;

    fn config(&self) -> FieldConfig {
        FieldConfig::Padic(self.p)
    }

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn neg(&self, a: &Rat) -> Rat {
        -a
    }

    fn inv(&self, a: &Rat) -> Result<Rat> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }

    fn as_rat(&self, a: &Rat) -> Option<Rat> {
        Some(a.clone())
    }

    fn val(&self, a: &Rat) -> ExtRat {
        padic_val(a, self.p)
    }

    fn leading_residue(&self, a: &Rat) -> Result<Rat> {
        let v = match self.val(a) {
            ExtRat::Infinity => return Err(Error::ZeroInput),
            ExtRat::Finite(v) => v.to_integer().to_i64().expect("valuation fits in i64"),
        };
        let unit = a * self.p_pow(-v);
        Ok(self.reduce_residue(&unit))
    }

    fn reduce_residue(&self, r: &Rat) -> Rat {
        match rat_mod(r, &self.pb()) {
            Some(x) => Rat::from_integer(x),
            None => r.clone(),
        }
    }

    fn uniformizer_pow(&self, e: &Rat) -> Result<Rat> {
        if !e.is_integer() {
            return Err(Error::NonIntegralExponent(e.clone()));
        }
        let e = e.to_integer().to_i64().ok_or_else(|| Error::InvalidInput(format!("exponent {e} out of range")))?;
        Ok(self.p_pow(e))
    }

    fn unit_from_int(&self, q: i64) -> Option<Rat> {
        (q.rem_euclid(self.p as i64) != 0).then(|| rat(q))
    }

    /// Keeps `a` modulo `p^prec`, as `p^v · u` with `u ∈ [0, p^(prec-v))`.
    fn truncate(&self, a: &Rat, prec: &Rat) -> Rat {
        let v = match self.val(a) {
            ExtRat::Infinity => return Rat::zero(),
            ExtRat::Finite(v) => v.to_integer().to_i64().unwrap_or(0),
        };
        let bound = prec.ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        if v >= bound {
            return Rat::zero();
        }
        let k = (bound - v).min(4096) as usize;
        let unit = a * self.p_pow(-v);
        let m = num_traits::pow(self.pb(), k);
        match rat_mod(&unit, &m) {
            Some(u) => Rat::from_integer(u) * self.p_pow(v),
            None => a.clone(),
        }
    }

    fn fmt_elem(&self, a: &Rat) -> String {
        a.to_string()
    }

    fn is_single_term(&self, _a: &Rat) -> bool {
        true
    }
}

/// The coset `residue + p^precision ℤ_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicApprox {
    #[serde(serialize_with = "ser_bigint")]
    pub residue: BigInt,
    pub precision: u32,
    pub prime: u64,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl PadicApprox {
    pub fn new(residue: BigInt, precision: u32, prime: u64) -> Self {
        let m = num_traits::pow(BigInt::from(prime), precision as usize);
        PadicApprox { residue: residue.mod_floor(&m), precision, prime }
    }

    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.prime), self.precision as usize)
    }

    /// True if the rational `a` lies in this coset.
    pub fn contains(&self, a: &Rat) -> bool {
        rat_mod(a, &self.modulus()).is_some_and(|r| r == self.residue)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.prime, self.precision)
    }
}
