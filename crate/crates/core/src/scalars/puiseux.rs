use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dense;
use super::{rat, ExtRat, FieldConfig, Rat, ValuedField};
use crate::error::{Error, Result};

/// Quotient of two finite Puiseux polynomials over the rationals.
///
/// With `s = t^(1/ram)` the value is `s^shift · num(s) / den(s)` where
/// `num(0) ≠ 0`, `den(0) = 1` and `gcd(num, den) = 1`; `ram` is minimal.
/// This form is canonical, so derived equality and hashing are semantic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PuiseuxFraction {
    ram: u32,
    shift: i64,
    num: Vec<Rat>,
    den: Vec<Rat>,
}

impl PuiseuxFraction {
    pub fn zero() -> Self {
        PuiseuxFraction { ram: 1, shift: 0, num: Vec::new(), den: vec![Rat::one()] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxFraction { ram: 1, shift: 0, num: vec![c], den: vec![Rat::one()] }
    }

    /// `c · t^e`.
    pub fn monomial(c: Rat, e: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let ram = e.denom().to_u32().expect("ramification index fits in u32");
        let shift = e.numer().to_i64().expect("exponent fits in i64");
        PuiseuxFraction { ram, shift, num: vec![c], den: vec![Rat::one()] }
    }

    /// Builds `Σ c·t^e` from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(Rat, Rat)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (e, c)| &acc + &Self::monomial(c.clone(), e))
    }

    pub fn t() -> Self {
        Self::monomial(Rat::one(), &rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// `t`-adic order; `+∞` for zero.
    pub fn val(&self) -> ExtRat {
        if self.is_zero() {
            ExtRat::Infinity
        } else {
            ExtRat::Finite(Rat::new(BigInt::from(self.shift), BigInt::from(self.ram)))
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.num.first()
    }

    /// Numerator terms as `(exponent, coefficient)`, increasing exponent.
    pub fn numerator_terms(&self) -> Vec<(Rat, Rat)> {
        self.exp_terms(&self.num, self.shift)
    }

    pub fn denominator_terms(&self) -> Vec<(Rat, Rat)> {
        self.exp_terms(&self.den, 0)
    }

    fn exp_terms(&self, v: &[Rat], shift: i64) -> Vec<(Rat, Rat)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Rat::new(BigInt::from(shift + i as i64), BigInt::from(self.ram)), c.clone()))
            .collect()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        (self.shift == 0 && self.num.len() == 1 && self.den.len() == 1).then(|| self.num[0].clone())
    }

    fn lifted(&self, ram: u32) -> (i64, Vec<Rat>, Vec<Rat>) {
        let k = (ram / self.ram) as usize;
        if k == 1 {
            return (self.shift, self.num.clone(), self.den.clone());
        }
        let spread = |v: &[Rat]| {
            let mut out = vec![Rat::zero(); (v.len().max(1) - 1) * k + 1];
            for (i, c) in v.iter().enumerate() {
                out[i * k] = c.clone();
            }
            dense::trim(&mut out);
            out
        };
        (self.shift * k as i64, spread(&self.num), spread(&self.den))
    }

    fn normalize(ram: u32, shift: i64, mut num: Vec<Rat>, mut den: Vec<Rat>) -> Self {
        dense::trim(&mut num);
        dense::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let mut shift = shift + dense::strip_low(&mut num) as i64;
        shift -= dense::strip_low(&mut den) as i64;
        if den.len() > 1 {
            let g = dense::gcd(&num, &den);
            if g.len() > 1 {
                num = dense::divrem(&num, &g).0;
                den = dense::divrem(&den, &g).0;
            }
        }
        if !den[0].is_one() {
            let c = Rat::one() / &den[0];
            num = dense::scale(&num, &c);
            den = dense::scale(&den, &c);
        }
        let mut g = (ram as i64).gcd(&shift);
        for (i, c) in num.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(i as i64));
            }
        }
        for (j, c) in den.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(j as i64));
            }
        }
        if g > 1 {
            let g = g as usize;
            let compress = |v: &[Rat]| v.iter().step_by(g).cloned().collect::<Vec<_>>();
            num = compress(&num);
            den = compress(&den);
            return PuiseuxFraction { ram: ram / g as u32, shift: shift / g as i64, num, den };
        }
        PuiseuxFraction { ram, shift, num, den }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let ram = self.ram.lcm(&other.ram);
        let (sa, na, da) = self.lifted(ram);
        let (sb, nb, db) = other.lifted(ram);
        let m = sa.min(sb);
        let (sa, sb) = ((sa - m) as usize, (sb - m) as usize);
        if da == db {
            let num = dense::add_shifted(&na, sa, &nb, sb, negate);
            return Self::normalize(ram, m, num, da);
        }
        let left = dense::mul(&na, &db);
        let right = dense::mul(&nb, &da);
        let num = dense::add_shifted(&left, sa, &right, sb, negate);
        Self::normalize(ram, m, num, dense::mul(&da, &db))
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let ram = self.ram.lcm(&other.ram);
        let (sa, na, da) = self.lifted(ram);
        let (sb, nb, db) = other.lifted(ram);
        let den = if dense::is_one(&da) {
            db
        } else if dense::is_one(&db) {
            da
        } else {
            dense::mul(&da, &db)
        };
        Self::normalize(ram, sa + sb, dense::mul(&na, &nb), den)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.ram, -self.shift, self.den.clone(), self.num.clone()))
    }

    /// Power series expansion truncated to terms with exponent `< bound`.
    pub fn truncate_below(&self, bound: &Rat) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let limit = bound * Rat::from_integer(BigInt::from(self.ram)) - Rat::from_integer(BigInt::from(self.shift));
        let count = limit.ceil().to_integer().to_i64().unwrap_or(i64::MAX).clamp(0, 1 << 16) as usize;
        if count == 0 {
            return Self::zero();
        }
        let mut series = vec![Rat::zero(); count];
        if self.den.len() == 1 {
            for (i, c) in self.num.iter().take(count).enumerate() {
                series[i] = c.clone();
            }
        } else {
            let mut inv = vec![Rat::zero(); count];
            inv[0] = Rat::one();
            for k in 1..count {
                let mut acc = Rat::zero();
                for j in 1..=k.min(self.den.len() - 1) {
                    acc -= &self.den[j] * &inv[k - j];
                }
                inv[k] = acc;
            }
            for (i, a) in self.num.iter().enumerate().take(count) {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in inv.iter().enumerate().take(count - i) {
                    series[i + j] += a * b;
                }
            }
        }
        Self::normalize(self.ram, self.shift, series, vec![Rat::one()])
    }

    fn fmt_laurent(&self, v: &[Rat], shift: i64, out: &mut String) {
        let terms = self.exp_terms(v, shift);
        let mut first = true;
        for (e, c) in terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let exp = fmt_t_power(e);
            match exp {
                None => out.push_str(&abs.to_string()),
                Some(tp) if abs.is_one() => out.push_str(&tp),
                Some(tp) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&tp);
                }
            }
        }
    }
}

fn fmt_t_power(e: &Rat) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some("t".to_string())
    } else if e.is_integer() && e.is_positive() {
        Some(format!("t^{e}"))
    } else {
        Some(format!("t^({e})"))
    }
}

impl fmt::Display for PuiseuxFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        if self.den.len() == 1 {
            self.fmt_laurent(&self.num, self.shift, &mut s);
        } else {
            s.push('(');
            self.fmt_laurent(&self.num, self.shift, &mut s);
            s.push_str(")/(");
            self.fmt_laurent(&self.den, 0, &mut s);
            s.push(')');
        }
        f.write_str(&s)
    }
}

impl Add for &PuiseuxFraction {
    type Output = PuiseuxFraction;
    fn add(self, rhs: &PuiseuxFraction) -> PuiseuxFraction {
        self.combine(rhs, false)
    }
}

impl Sub for &PuiseuxFraction {
    type Output = PuiseuxFraction;
    fn sub(self, rhs: &PuiseuxFraction) -> PuiseuxFraction {
        self.combine(rhs, true)
    }
}

impl Mul for &PuiseuxFraction {
    type Output = PuiseuxFraction;
    fn mul(self, rhs: &PuiseuxFraction) -> PuiseuxFraction {
        self.times(rhs)
    }
}

impl Neg for &PuiseuxFraction {
    type Output = PuiseuxFraction;
    fn neg(self) -> PuiseuxFraction {
        PuiseuxFraction { ram: self.ram, shift: self.shift, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

/// The field of Puiseux fractions with the `t`-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Puiseux;

impl ValuedField for Puiseux {
    type Elem = PuiseuxFraction;

    fn config(&self) -> FieldConfig {
        FieldConfig::Puiseux
    }

    fn zero(&self) -> PuiseuxFraction {
        PuiseuxFraction::zero()
    }

    fn one(&self) -> PuiseuxFraction {
        PuiseuxFraction::one()
    }

    fn is_zero(&self, a: &PuiseuxFraction) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &PuiseuxFraction, b: &PuiseuxFraction) -> PuiseuxFraction {
        a + b
    }

    fn sub(&self, a: &PuiseuxFraction, b: &PuiseuxFraction) -> PuiseuxFraction {
        a - b
    }

    fn mul(&self, a: &PuiseuxFraction, b: &PuiseuxFraction) -> PuiseuxFraction {
        a * b
    }

    fn neg(&self, a: &PuiseuxFraction) -> PuiseuxFraction {
        -a
    }

    fn inv(&self, a: &PuiseuxFraction) -> Result<PuiseuxFraction> {
        a.inverse()
    }

    fn from_rat(&self, r: &Rat) -> PuiseuxFraction {
        PuiseuxFraction::constant(r.clone())
    }

    fn as_rat(&self, a: &PuiseuxFraction) -> Option<Rat> {
        a.as_constant()
    }

    fn val(&self, a: &PuiseuxFraction) -> ExtRat {
        a.val()
    }

    fn leading_residue(&self, a: &PuiseuxFraction) -> Result<Rat> {
        a.leading_coefficient().cloned().ok_or(Error::ZeroInput)
    }

    fn reduce_residue(&self, r: &Rat) -> Rat {
        r.clone()
    }

    fn uniformizer_pow(&self, e: &Rat) -> Result<PuiseuxFraction> {
        if e.denom().to_u32().is_none() || e.numer().to_i64().is_none() {
            return Err(Error::InvalidInput(format!("exponent {e} out of range")));
        }
        Ok(PuiseuxFraction::monomial(Rat::one(), e))
    }

    fn unit_from_int(&self, q: i64) -> Option<PuiseuxFraction> {
        (q != 0).then(|| PuiseuxFraction::constant(rat(q)))
    }

    fn truncate(&self, a: &PuiseuxFraction, prec: &Rat) -> PuiseuxFraction {
        a.truncate_below(prec)
    }

    fn fmt_elem(&self, a: &PuiseuxFraction) -> String {
        a.to_string()
    }

    fn is_single_term(&self, a: &PuiseuxFraction) -> bool {
        a.num.iter().filter(|c| !c.is_zero()).count() <= 1 && a.den.len() == 1
    }
}
