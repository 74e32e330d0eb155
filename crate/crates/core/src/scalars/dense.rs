//! Dense univariate polynomials over the rationals, index = exponent.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rat;

pub(crate) fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Removes leading zero coefficients, returning how many were removed.
pub(crate) fn strip_low(p: &mut Vec<Rat>) -> usize {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        p.drain(..k);
    }
    k
}

pub(crate) fn add_shifted(a: &[Rat], a_shift: usize, b: &[Rat], b_shift: usize, negate_b: bool) -> Vec<Rat> {
    let len = (a.len() + a_shift).max(b.len() + b_shift);
    let mut out = vec![Rat::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i + a_shift] += c;
    }
    for (i, c) in b.iter().enumerate() {
        if negate_b {
            out[i + b_shift] -= c;
        } else {
            out[i + b_shift] += c;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn is_one(a: &[Rat]) -> bool {
    a.len() == 1 && a[0].is_one()
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().expect("divisor is nonzero").clone();
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let x = primitive(a);
    let y = primitive(b);
    if x.is_empty() || y.is_empty() {
        let z = if x.is_empty() { y } else { x };
        return monic(&z);
    }
    monic(&gcd_int(&x, &y))
}

fn monic(a: &[BigInt]) -> Vec<Rat> {
    match a.last() {
        Some(l) => a.iter().map(|c| Rat::new(c.clone(), l.clone())).collect(),
        None => Vec::new(),
    }
}

/// Integer multiple of `a` with coprime coefficients.
fn primitive(a: &[Rat]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    trim(&mut a);
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_int(&a.iter().map(|c| c.numer() * (&l / c.denom())).collect::<Vec<_>>())
}

fn primitive_int(a: &[BigInt]) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = a.iter().map(|c| c / &g).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Primes just below `2^31`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| search_primes(1 << 31).take(256).collect());
    let below = *cached.last().unwrap();
    cached.iter().copied().chain(search_primes(below))
}

fn search_primes(below: u64) -> impl Iterator<Item = u64> {
    (1u64 << 20..below).rev().filter(|&p| p % 2 == 1 && super::is_prime(p))
}

/// Gcd of two nonzero primitive integer polynomials, up to sign: images
/// modulo several primes, combined by CRT until the lift divides both.
fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let lc = la.gcd(lb);
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes() {
        let q = BigInt::from(p);
        if (la % &q).is_zero() || (lb % &q).is_zero() {
            continue;
        }
        let g = gcd_mod(&reduce_mod(a, p), &reduce_mod(b, p), p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        if !acc.is_empty() && g.len() > acc.len() {
            continue;
        }
        // Scale so the leading coefficient is the image of `lc`.
        let s = (&lc % &q + &q) % &q;
        let s = s.to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, s, p)).collect();
        if acc.is_empty() || g.len() < acc.len() {
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = q;
            last = None;
            continue;
        }
        // CRT: x = acc mod M, x = g mod p.
        let m_inv = BigInt::from(pow_mod((&modulus % &q).to_u64().unwrap(), p - 2, p));
        for (x, &c) in acc.iter_mut().zip(&g) {
            let diff = ((BigInt::from(c) - (&*x % &q)) % &q + &q) % &q;
            let t = (diff * &m_inv) % &q;
            *x += &modulus * t;
        }
        modulus *= &q;
        let half = &modulus / 2;
        let candidate = primitive_int(&acc.iter().map(|x| if *x > half { x - &modulus } else { x.clone() }).collect::<Vec<_>>());
        if last.as_ref() == Some(&candidate) && divides_exactly(&candidate, a) && divides_exactly(&candidate, b) {
            return candidate;
        }
        last = Some(candidate);
    }
    unreachable!("ran out of primes")
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let q = BigInt::from(p);
    a.iter().map(|c| c.mod_floor(&q).to_u64().unwrap()).collect()
}

/// Monic gcd over `Z/p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    for v in [&mut x, &mut y] {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    while !y.is_empty() {
        let ly = pow_mod(*y.last().unwrap(), p - 2, p);
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().unwrap(), ly, p);
            let shift = x.len() - y.len();
            for (i, v) in y.iter().enumerate() {
                x[i + shift] = (x[i + shift] + p - mul_mod(c, *v, p)) % p;
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    let l = pow_mod(*x.last().unwrap(), p - 2, p);
    x.iter().map(|&c| mul_mod(c, l, p)).collect()
}

/// Whether `d` divides `a` in `Z[x]`.
fn divides_exactly(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let ld = d.last().unwrap();
    while r.len() >= d.len() {
        let (c, rem) = r.last().unwrap().div_rem(ld);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - d.len();
        for (i, y) in d.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r.is_empty()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}
