//! Dense univariate polynomials over a field, index = exponent.

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::scalars::ValuedField;

pub type UPoly<E> = Vec<E>;

pub fn trim<F: ValuedField>(f: &F, p: &mut UPoly<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<E>(p: &UPoly<E>) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn mul<F: ValuedField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub fn divrem<F: ValuedField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<(UPoly<F::Elem>, UPoly<F::Elem>)> {
    let lb = b.last().ok_or(Error::DivisionByZero)?;
    let inv = f.inv(lb)?;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &inv);
        for (i, y) in b.iter().enumerate() {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, y));
        }
        q[shift] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

pub fn monic<F: ValuedField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = f.inv(l).expect("nonzero leading coefficient");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: ValuedField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y).expect("nonzero divisor");
        x = y;
        y = monic(f, &r);
    }
    monic(f, &x)
}

pub fn derivative<F: ValuedField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let mut out: Vec<F::Elem> = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_int(i as i64))).collect();
    trim(f, &mut out);
    out
}

/// `p / gcd(p, p')`, monic. Valid in characteristic zero.
pub fn squarefree_part<F: ValuedField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let g = gcd(f, a, &derivative(f, a));
    monic(f, &divrem(f, a, &g).expect("gcd is nonzero").0)
}

pub fn eval<F: ValuedField>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Dense coefficients of a polynomial that involves at most variable `var`.
pub fn from_mpoly<F: ValuedField>(p: &MPoly<F>, var: usize) -> Option<UPoly<F::Elem>> {
    let f = p.field();
    let mut out = vec![f.zero(); p.degree_in(var) as usize + 1];
    for (e, c) in p.terms() {
        if e.iter().enumerate().any(|(i, &x)| i != var && x > 0) {
            return None;
        }
        out[e[var] as usize] = c.clone();
    }
    trim(f, &mut out);
    Some(out)
}

pub fn to_mpoly<F: ValuedField>(f: &F, a: &[F::Elem], nvars: usize, var: usize) -> MPoly<F> {
    let terms = a
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            (e, c.clone())
        })
        .collect();
    MPoly::from_terms(f, nvars, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Puiseux, PuiseuxFraction as P};

    fn c(v: &[i64]) -> Vec<P> {
        v.iter().map(|&x| P::constant(rat(x))).collect()
    }

    #[test]
    fn squarefree_removes_repeats() {
        let f = Puiseux;
        // (x-1)^2 (x+2)
        let p = mul(&f, &mul(&f, &c(&[-1, 1]), &c(&[-1, 1])), &c(&[2, 1]));
        assert_eq!(squarefree_part(&f, &p), mul(&f, &c(&[-1, 1]), &c(&[2, 1])));
    }

    #[test]
    fn gcd_over_fractions() {
        let f = Puiseux;
        let t = P::t();
        let a = mul(&f, &[f.neg(&t), f.one()], &c(&[1, 1]));
        let b = mul(&f, &[f.neg(&t), f.one()], &c(&[3, 1]));
        assert_eq!(gcd(&f, &a, &b), vec![f.neg(&t), f.one()]);
        assert!(f.is_zero(&eval(&f, &a, &t)));
    }
}
