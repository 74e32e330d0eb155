use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{denominator_lcm, is_prime, PadicApprox, Rat};

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Roots in `ℤ_p` of `f = Σ f_i x^i` whose residues are simple roots of
/// `f mod p`, each lifted to precision `k`, in ascending order of residue.
pub fn hensel_root(f: &[Rat], p: u64, k: u32) -> Result<Vec<PadicApprox>> {
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let pb = BigInt::from(p);
    let l = Rat::from_integer(denominator_lcm(f));
    let mut ints: Vec<BigInt> = f.iter().map(|c| (c * &l).to_integer()).collect();
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    if ints.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    while ints.iter().all(|c| (c % &pb).is_zero()) {
        for c in ints.iter_mut() {
            *c /= &pb;
        }
    }
    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut simple = Vec::new();
    let mut multiple = Vec::new();
    let mut x = BigInt::zero();
    while x < pb {
        if eval_mod(&ints, &x, &pb).is_zero() {
            if eval_mod(&deriv, &x, &pb).is_zero() {
                multiple.push(x.clone());
            } else {
                simple.push(x.clone());
            }
        }
        x += 1;
    }
    if simple.is_empty() {
        return Err(if multiple.is_empty() {
            Error::NoResidueRoot(format!("no root modulo {p}"))
        } else {
            Error::MultipleResidueRoot(format!("every root modulo {p} is multiple"))
        });
    }
    let m = num_traits::pow(pb.clone(), k as usize);
    let mut out = Vec::with_capacity(simple.len());
    for r in simple {
        let mut x = r;
        while !eval_mod(&ints, &x, &m).is_zero() {
            let d = inverse_mod(&eval_mod(&deriv, &x, &m), &m).expect("derivative is a unit at a simple root");
            x = (&x - eval_mod(&ints, &x, &m) * d).mod_floor(&m);
        }
        out.push(PadicApprox::new(x, k, p));
    }
    Ok(out)
}
