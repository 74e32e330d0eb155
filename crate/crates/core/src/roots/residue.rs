use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalars::{denominator_lcm, rat_mod, FieldConfig, Rat};

/// Nonzero roots in the residue field of `Σ r_i y^i`, ascending, with
/// multiplicities, and the number of nonzero roots (with multiplicity) that
/// lie outside the residue field.
pub fn residue_roots(config: FieldConfig, r: &[Rat]) -> (Vec<(Rat, usize)>, usize) {
    let start = r.iter().position(|c| !c.is_zero()).unwrap_or(r.len());
    let end = r.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    if start >= end {
        return (Vec::new(), 0);
    }
    let core = &r[start..end];
    match config {
        FieldConfig::Puiseux => rational_roots(core),
        FieldConfig::Padic(p) => modular_roots(core, p),
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn eval_rat(c: &[Rat], x: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
}

/// Quotient of `c` by `(y - x)`, assuming `x` is a root.
fn deflate(c: &[Rat], x: &Rat) -> Vec<Rat> {
    let n = c.len() - 1;
    let mut q = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for i in (1..=n).rev() {
        carry = &carry * x + &c[i];
        q[i - 1] = carry.clone();
    }
    q
}

fn rational_roots(core: &[Rat]) -> (Vec<(Rat, usize)>, usize) {
    let l = Rat::from_integer(denominator_lcm(core));
    let ints: Vec<BigInt> = core.iter().map(|c| (c * &l).to_integer()).collect();
    let a0 = ints[0].clone();
    let an = ints[ints.len() - 1].clone();
    let mut cands: Vec<Rat> = Vec::new();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            let x = Rat::new(p.clone(), q.clone());
            cands.push(x.clone());
            cands.push(-x);
        }
    }
    cands.sort();
    cands.dedup();
    let mut poly = core.to_vec();
    let mut out = Vec::new();
    for x in cands {
        let mut m = 0;
        while poly.len() > 1 && eval_rat(&poly, &x).is_zero() {
            poly = deflate(&poly, &x);
            m += 1;
        }
        if m > 0 {
            out.push((x, m));
        }
    }
    (out, poly.len() - 1)
}

fn modular_roots(core: &[Rat], p: u64) -> (Vec<(Rat, usize)>, usize) {
    let pb = BigInt::from(p);
    let mut poly: Vec<u128> =
        core.iter().map(|c| rat_mod(c, &pb).expect("residue coefficients are p-integral").to_u128().unwrap()).collect();
    let p = p as u128;
    while poly.last() == Some(&0) {
        poly.pop();
    }
    let eval = |c: &[u128], x: u128| c.iter().rev().fold(0u128, |acc, a| (acc * x + a) % p);
    let mut out = Vec::new();
    for x in 1..p {
        let mut m = 0;
        while poly.len() > 1 && eval(&poly, x) == 0 {
            let n = poly.len() - 1;
            let mut q = vec![0u128; n];
            let mut carry = 0u128;
            for i in (1..=n).rev() {
                carry = (carry * x + poly[i]) % p;
                q[i - 1] = carry;
            }
            poly = q;
            m += 1;
        }
        if m > 0 {
            out.push((Rat::from_integer(BigInt::from(x)), m));
        }
        if poly.len() == 1 {
            break;
        }
    }
    (out, poly.len().saturating_sub(1))
}
