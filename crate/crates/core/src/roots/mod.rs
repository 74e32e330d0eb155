//! Roots of univariate polynomials over valued fields, exact or to a stated
//! precision.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::newton::ValBound;
use crate::poly::MPoly;
use crate::scalars::{rat_mod, ExtRat, FieldConfig, PadicApprox, Rat, ValuedField};

mod expand;
mod hensel;
mod lift;
mod residue;

pub use expand::{newton_puiseux, puiseux_root};
pub use hensel::hensel_root;
pub use lift::{root_prefixes, roots_with_valuation, solve_triangular_prefix, Found, PrefixSolution};
pub use residue::residue_roots;

/// A field element known up to absolute precision: the true value `x`
/// satisfies `val(x - value) >= prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Approx<F: ValuedField> {
    pub value: F::Elem,
    pub prec: ExtRat,
}

impl<F: ValuedField> Approx<F> {
    pub fn exact(value: F::Elem) -> Self {
        Approx { value, prec: ExtRat::Infinity }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_infinite()
    }

    /// What the precision guarantees about the true valuation; `None` for
    /// an exact zero.
    pub fn bound(&self, field: &F) -> Option<ValBound> {
        let v = field.val(&self.value);
        match (&v, &self.prec) {
            (ExtRat::Infinity, ExtRat::Infinity) => None,
            (ExtRat::Finite(a), p) if &ExtRat::Finite(a.clone()) < p => Some(ValBound::Exact(a.clone())),
            (_, ExtRat::Finite(p)) => Some(ValBound::AtLeast(p.clone())),
            (ExtRat::Finite(a), ExtRat::Infinity) => Some(ValBound::Exact(a.clone())),
        }
    }

    /// The value with digits beyond the precision dropped.
    pub fn truncated(self, field: &F) -> Self {
        match &self.prec {
            ExtRat::Finite(p) => Approx { value: field.truncate(&self.value, p), prec: self.prec },
            ExtRat::Infinity => self,
        }
    }
}

pub(crate) fn add<F: ValuedField>(f: &F, a: &Approx<F>, b: &Approx<F>) -> Approx<F> {
    Approx { value: f.add(&a.value, &b.value), prec: a.prec.clone().min(b.prec.clone()) }
}

pub(crate) fn mul<F: ValuedField>(f: &F, a: &Approx<F>, b: &Approx<F>) -> Approx<F> {
    let (va, vb) = (f.val(&a.value), f.val(&b.value));
    let prec = (&va + &b.prec).min(&vb + &a.prec).min(&a.prec + &b.prec);
    Approx { value: f.mul(&a.value, &b.value), prec }.truncated(f)
}

/// `a / b`; requires `b` to have a certified valuation.
pub(crate) fn div<F: ValuedField>(f: &F, a: &Approx<F>, b: &Approx<F>) -> Option<Approx<F>> {
    let vb = match b.bound(f)? {
        ValBound::Exact(v) => v,
        ValBound::AtLeast(_) => return None,
    };
    let inv_prec = match &b.prec {
        ExtRat::Finite(p) => ExtRat::Finite(p - &vb - &vb),
        ExtRat::Infinity => ExtRat::Infinity,
    };
    let inv = Approx { value: f.inv(&b.value).ok()?, prec: inv_prec };
    Some(mul(f, a, &inv))
}

/// Evaluates a polynomial at approximate values for its variables.
pub fn eval_approx<F: ValuedField>(p: &MPoly<F>, point: &[Approx<F>]) -> Approx<F> {
    let f = p.field();
    let mut acc = Approx::exact(f.zero());
    let mut powers: Vec<Vec<Approx<F>>> = point.iter().map(|x| vec![Approx::exact(f.one()), x.clone()]).collect();
    for (e, c) in p.terms() {
        let mut term = Approx::exact(c.clone());
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let cache = &mut powers[v];
            while cache.len() <= k as usize {
                let next = mul(f, cache.last().unwrap(), &cache[1]);
                cache.push(next);
            }
            term = mul(f, &term, &cache[k as usize]);
        }
        acc = add(f, &acc, &term);
    }
    acc.truncated(f)
}

/// Human readable form: exact values print as elements, p-adic integers
/// as residues modulo a prime power, anything else with an error term.
pub fn fmt_approx<F: ValuedField>(field: &F, a: &Approx<F>) -> String {
    let ExtRat::Finite(prec) = &a.prec else {
        return field.fmt_elem(&a.value);
    };
    if let FieldConfig::Padic(p) = field.config() {
        let integral = field.val(&a.value) >= ExtRat::from_int(0);
        if let (true, Some(k), Some(r)) = (integral, prec.to_integer().to_u32().filter(|_| prec.is_integer()), field.as_rat(&a.value)) {
            let m = num_traits::pow(BigInt::from(p), k as usize);
            if let Some(res) = rat_mod(&r, &m) {
                return PadicApprox::new(res, k, p).to_string();
            }
        }
    }
    let sym = field.config().uniformizer_symbol();
    let exp = if prec.is_integer() { prec.to_string() } else { format!("({prec})") };
    if field.is_zero(&a.value) {
        format!("O({sym}^{exp})")
    } else {
        format!("{} + O({sym}^{exp})", field.fmt_elem(&a.value))
    }
}

/// Evaluates a dense univariate polynomial with approximate coefficients at
/// an exact point.
pub(crate) fn eval_dense<F: ValuedField>(f: &F, coeffs: &[Approx<F>], y: &F::Elem) -> Approx<F> {
    let y = Approx::exact(y.clone());
    coeffs.iter().rev().fold(Approx::exact(f.zero()), |acc, c| add(f, &mul(f, &acc, &y), c))
}

pub(crate) fn derivative_dense<F: ValuedField>(f: &F, coeffs: &[Approx<F>]) -> Vec<Approx<F>> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| mul(f, c, &Approx::exact(f.from_int(i as i64)))).collect()
}

pub(crate) fn require_uniformizer_pow<F: ValuedField>(f: &F, w: &Rat) -> Result<F::Elem> {
    f.uniformizer_pow(w).map_err(|e| match e {
        Error::NonIntegralExponent(_) => Error::NoResidueRoot(format!("roots of valuation {w} lie in a ramified extension")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, ratio, Padic, Puiseux, PuiseuxFraction};

    #[test]
    fn precision_bookkeeping() {
        let f = Padic::new(3).unwrap();
        let a = Approx::<Padic> { value: rat(4), prec: ExtRat::from_int(2) };
        let b = Approx::<Padic> { value: rat(1), prec: ExtRat::from_int(2) };
        let d = add(&f, &a, &Approx { value: -b.value.clone(), prec: b.prec.clone() });
        assert_eq!(d.bound(&f), Some(ValBound::Exact(rat(1))));
        let p = mul(&f, &a, &Approx::exact(rat(3)));
        assert_eq!(p.prec, ExtRat::from_int(3));
        let z = Approx::<Padic> { value: rat(9), prec: ExtRat::from_int(2) };
        assert_eq!(z.bound(&f), Some(ValBound::AtLeast(rat(2))));
    }

    #[test]
    fn display_forms() {
        let f = Padic::new(3).unwrap();
        let a = Approx::<Padic> { value: ratio(2, 5), prec: ExtRat::from_int(2) };
        assert_eq!(fmt_approx(&f, &a), "4 mod 3^2");
        let g = Puiseux;
        let b = Approx::<Puiseux> { value: PuiseuxFraction::t(), prec: ExtRat::from_int(3) };
        assert_eq!(fmt_approx(&g, &b), "t + O(t^3)");
        assert_eq!(fmt_approx(&g, &Approx::exact(PuiseuxFraction::t())), "t");
    }
}
