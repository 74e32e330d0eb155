//! Triangular decomposition of zero-dimensional ideals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{univariate, Exponent, MPoly};
use crate::scalars::ValuedField;

/// Polynomials `f_0, …, f_{n-1}` where `f_i` involves only `x_0, …, x_i`
/// and has positive degree in `x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSet<F: ValuedField> {
    polys: Vec<MPoly<F>>,
}

impl<F: ValuedField> TriangularSet<F> {
    pub fn new(mut polys: Vec<MPoly<F>>) -> Result<Self> {
        polys.sort_by_key(|p| p.max_var());
        for (i, p) in polys.iter().enumerate() {
            if p.max_var() != Some(i) {
                return Err(Error::NotTriangular(format!("no polynomial with main variable x{}", i + 1)));
            }
            if p.nvars() != polys.len() {
                return Err(Error::NotTriangular("set size differs from the number of variables".into()));
            }
        }
        Ok(TriangularSet { polys })
    }

    pub fn polys(&self) -> &[MPoly<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Leading coefficient of `f_i` as a polynomial in `x_i`.
    pub fn initial(&self, i: usize) -> MPoly<F> {
        leading_coefficient_in(&self.polys[i], i)
    }
}

fn leading_coefficient_in<F: ValuedField>(p: &MPoly<F>, var: usize) -> MPoly<F> {
    let d = p.degree_in(var);
    let terms = p
        .terms()
        .iter()
        .filter(|(e, _)| e[var] == d)
        .map(|(e, c)| {
            let mut e = e.clone();
            e[var] = 0;
            (e, c.clone())
        })
        .collect();
    MPoly::from_terms(p.field(), p.nvars(), terms)
}

/// Triangular sets whose varieties cover `V(I)`. Components are sorted by
/// their tuples of leading monomials.
pub fn triangular_decomposition<F: ValuedField>(ideal: &Ideal<F>) -> Result<Vec<TriangularSet<F>>> {
    if ideal.is_unit()? {
        return Ok(Vec::new());
    }
    if !ideal.is_zero_dimensional()? {
        return Err(Error::NotZeroDimensional);
    }
    if let Some(t) = already_triangular(ideal)? {
        return Ok(vec![t]);
    }
    let radical = radicalize(ideal)?;
    let mut out = Vec::new();
    split(&radical, &mut out)?;
    let n = ideal.nvars();
    let key = |t: &TriangularSet<F>| -> Vec<Exponent> {
        let order = MonomialOrder::InverseLex;
        t.polys
            .iter()
            .map(|p| p.terms().iter().map(|(e, _)| e.clone()).max_by(|a, b| order.cmp(a, b)).unwrap_or_else(|| vec![0; n]))
            .collect()
    };
    out.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.cmp(&kb)
    });
    Ok(out)
}

/// The generators themselves when they form a triangular set whose
/// initials are invertible modulo the ideal.
fn already_triangular<F: ValuedField>(ideal: &Ideal<F>) -> Result<Option<TriangularSet<F>>> {
    if ideal.gens().len() != ideal.nvars() {
        return Ok(None);
    }
    let Ok(t) = TriangularSet::new(ideal.gens().to_vec()) else {
        return Ok(None);
    };
    for i in 0..t.len() {
        if !ideal.with_generators(&[t.initial(i)]).is_unit()? {
            return Ok(None);
        }
    }
    Ok(Some(t))
}

fn split<F: ValuedField>(ideal: &Ideal<F>, out: &mut Vec<TriangularSet<F>>) -> Result<()> {
    if ideal.is_unit()? {
        return Ok(());
    }
    let n = ideal.nvars();
    let g = ideal.groebner(&MonomialOrder::InverseLex)?;
    let polys = g.polys();
    let mut chosen = Vec::with_capacity(n);
    for i in 0..n {
        // Basis elements come sorted increasingly, so the first hit is minimal.
        let idx = (0..g.len()).find(|&j| polys[j].max_var() == Some(i)).ok_or(Error::NotZeroDimensional)?;
        let h = polys[idx].clone();
        let c = leading_coefficient_in(&h, i);
        if !c.is_constant() {
            let lower: Vec<MPoly<F>> = polys.iter().filter(|p| p.max_var().is_none_or(|v| v < i)).cloned().collect();
            let j = Ideal::new(ideal.field().clone(), n, lower);
            if !j.with_generators(std::slice::from_ref(&c)).is_unit()? {
                split(&radicalize(&ideal.with_generators(std::slice::from_ref(&c)))?, out)?;
                split(&ideal.saturate(&c)?, out)?;
                return Ok(());
            }
        }
        chosen.push(h);
    }
    out.push(TriangularSet::new(chosen)?);
    Ok(())
}

/// Adds the squarefree part of the minimal polynomial of each variable;
/// the result is the radical of a zero-dimensional ideal.
pub fn radicalize<F: ValuedField>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let f = ideal.field();
    let n = ideal.nvars();
    let mut extra = Vec::new();
    for k in 0..n {
        let m = minimal_polynomial(ideal, k)?;
        let s = univariate::squarefree_part(f, &m);
        if s.len() != m.len() {
            extra.push(univariate::to_mpoly(f, &s, n, k));
        }
    }
    if extra.is_empty() {
        return Ok(ideal.clone());
    }
    Ok(ideal.with_generators(&extra))
}

/// Monic generator of `I ∩ K[x_k]` for a zero-dimensional ideal.
pub fn minimal_polynomial<F: ValuedField>(ideal: &Ideal<F>, k: usize) -> Result<Vec<F::Elem>> {
    let f = ideal.field();
    let n = ideal.nvars();
    let g = ideal.degrevlex()?;
    let x = MPoly::var(f, n, k);
    type Row<E> = BTreeMap<Exponent, E>;
    let mut stored: Vec<(Exponent, Row<F::Elem>, Vec<F::Elem>)> = Vec::new();
    let mut power = g.normal_form(&MPoly::one(f, n))?;
    let bound = 10_000;
    for j in 0..bound {
        let mut v: Row<F::Elem> = power.terms().iter().cloned().collect();
        let mut combo = vec![f.zero(); j + 1];
        combo[j] = f.one();
        for (piv, sv, sc) in &stored {
            let Some(a) = v.get(piv).cloned() else { continue };
            let c = f.div(&a, &sv[piv])?;
            for (e, x) in sv {
                let cur = v.get(e).cloned().unwrap_or_else(|| f.zero());
                let nv = f.sub(&cur, &f.mul(&c, x));
                if f.is_zero(&nv) {
                    v.remove(e);
                } else {
                    v.insert(e.clone(), nv);
                }
            }
            for (i, x) in sc.iter().enumerate() {
                combo[i] = f.sub(&combo[i], &f.mul(&c, x));
            }
        }
        if v.is_empty() {
            return Ok(combo);
        }
        let piv = v.keys().next().cloned().expect("nonempty row");
        stored.push((piv, v, combo));
        power = g.normal_form(&(&power * &x))?;
    }
    Err(Error::ResourceLimit(format!("minimal polynomial of degree above {bound}")))
}
