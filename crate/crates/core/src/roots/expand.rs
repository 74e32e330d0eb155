use num_traits::Zero;

use super::{require_uniformizer_pow, residue_roots, Approx};
use crate::error::{Error, Result};
use crate::newton::polygon_of_coefficients;
use crate::scalars::{ExtRat, FieldConfig, Puiseux, PuiseuxFraction, Rat, ValuedField};

/// Coefficients of `f(x + c)`.
pub(crate) fn taylor_shift<F: ValuedField>(field: &F, f: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    let mut a = f.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            a[j] = field.add(&a[j], &field.mul(c, &a[j + 1]));
        }
    }
    a
}

pub(crate) fn fmt_residue_poly(r: &[Rat]) -> String {
    let mut parts = Vec::new();
    for (i, c) in r.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        parts.push(match i {
            0 => c.to_string(),
            1 => format!("{c}*y"),
            _ => format!("{c}*y^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn unresolved_roots<F: ValuedField>(field: &F, r: &[Rat]) -> Error {
    let s = fmt_residue_poly(r);
    match field.config() {
        FieldConfig::Puiseux => Error::IrrationalResidueRoot(s),
        FieldConfig::Padic(p) => Error::NoResidueRoot(format!("{s} does not split modulo {p}")),
    }
}

/// Root expansions of an exact polynomial by repeated Newton polygon steps.
/// Roots whose expansion terminates are exact; the others stop once the
/// next correction has valuation above `bound` and carry that valuation as
/// their precision. With `only`, just the roots of that valuation.
pub fn newton_puiseux<F: ValuedField>(field: &F, f: &[F::Elem], only: Option<&Rat>, bound: &Rat) -> Result<Vec<Approx<F>>> {
    let mut out = Vec::new();
    rec(field, f.to_vec(), None, only, bound, &field.zero(), &mut out)?;
    Ok(out)
}

fn rec<F: ValuedField>(
    field: &F,
    mut f: Vec<F::Elem>,
    above: Option<&Rat>,
    only: Option<&Rat>,
    bound: &Rat,
    base: &F::Elem,
    out: &mut Vec<Approx<F>>,
) -> Result<()> {
    while f.last().is_some_and(|c| field.is_zero(c)) {
        f.pop();
    }
    if f.len() <= 1 {
        return Ok(());
    }
    let zeros = f.iter().position(|c| !field.is_zero(c)).unwrap_or(0);
    if only.is_none() {
        for _ in 0..zeros {
            out.push(Approx::exact(base.clone()));
        }
    }
    let rest = &f[zeros..];
    if rest.len() <= 1 {
        return Ok(());
    }
    let poly = polygon_of_coefficients(field, rest)?;
    for slope in poly.lambda()? {
        let w = &slope.valuation;
        if above.is_some_and(|a| w <= a) || only.is_some_and(|o| w != o) {
            continue;
        }
        if w > bound {
            for _ in 0..slope.multiplicity {
                out.push(Approx { value: base.clone(), prec: ExtRat::Finite(w.clone()) });
            }
            continue;
        }
        let u = require_uniformizer_pow(field, w)?;
        let ((i0, v0), _) = poly.edge_with_valuation(w).expect("slope comes from this polygon");
        let beta = &v0 + Rat::from_integer(i0.into()) * w;
        let r: Vec<Rat> = rest
            .iter()
            .enumerate()
            .map(|(i, c)| match field.val(c) {
                ExtRat::Finite(v) if &v + Rat::from_integer(i.into()) * w == beta => field.leading_residue(c),
                _ => Ok(Rat::zero()),
            })
            .collect::<Result<_>>()?;
        let (roots, missing) = residue_roots(field.config(), &r);
        if missing > 0 {
            return Err(unresolved_roots(field, &r));
        }
        for (rho, _) in roots {
            let c = field.mul(&field.from_rat(&rho), &u);
            let g = taylor_shift(field, rest, &c);
            rec(field, g, Some(w), None, bound, &field.add(base, &c), out)?;
        }
    }
    Ok(())
}

/// Newton–Puiseux expansions of all roots of `f` up to exponent `bound`.
pub fn puiseux_root(f: &[PuiseuxFraction], bound: &Rat) -> Result<Vec<Approx<Puiseux>>> {
    if f.first().is_none_or(|c| c.is_zero()) {
        return Err(Error::ZeroConstantTerm);
    }
    newton_puiseux(&Puiseux, f, None, bound)
}
