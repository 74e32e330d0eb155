use num_traits::Zero;

use super::expand::unresolved_roots;
use super::{derivative_dense, div, eval_approx, eval_dense, mul, newton_puiseux, require_uniformizer_pow, residue_roots, Approx};
use crate::error::{Error, Result};
use crate::newton::{certified_polygon, NewtonPolygon, ValBound};
use crate::scalars::{rat, ExtRat, FieldConfig, Rat, ValuedField};
use crate::triangular::TriangularSet;

/// Outcome of a computation on approximate data.
#[derive(Clone, Debug, PartialEq)]
pub enum Found<T> {
    Done(T),
    /// The data are too coarse to decide; retry with more precision.
    NeedPrecision,
}

const MAX_NEWTON_STEPS: usize = 200;

/// Roots of valuation `w` of `Σ a_i x^i` whose coefficients are known
/// approximately, each to relative precision `k` when the data allow it.
pub fn roots_with_valuation<F: ValuedField>(field: &F, coeffs: &[Approx<F>], w: &Rat, k: u32) -> Result<Found<Vec<Approx<F>>>> {
    if coeffs.first().is_none_or(|c| c.bound(field).is_none()) {
        return Err(Error::ZeroConstantTerm);
    }
    let points: Vec<(usize, ValBound)> = coeffs.iter().enumerate().filter_map(|(i, c)| c.bound(field).map(|b| (i, b))).collect();
    let Some(poly) = certified_polygon(&points) else {
        return Ok(Found::NeedPrecision);
    };
    if poly.vertices().len() < 2 {
        return Err(Error::DegeneratePolygon);
    }
    let Some(((i0, v0), _)) = poly.edge_with_valuation(w) else {
        return Ok(Found::Done(Vec::new()));
    };
    let exact = coeffs.iter().all(|c| c.is_exact());
    if exact && coeffs.len() == 2 {
        let root = field.neg(&field.div(&coeffs[0].value, &coeffs[1].value)?);
        return Ok(Found::Done(vec![Approx::exact(root)]));
    }
    let u = require_uniformizer_pow(field, w)?;
    let beta = &v0 + Rat::from_integer(i0.into()) * w;
    let mut scaled = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        let e = Rat::from_integer(i.into()) * w - &beta;
        scaled.push(mul(field, c, &Approx::exact(require_uniformizer_pow(field, &e)?)));
    }
    let mut residue = Vec::with_capacity(scaled.len());
    for c in &scaled {
        residue.push(match c.bound(field) {
            None => Rat::zero(),
            Some(ValBound::Exact(v)) if v.is_zero() => field.leading_residue(&c.value)?,
            Some(ValBound::Exact(v)) if v > Rat::zero() => Rat::zero(),
            Some(ValBound::AtLeast(p)) if p > Rat::zero() => Rat::zero(),
            _ => return Ok(Found::NeedPrecision),
        });
    }
    let (roots, missing) = residue_roots(field.config(), &residue);
    if missing > 0 {
        return Err(unresolved_roots(field, &residue));
    }
    if roots.iter().any(|(_, m)| *m > 1) {
        if exact && field.config() == FieldConfig::Puiseux {
            let values: Vec<F::Elem> = coeffs.iter().map(|c| c.value.clone()).collect();
            return Ok(Found::Done(newton_puiseux(field, &values, Some(w), &(w + rat(k as i64)))?));
        }
        let s = super::expand::fmt_residue_poly(&residue);
        return Err(Error::MultipleResidueRoot(format!("residue polynomial {s} at valuation {w}")));
    }
    let mut out = Vec::with_capacity(roots.len());
    for (rho, _) in roots {
        match lift(field, &scaled, &rho, k)? {
            Found::NeedPrecision => return Ok(Found::NeedPrecision),
            Found::Done(y) => {
                let prec = &y.prec + w;
                out.push(Approx { value: field.mul(&u, &y.value), prec }.truncated(field));
            }
        }
    }
    Ok(Found::Done(out))
}

/// Newton iteration from the simple residue root `rho` of an integral
/// polynomial, stopping at precision `k` or when the data stop improving.
/// Each step is certified by `val(G(y)) > 2 val(G'(y))`, which guarantees a
/// root within `val(G(y)) - val(G'(y))`.
fn lift<F: ValuedField>(field: &F, g: &[Approx<F>], rho: &Rat, k: u32) -> Result<Found<Approx<F>>> {
    let dg = derivative_dense(field, g);
    let target = rat(k as i64);
    let mut y = field.from_rat(rho);
    let mut best: Option<ExtRat> = None;
    for _ in 0..MAX_NEWTON_STEPS {
        let gy = eval_dense(field, g, &y);
        let dy = eval_dense(field, &dg, &y);
        let e = field.val(&gy.value).min(gy.prec.clone());
        let d = match dy.bound(field) {
            Some(ValBound::Exact(d)) => d,
            _ => return Ok(Found::NeedPrecision),
        };
        if e <= ExtRat::Finite(&d + &d) {
            return Ok(Found::NeedPrecision);
        }
        let prec = match &e {
            ExtRat::Infinity => return Ok(Found::Done(Approx::exact(y))),
            ExtRat::Finite(e) => e - &d,
        };
        if prec >= target {
            return Ok(Found::Done(Approx { value: y, prec: ExtRat::Finite(target) }.truncated(field)));
        }
        if best.as_ref().is_some_and(|b| ExtRat::Finite(prec.clone()) <= *b) {
            return Ok(Found::Done(Approx { value: y, prec: ExtRat::Finite(prec) }.truncated(field)));
        }
        best = Some(ExtRat::Finite(prec));
        let step = div(field, &Approx::exact(gy.value), &Approx::exact(dy.value)).expect("derivative has a certified valuation");
        y = field.truncate(&field.sub(&y, &step.value), &(&target + rat(1)));
    }
    Ok(Found::NeedPrecision)
}

/// Coefficients in `x_level` of `f` at an approximate prefix point.
pub(crate) fn coefficients_at<F: ValuedField>(tri: &TriangularSet<F>, level: usize, prefix: &[Approx<F>]) -> Result<Vec<Approx<F>>> {
    let f = &tri.polys()[level];
    let field = f.field();
    let mut point = prefix.to_vec();
    point.resize(f.nvars(), Approx::exact(field.zero()));
    Ok(f.coefficients_wrt(level)?.iter().map(|c| eval_approx(c, &point)).collect())
}

/// All common roots of `f_0, …, f_{level-1}` with valuations `w`, each
/// coordinate to relative precision `k` where possible.
pub fn root_prefixes<F: ValuedField>(tri: &TriangularSet<F>, level: usize, w: &[Rat], k: u32) -> Result<Found<Vec<Vec<Approx<F>>>>> {
    let field = tri.polys()[0].field();
    let mut prefixes: Vec<Vec<Approx<F>>> = vec![Vec::new()];
    for (j, wj) in w.iter().enumerate().take(level) {
        let mut next = Vec::new();
        for pre in &prefixes {
            let coeffs = coefficients_at(tri, j, pre)?;
            match roots_with_valuation(field, &coeffs, wj, k)? {
                Found::NeedPrecision => return Ok(Found::NeedPrecision),
                Found::Done(roots) => {
                    let mut seen: Vec<Approx<F>> = Vec::new();
                    for r in roots {
                        if !seen.contains(&r) {
                            seen.push(r.clone());
                            let mut p = pre.clone();
                            p.push(r);
                            next.push(p);
                        }
                    }
                }
            }
        }
        prefixes = next;
    }
    Ok(Found::Done(prefixes))
}

/// Root prefixes together with the certified polygon of the next
/// polynomial at each of them.
#[derive(Clone, Debug)]
pub struct PrefixSolution<F: ValuedField> {
    /// Relative precision at which every polygon was certified.
    pub precision: u32,
    pub branches: Vec<(Vec<Approx<F>>, NewtonPolygon)>,
}

/// Raises the precision `2, 4, 8, …` up to `cap` until the polygon of
/// `f_level` is certified at every root prefix with valuations `w`.
pub fn solve_triangular_prefix<F: ValuedField>(tri: &TriangularSet<F>, level: usize, w: &[Rat], cap: u32) -> Result<PrefixSolution<F>> {
    let field = tri.polys()[0].field();
    let mut k = 2.min(cap.max(1));
    loop {
        if let Found::Done(prefixes) = root_prefixes(tri, level, w, k)? {
            if prefixes.is_empty() {
                return Err(Error::NoResidueRoot(format!("no common root with valuations below level {}", level + 1)));
            }
            let mut branches = Vec::with_capacity(prefixes.len());
            for pre in prefixes {
                let coeffs = coefficients_at(tri, level, &pre)?;
                if coeffs[0].bound(field).is_none() {
                    return Err(Error::ZeroConstantTerm);
                }
                let points: Vec<(usize, ValBound)> =
                    coeffs.iter().enumerate().filter_map(|(i, c)| c.bound(field).map(|b| (i, b))).collect();
                match certified_polygon(&points) {
                    Some(p) => branches.push((pre, p)),
                    None => break,
                }
            }
            if branches.len() == branches.capacity() {
                return Ok(PrefixSolution { precision: k, branches });
            }
        }
        if k >= cap {
            return Err(Error::InsufficientPrecision { level, cap });
        }
        k = (2 * k).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MPoly, Ring};
    use crate::roots::fmt_approx;
    use crate::scalars::{Padic, Puiseux, PuiseuxFraction};

    fn padic_digits() -> TriangularSet<Padic> {
        let f = Padic::new(3).unwrap();
        let r = Ring::new(f, vec!["x1".into(), "x2".into(), "x3".into()]);
        let (x1, x2, x3) = (r.var(0), r.var(1), r.var(2));
        let c = |v: i64| r.constant(rat(v));
        let f1 = &(&x1.pow(2) + &(&c(3) * &x1)) - &c(1);
        let f2 = &(&x2.pow(2) + &(&c(9) * &x2)) - &c(1);
        let f3 = &(&(&c(3) * &x3.pow(2)) + &(&(&x1 - &x2) * &x3)) + &c(1);
        TriangularSet::new(vec![f1, f2, f3]).unwrap()
    }

    #[test]
    fn padic_prefix_of_three_variable_example() {
        let t = padic_digits();
        let f = Padic::new(3).unwrap();
        let sol = solve_triangular_prefix(&t, 2, &[rat(0), rat(0)], 64).unwrap();
        assert_eq!(sol.precision, 2);
        let (pre, poly) = &sol.branches[0];
        let shown: Vec<String> = pre.iter().map(|a| fmt_approx(&f, a)).collect();
        assert_eq!(shown, vec!["4 mod 3^2", "1 mod 3^2"]);
        assert_eq!(poly.vertices(), &[(0, rat(0)), (2, rat(1))]);
        assert_eq!(sol.branches.len(), 4);
    }

    #[test]
    fn exact_linear_prefix() {
        let r = Ring::new(Puiseux, vec!["x1".into(), "x2".into()]);
        let t2 = r.constant(PuiseuxFraction::monomial(rat(1), &rat(2)));
        let f1 = &r.var(0) - &t2;
        let f2: MPoly<Puiseux> = &(&r.var(1) * &r.var(1)) - &r.var(0);
        let t = TriangularSet::new(vec![f1, f2]).unwrap();
        let sol = solve_triangular_prefix(&t, 1, &[rat(2)], 64).unwrap();
        assert!(sol.branches[0].0[0].is_exact());
        assert_eq!(sol.branches[0].0[0].value, PuiseuxFraction::monomial(rat(1), &rat(2)));
    }

    #[test]
    fn irrational_prefix() {
        let r = Ring::new(Puiseux, vec!["x1".into(), "x2".into()]);
        let two = r.constant(PuiseuxFraction::constant(rat(2)));
        let f1 = &r.var(0).pow(2) - &two;
        let f2 = &r.var(1) - &r.var(0);
        let t = TriangularSet::new(vec![f1, f2]).unwrap();
        assert!(matches!(solve_triangular_prefix(&t, 1, &[rat(0)], 64), Err(Error::IrrationalResidueRoot(_))));
    }

    #[test]
    fn approximate_puiseux_root() {
        // x^2 + x - t has the simple root t - t^2 + 2t^3 - ...
        let f = Puiseux;
        let coeffs =
            vec![Approx::exact(f.neg(&PuiseuxFraction::t())), Approx::exact(PuiseuxFraction::one()), Approx::exact(PuiseuxFraction::one())];
        let Found::Done(r) = roots_with_valuation(&f, &coeffs, &rat(1), 3).unwrap() else { panic!() };
        assert_eq!(r.len(), 1);
        let expect = PuiseuxFraction::from_terms(&[(rat(1), rat(1)), (rat(2), rat(-1)), (rat(3), rat(2))]);
        assert_eq!(r[0].value, expect);
        assert_eq!(r[0].prec, ExtRat::from_int(4));
    }
}
