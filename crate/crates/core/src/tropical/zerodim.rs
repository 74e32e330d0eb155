use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::newton::{expected_polygon, is_unique_at, NewtonPolygon};
use crate::roots::{fmt_approx, solve_triangular_prefix};
use crate::scalars::{Rat, ValuedField};
use crate::triangular::TriangularSet;

use super::TropicalPoint;

#[derive(Clone, Debug)]
pub struct ZeroDimConfig {
    /// Largest relative precision tried when a polygon has to be computed
    /// from approximate roots.
    pub precision_cap: u32,
}

impl Default for ZeroDimConfig {
    fn default() -> Self {
        ZeroDimConfig { precision_cap: 64 }
    }
}

/// What happened at one variable level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelChoice {
    pub level: usize,
    pub vertices: Vec<(usize, Rat)>,
    pub chosen: Rat,
    /// The polygon was determined by the valuations alone.
    pub unique: bool,
    /// Precision at which the polygon was certified from approximate roots.
    pub fallback_precision: Option<u32>,
    /// The approximate lower coordinates used by the fallback.
    pub prefix: Option<Vec<String>>,
}

pub type ChoiceTrace = Vec<LevelChoice>;

fn at_level(level: usize, e: Error) -> Error {
    match e {
        Error::DegeneratePolygon | Error::ZeroConstantTerm => Error::NonTorusVariety(format!("level {}: {e}", level + 1)),
        other => other,
    }
}

fn check_shape<F: ValuedField>(tri: &TriangularSet<F>) -> Result<usize> {
    let n = tri.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty triangular set".into()));
    }
    Ok(n)
}

/// One candidate polygon per branch at `level`, with the fallback
/// precision when the valuations alone do not determine it.
struct Polygons {
    unique: bool,
    precision: Option<u32>,
    branches: Vec<(Option<Vec<String>>, NewtonPolygon)>,
}

fn polygons<F: ValuedField>(tri: &TriangularSet<F>, level: usize, w: &[Rat], cfg: &ZeroDimConfig) -> Result<Polygons> {
    let f = &tri.polys()[level];
    let expected = expected_polygon(f, level, w).map_err(|e| at_level(level, e))?;
    if level == 0 || is_unique_at(f, level, w)? {
        return Ok(Polygons { unique: true, precision: None, branches: vec![(None, expected)] });
    }
    let field = f.field();
    let sol = solve_triangular_prefix(tri, level, w, cfg.precision_cap).map_err(|e| at_level(level, e))?;
    let branches = sol.branches.into_iter().map(|(pre, poly)| (Some(pre.iter().map(|a| fmt_approx(field, a)).collect()), poly)).collect();
    Ok(Polygons { unique: false, precision: Some(sol.precision), branches })
}

/// A point of the tropical variety of `⟨tri⟩`, choosing the largest root
/// valuation at every level.
pub fn zero_dim_point<F: ValuedField>(tri: &TriangularSet<F>, cfg: &ZeroDimConfig) -> Result<(TropicalPoint, ChoiceTrace)> {
    let n = check_shape(tri)?;
    let mut w: Vec<Rat> = Vec::with_capacity(n);
    let mut trace = Vec::with_capacity(n);
    for level in 0..n {
        let p = polygons(tri, level, &w, cfg)?;
        let (prefix, poly) = p.branches.into_iter().next().expect("at least one branch");
        let lambda = poly.lambda().map_err(|e| at_level(level, e))?;
        let chosen = lambda[0].valuation.clone();
        trace.push(LevelChoice {
            level,
            vertices: poly.vertices().to_vec(),
            chosen: chosen.clone(),
            unique: p.unique,
            fallback_precision: p.precision,
            prefix,
        });
        w.push(chosen);
    }
    Ok((w, trace))
}

/// All points reachable by exhausting every root valuation at every level.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroDimVariety {
    pub points: BTreeSet<TropicalPoint>,
    /// Number of level visits that needed approximate roots.
    pub fallbacks: usize,
}

pub fn zero_dim_variety<F: ValuedField>(tri: &TriangularSet<F>, cfg: &ZeroDimConfig) -> Result<ZeroDimVariety> {
    let n = check_shape(tri)?;
    let mut out = ZeroDimVariety::default();
    let mut w = Vec::with_capacity(n);
    explore(tri, cfg, &mut w, &mut out)?;
    Ok(out)
}

fn explore<F: ValuedField>(tri: &TriangularSet<F>, cfg: &ZeroDimConfig, w: &mut Vec<Rat>, out: &mut ZeroDimVariety) -> Result<()> {
    let level = w.len();
    if level == tri.len() {
        out.points.insert(w.clone());
        return Ok(());
    }
    let p = polygons(tri, level, w, cfg)?;
    if !p.unique {
        out.fallbacks += 1;
    }
    let mut values = BTreeSet::new();
    for (_, poly) in &p.branches {
        for s in poly.lambda().map_err(|e| at_level(level, e))? {
            values.insert(s.valuation);
        }
    }
    for v in values.into_iter().rev() {
        w.push(v);
        explore(tri, cfg, w, out)?;
        w.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MPoly, Ring};
    use crate::scalars::{rat, ratio, Padic, Puiseux, PuiseuxFraction};

    fn three_levels() -> TriangularSet<Puiseux> {
        let r = Ring::new(Puiseux, vec!["x1".into(), "x2".into(), "x3".into()]);
        let t = r.constant(PuiseuxFraction::t());
        let one = r.constant(PuiseuxFraction::one());
        let (x1, x2, x3) = (r.var(0), r.var(1), r.var(2));
        let f1 = &(&(&t * &x1.pow(2)) + &x1) + &one;
        let f2 = &(&(&(&t * &x1) * &x2.pow(2)) + &(&x1 * &x2)) + &one;
        let f3 = &(&(&x1 * &x2) * &x3) + &one;
        TriangularSet::new(vec![f1, f2, f3]).unwrap()
    }

    fn pt(v: &[i64]) -> TropicalPoint {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn first_choice_point() {
        let (w, trace) = zero_dim_point(&three_levels(), &ZeroDimConfig::default()).unwrap();
        assert_eq!(w, pt(&[0, 0, 0]));
        assert!(trace.iter().all(|c| c.unique));
        assert_eq!(trace.len(), 3);
    }

    #[test]
    fn exhaustive_variety() {
        let v = zero_dim_variety(&three_levels(), &ZeroDimConfig::default()).unwrap();
        let expect: BTreeSet<TropicalPoint> = [pt(&[0, 0, 0]), pt(&[0, -1, 1]), pt(&[-1, 1, 0]), pt(&[-1, -1, 2])].into_iter().collect();
        assert_eq!(v.points, expect);
        assert_eq!(v.fallbacks, 0);
    }

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
    fn padic_point_uses_fallback() {
        let (w, trace) = zero_dim_point(&padic_digits(), &ZeroDimConfig::default()).unwrap();
        assert_eq!(w, vec![rat(0), rat(0), ratio(-1, 2)]);
        let last = &trace[2];
        assert!(!last.unique);
        assert_eq!(last.fallback_precision, Some(2));
        assert_eq!(last.vertices, vec![(0, rat(0)), (2, rat(1))]);
        assert_eq!(last.prefix.as_deref(), Some(&["4 mod 3^2".to_string(), "1 mod 3^2".to_string()][..]));
    }

    #[test]
    fn padic_variety() {
        let v = zero_dim_variety(&padic_digits(), &ZeroDimConfig::default()).unwrap();
        let expect: BTreeSet<TropicalPoint> =
            [vec![rat(0), rat(0), rat(0)], vec![rat(0), rat(0), rat(-1)], vec![rat(0), rat(0), ratio(-1, 2)]].into_iter().collect();
        assert_eq!(v.points, expect);
        assert!(v.fallbacks > 0);
    }

    #[test]
    fn single_variable() {
        let r = Ring::new(Puiseux, vec!["x".into()]);
        let f = &r.var(0) - &r.constant(PuiseuxFraction::monomial(rat(1), &rat(5)));
        let (w, _) = zero_dim_point(&TriangularSet::new(vec![f]).unwrap(), &ZeroDimConfig::default()).unwrap();
        assert_eq!(w, pt(&[5]));
        // (x - t)(x - t^2)
        let x = r.var(0);
        let g: MPoly<Puiseux> = &(&x - &r.constant(PuiseuxFraction::t())) * &(&x - &r.constant(PuiseuxFraction::monomial(rat(1), &rat(2))));
        let v = zero_dim_variety(&TriangularSet::new(vec![g]).unwrap(), &ZeroDimConfig::default()).unwrap();
        assert_eq!(v.points, [pt(&[1]), pt(&[2])].into_iter().collect());
    }

    #[test]
    fn coordinate_hyperplane_is_reported() {
        let r = Ring::new(Puiseux, vec!["x".into(), "y".into()]);
        let f1 = &r.var(0) - &r.constant(PuiseuxFraction::one());
        let f2 = &r.var(1) * &r.var(1);
        let e = zero_dim_point(&TriangularSet::new(vec![f1, f2]).unwrap(), &ZeroDimConfig::default()).unwrap_err();
        assert!(matches!(e, Error::NonTorusVariety(_)), "{e:?}");
    }
}
