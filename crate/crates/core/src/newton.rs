//! Newton polygons of univariate polynomials over valued fields.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::scalars::{ExtRat, Rat, ValuedField};

/// Vertices of a lower convex hull, strictly increasing in index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    vertices: Vec<(usize, Rat)>,
}

/// One root valuation with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    #[serde(serialize_with = "crate::scalars::ser_rat")]
    pub valuation: Rat,
    pub multiplicity: usize,
}

/// Root valuations in strictly decreasing order.
pub type SlopeSet = Vec<Slope>;

fn idx(i: usize) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

/// `(b - a) × (c - a)`.
fn cross(a: &(usize, Rat), b: &(usize, Rat), c: &(usize, Rat)) -> Rat {
    (idx(b.0) - idx(a.0)) * (&c.1 - &a.1) - (&b.1 - &a.1) * (idx(c.0) - idx(a.0))
}

/// Lower hull by monotone chain; collinear points are dropped. Repeated
/// indices keep the smallest value.
pub fn lower_hull(points: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(usize, Rat)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rat::from_integer(0.into()) {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

impl NewtonPolygon {
    pub fn from_points(points: &[(usize, Rat)]) -> Self {
        NewtonPolygon { vertices: lower_hull(points) }
    }

    pub fn vertices(&self) -> &[(usize, Rat)] {
        &self.vertices
    }

    pub fn width(&self) -> usize {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => 0,
        }
    }

    /// Height of the hull above index `i`, if `i` is within its range.
    pub fn value_at(&self, i: usize) -> Option<Rat> {
        let w = self.vertices.windows(2).find(|w| w[0].0 <= i && i <= w[1].0);
        match w {
            Some(w) => {
                let (a, b) = (&w[0], &w[1]);
                let t = (idx(i) - idx(a.0)) / (idx(b.0) - idx(a.0));
                Some(&a.1 + t * (&b.1 - &a.1))
            }
            None => self.vertices.iter().find(|v| v.0 == i).map(|v| v.1.clone()),
        }
    }

    /// Negated edge slopes with their horizontal lengths.
    pub fn lambda(&self) -> Result<SlopeSet> {
        if self.vertices.len() < 2 {
            return Err(Error::DegeneratePolygon);
        }
        Ok(self
            .vertices
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Slope { valuation: -(&w[1].1 - &w[0].1) / idx(len), multiplicity: len }
            })
            .collect())
    }

    /// The edge whose negated slope is `m`, as its two endpoints.
    pub fn edge_with_valuation(&self, m: &Rat) -> Option<((usize, Rat), (usize, Rat))> {
        self.vertices.windows(2).find_map(|w| {
            let len = idx(w[1].0 - w[0].0);
            (&(-(&w[1].1 - &w[0].1) / len) == m).then(|| (w[0].clone(), w[1].clone()))
        })
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(i, v)| format!("({i},{v})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Polygon of `Σ c_i x^i` given dense coefficients.
pub fn polygon_of_coefficients<F: ValuedField>(field: &F, coeffs: &[F::Elem]) -> Result<NewtonPolygon> {
    if coeffs.iter().all(|c| field.is_zero(c)) {
        return Err(Error::ZeroPolynomial);
    }
    if coeffs.first().is_none_or(|c| field.is_zero(c)) {
        return Err(Error::ZeroConstantTerm);
    }
    let pts: Vec<(usize, Rat)> = coeffs.iter().enumerate().filter_map(|(i, c)| field.val(c).finite().map(|v| (i, v.clone()))).collect();
    Ok(NewtonPolygon::from_points(&pts))
}

/// Newton polygon of a polynomial in a single variable.
pub fn newton_polygon<F: ValuedField>(f: &MPoly<F>) -> Result<NewtonPolygon> {
    let vars = f.support_vars();
    if vars.len() > 1 {
        return Err(Error::InvalidInput("polynomial is not univariate".into()));
    }
    let var = vars.first().copied().unwrap_or(0);
    let coeffs = crate::poly::univariate::from_mpoly(f, var).expect("univariate");
    polygon_of_coefficients(f.field(), &coeffs)
}

fn check_prefix<F: ValuedField>(f: &MPoly<F>, k: usize, w: &[Rat]) -> Result<()> {
    if w.len() != k {
        return Err(Error::LengthMismatch { expected: k, got: w.len() });
    }
    if f.degree_in(k) == 0 {
        return Err(Error::InvalidInput(format!("polynomial has degree 0 in x{}", k + 1)));
    }
    Ok(())
}

/// Hull of `(i, trop(f_i)(w))` for `f = Σ f_i x_k^i`, with `w` of length `k`.
pub fn expected_polygon<F: ValuedField>(f: &MPoly<F>, k: usize, w: &[Rat]) -> Result<NewtonPolygon> {
    check_prefix(f, k, w)?;
    let cs = f.coefficients_wrt(k)?;
    if cs[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut pts = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        if let ExtRat::Finite(v) = c.trop_eval(w)? {
            pts.push((i, v));
        }
    }
    Ok(NewtonPolygon::from_points(&pts))
}

/// True iff every vertex coefficient has a monomial initial form at `w`.
pub fn is_unique_at<F: ValuedField>(f: &MPoly<F>, k: usize, w: &[Rat]) -> Result<bool> {
    let poly = expected_polygon(f, k, w)?;
    let cs = f.coefficients_wrt(k)?;
    for (i, _) in poly.vertices() {
        if !cs[*i].initial_form(w)?.is_monomial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What is known about the valuation of a coefficient computed from
/// approximate data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValBound {
    Exact(Rat),
    /// The valuation is at least this value (possibly the coefficient is zero).
    AtLeast(Rat),
}

/// Hull whose vertices are certified by the given bounds, or `None` if the
/// unknown coefficients could still change it. Exact zeros are omitted by
/// the caller.
pub fn certified_polygon(points: &[(usize, ValBound)]) -> Option<NewtonPolygon> {
    let exact: Vec<(usize, Rat)> = points
        .iter()
        .filter_map(|(i, b)| match b {
            ValBound::Exact(v) => Some((*i, v.clone())),
            ValBound::AtLeast(_) => None,
        })
        .collect();
    let lo = exact.iter().map(|p| p.0).min()?;
    let hi = exact.iter().map(|p| p.0).max()?;
    let poly = NewtonPolygon::from_points(&exact);
    for (i, b) in points {
        if let ValBound::AtLeast(l) = b {
            if *i < lo || *i > hi {
                return None;
            }
            if l < &poly.value_at(*i).expect("index within hull range") {
                return None;
            }
        }
    }
    Some(poly)
}
