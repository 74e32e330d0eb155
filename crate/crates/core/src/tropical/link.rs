use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg;
use crate::poly::MPoly;
use crate::scalars::{primitive_integer_vector, rat, Rat, ValuedField};
use crate::triangular::triangular_decomposition;

use super::zerodim::{zero_dim_variety, ZeroDimConfig};

#[derive(Clone, Debug, Default)]
pub struct LinkConfig {
    pub seed: u64,
    /// Apply a random unimodular monomial change of coordinates first.
    pub precondition: bool,
    /// Slice at `u^{±1}` instead of `u^{z_j ± 1}`.
    pub fixed_exponents: bool,
    pub zero_dim: ZeroDimConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SliceOutcome {
    /// Indices into the ray list of the classes this slice produced.
    Rays(Vec<usize>),
    /// Only vectors in the homogeneity space.
    BaseOnly,
    /// The slice misses the torus.
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceRecord {
    pub coord: usize,
    pub exponent: Rat,
    pub outcome: SliceOutcome,
}

/// Rays of a one-dimensional fan modulo its lineality space.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySet {
    /// Basis of the homogeneity space, in reduced row echelon form.
    pub lineality: Vec<Vec<Rat>>,
    /// Coordinates set to `u` in every slice.
    pub transversal: Vec<usize>,
    /// The point of the lineality space that is 1 on the transversal.
    pub base: Vec<Rat>,
    /// Primitive integer representatives orthogonal to the lineality space.
    pub rays: Vec<Vec<BigInt>>,
    pub slices: Vec<SliceRecord>,
    pub warnings: Vec<String>,
    /// Rows of the monomial substitution used for preconditioning.
    pub preconditioner: Option<Vec<Vec<u32>>>,
}

impl RaySet {
    pub fn valency(&self) -> usize {
        self.rays.len()
    }

    pub fn rays_as_rat(&self) -> Vec<Vec<Rat>> {
        self.rays.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect()
    }
}

/// Canonical representative of `v` modulo the span of `basis`, or `None`
/// when `v` lies in it.
pub fn canonical_ray(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<BigInt>> {
    let p = linalg::project_orthogonal(basis, v);
    if p.iter().all(|x| x.is_zero()) {
        return None;
    }
    Some(primitive_integer_vector(&p))
}

/// The rays of a tropical variety that is a fan of dimension one more than
/// its lineality space, by slicing it with coordinate hyperplanes.
pub fn tropical_link<F: ValuedField>(ideal: &Ideal<F>, cfg: &LinkConfig) -> Result<RaySet> {
    if !ideal.gens().iter().all(|g| g.has_unit_coefficients()) {
        return Err(Error::NonConstantValuation);
    }
    let n = ideal.nvars();
    let c0 = ideal.homogeneity_space()?;
    let d = c0.len();
    let krull = ideal.dimension()?.map_or(-1, |k| k as i64);
    if krull != d as i64 + 1 {
        return Err(Error::NotCombinatoriallyCurve { krull, lineality: d });
    }
    if !cfg.precondition {
        return link_in_coordinates(ideal, &c0, &c0, None, cfg);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        1
                    } else if j > i {
                        rng.gen_range(0..=2)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    log::info!("preconditioning with {a:?}");
    let gens: Vec<MPoly<F>> = ideal.gens().iter().map(|g| g.monomial_substitution(&a)).collect();
    let j = Ideal::new(ideal.field().clone(), n, gens).saturate_by_variables()?;
    let cj = j.homogeneity_space()?;
    link_in_coordinates(&j, &cj, &c0, Some(a), cfg)
}

/// Slices `ideal`, whose homogeneity space is `own`; rays are mapped back
/// through `a` and canonicalized modulo `target`.
fn link_in_coordinates<F: ValuedField>(
    ideal: &Ideal<F>,
    own: &[Vec<Rat>],
    target: &[Vec<Rat>],
    a: Option<Vec<Vec<u32>>>,
    cfg: &LinkConfig,
) -> Result<RaySet> {
    let n = ideal.nvars();
    let (rows, pivots) = linalg::rref(own, n);
    let base: Vec<Rat> = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).sum()).collect();
    let rest: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut keys = Vec::new();
    for &j in &rest {
        let (lo, hi) = if cfg.fixed_exponents { (rat(-1), rat(1)) } else { (&base[j] - rat(1), &base[j] + rat(1)) };
        keys.push((j, lo));
        keys.push((j, hi));
    }
    let results: Vec<Result<Vec<Vec<Rat>>>> = keys.par_iter().map(|(j, s)| slice(ideal, &pivots, *j, s, cfg)).collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut slices = Vec::new();
    let mut warnings = Vec::new();
    for ((j, s), r) in keys.into_iter().zip(results) {
        let vectors = r?;
        let outcome = if vectors.is_empty() {
            SliceOutcome::Empty
        } else {
            let mut idx = Vec::new();
            for v in vectors {
                let v = match &a {
                    Some(a) => apply(a, &v),
                    None => v,
                };
                if let Some(ray) = canonical_ray(target, &v) {
                    let k = rays.iter().position(|r| *r == ray).unwrap_or_else(|| {
                        rays.push(ray);
                        rays.len() - 1
                    });
                    if !idx.contains(&k) {
                        idx.push(k);
                    }
                }
            }
            if idx.is_empty() {
                SliceOutcome::BaseOnly
            } else {
                SliceOutcome::Rays(idx)
            }
        };
        if outcome == SliceOutcome::BaseOnly {
            warnings.push(format!("slice x{} -> t^{s} meets the variety only at the base point; rays through it may be missed", j + 1));
        }
        slices.push(SliceRecord { coord: j, exponent: s, outcome });
    }
    Ok(RaySet { lineality: target.to_vec(), transversal: pivots, base, rays, slices, warnings, preconditioner: a })
}

/// `A v` for the weight vector `v` of the substituted coordinates.
fn apply(a: &[Vec<u32>], v: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(v).map(|(&x, y)| Rat::from_integer(BigInt::from(x)) * y).sum()).collect()
}

/// Valuation vectors of the torus points of the slice `x_D = u`, `x_j = u^s`.
fn slice<F: ValuedField>(ideal: &Ideal<F>, transversal: &[usize], j: usize, s: &Rat, cfg: &LinkConfig) -> Result<Vec<Vec<Rat>>> {
    let n = ideal.nvars();
    let field = ideal.field();
    let u = field.uniformizer_pow(&Rat::one())?;
    let mut assignment: Vec<(usize, F::Elem)> = transversal.iter().map(|&i| (i, u.clone())).collect();
    assignment.push((j, field.uniformizer_pow(s)?));
    let free: Vec<usize> = (0..n).filter(|i| !transversal.contains(i) && *i != j).collect();
    let m = free.len();
    let mut map = vec![None; n];
    for (k, &i) in free.iter().enumerate() {
        map[i] = Some(k);
    }
    let gens: Vec<MPoly<F>> = ideal.gens().iter().map(|g| g.substitute(&assignment).remap(m, &map)).collect();
    let assemble = |inner: &[Rat]| -> Vec<Rat> {
        let mut v = vec![rat(0); n];
        for &i in transversal {
            v[i] = rat(1);
        }
        v[j] = s.clone();
        for (k, &i) in free.iter().enumerate() {
            v[i] = inner[k].clone();
        }
        v
    };
    let cut = Ideal::new(field.clone(), m, gens);
    if m == 0 {
        return Ok(if cut.is_unit()? { Vec::new() } else { vec![assemble(&[])] });
    }
    let sat = cut.saturate_by_variables()?;
    if sat.is_unit()? {
        return Ok(Vec::new());
    }
    if !sat.is_zero_dimensional()? {
        return Err(Error::DegenerateSlice { coord: format!("x{}", j + 1), exponent: s.clone() });
    }
    let mut out = Vec::new();
    for t in triangular_decomposition(&sat)? {
        for p in zero_dim_variety(&t, &cfg.zero_dim)?.points {
            let v = assemble(&p);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}
