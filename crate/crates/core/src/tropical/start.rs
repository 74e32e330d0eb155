use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg;
use crate::poly::MPoly;
use crate::scalars::{rat, Rat, ValuedField};
use crate::triangular::{triangular_decomposition, TriangularSet};

use super::zerodim::{zero_dim_point, ChoiceTrace, ZeroDimConfig};
use super::TropicalPoint;

#[derive(Clone, Debug)]
pub struct StartConfig {
    pub seed: u64,
    pub max_attempts: usize,
    /// Use `c_i = u^{w_i}` without a random unit factor.
    pub pure_powers: bool,
    /// Unit factors are drawn from `1..=unit_bound`.
    pub unit_bound: i64,
    /// Skip sampling and use these weights on the independent variables.
    pub forced: Option<Vec<Rat>>,
    pub zero_dim: ZeroDimConfig,
}

impl Default for StartConfig {
    fn default() -> Self {
        StartConfig { seed: 0, max_attempts: 50, pure_powers: false, unit_bound: 100, forced: None, zero_dim: ZeroDimConfig::default() }
    }
}

/// How a starting point was found.
#[derive(Clone, Debug)]
pub struct Witness<F: ValuedField> {
    /// Independent variables, ascending.
    pub independent: Vec<usize>,
    /// Weights placed on them.
    pub weights: Vec<Rat>,
    /// Values substituted for them.
    pub substitution: Vec<F::Elem>,
    /// Remaining variables, ascending; the component lives in these.
    pub dependent: Vec<usize>,
    pub component: TriangularSet<F>,
    pub trace: ChoiceTrace,
    /// 1-based index of the successful attempt.
    pub attempt: usize,
}

struct Attempt<F: ValuedField> {
    weights: Vec<Rat>,
    substitution: Vec<F::Elem>,
}

const BATCH: usize = 8;

/// A point of the tropical variety outside its homogeneity space, found by
/// cutting the variety down to finitely many points with random
/// hyperplanes `x_i = c_i` on an independent set of variables.
pub fn starting_point<F: ValuedField>(ideal: &Ideal<F>, cfg: &StartConfig) -> Result<(TropicalPoint, Witness<F>)> {
    let n = ideal.nvars();
    let Some(d) = ideal.dimension()? else {
        return Err(Error::InvalidInput("ideal is the unit ideal".into()));
    };
    let c0 = ideal.grading_space()?;
    let s = ideal.independent_set()?;
    let proj: Vec<Vec<Rat>> = c0.iter().map(|row| s.iter().map(|&i| row[i].clone()).collect()).collect();
    if let Some(w) = &cfg.forced {
        if w.len() != d {
            return Err(Error::LengthMismatch { expected: d, got: w.len() });
        }
    } else if linalg::rank(&proj, d) == d {
        return Err(Error::ProjectionCoversSpace);
    }
    let dependent: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let field = ideal.field();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let total = if cfg.forced.is_some() && cfg.pure_powers { 1 } else { cfg.max_attempts };
    let mut attempts = Vec::with_capacity(total);
    for _ in 0..total {
        let weights = match &cfg.forced {
            Some(w) => w.clone(),
            None => loop {
                let w: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-10..=10))).collect();
                if !linalg::in_span(&proj, &w) {
                    break w;
                }
            },
        };
        let mut substitution = Vec::with_capacity(d);
        for w in &weights {
            let u = field.uniformizer_pow(w)?;
            let q = if cfg.pure_powers {
                field.one()
            } else {
                loop {
                    if let Some(q) = field.unit_from_int(rng.gen_range(1..=cfg.unit_bound.max(1))) {
                        break q;
                    }
                }
            };
            substitution.push(field.mul(&q, &u));
        }
        attempts.push(Attempt { weights, substitution });
    }
    for (b, batch) in attempts.chunks(BATCH).enumerate() {
        let results: Vec<Result<Option<(TropicalPoint, Witness<F>)>>> =
            batch.par_iter().enumerate().map(|(k, a)| try_attempt(ideal, &s, &dependent, &c0, a, cfg, b * BATCH + k + 1)).collect();
        for r in results {
            if let Some(found) = r? {
                return Ok(found);
            }
        }
    }
    Err(Error::ExhaustedAttempts(total))
}

fn try_attempt<F: ValuedField>(
    ideal: &Ideal<F>,
    s: &[usize],
    dependent: &[usize],
    c0: &[Vec<Rat>],
    a: &Attempt<F>,
    cfg: &StartConfig,
    index: usize,
) -> Result<Option<(TropicalPoint, Witness<F>)>> {
    let n = ideal.nvars();
    let m = dependent.len();
    let assignment: Vec<(usize, F::Elem)> = s.iter().copied().zip(a.substitution.iter().cloned()).collect();
    let mut map = vec![None; n];
    for (k, &j) in dependent.iter().enumerate() {
        map[j] = Some(k);
    }
    let gens: Vec<MPoly<F>> = ideal.gens().iter().map(|g| g.substitute(&assignment).remap(m, &map)).collect();
    let cut = Ideal::new(ideal.field().clone(), m, gens);
    if m == 0 {
        if cut.is_unit()? {
            return Ok(None);
        }
    } else if !cut.zero_dim_torus_check()? {
        log::debug!("attempt {index}: cut is not a finite set of torus points");
        return Ok(None);
    }
    let component = if m == 0 { None } else { triangular_decomposition(&cut)?.into_iter().next() };
    let (inner, trace) = match &component {
        Some(t) => match zero_dim_point(t, &cfg.zero_dim) {
            Ok(r) => r,
            Err(e @ (Error::ResourceLimit(_) | Error::InsufficientPrecision { .. })) => return Err(e),
            Err(e) => {
                log::debug!("attempt {index}: {e}");
                return Ok(None);
            }
        },
        None if m == 0 => (Vec::new(), Vec::new()),
        None => return Ok(None),
    };
    let mut point = vec![rat(0); n];
    for (k, &i) in s.iter().enumerate() {
        point[i] = a.weights[k].clone();
    }
    for (k, &j) in dependent.iter().enumerate() {
        point[j] = inner[k].clone();
    }
    if linalg::in_span(c0, &point) {
        log::debug!("attempt {index}: {}", Error::TrivialPoint);
        return Ok(None);
    }
    let component = component.unwrap_or_else(|| TriangularSet::new(Vec::new()).expect("empty set is triangular"));
    Ok(Some((
        point,
        Witness {
            independent: s.to_vec(),
            weights: a.weights.clone(),
            substitution: a.substitution.clone(),
            dependent: dependent.to_vec(),
            component,
            trace,
            attempt: index,
        },
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use crate::scalars::{Puiseux, PuiseuxFraction};

    #[test]
    fn forced_weight_on_a_line() {
        // x1 - t x2 with x2 = 1 gives x1 = t.
        let r = Ring::new(Puiseux, vec!["x1".into(), "x2".into()]);
        let f = &r.var(0) - &(&r.constant(PuiseuxFraction::t()) * &r.var(1));
        let ideal = Ideal::new(Puiseux, 2, vec![f]);
        let cfg = StartConfig { forced: Some(vec![rat(0)]), pure_powers: true, ..Default::default() };
        let (w, witness) = starting_point(&ideal, &cfg).unwrap();
        assert_eq!(w, vec![rat(1), rat(0)]);
        assert_eq!(witness.independent, vec![1]);
        assert!(ideal.in_prevariety(&w).unwrap());
    }

    #[test]
    fn seeded_runs_agree() {
        let r = Ring::new(Puiseux, vec!["x".into(), "y".into(), "z".into()]);
        let one = r.constant(PuiseuxFraction::one());
        let f = &(&(&r.var(0) + &r.var(1)) + &r.var(2)) + &one;
        let ideal = Ideal::new(Puiseux, 3, vec![f]);
        let cfg = StartConfig { seed: 11, ..Default::default() };
        let (a, _) = starting_point(&ideal, &cfg).unwrap();
        let (b, _) = starting_point(&ideal, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(ideal.in_prevariety(&a).unwrap());
    }

    #[test]
    fn zero_dimensional_input_has_no_admissible_weight() {
        let r = Ring::new(Puiseux, vec!["x".into()]);
        let f = &r.var(0) - &r.constant(PuiseuxFraction::one());
        let ideal = Ideal::new(Puiseux, 1, vec![f]);
        assert!(matches!(starting_point(&ideal, &StartConfig::default()), Err(Error::ProjectionCoversSpace)));
    }
}
