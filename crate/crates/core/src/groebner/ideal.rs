use std::sync::OnceLock;

use rayon::prelude::*;

use super::{buchberger, GroebnerBasis, MonomialOrder};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Exponent, MPoly, ResiduePoly};
use crate::scalars::{FieldConfig, Puiseux, Rat, ValuedField};

/// An ideal given by generators, with a cached degree reverse lexicographic
/// basis.
#[derive(Debug)]
pub struct Ideal<F: ValuedField> {
    field: F,
    nvars: usize,
    gens: Vec<MPoly<F>>,
    drl: OnceLock<GroebnerBasis<F>>,
}

impl<F: ValuedField> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let drl = OnceLock::new();
        if let Some(g) = self.drl.get() {
            let _ = drl.set(g.clone());
        }
        Ideal { field: self.field.clone(), nvars: self.nvars, gens: self.gens.clone(), drl }
    }
}

/// Size of a largest set of variables containing the support of no
/// monomial in `lms`, and the sets of that size.
fn independent_sets(nvars: usize, lms: &[Exponent]) -> (usize, Vec<Vec<usize>>) {
    let supports: Vec<u64> =
        lms.iter().map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |m, (i, _)| m | (1 << i))).collect();
    let free = |s: u64| supports.iter().all(|&m| m & !s != 0);
    for d in (0..=nvars).rev() {
        let sets: Vec<Vec<usize>> =
            subsets_preferring_last(nvars, d).into_iter().filter(|s| free(s.iter().fold(0u64, |m, &i| m | (1 << i)))).collect();
        if !sets.is_empty() {
            return (d, sets);
        }
    }
    (0, vec![Vec::new()])
}

/// All `d`-subsets of `0..n`, each sorted decreasingly, in decreasing
/// lexicographic order of those tuples.
pub fn subsets_preferring_last(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(hi: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (d - 1..hi).rev() {
            cur.push(i);
            rec(i, d - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

impl<F: ValuedField> Ideal<F> {
    pub fn new(field: F, nvars: usize, gens: Vec<MPoly<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { field, nvars, gens, drl: OnceLock::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MPoly<F>] {
        &self.gens
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
        if *order == MonomialOrder::DegRevLex {
            return self.degrevlex().cloned();
        }
        buchberger(&self.field, self.nvars, &self.gens, order)
    }

    pub fn degrevlex(&self) -> Result<&GroebnerBasis<F>> {
        if let Some(g) = self.drl.get() {
            return Ok(g);
        }
        let g = buchberger(&self.field, self.nvars, &self.gens, &MonomialOrder::DegRevLex)?;
        Ok(self.drl.get_or_init(|| g))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.degrevlex()?.is_unit())
    }

    pub fn with_generators(&self, extra: &[MPoly<F>]) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.field.clone(), self.nvars, gens)
    }

    /// Krull dimension; `None` for the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let g = self.degrevlex()?;
        if g.is_unit() {
            return Ok(None);
        }
        Ok(Some(independent_sets(self.nvars, &g.leading_monomials()).0))
    }

    /// True if every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> Result<bool> {
        let g = self.degrevlex()?;
        if g.is_unit() {
            return Ok(false);
        }
        let lms = g.leading_monomials();
        Ok((0..self.nvars).all(|i| lms.iter().any(|e| e[i] > 0 && e.iter().enumerate().all(|(j, &x)| j == i || x == 0))))
    }

    /// Generators of `I ∩ K[x_j : !eliminate[j]]`, still in the full ring.
    pub fn eliminate(&self, eliminate: &[bool]) -> Result<Vec<MPoly<F>>> {
        let g = buchberger(&self.field, self.nvars, &self.gens, &MonomialOrder::Elimination { eliminate: eliminate.to_vec() })?;
        Ok(g.polys().into_iter().filter(|p| p.support_vars().iter().all(|&v| !eliminate[v])).collect())
    }

    /// True if the ideal contains no nonzero polynomial in the variables `set`.
    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        let mask: Vec<bool> = (0..self.nvars).map(|i| !set.contains(&i)).collect();
        Ok(self.eliminate(&mask)?.is_empty())
    }

    /// A maximal independent set of variables of size `dim`, preferring sets
    /// made of the last variables. Each candidate is first tested against
    /// the leading monomials and otherwise by elimination.
    pub fn independent_set(&self) -> Result<Vec<usize>> {
        let g = self.degrevlex()?;
        if g.is_unit() {
            return Err(Error::InvalidInput("ideal is the unit ideal".into()));
        }
        let lms = g.leading_monomials();
        let (d, _) = independent_sets(self.nvars, &lms);
        for s in subsets_preferring_last(self.nvars, d) {
            let lm_free = lms.iter().all(|e| e.iter().enumerate().any(|(i, &x)| x > 0 && !s.contains(&i)));
            if lm_free || self.is_independent(&s)? {
                let mut s = s;
                s.sort_unstable();
                return Ok(s);
            }
        }
        unreachable!("a set independent for the leading monomials exists")
    }

    fn grading_rows(&self) -> Result<Vec<Vec<Rat>>> {
        let g = self.degrevlex()?;
        let mut rows = Vec::new();
        for p in g.polys() {
            let t = p.terms();
            for (e, _) in &t[1..] {
                rows.push(e.iter().zip(&t[0].0).map(|(a, b)| Rat::from_integer((*a as i64 - *b as i64).into())).collect());
            }
        }
        Ok(rows)
    }

    /// Basis of the weights under which the ideal is homogeneous, in
    /// reduced row echelon form. Requires coefficients of valuation zero.
    pub fn homogeneity_space(&self) -> Result<Vec<Vec<Rat>>> {
        if !self.gens.iter().all(|g| g.has_unit_coefficients()) {
            return Err(Error::NonConstantValuation);
        }
        self.grading_space()
    }

    /// Like [`Ideal::homogeneity_space`] without the valuation requirement.
    pub fn grading_space(&self) -> Result<Vec<Vec<Rat>>> {
        if self.is_unit()? {
            return Ok(linalg::nullspace(&[], self.nvars));
        }
        let ns = linalg::nullspace(&self.grading_rows()?, self.nvars);
        Ok(linalg::rref(&ns, self.nvars).0)
    }

    /// `I : c^∞`.
    pub fn saturate(&self, c: &MPoly<F>) -> Result<Ideal<F>> {
        let n = self.nvars;
        let map: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens: Vec<MPoly<F>> = self.gens.iter().map(|g| g.remap(n + 1, &map)).collect();
        let y = MPoly::var(&self.field, n + 1, n);
        gens.push(&MPoly::one(&self.field, n + 1) - &(&y * &c.remap(n + 1, &map)));
        let mut mask = vec![false; n + 1];
        mask[n] = true;
        let g = buchberger(&self.field, n + 1, &gens, &MonomialOrder::Elimination { eliminate: mask })?;
        let back: Vec<Option<usize>> = (0..=n).map(|i| (i < n).then_some(i)).collect();
        let kept = g.polys().into_iter().filter(|p| !p.involves(n)).map(|p| p.remap(n, &back)).collect();
        Ok(Ideal::new(self.field.clone(), n, kept))
    }

    /// `I : (x_1 ⋯ x_n)^∞`.
    pub fn saturate_by_variables(&self) -> Result<Ideal<F>> {
        let prod = (0..self.nvars).fold(MPoly::one(&self.field, self.nvars), |acc, i| &acc * &MPoly::var(&self.field, self.nvars, i));
        self.saturate(&prod)
    }

    /// True if the ideal contains a monomial.
    pub fn contains_monomial(&self) -> Result<bool> {
        let n = self.nvars;
        let map: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens: Vec<MPoly<F>> = self.gens.iter().map(|g| g.remap(n + 1, &map)).collect();
        let all = MPoly::monomial(&self.field, n + 1, vec![1; n + 1], self.field.one());
        gens.push(&MPoly::one(&self.field, n + 1) - &all);
        Ok(buchberger(&self.field, n + 1, &gens, &MonomialOrder::DegRevLex)?.is_unit())
    }

    /// True if every generator attains its tropical minimum at `w` twice.
    pub fn in_prevariety(&self, w: &[Rat]) -> Result<bool> {
        check_len(self.nvars, w)?;
        for g in &self.gens {
            if !g.min_attained_twice(w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Zero-dimensional with every point in the torus.
    pub fn zero_dim_torus_check(&self) -> Result<bool> {
        if !self.is_zero_dimensional()? {
            return Ok(false);
        }
        let hits: Vec<Result<bool>> =
            (0..self.nvars).into_par_iter().map(|j| self.with_generators(&[MPoly::var(&self.field, self.nvars, j)]).is_unit()).collect();
        for h in hits {
            if !h? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_homogeneous_unit(&self) -> Result<()> {
        if let FieldConfig::Padic(_) = self.field.config() {
            return Err(Error::UnsupportedField("initial ideals are computed over Puiseux series only".into()));
        }
        if !self.gens.iter().all(|g| g.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        if !self.gens.iter().all(|g| g.has_unit_coefficients()) {
            return Err(Error::NonConstantValuation);
        }
        Ok(())
    }

    /// Generators of the initial ideal at `w`, computed from a Gröbner basis
    /// for the weighted order refined by degree reverse lexicographic.
    pub fn initial_ideal(&self, w: &[Rat]) -> Result<Vec<ResiduePoly>> {
        check_len(self.nvars, w)?;
        self.check_homogeneous_unit()?;
        let g = buchberger(&self.field, self.nvars, &self.gens, &MonomialOrder::weighted(w.to_vec()))?;
        if !g.polys().iter().all(|p| p.has_unit_coefficients()) {
            return Err(Error::NonConstantValuation);
        }
        g.polys().iter().map(|p| p.initial_form(w)).collect()
    }

    /// True if `w` lies in the tropical variety: the initial ideal at `w`
    /// contains no monomial.
    pub fn is_in_tropical_variety(&self, w: &[Rat]) -> Result<bool> {
        let init = self.initial_ideal(w)?;
        let gens: Vec<MPoly<Puiseux>> = init.iter().map(|r| r.to_mpoly(&Puiseux)).collect();
        Ok(!Ideal::new(Puiseux, self.nvars, gens).contains_monomial()?)
    }
}

impl Ideal<Puiseux> {
    /// Ideal over the residue field, embedded as constant Puiseux
    /// coefficients.
    pub fn from_residues(nvars: usize, gens: &[ResiduePoly]) -> Self {
        Ideal::new(Puiseux, nvars, gens.iter().map(|r| r.to_mpoly(&Puiseux)).collect())
    }
}

fn check_len(n: usize, w: &[Rat]) -> Result<()> {
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use crate::scalars::{rat, Padic, PuiseuxFraction};

    fn ring(n: usize) -> Ring<Puiseux> {
        Ring::new(Puiseux, (0..n).map(|i| format!("x{i}")).collect())
    }

    fn k(r: &Ring<Puiseux>, c: i64) -> MPoly<Puiseux> {
        r.constant(PuiseuxFraction::constant(rat(c)))
    }

    #[test]
    fn subsets_in_preference_order() {
        assert_eq!(subsets_preferring_last(3, 2), vec![vec![2, 1], vec![2, 0], vec![1, 0]]);
        assert_eq!(subsets_preferring_last(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn dimension_of_line_and_point() {
        let r = ring(3);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let line = Ideal::new(Puiseux, 3, vec![&(&x + &y) + &z]);
        assert_eq!(line.dimension().unwrap(), Some(2));
        assert_eq!(line.independent_set().unwrap(), vec![1, 2]);
        let pt = Ideal::new(Puiseux, 3, vec![&x - &k(&r, 1), &y - &k(&r, 2), &z - &k(&r, 3)]);
        assert_eq!(pt.dimension().unwrap(), Some(0));
        assert!(pt.is_zero_dimensional().unwrap());
        assert!(pt.zero_dim_torus_check().unwrap());
        let unit = Ideal::new(Puiseux, 3, vec![k(&r, 1)]);
        assert_eq!(unit.dimension().unwrap(), None);
    }

    #[test]
    fn homogeneity_of_linear_form() {
        let r = ring(3);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let line = Ideal::new(Puiseux, 3, vec![&(&x + &y) + &z]);
        assert_eq!(line.homogeneity_space().unwrap(), vec![vec![rat(1), rat(1), rat(1)]]);
        let t = r.constant(PuiseuxFraction::t());
        let shifted = Ideal::new(Puiseux, 3, vec![&(&(&t * &x) + &y) + &z]);
        assert_eq!(shifted.homogeneity_space(), Err(Error::NonConstantValuation));
        assert_eq!(shifted.grading_space().unwrap(), vec![vec![rat(1), rat(1), rat(1)]]);
    }

    #[test]
    fn saturation_removes_coordinate_component() {
        let r = ring(2);
        let (x, y) = (r.var(0), r.var(1));
        // x (y - 1) = 0 saturated by x gives y - 1.
        let i = Ideal::new(Puiseux, 2, vec![&x * &(&y - &k(&r, 1))]);
        let s = i.saturate(&x).unwrap();
        assert_eq!(s.degrevlex().unwrap().polys(), vec![&y - &k(&r, 1)]);
    }

    #[test]
    fn monomial_containment() {
        let r = ring(2);
        let (x, y) = (r.var(0), r.var(1));
        assert!(Ideal::new(Puiseux, 2, vec![&x * &y]).contains_monomial().unwrap());
        assert!(!Ideal::new(Puiseux, 2, vec![&x + &y]).contains_monomial().unwrap());
        assert!(!Ideal::new(Puiseux, 2, vec![&x * &(&x + &y), &y * &(&x + &y)]).contains_monomial().unwrap());
    }

    #[test]
    fn tropical_membership_of_line() {
        let r = ring(3);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let line = Ideal::new(Puiseux, 3, vec![&(&x + &y) + &z]);
        assert!(line.is_in_tropical_variety(&[rat(1), rat(0), rat(0)]).unwrap());
        assert!(!line.is_in_tropical_variety(&[rat(1), rat(2), rat(0)]).unwrap());
        assert!(line.in_prevariety(&[rat(1), rat(0), rat(0)]).unwrap());
        assert_eq!(line.in_prevariety(&[rat(1)]), Err(Error::LengthMismatch { expected: 3, got: 1 }));
    }

    #[test]
    fn padic_initial_ideal_is_unsupported() {
        let f = Padic::new(3).unwrap();
        let r = Ring::new(f, vec!["x".into(), "y".into()]);
        let i = Ideal::new(f, 2, vec![&r.var(0) + &r.var(1)]);
        assert!(matches!(i.initial_ideal(&[rat(0), rat(0)]), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn independence_by_elimination() {
        let r = ring(3);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        // Leading monomial y z under degrevlex, yet {y, z} is independent.
        let i = Ideal::new(Puiseux, 3, vec![&(&y * &z) - &x.pow(2)]);
        assert!(i.is_independent(&[1, 2]).unwrap());
        assert!(!i.is_independent(&[0, 1, 2]).unwrap());
    }
}
