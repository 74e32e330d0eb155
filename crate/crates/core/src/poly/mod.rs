//! Sparse multivariate polynomials over a valued field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{ExtRat, Rat, ValuedField};

pub mod univariate;

pub type Exponent = Vec<u32>;

/// Graded lexicographic comparison with variable 0 largest.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// `w · α` for a weight prefix; missing weights count as zero.
fn weighted_degree(w: &[Rat], a: &[u32]) -> Rat {
    w.iter().zip(a).filter(|(_, &e)| e != 0).map(|(wi, &e)| wi * Rat::from_integer(e.into())).sum()
}

/// A polynomial; terms are kept sorted by decreasing [`grlex`] and never
/// carry zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F: ValuedField> {
    field: F,
    nvars: usize,
    terms: Vec<(Exponent, F::Elem)>,
}

impl<F: ValuedField> MPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MPoly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, nvars, vec![0; nvars], c)
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, nvars, e, field.one())
    }

    pub fn monomial(field: &F, nvars: usize, exp: Exponent, c: F::Elem) -> Self {
        assert_eq!(exp.len(), nvars);
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        MPoly { field: field.clone(), nvars, terms: vec![(exp, c)] }
    }

    /// Sums the given terms; repeated exponents are merged.
    pub fn from_terms(field: &F, nvars: usize, terms: Vec<(Exponent, F::Elem)>) -> Self {
        let mut map: BTreeMap<Exponent, F::Elem> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            match map.get_mut(&e) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        MPoly { field: field.clone(), nvars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponent, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponent, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms.iter().find(|(x, _)| x.as_slice() == e).map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.involves(v))
    }

    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(e, _)| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => grlex(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, c) = &other.terms[j];
                    out.push((e.clone(), if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { f.sub(a, b) } else { f.add(a, b) };
                    if !f.is_zero(&c) {
                        out.push((e.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), self.field.mul(a, c))).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Multiplies by `c · x^e`.
    pub fn mul_term(&self, e: &[u32], c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(a, x)| (a.iter().zip(e).map(|(p, q)| p + q).collect(), self.field.mul(x, c))).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient (in grlex order).
    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, f.mul(c, &f.from_int(e[var] as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// `min_α (w·α + val(c_α))`; `w` may be a prefix, in which case the
    /// polynomial must not involve the remaining variables.
    pub fn trop_eval(&self, w: &[Rat]) -> Result<ExtRat> {
        if w.len() > self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: w.len() });
        }
        if let Some(v) = self.max_var() {
            if v >= w.len() {
                return Err(Error::LengthMismatch { expected: self.nvars, got: w.len() });
            }
        }
        Ok(self.terms.iter().map(|(e, c)| &self.field.val(c) + &weighted_degree(w, e)).min().unwrap_or(ExtRat::Infinity))
    }

    /// Sum of the residue-normalized terms attaining [`MPoly::trop_eval`].
    pub fn initial_form(&self, w: &[Rat]) -> Result<ResiduePoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self.trop_eval(w)?;
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if &self.field.val(c) + &weighted_degree(w, e) == m {
                out.insert(e.clone(), self.field.leading_residue(c)?);
            }
        }
        Ok(ResiduePoly::from_map(self.nvars, out))
    }

    /// True if the minimum in `trop_eval` is attained by at least two terms
    /// (the zero polynomial counts as attained).
    pub fn min_attained_twice(&self, w: &[Rat]) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        let m = self.trop_eval(w)?;
        let n = self.terms.iter().filter(|(e, c)| &self.field.val(c) + &weighted_degree(w, e) == m).count();
        Ok(n >= 2)
    }

    /// `(f_0, …, f_d)` with `f = Σ f_i · x_k^i`.
    pub fn coefficients_wrt(&self, k: usize) -> Result<Vec<MPoly<F>>> {
        if let Some(v) = self.max_var() {
            if v > k {
                return Err(Error::VariableOutOfScope { var: format!("x{v}"), level: k });
            }
        }
        let d = self.degree_in(k) as usize;
        let mut parts: Vec<Vec<(Exponent, F::Elem)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let i = e2[k] as usize;
            e2[k] = 0;
            parts[i].push((e2, c.clone()));
        }
        Ok(parts.into_iter().map(|t| Self::from_terms(&self.field, self.nvars, t)).collect())
    }

    /// Evaluates the assigned variables; the result stays in the same ring
    /// and no longer involves them.
    pub fn substitute(&self, assignment: &[(usize, F::Elem)]) -> Self {
        let f = &self.field;
        let mut powers: Vec<Vec<F::Elem>> = assignment.iter().map(|_| vec![f.one()]).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            for (slot, (var, val)) in assignment.iter().enumerate() {
                let k = e[*var] as usize;
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[slot];
                while cache.len() <= k {
                    let next = f.mul(cache.last().unwrap(), val);
                    cache.push(next);
                }
                c2 = f.mul(&c2, &cache[k]);
                e2[*var] = 0;
            }
            terms.push((e2, c2));
        }
        Self::from_terms(f, self.nvars, terms)
    }

    /// Moves into a ring with `new_nvars` variables; `map[i]` is the new
    /// index of variable `i`, which must be `Some` for every occurring variable.
    pub fn remap(&self, new_nvars: usize, map: &[Option<usize>]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0; new_nvars];
                for (i, &x) in e.iter().enumerate() {
                    if x > 0 {
                        let j = map[i].expect("variable dropped by remap still occurs");
                        e2[j] += x;
                    }
                }
                (e2, c.clone())
            })
            .collect();
        Self::from_terms(&self.field, new_nvars, terms)
    }

    /// Substitutes `x_i ↦ y^{a_i}` for the rows `a_i` of a nonnegative
    /// integer matrix.
    pub fn monomial_substitution(&self, rows: &[Vec<u32>]) -> Self {
        let m = rows.first().map_or(0, |r| r.len());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0u32; m];
                for (i, &x) in e.iter().enumerate() {
                    for (k, &a) in rows[i].iter().enumerate() {
                        e2[k] += x * a;
                    }
                }
                (e2, c.clone())
            })
            .collect();
        Self::from_terms(&self.field, m, terms)
    }

    /// Divides out the largest monomial dividing every term.
    pub fn strip_monomial_content(&self) -> Self {
        let Some(first) = self.terms.first() else {
            return self.clone();
        };
        let mut g = first.0.clone();
        for (e, _) in &self.terms[1..] {
            for (a, b) in g.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        if g.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(e, c)| (e.iter().zip(&g).map(|(a, b)| a - b).collect(), c.clone())).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Coefficients are all valuation zero.
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| self.field.val(c) == ExtRat::from_int(0))
    }

    /// Each coefficient lies in the prime field (no `t` in Puiseux mode).
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| self.field.as_rat(c).is_some())
    }
}

impl<F: ValuedField> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: &MPoly<F>) -> MPoly<F> {
        self.merge(rhs, false)
    }
}

impl<F: ValuedField> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: &MPoly<F>) -> MPoly<F> {
        self.merge(rhs, true)
    }
}

impl<F: ValuedField> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }
}

impl<F: ValuedField> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: &MPoly<F>) -> MPoly<F> {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.push((a.iter().zip(b).map(|(p, q)| p + q).collect(), self.field.mul(x, y)));
            }
        }
        MPoly::from_terms(&self.field, self.nvars, out)
    }
}

/// A polynomial over the residue field, modelled by the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResiduePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl ResiduePoly {
    pub fn from_map(nvars: usize, mut terms: BTreeMap<Exponent, Rat>) -> Self {
        terms.retain(|_, c| *c != Rat::from_integer(0.into()));
        ResiduePoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly one term; zero is not a monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn mul(&self, other: &ResiduePoly) -> ResiduePoly {
        let mut out: BTreeMap<Exponent, Rat> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *out.entry(e).or_insert_with(|| Rat::from_integer(0.into())) += x * y;
            }
        }
        ResiduePoly::from_map(self.nvars, out)
    }

    /// Lifts to a polynomial with rational coefficients over `field`.
    pub fn to_mpoly<F: ValuedField>(&self, field: &F) -> MPoly<F> {
        MPoly::from_terms(field, self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), field.from_rat(c))).collect())
    }
}

/// Variable names plus the coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: ValuedField> {
    pub field: F,
    pub names: Vec<String>,
}

impl<F: ValuedField> Ring<F> {
    pub fn new(field: F, names: Vec<String>) -> Self {
        Ring { field, names }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> MPoly<F> {
        MPoly::var(&self.field, self.nvars(), i)
    }

    pub fn constant(&self, c: F::Elem) -> MPoly<F> {
        MPoly::constant(&self.field, self.nvars(), c)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sub-ring on the listed variables, in the given order.
    pub fn subring(&self, vars: &[usize]) -> Ring<F> {
        Ring { field: self.field.clone(), names: vars.iter().map(|&i| self.names[i].clone()).collect() }
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| if x == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], x) })
            .collect();
        parts.join("*")
    }

    /// Parseable rendering, e.g. `t*x1^2 + x1 + 1`.
    pub fn fmt_poly(&self, p: &MPoly<F>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (idx, (e, c)) in p.terms().iter().enumerate() {
            let mon = self.fmt_monomial(e);
            let single = f.is_single_term(c);
            let s = f.fmt_elem(c);
            let (neg, body) = if single && s.starts_with('-') { (true, f.fmt_elem(&f.neg(c))) } else { (false, s) };
            let coeff = if single { body } else { format!("({body})") };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mon.is_empty() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&mon);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mon);
            }
        }
        out
    }

    pub fn fmt_residue(&self, p: &ResiduePoly) -> String {
        let q = p.to_mpoly(&crate::scalars::Puiseux);
        Ring::new(crate::scalars::Puiseux, self.names.clone()).fmt_poly(&q)
    }
}
