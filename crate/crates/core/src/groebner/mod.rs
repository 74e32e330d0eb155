//! Gröbner bases over the coefficient field and the ideal operations built
//! on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{divides, lcm, Exponent, MPoly};
use crate::scalars::{denominator_lcm, Rat, ValuedField};

mod ideal;

pub use ideal::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic with variable 0 largest.
    Lex,
    DegRevLex,
    /// Lexicographic with the last variable largest.
    InverseLex,
    /// `a > b` if `w·a < w·b`, ties broken by `tiebreak`.
    Weighted {
        weights: Vec<Rat>,
        tiebreak: Box<MonomialOrder>,
    },
    /// Any monomial involving a flagged variable is larger than every
    /// monomial free of them; ties by degree in the flagged block, then
    /// degree reverse lexicographic.
    Elimination {
        eliminate: Vec<bool>,
    },
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<Rat>) -> Self {
        MonomialOrder::Weighted { weights, tiebreak: Box::new(MonomialOrder::DegRevLex) }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::InverseLex => "invlex".into(),
            MonomialOrder::Weighted { tiebreak, .. } => format!("weighted+{}", tiebreak.name()),
            MonomialOrder::Elimination { .. } => "elimination".into(),
        }
    }

    fn compile(&self) -> Cmp {
        match self {
            MonomialOrder::Lex => Cmp::Lex,
            MonomialOrder::DegRevLex => Cmp::DegRevLex,
            MonomialOrder::InverseLex => Cmp::InverseLex,
            MonomialOrder::Weighted { weights, tiebreak } => {
                let l = Rat::from_integer(denominator_lcm(weights));
                let ints = weights.iter().map(|w| (w * &l).to_integer().to_i128().expect("weight fits in i128")).collect();
                Cmp::Weighted(ints, Box::new(tiebreak.compile()))
            }
            MonomialOrder::Elimination { eliminate } => Cmp::Elim(eliminate.clone()),
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.compile().cmp(a, b)
    }

    /// Whether `1` is the smallest monomial. Weighted orders favour small
    /// weight, so this needs every weight nonpositive.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::Weighted { weights, tiebreak } => weights.iter().all(|w| !w.is_positive()) && tiebreak.is_global(),
            _ => true,
        }
    }
}

#[derive(Clone, Debug)]
enum Cmp {
    Lex,
    DegRevLex,
    InverseLex,
    Weighted(Vec<i128>, Box<Cmp>),
    Elim(Vec<bool>),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl Cmp {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Cmp::Lex => a.cmp(b),
            Cmp::DegRevLex => degrevlex(a, b),
            Cmp::InverseLex => {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            Cmp::Weighted(w, tie) => {
                let wa: i128 = w.iter().zip(a).map(|(x, &e)| x * e as i128).sum();
                let wb: i128 = w.iter().zip(b).map(|(x, &e)| x * e as i128).sum();
                wb.cmp(&wa).then_with(|| tie.cmp(a, b))
            }
            Cmp::Elim(mask) => {
                let ea: u64 = a.iter().zip(mask).filter(|(_, &m)| m).map(|(&x, _)| x as u64).sum();
                let eb: u64 = b.iter().zip(mask).filter(|(_, &m)| m).map(|(&x, _)| x as u64).sum();
                ea.cmp(&eb).then_with(|| degrevlex(a, b))
            }
        }
    }
}

/// Caps on basis growth; exceeding them is reported, never truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_terms: usize,
    pub max_pairs: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_terms: 1_000_000, max_pairs: 200_000 }
    }
}

type Terms<E> = Vec<(Exponent, E)>;

struct Engine<'a, F: ValuedField> {
    field: &'a F,
    cmp: Cmp,
}

impl<F: ValuedField> Engine<'_, F> {
    fn sort(&self, mut t: Terms<F::Elem>) -> Terms<F::Elem> {
        t.sort_by(|a, b| self.cmp.cmp(&b.0, &a.0));
        t
    }

    /// `p[from..] - c · x^m · g[1..]`, where the leading terms cancel.
    fn sub_multiple(&self, p: &[(Exponent, F::Elem)], c: &F::Elem, m: &[u32], g: &[(Exponent, F::Elem)]) -> Terms<F::Elem> {
        let f = self.field;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let shifted = g[1..].iter().map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Exponent>(), x));
        let mut shifted = shifted.peekable();
        let mut i = 0;
        loop {
            match (p.get(i), shifted.peek()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let (e, x) = shifted.next().unwrap();
                    out.push((e, f.neg(&f.mul(c, x))));
                }
                (Some(a), Some(b)) => match self.cmp.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (e, x) = shifted.next().unwrap();
                        out.push((e, f.neg(&f.mul(c, x))));
                    }
                    Ordering::Equal => {
                        let (e, x) = shifted.next().unwrap();
                        let v = f.sub(&a.1, &f.mul(c, x));
                        if !f.is_zero(&v) {
                            out.push((e, v));
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    /// Full reduction of `p` modulo the listed basis elements.
    fn reduce(&self, mut p: Terms<F::Elem>, basis: &[&Terms<F::Elem>], limits: &GbLimits) -> Result<Terms<F::Elem>> {
        let f = self.field;
        let mut rem = Vec::new();
        let mut steps = 0usize;
        while !p.is_empty() {
            let (lm, lc) = (&p[0].0, &p[0].1);
            let red = basis.iter().find(|g| divides(&g[0].0, lm));
            match red {
                Some(g) => {
                    let m: Exponent = lm.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                    let c = f.div(lc, &g[0].1)?;
                    p = self.sub_multiple(&p[1..], &c, &m, g);
                    steps += 1;
                    if p.len() > limits.max_terms || steps > limits.max_terms {
                        return Err(Error::ResourceLimit(format!("reduction exceeded {} terms", limits.max_terms)));
                    }
                }
                None => {
                    let first = p.remove(0);
                    rem.push(first);
                }
            }
        }
        Ok(rem)
    }

    fn monic(&self, p: Terms<F::Elem>) -> Result<Terms<F::Elem>> {
        let inv = self.field.inv(&p[0].1)?;
        Ok(p.into_iter().map(|(e, c)| (e, self.field.mul(&c, &inv))).collect())
    }

    fn spoly(&self, a: &Terms<F::Elem>, b: &Terms<F::Elem>) -> Result<Terms<F::Elem>> {
        let l = lcm(&a[0].0, &b[0].0);
        let f = self.field;
        let shift = |p: &Terms<F::Elem>| -> Result<Terms<F::Elem>> {
            let m: Exponent = l.iter().zip(&p[0].0).map(|(x, y)| x - y).collect();
            let c = f.inv(&p[0].1)?;
            Ok(p.iter().map(|(e, x)| (e.iter().zip(&m).map(|(p, q)| p + q).collect(), f.mul(x, &c))).collect())
        };
        let sa = shift(a)?;
        let sb = shift(b)?;
        let zero = vec![0; l.len()];
        Ok(self.sub_multiple(&sa[1..], &f.one(), &zero, &sb))
    }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: ValuedField> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    elems: Vec<Terms<F::Elem>>,
}

impl<F: ValuedField> GroebnerBasis<F> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn polys(&self) -> Vec<MPoly<F>> {
        self.elems.iter().map(|t| MPoly::from_terms(&self.field, self.nvars, t.clone())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Leading monomial of element `i` under the basis order.
    pub fn leading_monomial(&self, i: usize) -> &Exponent {
        &self.elems[i][0].0
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.iter().all(|&x| x == 0)
    }

    pub fn normal_form(&self, p: &MPoly<F>) -> Result<MPoly<F>> {
        let eng = Engine { field: &self.field, cmp: self.order.compile() };
        let basis: Vec<&Terms<F::Elem>> = self.elems.iter().collect();
        let t = eng.reduce(eng.sort(p.terms().to_vec()), &basis, &GbLimits::default())?;
        Ok(MPoly::from_terms(&self.field, self.nvars, t))
    }

    pub fn contains(&self, p: &MPoly<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Terms of element `i` in decreasing basis order.
    pub fn ordered_terms(&self, i: usize) -> &[(Exponent, F::Elem)] {
        &self.elems[i]
    }
}

pub fn buchberger<F: ValuedField>(field: &F, nvars: usize, gens: &[MPoly<F>], order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
    buchberger_with(field, nvars, gens, order, &GbLimits::default())
}

/// Reduced Gröbner basis by Buchberger's algorithm with the Gebauer–Möller
/// criteria and the normal selection strategy.
pub fn buchberger_with<F: ValuedField>(
    field: &F,
    nvars: usize,
    gens: &[MPoly<F>],
    order: &MonomialOrder,
    limits: &GbLimits,
) -> Result<GroebnerBasis<F>> {
    if !order.is_global() && !gens.iter().all(|g| g.is_homogeneous()) {
        return Err(Error::InvalidInput(format!("{} order with a positive weight needs homogeneous generators", order.name())));
    }
    let eng = Engine { field, cmp: order.compile() };
    let mut polys: Vec<Terms<F::Elem>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize, Exponent)> = Vec::new();
    let mut total_terms = 0usize;

    let mut insert = |h: Terms<F::Elem>,
                      polys: &mut Vec<Terms<F::Elem>>,
                      active: &mut Vec<usize>,
                      pairs: &mut Vec<(usize, usize, Exponent)>|
     -> Result<()> {
        total_terms += h.len();
        if total_terms > limits.max_terms {
            return Err(Error::ResourceLimit(format!("basis exceeded {} terms", limits.max_terms)));
        }
        let hi = polys.len();
        let hlm = h[0].0.clone();
        polys.push(h);
        // Gebauer–Möller update.
        let mut cands: Vec<(usize, Exponent)> = active.iter().map(|&g| (g, lcm(&hlm, &polys[g][0].0))).collect();
        let mut keep: Vec<(usize, Exponent)> = Vec::new();
        while let Some((g, l)) = cands.pop() {
            let gl = &polys[g][0].0;
            let redundant = !coprime(&hlm, gl) && cands.iter().chain(keep.iter()).any(|(_, l2)| divides(l2, &l));
            if !redundant {
                keep.push((g, l));
            }
        }
        let new_pairs: Vec<(usize, usize, Exponent)> =
            keep.into_iter().filter(|(g, _)| !coprime(&hlm, &polys[*g][0].0)).map(|(g, l)| (g, hi, l)).collect();
        pairs.retain(|(a, b, l)| !(divides(&hlm, l) && lcm(&polys[*a][0].0, &hlm) != *l && lcm(&polys[*b][0].0, &hlm) != *l));
        pairs.extend(new_pairs);
        if pairs.len() > limits.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} critical pairs", limits.max_pairs)));
        }
        active.retain(|&g| !divides(&hlm, &polys[g][0].0));
        active.push(hi);
        Ok(())
    };

    let mut input: Vec<Terms<F::Elem>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            assert_eq!(g.nvars(), nvars, "ring mismatch");
            eng.sort(g.terms().to_vec())
        })
        .collect();
    input.sort_by(|a, b| eng.cmp.cmp(&a[0].0, &b[0].0));
    for g in input {
        let basis: Vec<&Terms<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let r = eng.reduce(g, &basis, limits)?;
        if r.is_empty() {
            continue;
        }
        let r = eng.monic(r)?;
        let unit = r[0].0.iter().all(|&x| x == 0);
        insert(r, &mut polys, &mut active, &mut pairs)?;
        if unit {
            pairs.clear();
            break;
        }
    }

    while !pairs.is_empty() {
        let (pos, _) = pairs.iter().enumerate().min_by(|(_, a), (_, b)| eng.cmp.cmp(&a.2, &b.2)).expect("nonempty");
        let (a, b, _) = pairs.swap_remove(pos);
        let s = eng.spoly(&polys[a], &polys[b])?;
        let basis: Vec<&Terms<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let r = eng.reduce(s, &basis, limits)?;
        if r.is_empty() {
            continue;
        }
        let r = eng.monic(r)?;
        let unit = r[0].0.iter().all(|&x| x == 0);
        insert(r, &mut polys, &mut active, &mut pairs)?;
        if unit {
            break;
        }
    }

    // Minimal basis, then interreduce.
    let mut mins: Vec<usize> = Vec::new();
    for &i in &active {
        let lm = &polys[i][0].0;
        let dominated = active.iter().any(|&j| j != i && divides(&polys[j][0].0, lm) && (polys[j][0].0 != *lm || j < i));
        if !dominated {
            mins.push(i);
        }
    }
    if mins.iter().any(|&i| polys[i][0].0.iter().all(|&x| x == 0)) {
        return Ok(GroebnerBasis { field: field.clone(), nvars, order: order.clone(), elems: vec![vec![(vec![0; nvars], field.one())]] });
    }
    let mut elems = Vec::with_capacity(mins.len());
    for &i in &mins {
        let others: Vec<&Terms<F::Elem>> = mins.iter().filter(|&&j| j != i).map(|&j| &polys[j]).collect();
        let head = polys[i][0].clone();
        let tail = eng.reduce(polys[i][1..].to_vec(), &others, limits)?;
        let mut t = vec![head];
        t.extend(tail);
        elems.push(eng.monic(t)?);
    }
    elems.sort_by(|a, b| eng.cmp.cmp(&a[0].0, &b[0].0));
    Ok(GroebnerBasis { field: field.clone(), nvars, order: order.clone(), elems })
}

/// Integer weight vector scaled from rationals, for callers that need the
/// exact scaling used by weighted orders.
pub fn integer_weights(w: &[Rat]) -> Vec<BigInt> {
    let l = Rat::from_integer(denominator_lcm(w));
    w.iter().map(|x| (x * &l).to_integer()).collect()
}
