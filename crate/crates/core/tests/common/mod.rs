#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropical_core::groebner::Ideal;
use tropical_core::io::{parse_ideal_file, AnySystem, System};
use tropical_core::linalg;
use tropical_core::poly::{MPoly, Ring};
use tropical_core::scalars::{rat, ExtRat, Padic, Puiseux, PuiseuxFraction, Rat, ValuedField};
use tropical_core::triangular::TriangularSet;
use tropical_core::tropical::canonical_ray;

pub fn fixture_text(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn puiseux_fixture(name: &str) -> System<Puiseux> {
    match parse_ideal_file(&fixture_text(name)).unwrap().system {
        AnySystem::Puiseux(s) => s,
        _ => panic!("{name} is not over Puiseux series"),
    }
}

pub fn padic_fixture(name: &str) -> System<Padic> {
    match parse_ideal_file(&fixture_text(name)).unwrap().system {
        AnySystem::Padic(s) => s,
        _ => panic!("{name} is not p-adic"),
    }
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn tpow(c: i64, e: &Rat) -> PuiseuxFraction {
    PuiseuxFraction::monomial(rat(c), e)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// Valuation `num/den` with `den <= 3` inside `[-5, 5]`.
pub fn random_valuation(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(1..=3i64);
    Rat::new(BigInt::from(rng.gen_range(-5 * den..=5 * den)), BigInt::from(den))
}

/// Dense coefficients of `∏ (x - c_i t^{v_i})` and the planted valuations.
pub fn planted_univariate(rng: &mut ChaCha8Rng) -> (Vec<PuiseuxFraction>, Vec<Rat>) {
    let d = rng.gen_range(1..=6);
    let vals: Vec<Rat> = (0..d).map(|_| random_valuation(rng)).collect();
    let mut f = vec![PuiseuxFraction::one()];
    for v in &vals {
        let root = tpow(nonzero(rng, 9), v);
        let mut g = vec![PuiseuxFraction::zero(); f.len() + 1];
        for (i, c) in f.iter().enumerate() {
            g[i + 1] = &g[i + 1] + c;
            g[i] = &g[i] - &(c * &root);
        }
        f = g;
    }
    (f, vals)
}

pub fn multiset(v: &[Rat]) -> BTreeMap<Rat, usize> {
    let mut m = BTreeMap::new();
    for x in v {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// `f_i = ∏_j (x_i - c_ij t^{a_ij} x_{i-1}^{m_ij})`, rejected until the
/// planted valuations at every level are distinct. Returns the set and the
/// planted valuation vectors.
pub fn planted_triangular(rng: &mut ChaCha8Rng) -> (TriangularSet<Puiseux>, BTreeSet<Vec<Rat>>) {
    'retry: loop {
        let n = rng.gen_range(1..=3);
        let ring = Ring::new(Puiseux, (1..=n).map(|i| format!("x{i}")).collect());
        let mut polys = Vec::new();
        let mut points: Vec<Vec<Rat>> = vec![Vec::new()];
        for i in 0..n {
            let d = rng.gen_range(1..=3);
            let factors: Vec<(i64, i64, u32)> =
                (0..d).map(|_| (nonzero(rng, 9), rng.gen_range(-3..=3), if i == 0 { 0 } else { rng.gen_range(0..=2) })).collect();
            let mut next = Vec::new();
            for p in &points {
                let prev = p.last().cloned().unwrap_or_else(|| rat(0));
                let vals: Vec<Rat> = factors.iter().map(|(_, a, m)| rat(*a) + rat(*m as i64) * &prev).collect();
                if multiset(&vals).len() != vals.len() {
                    continue 'retry;
                }
                for v in vals {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            points = next;
            let mut f = ring.constant(PuiseuxFraction::one());
            for (c, a, m) in &factors {
                let mut term = ring.constant(tpow(*c, &rat(*a)));
                if i > 0 {
                    term = &term * &ring.var(i - 1).pow(*m);
                }
                f = &f * &(&ring.var(i) - &term);
            }
            polys.push(f);
        }
        return (TriangularSet::new(polys).unwrap(), points.into_iter().collect());
    }
}

/// A random `f` in `x_0, …, x_k` and integer weights `w` on `x_0, …, x_{k-1}`.
pub fn random_level_poly(rng: &mut ChaCha8Rng) -> (MPoly<Puiseux>, usize, Vec<Rat>) {
    let k = rng.gen_range(1..=2);
    let deg = rng.gen_range(1..=3u32);
    let mut f = MPoly::zero(&Puiseux, k + 1);
    for i in 0..=deg {
        if i != 0 && i != deg && rng.gen_bool(0.3) {
            continue;
        }
        let mut e = vec![0u32; k + 1];
        e[k] = i;
        for _ in 0..rng.gen_range(1..=3) {
            for x in e.iter_mut().take(k) {
                *x = rng.gen_range(0..=2);
            }
            let c = tpow(nonzero(rng, 5), &rat(rng.gen_range(-2..=2)));
            f = &f + &MPoly::monomial(&Puiseux, k + 1, e.clone(), c);
        }
    }
    let w = (0..k).map(|_| rat(rng.gen_range(-3..=3))).collect();
    (f, k, w)
}

/// A random element of valuation exactly `v`: `c t^v (1 + higher terms)`.
pub fn random_with_valuation(rng: &mut ChaCha8Rng, v: &Rat) -> PuiseuxFraction {
    let mut x = tpow(nonzero(rng, 7), v);
    for _ in 0..rng.gen_range(0..=2) {
        let e = v + Rat::new(BigInt::from(rng.gen_range(1..=6)), BigInt::from(rng.gen_range(1..=2)));
        x = &x + &tpow(nonzero(rng, 7), &e);
    }
    x
}

/// Minimum of `val(c) + w·α` attained at least twice, evaluated term by term.
pub fn min_twice<F: ValuedField>(f: &MPoly<F>, w: &[Rat]) -> bool {
    let vals: Vec<ExtRat> = f
        .terms()
        .iter()
        .map(|(e, c)| {
            let dot: Rat = e.iter().zip(w).map(|(a, b)| rat(*a as i64) * b).sum();
            &f.field().val(c) + &dot
        })
        .collect();
    let Some(m) = vals.iter().min() else { return true };
    vals.iter().filter(|v| *v == m).count() >= 2
}

/// Span of the weights making every generator homogeneous, computed from
/// the generators directly.
pub fn generator_homogeneity<F: ValuedField>(gens: &[MPoly<F>], n: usize) -> Vec<Vec<Rat>> {
    let mut rows = Vec::new();
    for g in gens {
        let t = g.terms();
        for (e, _) in &t[1..] {
            rows.push(e.iter().zip(&t[0].0).map(|(a, b)| rat(*a as i64 - *b as i64)).collect());
        }
    }
    linalg::nullspace(&rows, n)
}

/// Ray classes of a one-dimensional fan found by testing every integer
/// vector in `[-b, b]^n` against the generators.
pub fn enumerated_rays<F: ValuedField>(ideal: &Ideal<F>, b: i64) -> BTreeSet<Vec<BigInt>> {
    let n = ideal.nvars();
    let c0 = generator_homogeneity(ideal.gens(), n);
    let mut out = BTreeSet::new();
    let mut w = vec![-b; n];
    loop {
        let v = ints(&w);
        if ideal.gens().iter().all(|g| min_twice(g, &v)) {
            if let Some(r) = canonical_ray(&c0, &v) {
                out.insert(r);
            }
        }
        let mut i = 0;
        while i < n && w[i] == b {
            w[i] = -b;
            i += 1;
        }
        if i == n {
            return out;
        }
        w[i] += 1;
    }
}

pub fn unit_vector_classes(c0: &[Vec<Rat>], n: usize, idx: &[usize]) -> BTreeSet<Vec<BigInt>> {
    idx.iter()
        .map(|&i| {
            let mut e = vec![rat(0); n];
            e[i] = rat(1);
            canonical_ray(c0, &e).expect("unit vector outside the lineality space")
        })
        .collect()
}
