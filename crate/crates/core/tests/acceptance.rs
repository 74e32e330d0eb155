//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_core::groebner::Ideal;
use tropical_core::io::{dispatch, Command, Options};
use tropical_core::newton::{expected_polygon, is_unique_at, polygon_of_coefficients};
use tropical_core::poly::MPoly;
use tropical_core::scalars::{rat, ratio, Puiseux, Rat, ValuedField};
use tropical_core::triangular::TriangularSet;
use tropical_core::tropical::{
    starting_point, tropical_link, verify_output, zero_dim_point, zero_dim_variety, LinkConfig, StartConfig, ZeroDimConfig,
};
use tropical_core::Error;

type Outcome = Result<String, String>;

/// Points emitted so far, with whether each passed its checks.
#[derive(Default)]
struct Soundness {
    checked: usize,
    failures: Vec<String>,
}

impl Soundness {
    fn record<F: ValuedField>(&mut self, label: &str, ideal: &Ideal<F>, points: &[Vec<Rat>], need_tropical: bool) -> Result<(), String> {
        let checks = verify_output(ideal, points).map_err(|e| e.to_string())?;
        for (p, c) in points.iter().zip(checks) {
            self.checked += 1;
            let ok = c.in_prevariety && (!need_tropical || c.in_tropical_variety == Some(true));
            if !ok {
                self.failures.push(format!("{label}: {p:?} {c:?}"));
            }
        }
        Ok(())
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < Duration::from_secs(limit), format!("took {t:.2?}, limit {limit}s"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1(s: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let sys = puiseux_fixture("three_levels.ideal");
    let tri = TriangularSet::new(sys.gens.clone()).map_err(err)?;
    let v = zero_dim_variety(&tri, &ZeroDimConfig::default()).map_err(err)?;
    let expect: BTreeSet<Vec<Rat>> = [ints(&[0, 0, 0]), ints(&[0, -1, 1]), ints(&[-1, 1, 0]), ints(&[-1, -1, 2])].into_iter().collect();
    ensure(v.points == expect, format!("got {:?}", v.points))?;
    let (doc, code) = dispatch(Command::Zerodim, &Options::default(), "three_levels.ideal", &fixture_text("three_levels.ideal"));
    ensure(code == 0 && doc["outputs"]["points"].as_array().map(|a| a.len()) == Some(4), "zerodim document")?;
    within(start, 5)?;
    let pts: Vec<Vec<Rat>> = v.points.into_iter().collect();
    s.record("criterion 1", &sys.ideal(), &pts, false)?;
    Ok("4 points, exact".into())
}

fn c2(s: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let sys = padic_fixture("padic_digits.ideal");
    let tri = TriangularSet::new(sys.gens.clone()).map_err(err)?;
    let v = zero_dim_variety(&tri, &ZeroDimConfig::default()).map_err(err)?;
    let target = vec![rat(0), rat(0), ratio(-1, 2)];
    ensure(v.points.contains(&target), format!("points {:?}", v.points))?;
    let (w, trace) = zero_dim_point(&tri, &ZeroDimConfig::default()).map_err(err)?;
    ensure(w == target, format!("first point {w:?}"))?;
    let last = &trace[2];
    ensure(last.fallback_precision == Some(2), format!("precision {:?}", last.fallback_precision))?;
    ensure(last.vertices == vec![(0, rat(0)), (2, rat(1))], format!("vertices {:?}", last.vertices))?;
    within(start, 5)?;
    let pts: Vec<Vec<Rat>> = v.points.into_iter().collect();
    s.record("criterion 2", &sys.ideal(), &pts, false)?;
    Ok(format!("(0,0,-1/2) found at precision 2 via prefix {:?}", last.prefix.clone().unwrap_or_default()))
}

fn c3() -> Outcome {
    let start = Instant::now();
    let sys = padic_fixture("padic_quadric.ideal");
    let f = &sys.gens[0];
    let at0 = expected_polygon(f, 2, &ints(&[0, 0])).map_err(err)?;
    let at21 = expected_polygon(f, 2, &ints(&[2, 1])).map_err(err)?;
    ensure(at0.vertices() == [(0, rat(0)), (1, rat(0)), (2, rat(3))], format!("{at0}"))?;
    ensure(at21.vertices() == [(0, rat(2)), (1, rat(1)), (2, rat(3))], format!("{at21}"))?;
    ensure(!is_unique_at(f, 2, &ints(&[0, 0])).map_err(err)?, "unique at (0,0)")?;
    ensure(is_unique_at(f, 2, &ints(&[2, 1])).map_err(err)?, "not unique at (2,1)")?;
    within(start, 1)?;
    Ok(format!("{at0} / {at21}"))
}

fn c4(s: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let sys = puiseux_fixture("grass25.ideal");
    let ideal = sys.ideal();
    let forced = ints(&[1, 5, 3, 7, 8, 2, 9]);
    let cfg = StartConfig { forced: Some(forced.clone()), pure_powers: true, ..Default::default() };
    let (p, witness) = starting_point(&ideal, &cfg).map_err(err)?;
    ensure(witness.independent == (3..10).collect::<Vec<_>>(), format!("independent {:?}", witness.independent))?;
    ensure(p[3..] == forced[..], format!("point {p:?}"))?;
    let dep: Vec<Rat> = witness.dependent.iter().map(|&i| p[i].clone()).collect();
    ensure(multiset(&dep) == multiset(&ints(&[0, -2, -6])), format!("dependent {dep:?}"))?;
    ensure(ideal.is_in_tropical_variety(&p).map_err(err)?, "not in the tropical variety")?;
    s.record("criterion 4", &ideal, std::slice::from_ref(&p), true)?;

    let bad = StartConfig { forced: Some(ints(&[1; 7])), pure_powers: true, ..Default::default() };
    ensure(matches!(starting_point(&ideal, &bad), Err(Error::ExhaustedAttempts(1))), "c = (t,…,t) was accepted")?;
    let t = Puiseux.uniformizer_pow(&rat(1)).map_err(err)?;
    let assignment: Vec<(usize, _)> = (3..10).map(|i| (i, t.clone())).collect();
    let map: Vec<Option<usize>> = (0..10).map(|i| (i < 3).then_some(i)).collect();
    let cut = Ideal::new(Puiseux, 3, ideal.gens().iter().map(|g| g.substitute(&assignment).remap(3, &map)).collect());
    ensure(!cut.zero_dim_torus_check().map_err(err)?, "torus check passed for c = (t,…,t)")?;

    let (doc, code) = dispatch(Command::Point, &Options { seed: 7, ..Default::default() }, "grass25.ideal", &fixture_text("grass25.ideal"));
    ensure(code == 0, format!("seeded point: {}", doc["error"]))?;
    let seeded: Vec<Rat> = doc["outputs"]["point"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| tropical_core::scalars::parse_rat(x.as_str().unwrap()).unwrap())
        .collect();
    s.record("criterion 4 (seeded)", &ideal, &[seeded], true)?;
    within(start, 120)?;
    Ok(format!("point {}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
}

fn link_check(s: &mut Soundness, name: &str, units: &[usize], label: &str) -> Result<String, String> {
    let start = Instant::now();
    let sys = puiseux_fixture(name);
    let ideal = sys.ideal();
    let rs = tropical_link(&ideal, &LinkConfig::default()).map_err(err)?;
    let n = ideal.nvars();
    let got: BTreeSet<Vec<BigInt>> = rs.rays.iter().cloned().collect();
    let expect = unit_vector_classes(&rs.lineality, n, units);
    let oracle = enumerated_rays(&ideal, 2);
    ensure(rs.valency() == 3, format!("{name}: valency {}", rs.valency()))?;
    ensure(got == expect, format!("{name}: rays {got:?}, expected {expect:?}"))?;
    ensure(oracle == expect, format!("{name}: enumeration found {oracle:?}"))?;
    within(start, 30)?;
    s.record(label, &ideal, &rs.rays_as_rat(), true)?;
    Ok(format!("{name} valency 3"))
}

fn c5(s: &mut Soundness) -> Outcome {
    let a = link_check(s, "line.ideal", &[0, 1, 2], "criterion 5 (line)")?;
    let b = link_check(s, "grass24.ideal", &[0, 1, 2], "criterion 5 (quadric)")?;
    let ideal = puiseux_fixture("line.ideal").ideal();
    let exact = tropical_link(&ideal, &LinkConfig { fixed_exponents: true, ..Default::default() }).map_err(err)?;
    ensure(exact.valency() < 3 && !exact.warnings.is_empty(), format!("literal slicing: {} rays, {:?}", exact.valency(), exact.warnings))?;
    s.record("criterion 5 (literal)", &ideal, &exact.rays_as_rat(), true)?;
    Ok(format!("{a}; {b}; literal slicing finds {} ray(s) with a warning", exact.valency()))
}

fn c6(s: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let (f, vals) = planted_univariate(&mut rng);
        let poly = polygon_of_coefficients(&Puiseux, &f).map_err(err)?;
        let slopes = poly.lambda().map_err(err)?;
        let got: Vec<(Rat, usize)> = slopes.iter().map(|s| (s.valuation.clone(), s.multiplicity)).collect();
        let want: Vec<(Rat, usize)> = multiset(&vals).into_iter().rev().collect();
        ensure(got == want, format!("instance {k}: {got:?} vs {want:?}"))?;
        let mp = MPoly::from_terms(&Puiseux, 1, f.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())).collect());
        let pts: Vec<Vec<Rat>> = want.iter().map(|(v, _)| vec![v.clone()]).collect();
        s.record("criterion 6", &Ideal::new(Puiseux, 1, vec![mp]), &pts, false)?;
    }
    within(start, 10)?;
    Ok("100/100 slope sets equal the planted valuations".into())
}

fn c7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    let mut tried = 0;
    while pairs < 50 {
        tried += 1;
        ensure(tried < 10_000, "could not generate unique pairs")?;
        let (f, k, w) = random_level_poly(&mut rng);
        let cs = f.coefficients_wrt(k).map_err(err)?;
        if f.degree_in(k) == 0 || cs[0].is_zero() || !is_unique_at(&f, k, &w).map_err(err)? {
            continue;
        }
        let expected = expected_polygon(&f, k, &w).map_err(err)?;
        for j in 0..20 {
            let point: Vec<(usize, _)> = w.iter().enumerate().map(|(i, v)| (i, random_with_valuation(&mut rng, v))).collect();
            let coeffs: Vec<_> = cs.iter().map(|c| c.substitute(&point).as_constant().unwrap_or_else(|| Puiseux.zero())).collect();
            let sampled = polygon_of_coefficients(&Puiseux, &coeffs).map_err(err)?;
            ensure(sampled == expected, format!("pair {pairs} sample {j}: {sampled} vs {expected}"))?;
        }
        pairs += 1;
    }
    within(start, 30)?;
    Ok(format!("50 pairs x 20 samples agree ({tried} candidates drawn)"))
}

fn c8(s: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for k in 0..50 {
        let (tri, planted) = planted_triangular(&mut rng);
        let v = zero_dim_variety(&tri, &ZeroDimConfig::default()).map_err(err)?;
        ensure(v.points == planted, format!("system {k}: {:?} vs planted {:?}", v.points, planted))?;
        ensure(v.fallbacks == 0, format!("system {k}: fallback used {} times", v.fallbacks))?;
        total += planted.len();
        let n = tri.len();
        let pts: Vec<Vec<Rat>> = v.points.into_iter().collect();
        s.record("criterion 8", &Ideal::new(Puiseux, n, tri.polys().to_vec()), &pts, false)?;
    }
    within(start, 60)?;
    Ok(format!("50 systems, {total} planted points, no fallback"))
}

fn c9(s: &Soundness) -> Outcome {
    ensure(s.failures.is_empty(), s.failures.join("; "))?;
    ensure(s.checked > 0, "nothing was checked")?;
    Ok(format!("{} emitted points and rays checked", s.checked))
}

fn c10() -> Outcome {
    let runs: [(Command, Options, &str); 4] = [
        (Command::Point, Options { seed: 7, ..Default::default() }, "grass25.ideal"),
        (Command::Point, Options { seed: 3, ..Default::default() }, "line.ideal"),
        (Command::Link, Options { seed: 5, precondition: true, ..Default::default() }, "grass24.ideal"),
        (Command::Zerodim, Options { seed: 1, trace: true, ..Default::default() }, "padic_digits.ideal"),
    ];
    for (cmd, opts, name) in runs {
        let text = fixture_text(name);
        let a = serde_json::to_string(&dispatch(cmd, &opts, name, &text).0).map_err(err)?;
        let b = serde_json::to_string(&dispatch(cmd, &opts, name, &text).0).map_err(err)?;
        ensure(a == b, format!("{} on {name} differs between runs", cmd.name()))?;
    }
    Ok("4 seeded commands byte-identical".into())
}

fn main() {
    let mut s = Soundness::default();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "zero-dimensional variety over Puiseux series", c1(&mut s)),
        (2, "p-adic point with approximate roots", c2(&mut s)),
        (3, "expected Newton polygons", c3()),
        (4, "starting point replay on Grass(2,5)", c4(&mut s)),
        (5, "links of valency 3", c5(&mut s)),
        (6, "planted univariate valuations", c6(&mut s)),
        (7, "sampled polygons equal expected polygons", c7()),
        (8, "planted triangular systems", c8(&mut s)),
    ];
    results.push((9, "soundness of every emitted point", c9(&s)));
    results.push((10, "determinism", c10()));
    let mut failed = 0;
    for (n, what, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {n}: {what}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n}: {what}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
