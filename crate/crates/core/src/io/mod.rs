//! Ideal files, result documents and command dispatch for the command line.

mod parse;

pub use parse::{parse_ideal_file, parse_polynomial, print_ideal_file, AnySystem, IdealFile, System};

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, MonomialOrder};
use crate::newton::{expected_polygon, is_unique_at};
use crate::scalars::{Rat, ValuedField};
use crate::triangular::{triangular_decomposition, TriangularSet};
use crate::tropical::{
    starting_point, tropical_link, verify_output, zero_dim_point, zero_dim_variety, ChoiceTrace, LinkConfig, SliceOutcome, StartConfig,
    ZeroDimConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Zerodim,
    Point,
    Link,
    Newton,
    Triangulate,
    Groebner,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zerodim => "zerodim",
            Command::Point => "point",
            Command::Link => "link",
            Command::Newton => "newton",
            Command::Triangulate => "triangulate",
            Command::Groebner => "groebner",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub max_attempts: usize,
    pub precision_cap: u32,
    pub pure_powers: bool,
    pub precondition: bool,
    pub fixed_exponents: bool,
    pub trace: bool,
    /// Forced weights for `point`, the initial-form weight for `link`, the
    /// lower coordinates for `newton`, an extra point for `verify`, the
    /// weight of a weighted order for `groebner`.
    pub weight: Option<Vec<Rat>>,
    /// `lex`, `degrevlex`, `invlex` or `weighted`.
    pub order: String,
    pub timing: bool,
    /// Only the first point for `zerodim`.
    pub single: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            max_attempts: 50,
            precision_cap: 64,
            pure_powers: false,
            precondition: false,
            fixed_exponents: false,
            trace: false,
            weight: None,
            order: "degrevlex".into(),
            timing: false,
            single: false,
        }
    }
}

/// Overall outcome; the exit code is a function of it alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    ResourceLimit,
    Error,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerificationFailed => "verification_failed",
            Status::ResourceLimit => "resource_limit",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 2,
            Status::ResourceLimit => 3,
            Status::Error => 1,
        }
    }
}

fn error_status(e: &Error) -> Status {
    if e.is_resource() {
        Status::ResourceLimit
    } else {
        Status::Error
    }
}

pub fn rat_str(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_str).collect())
}

fn trace_json(names: &[String], trace: &ChoiceTrace) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|c| {
                json!({
                    "level": c.level,
                    "variable": names.get(c.level).cloned().unwrap_or_default(),
                    "vertices": c.vertices.iter().map(|(i, v)| json!([i, v.to_string()])).collect::<Vec<_>>(),
                    "chosen": c.chosen.to_string(),
                    "unique": c.unique,
                    "fallback_precision": c.fallback_precision,
                    "prefix": c.prefix,
                })
            })
            .collect(),
    )
}

/// Items checked against the input generators.
struct Checked {
    items: Vec<Value>,
    passed: bool,
}

fn check<F: ValuedField>(ideal: &Ideal<F>, points: &[Vec<Rat>]) -> Result<Checked> {
    let checks = verify_output(ideal, points)?;
    let passed = checks.iter().all(|c| c.passed());
    let items = points
        .iter()
        .zip(&checks)
        .map(|(p, c)| json!({ "point": vec_json(p), "in_prevariety": c.in_prevariety, "in_tropical_variety": c.in_tropical_variety }))
        .collect();
    Ok(Checked { items, passed })
}

fn unchecked() -> Checked {
    Checked { items: Vec::new(), passed: true }
}

/// Runs `command` on the ideal file `text`, labelled `input` in the
/// document. Never panics on bad input; failures become the document's
/// status.
pub fn dispatch(command: Command, opts: &Options, input: &str, text: &str) -> (Value, i32) {
    let start = Instant::now();
    let parsed = parse_ideal_file(text);
    let field = parsed.as_ref().ok().map(|f| f.system.field().to_string());
    let result = parsed.and_then(|file| match &file.system {
        AnySystem::Puiseux(s) => run(command, opts, s, &file.weights),
        AnySystem::Padic(s) => run(command, opts, s, &file.weights),
    });
    let elapsed = start.elapsed().as_millis() as u64;
    let (status, outputs, verification, error) = match result {
        Ok((out, c)) => {
            let status = if c.passed { Status::Ok } else { Status::VerificationFailed };
            let v = json!({ "checked": c.items.len(), "passed": c.passed, "items": c.items });
            (status, out, v, Value::Null)
        }
        Err(e) => {
            log::error!("{e}");
            let err = json!({ "kind": e.kind(), "message": e.to_string() });
            (error_status(&e), Value::Null, Value::Null, err)
        }
    };
    let doc = json!({
        "command": command.name(),
        "input": input,
        "seed": opts.seed,
        "field": field,
        "status": status.name(),
        "outputs": outputs,
        "verification": verification,
        "error": error,
        "timing_ms": if opts.timing { Value::from(elapsed) } else { Value::Null },
    });
    (doc, status.exit_code())
}

fn zero_dim_config(opts: &Options) -> ZeroDimConfig {
    ZeroDimConfig { precision_cap: opts.precision_cap }
}

fn run<F: ValuedField>(command: Command, opts: &Options, sys: &System<F>, weights: &[(String, Vec<Rat>)]) -> Result<(Value, Checked)> {
    let ideal = sys.ideal();
    let names = &sys.ring.names;
    match command {
        Command::Zerodim => zerodim(opts, sys, &ideal),
        Command::Point => {
            let cfg = StartConfig {
                seed: opts.seed,
                max_attempts: opts.max_attempts,
                pure_powers: opts.pure_powers,
                forced: opts.weight.clone(),
                zero_dim: zero_dim_config(opts),
                ..Default::default()
            };
            let (p, w) = starting_point(&ideal, &cfg)?;
            let sub_ring = sys.ring.subring(&w.dependent);
            let field = ideal.field();
            let mut out = json!({
                "point": vec_json(&p),
                "independent": w.independent.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "weights": vec_json(&w.weights),
                "substitution": w.substitution.iter().map(|c| field.fmt_elem(c)).collect::<Vec<_>>(),
                "dependent": w.dependent.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "component": w.component.polys().iter().map(|f| sub_ring.fmt_poly(f)).collect::<Vec<_>>(),
                "attempt": w.attempt,
            });
            if opts.trace {
                out["trace"] = trace_json(&sub_ring.names, &w.trace);
            }
            Ok((out, check(&ideal, &[p])?))
        }
        Command::Link => {
            let cfg = LinkConfig {
                seed: opts.seed,
                precondition: opts.precondition,
                fixed_exponents: opts.fixed_exponents,
                zero_dim: zero_dim_config(opts),
            };
            let (rs, checked) = match &opts.weight {
                Some(u) => {
                    let init = Ideal::from_residues(ideal.nvars(), &ideal.initial_ideal(u)?);
                    let rs = tropical_link(&init, &cfg)?;
                    let c = check(&init, &rs.rays_as_rat())?;
                    (rs, c)
                }
                None => {
                    let rs = tropical_link(&ideal, &cfg)?;
                    let c = check(&ideal, &rs.rays_as_rat())?;
                    (rs, c)
                }
            };
            let slices: Vec<Value> = rs
                .slices
                .iter()
                .map(|s| {
                    let (outcome, rays) = match &s.outcome {
                        SliceOutcome::Rays(r) => ("rays", r.clone()),
                        SliceOutcome::BaseOnly => ("base_only", Vec::new()),
                        SliceOutcome::Empty => ("empty", Vec::new()),
                    };
                    json!({ "coordinate": names[s.coord], "exponent": s.exponent.to_string(), "outcome": outcome, "rays": rays })
                })
                .collect();
            let out = json!({
                "lineality": rs.lineality.iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
                "transversal": rs.transversal.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "base": vec_json(&rs.base),
                "rays": rs.rays.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "valency": rs.valency(),
                "slices": slices,
                "warnings": rs.warnings,
                "preconditioner": rs.preconditioner,
            });
            Ok((out, checked))
        }
        Command::Newton => {
            let w = opts.weight.clone().unwrap_or_default();
            let k = w.len();
            let mut items = Vec::new();
            for (idx, g) in sys.gens.iter().enumerate() {
                if g.max_var() != Some(k) {
                    continue;
                }
                let poly = expected_polygon(g, k, &w)?;
                let unique = is_unique_at(g, k, &w)?;
                let slopes: Vec<Value> = poly
                    .lambda()
                    .map(|l| l.iter().map(|s| json!({ "valuation": s.valuation.to_string(), "multiplicity": s.multiplicity })).collect())
                    .unwrap_or_default();
                items.push(json!({
                    "generator": idx,
                    "polynomial": sys.ring.fmt_poly(g),
                    "vertices": poly.vertices().iter().map(|(i, v)| json!([i, v.to_string()])).collect::<Vec<_>>(),
                    "unique": unique,
                    "slopes": slopes,
                }));
            }
            if items.is_empty() {
                return Err(Error::InvalidInput(format!("no generator has main variable {}", names.get(k).cloned().unwrap_or_default())));
            }
            Ok((json!({ "level": k, "weight": vec_json(&w), "polygons": items }), unchecked()))
        }
        Command::Triangulate => {
            let comps = triangular_decomposition(&ideal)?;
            let out: Vec<Vec<String>> = comps.iter().map(|t| t.polys().iter().map(|f| sys.ring.fmt_poly(f)).collect()).collect();
            Ok((json!({ "components": out }), unchecked()))
        }
        Command::Groebner => {
            let order = match opts.order.as_str() {
                "lex" => MonomialOrder::Lex,
                "degrevlex" => MonomialOrder::DegRevLex,
                "invlex" => MonomialOrder::InverseLex,
                "weighted" => {
                    MonomialOrder::weighted(opts.weight.clone().ok_or_else(|| Error::InvalidInput("weighted order needs --weight".into()))?)
                }
                o => return Err(Error::InvalidInput(format!("unknown order '{o}'"))),
            };
            let g = ideal.groebner(&order)?;
            let basis: Vec<String> = g.polys().iter().map(|f| sys.ring.fmt_poly(f)).collect();
            Ok((json!({ "order": order.name(), "basis": basis }), unchecked()))
        }
        Command::Verify => {
            let mut points: Vec<Vec<Rat>> = weights.iter().map(|(_, w)| w.clone()).collect();
            if let Some(w) = &opts.weight {
                points.push(w.clone());
            }
            if points.is_empty() {
                return Err(Error::InvalidInput("nothing to verify: give --weight or a weights section".into()));
            }
            let c = check(&ideal, &points)?;
            Ok((json!({ "points": points.iter().map(|p| vec_json(p)).collect::<Vec<_>>() }), c))
        }
    }
}

fn zerodim<F: ValuedField>(opts: &Options, sys: &System<F>, ideal: &Ideal<F>) -> Result<(Value, Checked)> {
    let cfg = zero_dim_config(opts);
    let comps = match TriangularSet::new(sys.gens.clone()) {
        Ok(t) => vec![t],
        Err(_) => triangular_decomposition(ideal)?,
    };
    if comps.is_empty() {
        return Err(Error::InvalidInput("the ideal has no points".into()));
    }
    let names = &sys.ring.names;
    let mut points = BTreeSet::new();
    let mut traces = Vec::new();
    let mut fallbacks = 0;
    if opts.single {
        let (p, trace) = zero_dim_point(&comps[0], &cfg)?;
        points.insert(p);
        traces.push(trace);
    } else {
        for t in &comps {
            let v = zero_dim_variety(t, &cfg)?;
            fallbacks += v.fallbacks;
            points.extend(v.points);
            if opts.trace {
                traces.push(zero_dim_point(t, &cfg)?.1);
            }
        }
    }
    let points: Vec<Vec<Rat>> = points.into_iter().collect();
    let mut out = json!({
        "points": points.iter().map(|p| vec_json(p)).collect::<Vec<_>>(),
        "components": comps.len(),
        "fallbacks": fallbacks,
    });
    if opts.trace {
        out["traces"] = Value::Array(traces.iter().map(|t| trace_json(names, t)).collect());
    }
    Ok((out, check(ideal, &points)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "field puiseux\nring x1 x2 x3\ngens\nx1 + x2 + x3\n";

    #[test]
    fn link_document() {
        let (doc, code) = dispatch(Command::Link, &Options::default(), "line.ideal", LINE);
        assert_eq!(code, 0);
        assert_eq!(doc["outputs"]["valency"], 3);
        assert_eq!(doc["status"], "ok");
        assert_eq!(doc["timing_ms"], Value::Null);
        assert_eq!(doc["verification"]["passed"], true);
    }

    #[test]
    fn failures_are_structured() {
        let (doc, code) = dispatch(Command::Zerodim, &Options::default(), "bad", "field padic 4\nring x\ngens\nx\n");
        assert_eq!(code, 1);
        assert_eq!(doc["error"]["kind"], "NonPrimeModulus");
        let opts = Options {
            weight: Some(vec![Rat::from_integer(0.into()), Rat::from_integer(1.into()), Rat::from_integer(2.into())]),
            ..Default::default()
        };
        let (doc, code) = dispatch(Command::Verify, &opts, "line.ideal", LINE);
        assert_eq!(code, 2);
        assert_eq!(doc["status"], "verification_failed");
    }
}
