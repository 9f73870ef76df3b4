//! JSON reports for the command-line front end.

use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use crate::global::{
    artin_character, construct_binary, construct_ternary_family, counterexample_family, find_unramified_quadratic,
    is_globally_universal, primes_above, Ideal,
};
use crate::lattice::{lattice_to_json_value, QuadLattice};
use crate::local_universality::{is_locally_universal_with, LocalOptions};
use crate::potential::is_potentially_universal;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_BOUND: i64 = 1000;

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub local: LocalOptions,
    /// norm bound for representation searches
    pub bound: i64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { local: LocalOptions::default(), bound: DEFAULT_BOUND }
    }
}

fn tool() -> Value {
    json!({"name": "quniv", "version": VERSION})
}

/// Local, global and potential verdicts for one lattice.
pub fn analysis(l: &QuadLattice, opts: &AnalyzeOptions) -> Result<Value> {
    let local = is_locally_universal_with(l, &opts.local)?;
    let global = is_globally_universal(l, opts.bound)?;
    let potential = if l.rank() < 2 {
        json!({"universal": null, "note": "rank one lattices are never potentially universal in this sense"})
    } else {
        json!({"universal": is_potentially_universal(l)?})
    };
    let mut out = json!({
        "lattice": lattice_to_json_value(l),
        "local": local.to_json(),
        "global": global.to_json(),
        "potential": potential,
    });
    if opts.local.places.is_some() || opts.local.oracle {
        out["local"]["options"] = json!({"places": opts.local.places, "oracle": opts.local.oracle});
    }
    Ok(out)
}

pub fn analyze_report(command: &[String], l: &QuadLattice, opts: &AnalyzeOptions) -> Result<Value> {
    let mut r = json!({"tool": tool(), "command": command, "bound": opts.bound});
    r["analysis"] = analysis(l, opts)?;
    Ok(r)
}

fn imquad(d: i64) -> Result<NumberField> {
    NumberField::imag_quad(d)
}

/// Ideal from comma separated generators such as "2,1+w".
pub fn parse_ideal(field: NumberField, s: &str) -> Result<Ideal> {
    let gens = s.split(',').map(|g| Elem::parse(field, g.trim())).collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return input("ideal needs at least one generator");
    }
    Ideal::from_generators(field, &gens)
}

fn ideal_json(i: &Ideal) -> Value {
    json!(i.generators().iter().map(Elem::to_json_string).collect::<Vec<_>>())
}

pub fn construct_binary_report(command: &[String], d: i64, ideal: &str, opts: &AnalyzeOptions) -> Result<Value> {
    let k = imquad(d)?;
    let a = parse_ideal(k, ideal)?;
    let b = construct_binary(&a)?;
    let basis: Vec<Vec<String>> = b.basis.iter().map(|(x, y)| vec![x.to_json_string(), y.to_json_string()]).collect();
    Ok(json!({
        "tool": tool(),
        "command": command,
        "kind": "binary",
        "ideal": ideal_json(&b.ideal),
        "pseudo_lattice": lattice_to_json_value(&b.pseudo),
        "basis": basis,
        "lattice": lattice_to_json_value(&b.free),
        "analysis": analysis(&b.free, opts)?,
    }))
}

/// First prime ideal of small norm on which the unramified character is -1.
fn default_ternary_ideal(d: i64, a: &Elem) -> Result<Ideal> {
    for p in 2..200u64 {
        if !crate::arith::is_prime(p) {
            continue;
        }
        for id in primes_above(a.field, p)? {
            if let Ok(-1) = artin_character(a, &id) {
                return Ok(id);
            }
        }
    }
    input(format!("no prime ideal of small norm with character -1 over Q(sqrt {d})"))
}

pub fn construct_ternary_report(
    command: &[String],
    d: i64,
    ideal: Option<&str>,
    primes: &[u64],
    opts: &AnalyzeOptions,
) -> Result<Value> {
    let k = imquad(d)?;
    let Some(a) = find_unramified_quadratic(d)? else {
        return input(format!("Q(sqrt {d}) has no unramified quadratic extension of the required form"));
    };
    let id = match ideal {
        Some(s) => parse_ideal(k, s)?,
        None => default_ternary_ideal(d, &a)?,
    };
    let fam = construct_ternary_family(d, &id, primes)?;
    let members = std::iter::once((None, &fam.base))
        .chain(fam.members.iter().map(|(p, m)| (Some(*p), m)))
        .map(|(p, m)| Ok(json!({"p": p, "lattice": lattice_to_json_value(m), "analysis": analysis(m, opts)?})))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "tool": tool(),
        "command": command,
        "kind": "ternary",
        "a": fam.a.to_json_string(),
        "ideal": ideal_json(&id),
        "binary": lattice_to_json_value(&fam.binary.free),
        "lattice": members.last().map(|m| m["lattice"].clone()),
        "members": members,
    }))
}

pub fn construct_counterexample_report(
    command: &[String],
    n: i64,
    z_bound: i64,
    opts: &AnalyzeOptions,
) -> Result<Value> {
    let c = counterexample_family(n, z_bound)?;
    Ok(json!({
        "tool": tool(),
        "command": command,
        "kind": "counterexample",
        "N": n,
        "p": c.p,
        "q": c.q,
        "lattice": lattice_to_json_value(&c.form),
        "range": c.range.to_json(),
        "analysis": analysis(&c.form, opts)?,
    }))
}
