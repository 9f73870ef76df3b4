use super::QuadLattice;
use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use crate::global::Ideal;
use serde_json::{json, Value};

fn parse_entry(field: NumberField, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => Elem::parse(field, s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.int(i)),
            None => input(format!("non-integer number {n}; use a string like \"1/2\"")),
        },
        _ => input(format!("bad entry {v}")),
    }
}

fn parse_field(v: &Value) -> Result<NumberField> {
    match v.get("kind").and_then(Value::as_str) {
        Some("Q") => Ok(NumberField::Rational),
        Some("imquad") => {
            let Some(d) = v.get("d").and_then(Value::as_i64) else {
                return input("imquad field needs an integer d");
            };
            NumberField::imag_quad(d)
        }
        _ => input(format!("unknown field {v}")),
    }
}

pub fn lattice_from_value(v: &Value) -> Result<QuadLattice> {
    let Some(fv) = v.get("field") else { return input("missing \"field\"") };
    let field = parse_field(fv)?;
    let Some(rows) = v.get("gram").and_then(Value::as_array) else {
        return input("missing \"gram\" array");
    };
    let mut gram = Vec::new();
    for r in rows {
        let Some(r) = r.as_array() else { return input("gram rows must be arrays") };
        gram.push(r.iter().map(|e| parse_entry(field, e)).collect::<Result<Vec<_>>>()?);
    }
    let ideals = match v.get("coeff_ideals") {
        None | Some(Value::Null) => None,
        Some(Value::Array(list)) => {
            let mut ids = Vec::new();
            for g in list {
                let Some(gs) = g.as_array() else { return input("ideal must be a generator list") };
                let gens = gs.iter().map(|e| parse_entry(field, e)).collect::<Result<Vec<_>>>()?;
                ids.push(Ideal::from_generators(field, &gens)?);
            }
            Some(ids)
        }
        _ => return input("coeff_ideals must be an array"),
    };
    QuadLattice::with_ideals(field, ideals, gram)
}

/// Parses the lattice JSON format.
pub fn lattice_from_json(s: &str) -> Result<QuadLattice> {
    let v: Value = serde_json::from_str(s).or_else(|e| input(format!("JSON: {e}")))?;
    lattice_from_value(&v)
}

pub fn field_to_value(field: NumberField) -> Value {
    match field {
        NumberField::Rational => json!({"kind": "Q"}),
        NumberField::ImagQuad { d } => json!({"kind": "imquad", "d": d}),
    }
}

pub fn lattice_to_json_value(l: &QuadLattice) -> Value {
    let gram: Vec<Vec<String>> = l.gram.iter().map(|r| r.iter().map(Elem::to_json_string).collect()).collect();
    let mut v = json!({"field": field_to_value(l.field), "gram": gram});
    if let Some(ids) = &l.coeff_ideals {
        let list: Vec<Vec<String>> =
            ids.iter().map(|i| i.generators().iter().map(Elem::to_json_string).collect()).collect();
        v["coeff_ideals"] = json!(list);
    }
    v
}

pub fn lattice_to_json(l: &QuadLattice) -> String {
    serde_json::to_string(&lattice_to_json_value(l)).unwrap()
}
