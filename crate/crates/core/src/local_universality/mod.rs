//! Local universality of lattices at every place of the base field.

mod oracle;

pub use oracle::{oracle_universal, represents_locally, values_mod};

use crate::arith::factorize;
use crate::error::{input, Error, Result};
use crate::field::{Elem, NumberField};
use crate::lattice::{
    det, diagonalize, is_isotropic, jordan_split, minimal_norm_refine, weight_and_norm_group, JordanSplitting,
    LocalLattice, QuadLattice,
};
use crate::localfield::{is_square_local, local_contexts_default, LocalContext, Place};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Which criterion produced a verdict. The serialized names are the labels
/// used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "nondyadic_leading")]
    NonDyadicLeading,
    #[serde(rename = "nondyadic_two_step")]
    NonDyadicTwoStep,
    #[serde(rename = "dyadic_binary")]
    DyadicBinary,
    #[serde(rename = "dyadic_ternary_two_components")]
    DyadicTernaryTwoComponents,
    #[serde(rename = "dyadic_ternary_unimodular")]
    DyadicTernaryUnimodular,
    #[serde(rename = "dyadic_ternary_rank_one_parts")]
    DyadicTernaryRankOneParts,
    #[serde(rename = "rank_one")]
    RankOne,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "archimedean")]
    Archimedean,
}

impl Rule {
    pub fn label(self) -> String {
        serde_json::to_value(self).unwrap().as_str().unwrap().to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalVerdict {
    pub universal: bool,
    pub rule: Rule,
    /// an element of o_v outside Q(L_v), when one was found
    pub witness: Option<Elem>,
}

impl LocalVerdict {
    fn yes(rule: Rule) -> Self {
        LocalVerdict { universal: true, rule, witness: None }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "universal": self.universal,
            "rule": self.rule.label(),
            "witness": self.witness.as_ref().map(Elem::to_json_string),
        })
    }
}

#[derive(Debug, Clone)]
pub struct PlaceVerdict {
    pub place: String,
    pub verdict: LocalVerdict,
}

#[derive(Debug, Clone)]
pub struct LocalUniversality {
    pub places: Vec<PlaceVerdict>,
    pub universal: bool,
}

impl LocalUniversality {
    /// Places where the lattice fails to be universal.
    pub fn failures(&self) -> Vec<&PlaceVerdict> {
        self.places.iter().filter(|p| !p.verdict.universal).collect()
    }

    pub fn to_json(&self) -> Value {
        let places: serde_json::Map<String, Value> =
            self.places.iter().map(|p| (p.place.clone(), p.verdict.to_json())).collect();
        json!({ "universal": self.universal, "places": places })
    }
}

/// Verdict computed only by the enumeration oracle.
pub fn oracle_verdict(lv: &LocalLattice) -> Result<LocalVerdict> {
    let witness = oracle_universal(lv)?;
    Ok(LocalVerdict { universal: witness.is_none(), rule: Rule::Oracle, witness })
}

/// Whether L_v is universal at the finite place `ctx`.
pub fn is_locally_universal_at(l: &QuadLattice, ctx: &LocalContext) -> Result<LocalVerdict> {
    classify(&l.localize(ctx)?)
}

/// Structural decision for a local lattice, with the oracle as fallback for
/// dyadic lattices of rank at least 4.
pub fn classify(lv: &LocalLattice) -> Result<LocalVerdict> {
    let n = lv.rank();
    if lv.norm_exponent() < 0 {
        return input(format!("norm of the lattice is not integral at {}", lv.ctx.describe()));
    }
    let rule = if n == 1 {
        Rule::RankOne
    } else if !lv.ctx.is_dyadic() {
        Rule::NonDyadicLeading
    } else {
        match n {
            2 => Rule::DyadicBinary,
            3 => Rule::DyadicTernaryTwoComponents,
            _ => Rule::Oracle,
        }
    };
    if rule == Rule::Oracle {
        return oracle_verdict(lv);
    }
    if n >= 2 && lv.norm_exponent() == 0 && !lv.ctx.is_dyadic() {
        let (universal, rule, witness) = non_dyadic(lv)?;
        return Ok(LocalVerdict { universal, rule, witness });
    }
    let decided = if n == 1 || lv.norm_exponent() > 0 {
        Some((false, rule))
    } else if n == 2 {
        Some((dyadic_binary(lv)?, rule))
    } else {
        dyadic_ternary(lv)?
    };
    let Some((universal, rule)) = decided else {
        return oracle_verdict(lv);
    };
    if universal {
        return Ok(LocalVerdict::yes(rule));
    }
    let witness = match oracle_universal(lv) {
        Ok(w) => w,
        // the witness is optional; large residue rings only lose it
        Err(Error::Unsupported(_) | Error::Precision(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(LocalVerdict { universal, rule, witness })
}

fn hyperbolic_leading(split: &JordanSplitting, ctx: &LocalContext) -> Result<bool> {
    let c = &split.components[0];
    let d = det(&c.gram);
    let four = ctx.field.int(4);
    is_square_local(&-(&four * &d), ctx)
}

/// Verdict at a non-dyadic place, with a unit or prime-element witness on failure.
fn non_dyadic(lv: &LocalLattice) -> Result<(bool, Rule, Option<Elem>)> {
    let ctx = &lv.ctx;
    let split = jordan_split(lv)?;
    let first = &split.components[0];
    let leading = Rule::NonDyadicLeading;
    if first.scale != 0 {
        return Ok((false, leading, Some(ctx.field.one())));
    }
    if first.rank() == 1 {
        // unit values are u times squares
        return Ok((false, leading, Some(small_representative(ctx, &(&first.gram[0][0] * &ctx.delta))?)));
    }
    if first.rank() >= 3 || hyperbolic_leading(&split, ctx)? {
        return Ok((true, leading, None));
    }
    // the anisotropic plane only takes even valuations
    let witness = match split.components.get(1) {
        Some(c) if c.scale == 1 && c.rank() >= 2 => return Ok((true, Rule::NonDyadicTwoStep, None)),
        Some(c) if c.scale == 1 => &c.gram[0][0] * &ctx.delta,
        _ => ctx.pi.clone(),
    };
    Ok((false, Rule::NonDyadicTwoStep, Some(small_representative(ctx, &witness)?)))
}

/// pi^v times a small integral unit in the same square class as `x`.
fn small_representative(ctx: &LocalContext, x: &Elem) -> Result<Elem> {
    let Some(v) = ctx.valuation(x) else { return Ok(x.clone()) };
    let target = ctx.chi(&ctx.strip_pi(x, v))?;
    let k = ctx.field;
    for s in 1i64.. {
        for a in -s..=s {
            let b = s - a.abs();
            if k.degree() == 1 && b != 0 {
                continue;
            }
            for e in [k.ints(a, b), k.ints(a, -b)] {
                if ctx.valuation(&e) != Some(0) {
                    continue;
                }
                if ctx.chi(&e)? == target {
                    return Ok(&ctx.pi.pow(v as u32) * &e);
                }
            }
        }
    }
    unreachable!()
}

fn dyadic_binary(lv: &LocalLattice) -> Result<bool> {
    let split = jordan_split(lv)?;
    let c = &split.components[0];
    Ok(split.components.len() == 1
        && c.norm == 0
        && c.scale == -(lv.ctx.e2 as i64)
        && hyperbolic_leading(&split, &lv.ctx)?)
}

fn isotropic_here(lv: &LocalLattice) -> Result<bool> {
    is_isotropic(&diagonalize(&lv.gram), &Place::Finite(lv.ctx.clone()))
}

/// Ternary dyadic lattices of integral norm o. None defers to the oracle.
fn dyadic_ternary(lv: &LocalLattice) -> Result<Option<(bool, Rule)>> {
    let split = minimal_norm_refine(&jordan_split(lv)?, lv)?;
    let two_comp = Rule::DyadicTernaryTwoComponents;
    match split.ranks().as_slice() {
        [1, 1, 1] => Ok(Some((false, Rule::DyadicTernaryRankOneParts))),
        [1, 2] => Ok(Some((false, two_comp))),
        [2, 1] => {
            let (n1, n2) = (split.components[0].norm, split.components[1].norm);
            let s1 = split.components[0].scale;
            if s1 == -(lv.ctx.e2 as i64) && n1 == 0 && hyperbolic_leading(&split, &lv.ctx)? {
                return Ok(Some((true, two_comp)));
            }
            let step = n1 + 1 == n2 || n1 == n2 + 1;
            Ok(Some((step && isotropic_here(lv)?, two_comp)))
        }
        [3] if split.components[0].scale == 0 => {
            let (w, _) = weight_and_norm_group(lv)?;
            Ok(Some((w == 1 && isotropic_here(lv)?, Rule::DyadicTernaryUnimodular)))
        }
        _ => Ok(None),
    }
}

/// Whether Q(k_v L) = k_v at an infinite place.
pub fn archimedean_universal(l: &QuadLattice, place: &Place) -> Result<bool> {
    match place {
        Place::Complex => Ok(true),
        Place::Real => {
            if l.field.degree() != 1 {
                return input("an imaginary quadratic field has no real place");
            }
            let d = diagonalize(&l.gram);
            if d.iter().any(Elem::is_zero) {
                return input("degenerate Gram matrix");
            }
            let pos = d.iter().filter(|e| e.to_rational().unwrap().is_positive()).count();
            Ok(pos > 0 && pos < d.len())
        }
        Place::Finite(_) => input("not an infinite place"),
    }
}

fn rational_primes(x: &num_rational::BigRational, out: &mut BTreeSet<u64>) -> Result<()> {
    for part in [x.numer().abs(), x.denom().abs()] {
        let Some(v) = part.to_i128() else {
            return Err(Error::Factorization(part.to_string()));
        };
        if v > 1 {
            out.extend(factorize(v)?.primes());
        }
    }
    Ok(())
}

/// Rational primes below which L_v may fail to be unimodular, together with 2.
pub fn bad_primes(l: &QuadLattice) -> Result<BTreeSet<u64>> {
    let mut out: BTreeSet<u64> = [2].into_iter().collect();
    rational_primes(&l.gram_det().norm(), &mut out)?;
    for i in 0..l.rank() {
        rational_primes(&l.ideal(i).norm(), &mut out)?;
    }
    rational_primes(&l.scale_ideal().norm(), &mut out)?;
    Ok(out)
}

fn infinite_place(field: NumberField) -> Place {
    if field.degree() == 1 {
        Place::Real
    } else {
        Place::Complex
    }
}

/// Primes searched for a place that witnesses a non-square binary determinant.
const GOOD_PRIME_SEARCH: u64 = 10_000;

/// Restrictions for [`is_locally_universal_with`].
#[derive(Debug, Clone, Default)]
pub struct LocalOptions {
    /// only these rational primes (the infinite place is always checked)
    pub places: Option<Vec<u64>>,
    /// decide every finite place by enumeration alone
    pub oracle: bool,
}

/// Decides local universality at every place: the infinite place, each place
/// over a bad prime, and, for binary lattices, one unimodular place where the
/// discriminant is not a square if there is one.
pub fn is_locally_universal(l: &QuadLattice) -> Result<LocalUniversality> {
    is_locally_universal_with(l, &LocalOptions::default())
}

pub fn is_locally_universal_with(l: &QuadLattice, opts: &LocalOptions) -> Result<LocalUniversality> {
    if !l.is_integral_norm() {
        return input("the norm ideal of the lattice is not integral");
    }
    let decide = |ctx: &LocalContext| -> Result<PlaceVerdict> {
        let verdict = if opts.oracle { oracle_verdict(&l.localize(ctx)?)? } else { is_locally_universal_at(l, ctx)? };
        Ok(PlaceVerdict { place: ctx.describe(), verdict })
    };
    let mut places = Vec::new();
    let inf = infinite_place(l.field);
    places.push(PlaceVerdict {
        place: place_name(&inf),
        verdict: LocalVerdict { universal: archimedean_universal(l, &inf)?, rule: Rule::Archimedean, witness: None },
    });
    let bad = bad_primes(l)?;
    let primes: BTreeSet<u64> = match &opts.places {
        Some(ps) => ps.iter().copied().collect(),
        None => bad.clone(),
    };
    for &p in &primes {
        for ctx in local_contexts_default(l.field, p)? {
            places.push(decide(&ctx)?);
        }
    }
    if l.rank() == 2 && opts.places.is_none() {
        let minus_det = -l.gram_det();
        if !l.field.is_square(&minus_det) {
            places.push(decide(&non_square_place(l.field, &minus_det, &bad)?)?);
        }
    }
    let universal = places.iter().all(|p| p.verdict.universal);
    Ok(LocalUniversality { places, universal })
}

fn non_square_place(field: NumberField, x: &Elem, bad: &BTreeSet<u64>) -> Result<LocalContext> {
    for p in 3..GOOD_PRIME_SEARCH {
        if bad.contains(&p) || !crate::arith::is_prime(p) {
            continue;
        }
        for ctx in local_contexts_default(field, p)? {
            if !is_square_local(x, &ctx)? {
                return Ok(ctx);
            }
        }
    }
    Err(Error::Unsupported(format!("no place below {GOOD_PRIME_SEARCH} where {x} is not a square")))
}

pub fn place_name(place: &Place) -> String {
    match place {
        Place::Real => "real".into(),
        Place::Complex => "complex".into(),
        Place::Finite(ctx) => ctx.describe(),
    }
}

#[cfg(test)]
mod tests;
