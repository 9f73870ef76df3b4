use super::{LocalContext, Res};
use crate::error::{input, Result};
use crate::field::Elem;
use serde::Serialize;

/// The quadratic defect of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Defect {
    /// the element is a square
    Zero,
    /// the ideal p^e, e counted from the element itself
    PiPower(i64),
}

/// For a unit residue: None if it is a square, otherwise the exponent of its
/// defect, max over eta of ord(u - eta^2).
pub fn unit_defect_exponent(ctx: &LocalContext, u: Res) -> Option<u32> {
    if ctx.unit_res_is_square(u) {
        return None;
    }
    if ctx.e2 == 0 {
        return Some(0);
    }
    let cap = 2 * ctx.e2 + 1;
    let mut best = 0;
    for eta in ctx.residues_mod(ctx.e2 + 1) {
        if !ctx.is_unit_res(eta) {
            continue;
        }
        let diff = ctx.rsub(u, ctx.rmul(eta, eta));
        let v = ctx.rval(diff).unwrap_or(cap).min(cap);
        best = best.max(v);
    }
    debug_assert!(best < cap);
    Some(best)
}

/// Splits x = pi^v·u and returns (v, residue of u).
fn normalize(x: &Elem, ctx: &LocalContext) -> Result<(i64, Res)> {
    let Some(v) = ctx.valuation(x) else {
        return input("zero has no square class");
    };
    let u = ctx.strip_pi(x, v);
    let r = if ctx.e2 == 0 { ctx.to_residue_mod(&u, 1)? } else { ctx.to_residue(&u)? };
    Ok((v, r))
}

pub fn is_square_local(x: &Elem, ctx: &LocalContext) -> Result<bool> {
    let (v, u) = normalize(x, ctx)?;
    if v.rem_euclid(2) == 1 {
        return Ok(false);
    }
    Ok(ctx.unit_res_is_square(u))
}

pub fn quadratic_defect(x: &Elem, ctx: &LocalContext) -> Result<Defect> {
    let (v, u) = normalize(x, ctx)?;
    if v.rem_euclid(2) == 1 {
        return Ok(Defect::PiPower(v));
    }
    Ok(match unit_defect_exponent(ctx, u) {
        None => Defect::Zero,
        Some(d) => Defect::PiPower(v + d as i64),
    })
}
