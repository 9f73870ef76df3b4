use super::{LocalContext, Place};
use crate::error::{input, Result};
use crate::field::Elem;
use std::collections::HashSet;

pub fn hilbert_symbol(a: &Elem, b: &Elem, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return input("Hilbert symbol of zero");
    }
    match place {
        Place::Complex => Ok(1),
        Place::Real => {
            let (a, b) = (a.to_rational(), b.to_rational());
            match (a, b) {
                (Some(a), Some(b)) => {
                    use num_traits::Signed;
                    Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 })
                }
                _ => input("real place needs rational arguments"),
            }
        }
        Place::Finite(ctx) if ctx.e2 == 0 => tame_symbol(a, b, ctx),
        Place::Finite(ctx) => hilbert_symbol_by_search(a, b, ctx),
    }
}

fn tame_symbol(a: &Elem, b: &Elem, ctx: &LocalContext) -> Result<i8> {
    let al = ctx.valuation(a).unwrap();
    let be = ctx.valuation(b).unwrap();
    let u = ctx.strip_pi(a, al);
    let w = ctx.strip_pi(b, be);
    let q = ctx.residue_field_size() as i64;
    let mut s: i8 = if (al * be).rem_euclid(2) == 1 && ((q - 1) / 2) % 2 == 1 { -1 } else { 1 };
    if be.rem_euclid(2) == 1 {
        s *= ctx.chi(&u)?;
    }
    if al.rem_euclid(2) == 1 {
        s *= ctx.chi(&w)?;
    }
    Ok(s)
}

/// Reduces x to pi^(0 or 1)·unit within its square class.
fn reduce(x: &Elem, ctx: &LocalContext) -> (Elem, i64) {
    let v = ctx.valuation(x).unwrap();
    let h = v.div_euclid(2);
    (ctx.strip_pi(x, 2 * h), v - 2 * h)
}

/// Decides (a, b) by searching for a primitive vector with a·x^2 + b·y^2 a
/// nonzero square.
///
/// After normalizing so that `a` is a unit and ord(b) is 0 or 1, (a, b) = 1
/// exactly when some primitive vector takes a square value of valuation at
/// most 2e2 (isotropic planes reach one of valuation below 2e2, anisotropic
/// ones never exceed it). Such a value is pi^w·u with u a unit square modulo
/// p^(2e2+1), so values modulo p^(4e2+1) decide it, and those depend only on
/// x, y modulo p^(3e2+1).
pub fn hilbert_symbol_by_search(a: &Elem, b: &Elem, ctx: &LocalContext) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return input("Hilbert symbol of zero");
    }
    let (mut a, va) = reduce(a, ctx);
    let (mut b, vb) = reduce(b, ctx);
    match (va, vb) {
        (0, _) => {}
        (1, 0) => std::mem::swap(&mut a, &mut b),
        _ => {
            // (a, b) = (a, -ab) and -ab has even valuation
            let nb = -(&a * &b);
            let (nb, _) = reduce(&nb, ctx);
            b = a;
            a = nb;
        }
    }
    let e2 = ctx.e2;
    let n = 4 * e2 + 1;
    ctx.require(n)?;
    let ar = ctx.to_residue(&a)?;
    let br = ctx.to_residue(&b)?;
    // keys of pi^w·eta^2 modulo p^(w+2e2+1) for even w <= 2e2
    let units = ctx.residues_mod(e2 + 1);
    let mut targets = Vec::new();
    for w in (0..=2 * e2).step_by(2) {
        let pw = ctx.to_residue(&ctx.pi.pow(w))?;
        let set: HashSet<_> = units
            .iter()
            .filter(|&&e| ctx.is_unit_res(e))
            .map(|&e| ctx.rkey(ctx.rmul(pw, ctx.rmul(e, e)), w + 2 * e2 + 1))
            .collect();
        targets.push(set);
    }
    let reps = ctx.residues_mod(3 * e2 + 1);
    let unit: Vec<bool> = reps.iter().map(|&x| ctx.is_unit_res(x)).collect();
    let sq: Vec<_> = reps.iter().map(|&x| ctx.rmul(x, x)).collect();
    let ax: Vec<_> = sq.iter().map(|&s| ctx.rmul(ar, s)).collect();
    let by: Vec<_> = sq.iter().map(|&s| ctx.rmul(br, s)).collect();
    for (i, x) in ax.iter().enumerate() {
        for (j, y) in by.iter().enumerate() {
            if !unit[i] && !unit[j] {
                continue;
            }
            let val = ctx.radd(*x, *y);
            let Some(w) = ctx.rval(val) else { continue };
            if w % 2 == 1 || w > 2 * e2 {
                continue;
            }
            if targets[(w / 2) as usize].contains(&ctx.rkey(val, w + 2 * e2 + 1)) {
                return Ok(1);
            }
        }
    }
    Ok(-1)
}
