use crate::error::{input, Error, Result};
use crate::field::Elem;
use crate::lattice::{jordan_split, LocalLattice};
use crate::localfield::{LocalContext, Res};
use std::collections::HashSet;

type Key = (i128, i128);

/// Largest enumeration of a single orthogonal block before giving up.
const BLOCK_BUDGET: u128 = 1 << 24;

/// Q(L) modulo p^k, as a set of residue keys.
///
/// The lattice is cut into orthogonal blocks along a Jordan splitting, each
/// block is enumerated modulo p^k, and the value sets are added together.
pub fn values_mod(lv: &LocalLattice, k: u32) -> Result<(LocalContext, HashSet<Key>)> {
    if lv.norm_exponent() < 0 {
        return input("the norm of the lattice is not integral");
    }
    let need = k.max(lv.ctx.precision);
    let ctx = lv.ctx.with_precision(need)?;
    ctx.require(k)?;
    let lv = LocalLattice::new(ctx.clone(), lv.gram.clone());
    let split = jordan_split(&lv)?;
    let mut acc: HashSet<Key> = [ctx.rkey(Res(0, 0), k)].into_iter().collect();
    for comp in &split.components {
        for block in orthogonal_blocks(&comp.gram) {
            let vals = block_values(&ctx, &block, k)?;
            let mut next = HashSet::with_capacity(acc.len().max(vals.len()));
            for a in &acc {
                for b in &vals {
                    let s = ctx.radd(Res(a.0, a.1), Res(b.0, b.1));
                    next.insert(ctx.rkey(s, k));
                }
            }
            acc = next;
        }
    }
    Ok((ctx, acc))
}

/// Splits a Gram matrix into the Gram matrices of its connected blocks.
fn orthogonal_blocks(g: &[Vec<Elem>]) -> Vec<Vec<Vec<Elem>>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut idx = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < idx.len() {
            let a = idx[i];
            for b in 0..n {
                if !seen[b] && !g[a][b].is_zero() {
                    seen[b] = true;
                    idx.push(b);
                }
            }
            i += 1;
        }
        idx.sort_unstable();
        out.push(idx.iter().map(|&a| idx.iter().map(|&b| g[a][b].clone()).collect()).collect());
    }
    out
}

fn block_values(ctx: &LocalContext, g: &[Vec<Elem>], k: u32) -> Result<HashSet<Key>> {
    let n = g.len();
    let size = ctx.count_mod(k).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > BLOCK_BUDGET {
        return Err(Error::Unsupported(format!(
            "enumerating a rank {n} block modulo p^{k} at {} needs {size} steps",
            ctx.describe()
        )));
    }
    let two = g[0][0].field.int(2);
    let mut coef = vec![vec![Res(0, 0); n]; n];
    for i in 0..n {
        coef[i][i] = ctx.to_residue(&g[i][i])?;
        for j in i + 1..n {
            coef[i][j] = ctx.to_residue(&(&two * &g[i][j]))?;
        }
    }
    let reps = ctx.residues_mod(k);
    let mut out = HashSet::new();
    let mut x = vec![0usize; n];
    loop {
        let mut v = Res(0, 0);
        for i in 0..n {
            let xi = reps[x[i]];
            let mut row = ctx.rmul(coef[i][i], xi);
            for j in i + 1..n {
                row = ctx.radd(row, ctx.rmul(coef[i][j], reps[x[j]]));
            }
            v = ctx.radd(v, ctx.rmul(row, xi));
        }
        out.insert(ctx.rkey(v, k));
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            x[i] += 1;
            if x[i] < reps.len() {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Whether `a` lies in Q(L_v).
///
/// With m = ord(a), it is enough to match a modulo p^(m + 2e + 1): any other
/// value differs from a by a unit factor congruent to 1 mod p^(2e+1), which is
/// a square, and rescaling the vector by its root stays inside L_v.
pub fn represents_locally(lv: &LocalLattice, a: &Elem) -> Result<bool> {
    let Some(m) = lv.ctx.valuation(a) else {
        return input("zero is always represented");
    };
    if m < 0 {
        return Ok(false);
    }
    let k = m as u32 + 2 * lv.ctx.e2 + 1;
    let (ctx, vals) = values_mod(lv, k)?;
    let key = ctx.rkey(ctx.to_residue(a)?, k);
    Ok(vals.contains(&key))
}

/// Checks that every unit and every pi times a unit is a value, returning the
/// first element found missing.
pub fn oracle_universal(lv: &LocalLattice) -> Result<Option<Elem>> {
    let e = lv.ctx.e2;
    if lv.norm_exponent() > 0 {
        return Ok(Some(lv.ctx.field.one()));
    }
    let k = 2 * e + 2;
    let (ctx, vals) = values_mod(lv, k)?;
    let unit_keys: HashSet<Key> = vals.iter().map(|v| ctx.rkey(Res(v.0, v.1), k - 1)).collect();
    let pi = ctx.to_residue(&ctx.pi)?;
    for u in ctx.residues_mod(k - 1) {
        if !ctx.is_unit_res(u) {
            continue;
        }
        if !unit_keys.contains(&ctx.rkey(u, k - 1)) {
            return Ok(Some(ctx.lift(u)));
        }
        let pu = ctx.rmul(pi, u);
        if !vals.contains(&ctx.rkey(pu, k)) {
            return Ok(Some(&ctx.pi * &ctx.lift(u)));
        }
    }
    Ok(None)
}
